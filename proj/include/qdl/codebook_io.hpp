// Copyright 2026 The qdl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>

#include "qdl/ensemble.hpp"

namespace qdl {

// Binary container, all integers and doubles little-endian:
//
//   offset  size  field
//   0       8     magic "QDLCBK\0\1"
//   8       8     d        (u64)
//   16      8     M        (u64)
//   24      8     K        (u64)
//   32      1     alphabet (0 binary, 1 uniform)
//   33      1     origin   (0 iid-vectors, 1 phase-unitaries)
//   34      6     zero padding
//   40      8     seed     (u64)
//   48      ...   M*K*d pairs (re, im) of IEEE-754 binary64, row-major over (m, k, w)
//
// Phase-unitary codebooks recover U_k from the m = d row on load, since
// |d> has all amplitudes equal to 1/sqrt d.

inline constexpr std::size_t kCodebookHeaderBytes = 48;
inline constexpr std::size_t kJsonDumpLimit = 4096;

void write_codebook(std::ostream &out, const Codebook &book);
Codebook read_codebook(std::istream &in);

void save_codebook(const std::string &path, const Codebook &book);
Codebook load_codebook(const std::string &path);

/// Debug dump; refuses d*M*K > kJsonDumpLimit with a capacity error.
std::string codebook_to_json(const Codebook &book);

}  // namespace qdl
