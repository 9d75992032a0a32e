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

#include <stdexcept>
#include <string>

namespace qdl {

enum class ErrorKind {
    Usage,      // bad CLI/config input
    Parse,      // ill-formed config file
    Domain,     // argument outside the mathematical domain of a formula
    Shape,      // dimension mismatch
    Index,      // index out of range
    Capacity,   // resource guard (memory, dimension, net cardinality)
    Numeric,    // numerically defective intermediate (non-Hermitian, negative spectrum)
    Contract,   // inputs that do not belong together (PGM vs codebook, wrong codebook origin)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Process exit code for an error kind: 2 usage, 3 capacity, 4 numeric.
int exit_code(ErrorKind kind) noexcept;

const char *to_string(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

}  // namespace qdl
