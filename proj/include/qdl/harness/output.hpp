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

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdl/harness/config.hpp"

namespace qdl::harness {

inline constexpr std::string_view kVersion = "0.1.0";

/// One cell: empty (not applicable), integer, real, boolean or text.
using Value = std::variant<std::monostate, std::int64_t, std::uint64_t, double, bool, std::string>;

struct RunRecord {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string config;  // canonical JSON echo
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
    std::vector<std::pair<std::string, Value>> summary;
    double wall_seconds = 0.0;

    const Value *summary_value(std::string_view key) const;
};

/// Floats with 17 significant digits and '.' decimal, independent of locale.
std::string format_real(double x);

std::string render_csv(const RunRecord &r);
/// Data, summary and config echo; no timestamps.
std::string render_json(const RunRecord &r);
std::string render(const RunRecord &r, Format f);

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string &path, const std::string &content);

/// Data file at `path` (stdout when empty) plus `path`.meta.json holding the
/// wall-clock, version and summary.
void emit(const RunRecord &r, const std::string &path, Format f);

}  // namespace qdl::harness
