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

#include "qdl/harness/config.hpp"
#include "qdl/harness/output.hpp"

namespace qdl::harness {

/// Validates `cfg` (Error(Usage) on any error diagnostic) and runs the
/// experiment. Rows and summary depend only on the config, never on the
/// worker count or wall-clock.
RunRecord run(const ExperimentConfig &cfg);

/// Sample mean and standard deviation (n - 1) with pairwise summation.
struct ColumnStats {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};
ColumnStats column_stats(std::span<const double> x);

}  // namespace qdl::harness
