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

#include <span>

namespace qdl {

/// -x log2 x on [0, 1], eta(0) = 0. Error(Domain) outside [0, 1].
double eta(double x);

/// -x log2 x for any x >= 0 (sums of Q-vector entries can exceed 1).
double eta_unbounded(double x) noexcept;

/// Binary entropy in bits, h2(0) = h2(1) = 0.
double h2(double x);

/// -sum_i p_i log2 p_i with the 0 log 0 = 0 convention; p need not be normalized.
double shannon_bits(std::span<const double> p) noexcept;

}  // namespace qdl
