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

#include "qdl/entropy.hpp"

#include <cmath>
#include <string>

#include "qdl/errors.hpp"

namespace qdl {

double eta_unbounded(double x) noexcept { return x > 0.0 ? -x * std::log2(x) : 0.0; }

double eta(double x) {
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::Domain, "eta: argument " + std::to_string(x) + " outside [0, 1]");
    return eta_unbounded(x);
}

double h2(double x) {
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::Domain, "h2: argument " + std::to_string(x) + " outside [0, 1]");
    return eta_unbounded(x) + eta_unbounded(1.0 - x);
}

double shannon_bits(std::span<const double> p) noexcept {
    double h = 0.0;
    for (double v : p) h += eta_unbounded(v);
    return h;
}

}  // namespace qdl
