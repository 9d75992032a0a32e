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
#include <optional>
#include <string>

namespace qdl {

/// Natural logarithms throughout, as the thresholds are written; conversion to
/// bits happens only in the log2 fields.
struct KeyRateQuery {
    double delta = 0.1;
    double M = 2.0;
    double d = 2.0;
    double gamma = 0.0;     // leaked fraction of the key bits
    double n_leaked = 0.0;  // leaked message bits

    /// Error(Domain) unless delta in (0,1), gamma in [0,1), 0 <= n < log2 M, M, d >= 1.
    void validate() const;
};

/// Smallest integer strictly above `real`; Error(Capacity) beyond 2^53.
std::uint64_t smallest_integer_above(double real);

/// (4/delta^2) (ln M + (2d/(delta M)) ln(5/delta))
double key_threshold_real(double delta, double M, double d);
std::uint64_t key_threshold(double delta, double M, double d);

/// delta^3 K / 4 - delta ln M - (2d/M) ln(5/delta); positive iff K > key_threshold.
double pfail_exponent(double delta, double M, double d, double K);

/// Thresholds under leakage of gamma log K key bits, with M/d = delta.
struct LeakKeyThreshold {
    double base = 0.0;           // T0 = (4/delta^2)(ln M + (2/delta^2) ln(5/delta))
    double cond1_real = 0.0;     // K^{1-gamma} > T0  <=>  K > T0^{1/(1-gamma)}
    double cond2_real = 0.0;     // K >= T0^{1+gamma}
    std::uint64_t K_cond1 = 0;
    std::uint64_t K_cond2 = 0;
    double log2K_bits = 0.0;     // log2 cond2_real
};
LeakKeyThreshold key_threshold_leak_key(double delta, double M, double gamma);

/// K > (4/delta^3)[ln M + delta (ln M - n) + 2^{n+1} (d/M) ln(5/delta)].
struct LeakMsgThreshold {
    double real = 0.0;
    std::uint64_t K = 0;
    double real_n0 = 0.0;         // same form at n = 0
    double delta_log2K = 0.0;     // log2 real - log2 real_n0
    double base_form_real = 0.0;  // key_threshold_real(delta, M, d), the 4/delta^2 form
};
LeakMsgThreshold key_threshold_leak_msg(double delta, double M, double d, double n);

/// delta log2 d for n = 0, delta (log2 M - n) otherwise. An order-of-magnitude
/// scale, not a certified constant.
double iacc_scaling(double delta, double M, double d, double n = 0.0);

struct PfailLeak {
    double key_raw = 0.0;         // delta^3 K^{1-gamma}/4 - delta ln M - (2d/M) ln(5/delta)
    double key_union = 0.0;       // key_raw - K^{1-gamma} ln K / M
    double msg_prefactor = 0.0;   // M 2^{-n}
    double msg_raw = 0.0;         // delta^3 K/4 - delta (ln M - n) - 2^{n+1} (d/M) ln(5/delta)
    double msg_union = 0.0;       // msg_raw - ln M
};
PfailLeak pfail_leak(double delta, double M, double d, double K, double gamma, double n);

struct KeyRateReport {
    std::uint64_t K_threshold = 1;
    double K_threshold_real = 0.0;
    double log2K_bits = 0.0;
    double K_evaluated = 0.0;     // key count the coefficients below refer to
    double pfail_exponent = 0.0;  // raw coefficient of the regime that set K_threshold
    double iacc_bound_bits = 0.0;
    std::string regime_flags;     // base | key-leak | message-leak
    bool feasible = false;        // every applicable coefficient > 0 at K_evaluated
    PfailLeak leak;
};

/// Base threshold, raised to the key-leak and message-leak thresholds when
/// gamma > 0 or n > 0; the largest applicable one is reported. Coefficients
/// are evaluated at `K` when given, else at K_threshold.
KeyRateReport key_rate_report(const KeyRateQuery &q, std::optional<double> K = std::nullopt);

}  // namespace qdl
