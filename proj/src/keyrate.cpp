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

#include "qdl/keyrate.hpp"

#include <cmath>
#include <string>

#include "qdl/errors.hpp"

namespace qdl {

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        fail(ErrorKind::Domain, "delta must lie in (0, 1), got " + std::to_string(delta));
}

void check_sizes(double M, double d) {
    if (!(M >= 1.0 && d >= 1.0)) fail(ErrorKind::Domain, "M and d must be >= 1");
}

}  // namespace

void KeyRateQuery::validate() const {
    check_delta(delta);
    check_sizes(M, d);
    if (!(gamma >= 0.0 && gamma < 1.0)) fail(ErrorKind::Domain, "gamma must lie in [0, 1)");
    if (!(n_leaked >= 0.0 && n_leaked < std::log2(M)))
        fail(ErrorKind::Domain, "leaked message bits n must satisfy 0 <= n < log2 M");
}

std::uint64_t smallest_integer_above(double real) {
    if (!(real < 0x1.0p53)) fail(ErrorKind::Capacity, "key threshold exceeds 2^53");
    if (real < 0.0) return 1;
    const double k = std::floor(real) + 1.0;
    return static_cast<std::uint64_t>(k < 1.0 ? 1.0 : k);
}

double key_threshold_real(double delta, double M, double d) {
    check_delta(delta);
    check_sizes(M, d);
    return 4.0 / (delta * delta) * (std::log(M) + 2.0 * d / (delta * M) * std::log(5.0 / delta));
}

std::uint64_t key_threshold(double delta, double M, double d) {
    return smallest_integer_above(key_threshold_real(delta, M, d));
}

double pfail_exponent(double delta, double M, double d, double K) {
    return delta * delta * delta * K / 4.0 - delta * std::log(M) - 2.0 * d / M * std::log(5.0 / delta);
}

LeakKeyThreshold key_threshold_leak_key(double delta, double M, double gamma) {
    check_delta(delta);
    check_sizes(M, 1.0);
    if (!(gamma >= 0.0 && gamma < 1.0)) fail(ErrorKind::Domain, "gamma must lie in [0, 1)");
    LeakKeyThreshold t;
    t.base = 4.0 / (delta * delta) * (std::log(M) + 2.0 / (delta * delta) * std::log(5.0 / delta));
    t.cond1_real = std::pow(t.base, 1.0 / (1.0 - gamma));
    t.cond2_real = std::pow(t.base, 1.0 + gamma);
    t.K_cond1 = smallest_integer_above(t.cond1_real);
    t.K_cond2 = static_cast<std::uint64_t>(std::ceil(t.cond2_real));
    if (t.K_cond2 < 1) t.K_cond2 = 1;
    t.log2K_bits = (1.0 + gamma) * std::log2(t.base);
    return t;
}

LeakMsgThreshold key_threshold_leak_msg(double delta, double M, double d, double n) {
    check_delta(delta);
    check_sizes(M, d);
    if (!(n >= 0.0 && n < std::log2(M))) fail(ErrorKind::Domain, "leaked message bits n must satisfy 0 <= n < log2 M");
    auto form = [&](double bits) {
        const double ln_m = std::log(M);
        return 4.0 / (delta * delta * delta) *
               (ln_m + delta * (ln_m - bits) + std::exp2(bits + 1.0) * d / M * std::log(5.0 / delta));
    };
    LeakMsgThreshold t;
    t.real = form(n);
    t.K = smallest_integer_above(t.real);
    t.real_n0 = form(0.0);
    t.delta_log2K = std::log2(t.real) - std::log2(t.real_n0);
    t.base_form_real = key_threshold_real(delta, M, d);
    return t;
}

double iacc_scaling(double delta, double M, double d, double n) {
    if (n > 0.0) return delta * (std::log2(M) - n);
    return delta * std::log2(d);
}

PfailLeak pfail_leak(double delta, double M, double d, double K, double gamma, double n) {
    PfailLeak p;
    const double ln5 = std::log(5.0 / delta), ln_m = std::log(M), d3 = delta * delta * delta;
    const double k_free = std::pow(K, 1.0 - gamma);
    p.key_raw = d3 * k_free / 4.0 - delta * ln_m - 2.0 * d / M * ln5;
    p.key_union = p.key_raw - k_free * std::log(K) / M;
    p.msg_prefactor = M * std::exp2(-n);
    p.msg_raw = d3 * K / 4.0 - delta * (ln_m - n) - std::exp2(n + 1.0) * d / M * ln5;
    p.msg_union = p.msg_raw - ln_m;
    return p;
}

KeyRateReport key_rate_report(const KeyRateQuery &q, std::optional<double> K_eval) {
    q.validate();
    KeyRateReport r;
    r.K_threshold_real = key_threshold_real(q.delta, q.M, q.d);
    r.regime_flags = "base";
    if (q.gamma > 0.0) {
        const LeakKeyThreshold t = key_threshold_leak_key(q.delta, q.M, q.gamma);
        if (t.cond2_real > r.K_threshold_real) {
            r.K_threshold_real = t.cond2_real;
            r.regime_flags = "key-leak";
        }
    }
    if (q.n_leaked > 0.0) {
        const LeakMsgThreshold t = key_threshold_leak_msg(q.delta, q.M, q.d, q.n_leaked);
        if (t.real > r.K_threshold_real) {
            r.K_threshold_real = t.real;
            r.regime_flags = "message-leak";
        }
    }
    r.K_threshold = smallest_integer_above(r.K_threshold_real);
    r.log2K_bits = std::log2(r.K_threshold_real);
    const double K = K_eval ? *K_eval : static_cast<double>(r.K_threshold);
    if (!(K >= 1.0)) fail(ErrorKind::Domain, "K must be >= 1");
    r.K_evaluated = K;
    r.leak = pfail_leak(q.delta, q.M, q.d, K, q.gamma, q.n_leaked);
    r.pfail_exponent = pfail_exponent(q.delta, q.M, q.d, K);
    r.feasible = r.pfail_exponent > 0.0;
    if (q.gamma > 0.0) {
        r.feasible = r.feasible && r.leak.key_union > 0.0;
        if (r.regime_flags == "key-leak") r.pfail_exponent = r.leak.key_raw;
    }
    if (q.n_leaked > 0.0) {
        r.feasible = r.feasible && r.leak.msg_union > 0.0;
        if (r.regime_flags == "message-leak") r.pfail_exponent = r.leak.msg_raw;
    }
    r.iacc_bound_bits = iacc_scaling(q.delta, q.M, q.d, q.n_leaked);
    return r;
}

}  // namespace qdl
