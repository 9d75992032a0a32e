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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracle_values.hpp"
#include "qdl/errors.hpp"
#include "qdl/keyrate.hpp"
#include "qdl/rng.hpp"

using namespace qdl;

namespace {

constexpr double kM = 1048576.0;  // 2^20

double fitted_slope(const std::vector<double> &x, const std::vector<double> &y) {
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

}  // namespace

TEST(KeyThreshold, FrozenValue) {
    EXPECT_NEAR(key_threshold_real(0.1, kM, 10 * kM) / oracle::kKeyThresholdReal, 1.0, 1e-13);
    EXPECT_EQ(key_threshold(0.1, kM, 10 * kM), oracle::kKeyThreshold);
}

TEST(KeyThreshold, SmallestIntegerAbove) {
    EXPECT_EQ(smallest_integer_above(3.0), 4u);
    EXPECT_EQ(smallest_integer_above(3.2), 4u);
    EXPECT_EQ(smallest_integer_above(0.0), 1u);
    EXPECT_THROW(smallest_integer_above(1e17), Error);
}

TEST(KeyThreshold, Monotone) {
    EXPECT_GT(key_threshold_real(0.05, kM, 10 * kM), key_threshold_real(0.1, kM, 10 * kM));
    EXPECT_GT(key_threshold_real(0.1, 2 * kM, 20 * kM), key_threshold_real(0.1, kM, 10 * kM));
    EXPECT_GT(key_threshold_real(0.1, kM, 20 * kM), key_threshold_real(0.1, kM, 10 * kM));
    EXPECT_GT(key_threshold(0.05, kM, 20 * kM), 4 * key_threshold(0.1, kM, 10 * kM));
}

TEST(KeyThreshold, DualToExponentSign) {
    Stream rng(17);
    for (int i = 0; i < 1000; ++i) {
        const double delta = 0.02 + 0.9 * rng.uniform();
        const double M = std::exp2(1.0 + 30.0 * rng.uniform());
        const double d = M * (1.0 + 100.0 * rng.uniform());
        const std::uint64_t K = key_threshold(delta, M, d);
        EXPECT_GT(pfail_exponent(delta, M, d, static_cast<double>(K)), 0.0);
        if (K > 1) {
            EXPECT_LE(pfail_exponent(delta, M, d, static_cast<double>(K - 1)), 1e-9 * K);
        }
    }
}

TEST(LeakKey, GammaZeroIsBase) {
    const LeakKeyThreshold t = key_threshold_leak_key(0.1, kM, 0.0);
    EXPECT_NEAR(t.base / oracle::kLeakKeyBase, 1.0, 1e-13);
    EXPECT_NEAR(t.cond1_real, t.base, 1e-6);
    EXPECT_NEAR(t.cond2_real, t.base, 1e-6);
}

TEST(LeakKey, FrozenCondition) {
    const LeakKeyThreshold t = key_threshold_leak_key(0.1, kM, 0.2);
    EXPECT_EQ(t.K_cond2, oracle::kLeakKeyCond2Gamma02);
    EXPECT_NEAR(t.log2K_bits / std::log2(t.base), 1.2, 1e-9);
    EXPECT_GT(t.cond1_real, t.cond2_real);  // 1/(1-gamma) > 1+gamma
}

TEST(LeakMsg, SlopeInLeakedBits) {
    std::vector<double> n, y;
    for (int b = 4; b <= 10; ++b) {
        n.push_back(b);
        y.push_back(std::log2(key_threshold_leak_msg(0.1, kM, kM / 0.1, b).real));
    }
    EXPECT_NEAR(fitted_slope(n, y), oracle::kMessageSlope, 1e-10);
    y.clear();
    for (int b = 4; b <= 10; ++b) y.push_back(std::log2(key_threshold_leak_msg(0.1, kM, kM * 0.1, b).real));
    EXPECT_NEAR(fitted_slope(n, y), oracle::kMessageSlopeLiteral, 1e-10);
}

TEST(LeakMsg, ZeroLeakForm) {
    const LeakMsgThreshold t = key_threshold_leak_msg(0.1, kM, 10 * kM, 0.0);
    EXPECT_EQ(t.real, t.real_n0);
    EXPECT_EQ(t.delta_log2K, 0.0);
    EXPECT_NEAR(t.base_form_real, key_threshold_real(0.1, kM, 10 * kM), 1e-6);
}

TEST(PfailLeak, UnionBelowRawAndPrefactorHalves) {
    const PfailLeak a = pfail_leak(0.1, kM, 10 * kM, 1e7, 0.1, 3.0);
    const PfailLeak b = pfail_leak(0.1, kM, 10 * kM, 1e7, 0.1, 4.0);
    EXPECT_LE(a.key_union, a.key_raw);
    EXPECT_LE(a.msg_union, a.msg_raw);
    EXPECT_NEAR(a.msg_union, a.msg_raw - std::log(kM), 1e-9);
    EXPECT_NEAR(b.msg_prefactor, a.msg_prefactor / 2.0, 1e-9);
    EXPECT_NEAR(a.msg_prefactor, kM / 8.0, 1e-9);
}

TEST(PfailLeak, ZeroLeakRawMatchesBase) {
    const PfailLeak p = pfail_leak(0.1, kM, 10 * kM, 5e5, 0.0, 0.0);
    EXPECT_NEAR(p.key_raw, pfail_exponent(0.1, kM, 10 * kM, 5e5), 1e-9);
}

TEST(Scaling, IaccScale) {
    EXPECT_NEAR(iacc_scaling(0.1, 1024, 8192), 0.1 * 13.0, 1e-12);
    EXPECT_NEAR(iacc_scaling(0.1, 1024, 8192, 4.0), 0.1 * 6.0, 1e-12);
}

TEST(Report, BaseRegime) {
    const KeyRateReport r = key_rate_report({0.1, kM, 10 * kM, 0.0, 0.0});
    EXPECT_EQ(r.K_threshold, oracle::kKeyThreshold);
    EXPECT_EQ(r.regime_flags, "base");
    EXPECT_TRUE(r.feasible);
    EXPECT_GT(r.pfail_exponent, 0.0);
    const KeyRateReport low = key_rate_report({0.1, kM, 10 * kM, 0.0, 0.0}, 1000.0);
    EXPECT_FALSE(low.feasible);
}

TEST(Report, LeakageRaisesThreshold) {
    const KeyRateReport base = key_rate_report({0.1, kM, 10 * kM, 0.0, 0.0});
    const KeyRateReport key = key_rate_report({0.1, kM, 10 * kM, 0.2, 0.0});
    const KeyRateReport msg = key_rate_report({0.1, kM, 10 * kM, 0.0, 4.0});
    EXPECT_GT(key.K_threshold, base.K_threshold);
    EXPECT_GT(msg.K_threshold, base.K_threshold);
    EXPECT_NE(key.regime_flags, "base");
    EXPECT_NE(msg.regime_flags, "base");
}

TEST(Report, DomainErrors) {
    auto kind = [](KeyRateQuery q) {
        try {
            q.validate();
        } catch (const Error &e) {
            return e.kind() == ErrorKind::Domain;
        }
        return false;
    };
    EXPECT_TRUE(kind({1.5, 4, 8, 0, 0}));
    EXPECT_TRUE(kind({0.0, 4, 8, 0, 0}));
    EXPECT_TRUE(kind({0.1, 4, 8, 1.0, 0}));
    EXPECT_TRUE(kind({0.1, 4, 8, 0, 2.0}));
    EXPECT_TRUE(kind({0.1, 0.5, 8, 0, 0}));
    EXPECT_FALSE(kind({0.1, 4, 8, 0.5, 1.0}));
    EXPECT_THROW(key_threshold_leak_key(0.1, kM, -0.1), Error);
}
