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

#include <vector>

#include "qdl/rng.hpp"
#include "qdl/simd/kernels.hpp"

using namespace qdl;
using simd::cplx;

namespace {

std::vector<cplx> random_block(std::size_t n, std::uint64_t seed) {
    Stream s(seed);
    std::vector<cplx> v(n);
    for (auto &z : v) {
        const double re = s.normal();
        z = {re, s.normal()};
    }
    return v;
}

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
  protected:
    void SetUp() override {
        if (!simd::avx2_kernels()) GTEST_SKIP() << "AVX2 kernels unavailable on this host";
    }
};

}  // namespace

TEST_P(KernelEquivalence, Overlaps) {
    const std::size_t d = GetParam(), count = 7;
    const auto rows = random_block(count * d, d), x = random_block(d, d + 1);
    std::vector<cplx> a(count), b(count);
    simd::scalar_kernels().overlaps(rows.data(), count, d, x.data(), a.data());
    simd::avx2_kernels()->overlaps(rows.data(), count, d, x.data(), b.data());
    for (std::size_t j = 0; j < count; ++j) EXPECT_NEAR(std::abs(a[j] - b[j]), 0.0, 1e-12 * (1.0 + std::abs(a[j])));
}

TEST_P(KernelEquivalence, OverlapNorms) {
    const std::size_t d = GetParam(), count = 9;
    const auto rows = random_block(count * d, 3 * d), x = random_block(d, 3 * d + 1);
    std::vector<double> a(count), b(count);
    simd::scalar_kernels().overlap_norms(rows.data(), count, d, x.data(), a.data());
    simd::avx2_kernels()->overlap_norms(rows.data(), count, d, x.data(), b.data());
    for (std::size_t j = 0; j < count; ++j) EXPECT_NEAR(a[j], b[j], 1e-12 * (1.0 + a[j]));
}

TEST_P(KernelEquivalence, Combine) {
    const std::size_t d = GetParam(), count = 5;
    const auto rows = random_block(count * d, 5 * d), coeff = random_block(count, 5 * d + 1);
    auto a = random_block(d, 5 * d + 2), b = a;
    simd::scalar_kernels().combine(rows.data(), count, d, coeff.data(), a.data());
    simd::avx2_kernels()->combine(rows.data(), count, d, coeff.data(), b.data());
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-12 * (1.0 + std::abs(a[i])));
}

TEST_P(KernelEquivalence, Abs2) {
    const std::size_t d = GetParam();
    const auto v = random_block(d, 7 * d);
    std::vector<double> a(d), b(d);
    simd::scalar_kernels().abs2(v.data(), d, a.data());
    simd::avx2_kernels()->abs2(v.data(), d, b.data());
    for (std::size_t i = 0; i < d; ++i) EXPECT_DOUBLE_EQ(a[i], b[i]);
}

INSTANTIATE_TEST_SUITE_P(OddAndEvenDims, KernelEquivalence, ::testing::Values(1, 2, 3, 4, 5, 7, 8, 13, 31, 64, 65, 127));

TEST(KernelScalar, OverlapIsConjugateLinearInRow) {
    const std::vector<cplx> row = {{0.0, 1.0}, {2.0, 0.0}};
    const std::vector<cplx> x = {{1.0, 0.0}, {0.0, 1.0}};
    cplx out;
    simd::scalar_kernels().overlaps(row.data(), 1, 2, x.data(), &out);
    // conj(i) * 1 + conj(2) * i = -i + 2i = i
    EXPECT_EQ(out, cplx(0.0, 1.0));
}

TEST(KernelDispatch, SelectScalarAlwaysWorks) {
    ASSERT_TRUE(simd::select_isa(simd::Isa::Scalar));
    EXPECT_EQ(simd::active_isa_name(), "scalar");
    if (simd::avx2_kernels()) {
        ASSERT_TRUE(simd::select_isa(simd::Isa::Avx2));
        EXPECT_EQ(simd::active_isa_name(), "avx2");
    }
}
