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

#include "oracle_values.hpp"
#include "qdl/decoder.hpp"
#include "qdl/errors.hpp"

using namespace qdl;

TEST(Pgm, OrthonormalSliceGivesProjectors) {
    const Codebook book = unitary_codebook(6, 2, Alphabet::Uniform, 3);
    for (std::size_t k = 0; k < 2; ++k) {
        const PGM pgm = build_pgm(book, k);
        EXPECT_EQ(pgm.support_rank, 6u);
        for (std::size_t m = 0; m < 6; ++m) {
            const auto v = linalg::vec(book.word(m, k));
            EXPECT_LT((pgm.element(m) - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        }
        EXPECT_NEAR(success_probability(pgm, book, k), 1.0, 1e-10);
    }
}

TEST(Pgm, SingleMessageIsProjectorAndSucceeds) {
    const Codebook book = sample_codebook({16, 1, 2, Alphabet::Uniform, 4});
    const PGM pgm = build_pgm(book, 1);
    const auto v = linalg::vec(book.word(0, 1));
    EXPECT_LT((pgm.element(0) - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(success_probability(pgm, book, 1), 1.0, 1e-12);
}

TEST(Pgm, ElementsSumToSupportProjector) {
    const Codebook book = sample_codebook({64, 4, 1, Alphabet::Uniform, 8});
    const PGM pgm = build_pgm(book, 0);
    // independent assembly: projector onto span of the codewords via QR
    linalg::Matrix psi(64, 4);
    for (std::size_t m = 0; m < 4; ++m) psi.col(m) = linalg::vec(book.word(m, 0));
    const linalg::Matrix q = Eigen::HouseholderQR<linalg::Matrix>(psi).householderQ() * linalg::Matrix::Identity(64, 4);
    EXPECT_LT((pgm.element_sum() - q * q.adjoint()).cwiseAbs().maxCoeff(), 1e-8);
    // residual is the complementary projector, hence positive semidefinite
    EXPECT_GT(linalg::eigh(pgm.residual(), false).values[0], -1e-10);
}

TEST(Pgm, SuccessAboveBoundOnAverage) {
    double sum = 0.0;
    const int books = 20;
    for (int i = 0; i < books; ++i) {
        const Codebook book = sample_codebook({256, 8, 1, Alphabet::Binary, static_cast<std::uint64_t>(i)});
        sum += success_probability(build_pgm(book, 0), book, 0);
    }
    EXPECT_GE(sum / books, pgm_lower_bound(256, 8, 0.05) - 0.02);
    EXPECT_GE(sum / books, 1.0 - 2.0 * std::sqrt(8.0 / 256.0));
}

TEST(Pgm, MismatchedCodebookIsContractError) {
    const Codebook a = sample_codebook({8, 2, 2, Alphabet::Binary, 1});
    const Codebook b = sample_codebook({8, 2, 2, Alphabet::Binary, 2});
    const PGM pgm = build_pgm(a, 0);
    try {
        success_probability(pgm, b, 0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Contract);
    }
    EXPECT_THROW(success_probability(pgm, a, 1), Error);
    EXPECT_THROW(build_pgm(a, 2), Error);
}

TEST(Pgm, OutcomeDistributionSumsToOne) {
    const Codebook book = sample_codebook({32, 4, 1, Alphabet::Uniform, 6});
    const PGM pgm = build_pgm(book, 0);
    const auto p = pgm_outcome_distribution(pgm, book.word(2, 0));
    double s = 0.0;
    for (double x : p) {
        EXPECT_GE(x, 0.0);
        s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_EQ(std::max_element(p.begin(), p.end()) - p.begin(), 2);
    Stream rng(3);
    EXPECT_LE(sample_pgm_outcome(pgm, book.word(2, 0), rng), 4u);
}

TEST(PgmBound, FrozenValues) {
    EXPECT_NEAR(pgm_lower_bound(1024, 16, 0.0), oracle::kPgmBound1024x16, 1e-15);
    EXPECT_NEAR(pgm_lower_bound(32, 32, 0.0), 0.25, 1e-15);
    EXPECT_GT(pgm_lower_bound(1 << 30, 1, 0.0), 0.999);
    EXPECT_THROW(pgm_lower_bound(8, 16, 0.0), Error);
}

TEST(UnitaryDecode, RecoversEveryMessage) {
    const Codebook book = unitary_codebook(8, 3, Alphabet::Uniform, 10);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t m = 0; m < 8; ++m) EXPECT_EQ(unitary_decode(book, k, book.word(m, k)), m);
}

TEST(UnitaryDecode, IdentityUnitaryDecodesFourierStates) {
    const PhaseUnitary id{std::vector<double>(5, 0.0)};
    const Codebook book = unitary_codebook(std::span<const PhaseUnitary>(&id, 1), Alphabet::Uniform, 0);
    for (std::size_t m = 0; m < 5; ++m) EXPECT_EQ(unitary_decode(book, 0, fourier_state(5, m + 1).amplitudes), m);
}

TEST(UnitaryDecode, RobustToSmallNoise) {
    const Codebook book = unitary_codebook(16, 2, Alphabet::Uniform, 11);
    Stream rng(4);
    for (std::size_t m = 0; m < 16; ++m) {
        std::vector<cplx> r(book.word(m, 1).begin(), book.word(m, 1).end());
        for (cplx &z : r) z += 1e-6 * cplx(rng.normal(), rng.normal());
        EXPECT_EQ(unitary_decode(book, 1, r), m);
    }
}

TEST(UnitaryDecode, RequiresUnitaryCodebook) {
    const Codebook book = sample_codebook({4, 4, 1, Alphabet::Binary, 1});
    EXPECT_THROW(unitary_decode(book, 0, book.word(0, 0)), Error);
}
