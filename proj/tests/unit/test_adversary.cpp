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
#include <optional>

#include "oracle_values.hpp"
#include "qdl/adversary.hpp"
#include "qdl/entropy.hpp"
#include "qdl/errors.hpp"

using namespace qdl;

namespace {

std::vector<cplx> basis(std::size_t d, std::size_t i) {
    std::vector<cplx> v(d);
    v[i] = 1.0;
    return v;
}

std::optional<ErrorKind> kind_of(auto &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace

TEST(Entropy, EtaValues) {
    EXPECT_EQ(eta(0.0), 0.0);
    EXPECT_EQ(eta(1.0), 0.0);
    EXPECT_NEAR(eta(0.5), 0.5, 1e-15);
    EXPECT_NEAR(eta(0.25), 0.5, 1e-15);
    EXPECT_NEAR(eta(1.0 / std::exp(1.0)), 1.0 / (std::exp(1.0) * std::log(2.0)), 1e-15);
    EXPECT_THROW(eta(1.5), Error);
    EXPECT_THROW(eta(-0.1), Error);
    EXPECT_NEAR(eta_unbounded(2.0), -2.0, 1e-15);
    EXPECT_NEAR(h2(0.5), 1.0, 1e-15);
    EXPECT_EQ(h2(0.0), 0.0);
}

TEST(QVector, MatchesDoubleLoop) {
    const Codebook book = sample_codebook({12, 5, 7, Alphabet::Uniform, 3});
    Stream rng(9);
    const MeasurementVector phi = random_measurement_vector(12, rng);
    const QVector q = q_vector(book, phi);
    for (std::size_t m = 0; m < 5; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < 7; ++k) {
            cplx ip{};
            const auto w = book.word(m, k);
            for (std::size_t i = 0; i < 12; ++i) ip += std::conj(phi.phi[i]) * w[i];
            s += std::norm(ip);
        }
        EXPECT_NEAR(q.q[m], s / 7.0, 1e-12);
    }
}

TEST(QVector, ComputationalBasisIsFlat) {
    const Codebook book = sample_codebook({16, 4, 3, Alphabet::Binary, 1});
    for (std::size_t i = 0; i < 16; ++i)
        for (double x : q_vector(book, basis(16, i)).q) EXPECT_NEAR(x, 1.0 / 16.0, 1e-15);
    const double mi = measurement_mutual_info(book, ExplicitPOVM::computational_basis(16));
    EXPECT_NEAR(mi, 0.0, 1e-12);
}

TEST(Objective, UniformQFrozenValues) {
    const std::vector<double> q8(4, 1.0 / 8.0), q64(32, 1.0 / 64.0);
    EXPECT_NEAR(bound_objective(q8), oracle::kUniformObjective8x4, 1e-14);
    EXPECT_NEAR(bound_objective(q64), oracle::kUniformObjective64x32, 1e-14);
    EXPECT_NEAR(std::log2(4.0) - 2.0 * bound_objective(q8), 0.0, 1e-13);
    EXPECT_NEAR(std::log2(32.0) - 2.0 * bound_objective(q64), 0.0, 1e-13);
}

TEST(Objective, GradientMatchesFiniteDifference) {
    const Codebook book = sample_codebook({5, 3, 4, Alphabet::Uniform, 2});
    Stream rng(5);
    const MeasurementVector phi = random_measurement_vector(5, rng);
    const ObjectiveGradient g = bound_objective_gradient(book, phi.phi);
    EXPECT_NEAR(g.value, bound_objective(q_vector(book, phi)), 1e-14);
    const double h = 1e-6;
    for (std::size_t i = 0; i < 5; ++i) {
        for (cplx dir : {cplx(1, 0), cplx(0, 1)}) {
            auto p = phi.phi, m = phi.phi;
            p[i] += h * dir;
            m[i] -= h * dir;
            const double fd = (bound_objective(q_vector(book, std::span<const cplx>(p))) -
                               bound_objective(q_vector(book, std::span<const cplx>(m)))) /
                              (2 * h);
            // df = 2 Re(conj(g) dphi)
            EXPECT_NEAR(fd, 2.0 * std::real(std::conj(g.gradient[i]) * dir), 1e-6);
        }
    }
}

TEST(Iacc, SingleKeyUnitaryIsFullyLeaked) {
    const Codebook book = unitary_codebook(4, 1, Alphabet::Uniform, 6);
    EXPECT_NEAR(bound_objective(q_vector(book, book.word(2, 0))), 0.0, 1e-12);
    MinimizerOptions o;
    o.starts = 16;
    o.seed = 1;
    const IaccBound b = iacc_upper_bound(book, MinimizerStrategy::Gradient, o);
    EXPECT_NEAR(b.bound_bits, std::log2(4.0), 1e-3);
    EXPECT_TRUE(b.heuristic());
    EXPECT_NEAR(measurement_mutual_info(book, ExplicitPOVM::from_key_slice(book, 0)), 2.0, 1e-10);
}

TEST(Iacc, SampledStrategiesAreFlaggedHeuristic) {
    const Codebook book = sample_codebook({8, 4, 16, Alphabet::Uniform, 3});
    MinimizerOptions o;
    o.starts = 8;
    o.iterations = 50;
    for (auto s : {MinimizerStrategy::RandomStarts, MinimizerStrategy::Gradient}) {
        const IaccBound b = iacc_upper_bound(book, s, o);
        EXPECT_FALSE(b.certified);
        EXPECT_LE(b.bound_bits, std::log2(4.0) + 1e-12);
        EXPECT_NEAR(b.bound_bits, 2.0 - 2.0 * b.min_objective, 1e-12);
    }
}

TEST(Iacc, GradientNoWorseThanItsStarts) {
    const Codebook book = sample_codebook({8, 4, 16, Alphabet::Uniform, 3});
    MinimizerOptions o;
    o.starts = 8;
    const IaccBound r = iacc_upper_bound(book, MinimizerStrategy::RandomStarts, o);
    const IaccBound g = iacc_upper_bound(book, MinimizerStrategy::Gradient, o);
    EXPECT_LE(g.min_objective, r.min_objective + 1e-12);
}

TEST(Iacc, NetIsCertifiedAndDominatesSampling) {
    const Codebook book = sample_codebook({2, 2, 4, Alphabet::Uniform, 4});
    MinimizerOptions o;
    o.net_delta = 0.25;
    const IaccBound n = iacc_upper_bound(book, MinimizerStrategy::Net, o);
    const IaccBound g = iacc_upper_bound(book, MinimizerStrategy::Gradient, o);
    EXPECT_TRUE(n.certified);
    EXPECT_GT(n.net_correction, 0.0);
    EXPECT_GE(n.bound_bits, g.bound_bits - 1e-9);
}

TEST(Iacc, NetCapacityAndDomainErrors) {
    const Codebook big = sample_codebook({4, 2, 2, Alphabet::Binary, 1});
    EXPECT_EQ(kind_of([&] { iacc_upper_bound(big, MinimizerStrategy::Net); }), ErrorKind::Capacity);
    const Codebook small = sample_codebook({2, 2, 2, Alphabet::Binary, 1});
    MinimizerOptions o;
    o.net_delta = 0.8;
    EXPECT_EQ(kind_of([&] { iacc_upper_bound(small, MinimizerStrategy::Net, o); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([] { parse_strategy("annealing"); }), ErrorKind::Usage);
    EXPECT_EQ(parse_strategy("net"), MinimizerStrategy::Net);
}

TEST(Povm, FourierAndComputationalAreComplete) {
    EXPECT_LT(ExplicitPOVM::computational_basis(7).completeness_defect(), 1e-15);
    EXPECT_LT(ExplicitPOVM::fourier_basis(7).completeness_defect(), 1e-14);
    const ExplicitPOVM half(2, {1.0, 0.0}, {1.0});
    const Codebook book = sample_codebook({2, 2, 1, Alphabet::Binary, 0});
    EXPECT_EQ(kind_of([&] { measurement_mutual_info(book, half); }), ErrorKind::Contract);
}

TEST(Povm, MutualInformationBounded) {
    const Codebook book = sample_codebook({16, 8, 4, Alphabet::Uniform, 5});
    const double mi = measurement_mutual_info(book, ExplicitPOVM::fourier_basis(16));
    EXPECT_GE(mi, 0.0);
    EXPECT_LE(mi, 3.0);
}

TEST(QConcentration, ThresholdAndBound) {
    const Codebook book = sample_codebook({64, 8, 200, Alphabet::Binary, 2});
    std::vector<MeasurementVector> phis;
    for (std::size_t i = 0; i < 20; ++i) {
        Stream s = make_stream(2, StreamTag::Probe, i);
        phis.push_back(random_measurement_vector(64, s));
    }
    const QConcentrationReport r = q_concentration(book, phis, 0.3);
    EXPECT_NEAR(r.threshold, 0.7 / 64.0, 1e-18);
    EXPECT_NEAR(r.maurer_bound, oracle::kMaurer200, 1e-15);
    EXPECT_EQ(r.samples, 160u);
    EXPECT_EQ(r.rows.size(), 160u);
    EXPECT_TRUE(r.within_bound());
}

TEST(Net, SmallNetCoversSphere) {
    const EpsilonNet net = epsilon_net(2, 0.5);
    EXPECT_LE(net.size(), 100u);
    EXPECT_LE(static_cast<double>(net.size()), net.cardinality_bound());
    EXPECT_NEAR(net.cardinality_bound(), 10000.0, 1e-9);
    const NetCoverage c = verify_net(net, 10000, 7);
    EXPECT_EQ(c.uncovered, 0u);
    EXPECT_LE(c.max_distance, 0.5);
    const NearestNetElement self = nearest_net_element(net, net.vector(13));
    EXPECT_NEAR(self.trace_distance, 0.0, 1e-6);
}

TEST(Net, ThreeDimensionsCovered) {
    const EpsilonNet net = epsilon_net(3, 0.5);
    EXPECT_EQ(verify_net(net, 2000, 3).uncovered, 0u);
}

TEST(Net, Errors) {
    EXPECT_EQ(kind_of([] { epsilon_net(4, 0.5); }), ErrorKind::Capacity);
    EXPECT_EQ(kind_of([] { epsilon_net(3, 0.01); }), ErrorKind::Capacity);
    EXPECT_EQ(kind_of([] { epsilon_net(1, 0.5); }), ErrorKind::Domain);
}

TEST(GammaPovm, NormalizationFrozenValue) {
    EXPECT_NEAR(gamma_normalization(64, 32, 64, 0.1), oracle::kGammaNorm64x32x64, 1e-14);
}

TEST(GammaPovm, QTildeIsScaledQ) {
    const Codebook book = sample_codebook({64, 32, 64, Alphabet::Binary, 1});
    const IncompletePOVM g = gamma_povm(book, 0.1);
    EXPECT_EQ(g.gammas.size(), 32u);
    EXPECT_GE(g.min_eigenvalue, -1e-12);
    Stream rng(3);
    const MeasurementVector phi = random_measurement_vector(64, rng);
    const auto qt = g.q_tilde(phi.phi);
    const auto q = q_vector(book, phi).q;
    for (std::size_t m = 0; m < 32; ++m) EXPECT_NEAR(qt[m], g.normalization * q[m], 1e-13);
    EXPECT_EQ(g.sub_normalized, g.sum_max_eigenvalue <= 1.0 + 1e-8);
}

TEST(Lemma, IdenticalStatesGiveZero) {
    const Codebook book = sample_codebook({16, 4, 8, Alphabet::Uniform, 2});
    Stream rng(1);
    const MeasurementVector phi = random_measurement_vector(16, rng);
    const LemmaCheck c = trace_norm_lemma_check(book, phi.phi, phi.phi, 0.1);
    EXPECT_NEAR(c.lhs, 0.0, 1e-15);
    EXPECT_TRUE(c.pass);
    EXPECT_NEAR(c.rhs_simplified, 2 * 0.1 * 4 / 16.0, 1e-15);
}

TEST(Lemma, DistanceAboveDeltaIsContractError) {
    const Codebook book = sample_codebook({4, 2, 2, Alphabet::Uniform, 2});
    const auto a = basis(4, 0), b = basis(4, 1);
    EXPECT_NEAR(pure_trace_distance(a, b), 2.0, 1e-15);
    EXPECT_EQ(kind_of([&] { trace_norm_lemma_check(book, a, b, 0.5); }), ErrorKind::Contract);
    EXPECT_NO_THROW(trace_norm_lemma_check(book, a, b, 2.0));
}

TEST(Lemma, NearbyVectorAtRequestedDistance) {
    Stream rng(8);
    const MeasurementVector phi = random_measurement_vector(10, rng);
    for (double t : {0.0, 0.1, 0.5, 1.9}) {
        const MeasurementVector p2 = nearby_measurement_vector(phi, t, rng);
        EXPECT_NEAR(pure_trace_distance(phi.phi, p2.phi), t, 1e-7);
    }
}

TEST(Lemma, HoldsOnRandomPairs) {
    const Codebook book = sample_codebook({64, 32, 64, Alphabet::Binary, 5});
    Stream rng(2);
    for (int i = 0; i < 20; ++i) {
        const MeasurementVector phi = random_measurement_vector(64, rng);
        const MeasurementVector p2 = nearby_measurement_vector(phi, 0.1 * (1 - 1e-12), rng);
        const LemmaCheck c = trace_norm_lemma_check(book, phi.phi, p2.phi, 0.1);
        EXPECT_TRUE(c.pass);
        const FannesCheck f = fannes_audenaert_check(q_vector(book, phi).q, q_vector(book, p2).q);
        EXPECT_TRUE(f.pass);
    }
}

TEST(Fannes, KnownCases) {
    const std::vector<double> p{0.5, 0.5}, q{1.0, 0.0};
    const FannesCheck f = fannes_audenaert_check(p, q);
    EXPECT_NEAR(f.t, 1.0, 1e-15);
    EXPECT_NEAR(f.lhs, 1.0, 1e-15);
    EXPECT_NEAR(f.rhs, 0.5 + h2(0.5), 1e-15);
    EXPECT_TRUE(f.pass);
}

TEST(Sandwich, EntropyBoundAndRange) {
    const QSumSandwich s = q_sum_sandwich(64, 32, 64, 0.1);
    const double y = std::sqrt(64.0 / (32 * 64));
    EXPECT_NEAR(s.lower, 0.5 * ((1 - y) * (1 - y) - 0.1), 1e-15);
    EXPECT_NEAR(s.upper, 0.5 * ((1 + y) * (1 + y) + 0.1), 1e-15);
    EXPECT_NEAR(entropy_lower_bound(64, 32, 0.1), 0.5 * 0.8 * 6.0, 1e-15);
}

TEST(Sandwich, HoldsForSampledPhi) {
    const Codebook book = sample_codebook({32, 16, 32, Alphabet::Uniform, 2});
    const QSumSandwich s = q_sum_sandwich(32, 16, 32, 0.3);
    Stream rng(4);
    for (int i = 0; i < 20; ++i) {
        const double t = q_vector(book, random_measurement_vector(32, rng)).total();
        EXPECT_GE(t, s.lower);
        EXPECT_LE(t, s.upper);
    }
}
