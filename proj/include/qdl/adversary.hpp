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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdl/ensemble.hpp"
#include "qdl/linalg.hpp"
#include "qdl/rng.hpp"

namespace qdl {

/// Unit vector |phi> defining a rank-one measurement direction.
struct MeasurementVector {
    std::vector<cplx> phi;

    std::size_t dim() const noexcept { return phi.size(); }
    /// Normalizes `v`; Error(Domain) for the zero vector.
    static MeasurementVector normalized(std::vector<cplx> v);
};

/// Haar-random unit vector (normalized complex Gaussian).
MeasurementVector random_measurement_vector(std::size_t d, Stream &rng);

/// Unit vector at exactly trace distance `trace_norm` (in [0, 2]) from `phi`:
/// cos(a) phi + sin(a) chi with chi a random unit vector orthogonal to phi.
MeasurementVector nearby_measurement_vector(const MeasurementVector &phi, double trace_norm, Stream &rng);

/// || |a><a| - |b><b| ||_1 = 2 sqrt(1 - |<a|b>|^2) for unit vectors.
double pure_trace_distance(std::span<const cplx> a, std::span<const cplx> b);

/// Q_m(phi) = (1/K) sum_k |<phi|psi_mk>|^2.
struct QVector {
    std::vector<double> q;
    std::string phi_ref;
    ProtocolParams params;

    double total() const noexcept;
};

QVector q_vector(const Codebook &book, std::span<const cplx> phi, std::string phi_ref = {});
inline QVector q_vector(const Codebook &book, const MeasurementVector &phi, std::string phi_ref = {}) {
    return q_vector(book, std::span<const cplx>(phi.phi), std::move(phi_ref));
}

/// H[Q] - eta[sum_m Q_m], in bits.
double bound_objective(std::span<const double> q) noexcept;
inline double bound_objective(const QVector &qv) noexcept { return bound_objective(qv.q); }

enum class MinimizerStrategy { RandomStarts, Gradient, Net };

std::string_view to_string(MinimizerStrategy s) noexcept;
MinimizerStrategy parse_strategy(std::string_view s);

struct MinimizerOptions {
    std::size_t starts = 64;
    double step = 0.05;
    std::size_t iterations = 500;
    double tolerance = 1e-9;
    double net_delta = 0.5;  // fineness of the delta-net (strategy Net)
    std::uint64_t seed = 0;
};

struct IaccBound {
    MinimizerStrategy strategy = MinimizerStrategy::Gradient;
    double bound_bits = 0.0;
    double min_objective = 0.0;   // smallest objective found
    double net_correction = 0.0;  // subtracted from min_objective (Net only)
    MeasurementVector phi_star;
    /// Only the Net strategy yields a certified upper bound. The sampled
    /// strategies report log2 M - (d/M) * (a sampled minimum), which can only
    /// under-estimate the rigorous value.
    bool certified = false;
    std::size_t evaluations = 0;

    bool heuristic() const noexcept { return !certified; }
};

/// I_acc <= log2 M - (d/M) min_phi { H[Q(phi)] - eta[sum_m Q_m(phi)] }.
/// Net strategy requires d <= 3 (Error(Capacity) otherwise).
IaccBound iacc_upper_bound(const Codebook &book, MinimizerStrategy strategy, const MinimizerOptions &opts = {});

/// Objective and its gradient with respect to conj(phi) at a unit vector.
struct ObjectiveGradient {
    double value = 0.0;
    std::vector<cplx> gradient;
};
ObjectiveGradient bound_objective_gradient(const Codebook &book, std::span<const cplx> phi);

/// Rank-one POVM {mu_j |phi_j><phi_j|}; vectors stored as J contiguous rows.
class ExplicitPOVM {
  public:
    ExplicitPOVM(std::size_t d, std::vector<cplx> rows, std::vector<double> weights);

    static ExplicitPOVM computational_basis(std::size_t d);
    static ExplicitPOVM fourier_basis(std::size_t d);
    /// Projective measurement onto the k-th key slice of an orthonormal codebook.
    static ExplicitPOVM from_key_slice(const Codebook &book, std::size_t k);

    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const cplx> vector(std::size_t j) const { return std::span<const cplx>(rows_).subspan(j * d_, d_); }
    std::span<const cplx> rows() const noexcept { return rows_; }
    std::span<const double> weights() const noexcept { return weights_; }

    /// max_ij |(sum_j mu_j |phi_j><phi_j| - I)_ij|
    double completeness_defect() const;

  private:
    std::size_t d_;
    std::vector<cplx> rows_;
    std::vector<double> weights_;
};

/// I(M;Y) in bits for uniform messages and p(y_j|m) = mu_j Q_m(phi_j).
/// Error(Contract) if the POVM is incomplete beyond 1e-6.
double measurement_mutual_info(const Codebook &book, const ExplicitPOVM &povm);

struct QConcentrationRow {
    std::size_t phi_id = 0;
    std::size_t m = 0;
    double q = 0.0;
    bool below_threshold = false;
};

struct QConcentrationReport {
    std::size_t d = 0, M = 0, K = 0;
    double delta = 0.0;
    double threshold = 0.0;  // (1 - delta) / d
    std::vector<double> per_phi_fraction;
    std::size_t below = 0;
    std::size_t samples = 0;          // phis * M
    double empirical_frequency = 0.0;
    double binomial_sigma = 0.0;      // sqrt(p(1-p)/samples) at p = maurer bound
    double maurer_bound = 0.0;        // exp(-K delta^2 / 4)
    double max_q = 0.0;
    double large_edge = 0.0;          // [(1 + sqrt(d/K))^2 + delta] / d
    std::size_t above_large_edge = 0;
    std::vector<QConcentrationRow> rows;

    /// empirical_frequency <= maurer_bound + 3 sigma
    bool within_bound() const noexcept { return empirical_frequency <= maurer_bound + 3.0 * binomial_sigma; }
};

QConcentrationReport q_concentration(const Codebook &book, std::span<const MeasurementVector> phis, double delta);

/// Finite set of unit vectors covering all pure states to trace distance delta.
struct EpsilonNet {
    std::size_t d = 0;
    double delta = 0.0;
    std::vector<cplx> rows;  // size() contiguous unit vectors

    std::size_t size() const noexcept { return d == 0 ? 0 : rows.size() / d; }
    std::span<const cplx> vector(std::size_t i) const { return std::span<const cplx>(rows).subspan(i * d, d); }
    /// (5/delta)^{2d}
    double cardinality_bound() const;
};

/// Largest net the constructor will materialize.
inline constexpr std::size_t kMaxNetSize = 4'000'000;

/// Deterministic angular-grid net, d in {2, 3}, delta >= 0.05.
EpsilonNet epsilon_net(std::size_t d, double delta);

struct NearestNetElement {
    std::size_t index = 0;
    double trace_distance = 0.0;
};
NearestNetElement nearest_net_element(const EpsilonNet &net, std::span<const cplx> phi);

struct NetCoverage {
    std::size_t probes = 0;
    std::size_t uncovered = 0;
    double max_distance = 0.0;
};
NetCoverage verify_net(const EpsilonNet &net, std::size_t probes, std::uint64_t seed);

/// Gamma_m = c * (1/K) sum_k |psi_mk><psi_mk|, c = (d/M) [(1 + sqrt(d/(MK)))^2 + delta]^{-1}.
struct IncompletePOVM {
    std::size_t d = 0;
    double delta = 0.0;
    double normalization = 0.0;
    std::vector<linalg::Matrix> gammas;
    double sum_max_eigenvalue = 0.0;
    double min_eigenvalue = 0.0;  // smallest eigenvalue over all Gamma_m
    /// sum_m Gamma_m <= I within 1e-8. False is the rare failure event, reported not thrown.
    bool sub_normalized = false;

    std::vector<double> q_tilde(std::span<const cplx> phi) const;
};

double gamma_normalization(std::size_t d, std::size_t M, std::size_t K, double delta);
IncompletePOVM gamma_povm(const Codebook &book, double delta);

struct LemmaCheck {
    double state_trace_norm = 0.0;  // || |phi><phi| - |phi2><phi2| ||_1
    double lhs = 0.0;               // || Q(phi) - Q(phi2) ||_1
    double rhs = 0.0;               // delta (M/d) [(1 + sqrt(d/(MK)))^2 + delta]
    double rhs_simplified = 0.0;    // 2 delta M / d
    bool pass = false;
    bool pass_simplified = false;
};

/// Error(Contract) if the state trace norm exceeds delta.
LemmaCheck trace_norm_lemma_check(const Codebook &book, std::span<const cplx> phi, std::span<const cplx> phi2,
                                  double delta);

struct FannesCheck {
    double lhs = 0.0;  // |H(Q) - H(Q2)|
    double rhs = 0.0;  // (t/2) log2 M + h2(t/2), t = ||Q - Q2||_1
    double t = 0.0;
    bool pass = false;
};
FannesCheck fannes_audenaert_check(std::span<const double> q1, std::span<const double> q2);

/// (M/d) [(1 -/+ sqrt(d/(MK)))^2 -/+ delta]: range of sum_m Q_m(phi).
struct QSumSandwich {
    double lower = 0.0;
    double upper = 0.0;
};
QSumSandwich q_sum_sandwich(std::size_t d, std::size_t M, std::size_t K, double delta);

/// (M/d)(1 - 2 delta) log2 d
double entropy_lower_bound(std::size_t d, std::size_t M, double delta);

}  // namespace qdl
