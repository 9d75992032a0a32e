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

#include "qdl/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qdl/entropy.hpp"
#include "qdl/errors.hpp"
#include "qdl/simd/kernels.hpp"

namespace qdl {

namespace {

void require_dim(const Codebook &book, std::size_t n, const char *what) {
    if (n != book.dim())
        fail(ErrorKind::Shape, std::string(what) + ": vector dimension " + std::to_string(n) +
                                   " does not match codebook dimension " + std::to_string(book.dim()));
}

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx &z : v) s += std::norm(z);
    return s;
}

void normalize(std::vector<cplx> &v) {
    const double n = std::sqrt(norm2(v));
    for (cplx &z : v) z /= n;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    cplx c;
    simd::kernels().overlaps(a.data(), 1, a.size(), b.data(), &c);
    return c;
}

// Q_m for every m into q (size M); norms is scratch of size M*K.
void fill_q(const Codebook &book, std::span<const cplx> phi, std::vector<double> &norms, std::vector<double> &q) {
    const std::size_t M = book.messages(), K = book.keys(), d = book.dim();
    norms.resize(M * K);
    q.resize(M);
    simd::kernels().overlap_norms(book.data().data(), M * K, d, phi.data(), norms.data());
    const double inv_k = 1.0 / static_cast<double>(K);
    for (std::size_t m = 0; m < M; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k) s += norms[m * K + k];
        q[m] = s * inv_k;
    }
}

double evaluate_objective(const Codebook &book, std::span<const cplx> phi, std::vector<double> &scratch,
                          std::vector<double> &q) {
    fill_q(book, phi, scratch, q);
    return bound_objective(q);
}

// Largest eigenvalue of sum_m A_m = (1/K) sum_mk |psi_mk><psi_mk|.
double total_operator_norm(const Codebook &book) {
    const auto a = linalg::gram(book.data(), book.dim(), 1.0 / static_cast<double>(book.keys()));
    const auto s = linalg::eigh(a, false);
    return s.values[s.values.size() - 1];
}

// Largest |eta(x) - eta(y)| over x, y in [0, upper] with |x - y| <= t. eta' is
// decreasing, so the extreme windows sit at the two ends of the interval.
double eta_window(double t, double upper) {
    t = std::min(t, upper);
    return std::max(std::abs(eta_unbounded(t)), std::abs(eta_unbounded(upper) - eta_unbounded(upper - t)));
}

}  // namespace

MeasurementVector MeasurementVector::normalized(std::vector<cplx> v) {
    const double n = std::sqrt(norm2(v));
    if (!(n > 0.0)) fail(ErrorKind::Domain, "measurement vector must be nonzero");
    for (cplx &z : v) z /= n;
    return MeasurementVector{std::move(v)};
}

MeasurementVector random_measurement_vector(std::size_t d, Stream &rng) {
    if (d < 1) fail(ErrorKind::Domain, "random_measurement_vector: d must be >= 1");
    std::vector<cplx> v(d);
    for (cplx &z : v) {
        const double re = rng.normal();
        z = {re, rng.normal()};
    }
    return MeasurementVector::normalized(std::move(v));
}

MeasurementVector nearby_measurement_vector(const MeasurementVector &phi, double trace_norm, Stream &rng) {
    if (!(trace_norm >= 0.0 && trace_norm <= 2.0)) fail(ErrorKind::Domain, "trace norm must lie in [0, 2]");
    const std::size_t d = phi.dim();
    if (d < 2) fail(ErrorKind::Domain, "nearby_measurement_vector: d must be >= 2");
    std::vector<cplx> chi;
    double n = 0.0;
    do {
        chi = random_measurement_vector(d, rng).phi;
        const cplx c = inner(phi.phi, chi);
        for (std::size_t i = 0; i < d; ++i) chi[i] -= c * phi.phi[i];
        n = std::sqrt(norm2(chi));
    } while (n < 1e-6);
    const double a = std::asin(trace_norm / 2.0);
    std::vector<cplx> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = std::cos(a) * phi.phi[i] + std::sin(a) * chi[i] / n;
    return MeasurementVector::normalized(std::move(out));
}

double pure_trace_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) fail(ErrorKind::Shape, "pure_trace_distance: dimension mismatch");
    const double f = std::norm(inner(a, b));
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - f));
}

double QVector::total() const noexcept {
    double s = 0.0;
    for (double v : q) s += v;
    return s;
}

QVector q_vector(const Codebook &book, std::span<const cplx> phi, std::string phi_ref) {
    require_dim(book, phi.size(), "q_vector");
    QVector out;
    std::vector<double> scratch;
    fill_q(book, phi, scratch, out.q);
    out.phi_ref = std::move(phi_ref);
    out.params = book.params();
    return out;
}

double bound_objective(std::span<const double> q) noexcept {
    double total = 0.0;
    for (double v : q) total += v;
    return shannon_bits(q) - eta_unbounded(total);
}

std::string_view to_string(MinimizerStrategy s) noexcept {
    switch (s) {
    case MinimizerStrategy::RandomStarts:
        return "random-starts";
    case MinimizerStrategy::Gradient:
        return "gradient";
    case MinimizerStrategy::Net:
        return "net";
    }
    return "?";
}

MinimizerStrategy parse_strategy(std::string_view s) {
    if (s == "random-starts") return MinimizerStrategy::RandomStarts;
    if (s == "gradient") return MinimizerStrategy::Gradient;
    if (s == "net") return MinimizerStrategy::Net;
    fail(ErrorKind::Usage, "unknown minimizer strategy '" + std::string(s) + "' (random-starts|gradient|net)");
}

ObjectiveGradient bound_objective_gradient(const Codebook &book, std::span<const cplx> phi) {
    require_dim(book, phi.size(), "bound_objective_gradient");
    const std::size_t M = book.messages(), K = book.keys(), d = book.dim();
    const auto &kern = simd::kernels();

    std::vector<cplx> c(M * K);
    kern.overlaps(book.data().data(), M * K, d, phi.data(), c.data());
    std::vector<double> norms(M * K);
    kern.abs2(c.data(), c.size(), norms.data());

    std::vector<double> q(M);
    const double inv_k = 1.0 / static_cast<double>(K);
    for (std::size_t m = 0; m < M; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k) s += norms[m * K + k];
        q[m] = s * inv_k;
    }
    double total = 0.0;
    for (double v : q) total += v;

    ObjectiveGradient out;
    out.value = shannon_bits(q) - eta_unbounded(total);
    // dF/dQ_m = log2(S / Q_m); dQ_m/d conj(phi) = (1/K) sum_k psi_mk <psi_mk|phi>
    constexpr double tiny = std::numeric_limits<double>::min();
    for (std::size_t m = 0; m < M; ++m) {
        const double w = std::log2(std::max(total, tiny) / std::max(q[m], tiny)) * inv_k;
        for (std::size_t k = 0; k < K; ++k) c[m * K + k] *= w;
    }
    out.gradient.assign(d, cplx{});
    kern.combine(book.data().data(), M * K, d, c.data(), out.gradient.data());
    return out;
}

IaccBound iacc_upper_bound(const Codebook &book, MinimizerStrategy strategy, const MinimizerOptions &opts) {
    const std::size_t d = book.dim(), M = book.messages();
    const double log_m = std::log2(static_cast<double>(M));
    const double scale = static_cast<double>(d) / static_cast<double>(M);

    IaccBound out;
    out.strategy = strategy;
    out.min_objective = std::numeric_limits<double>::infinity();
    std::vector<double> scratch, q;

    if (strategy == MinimizerStrategy::Net) {
        if (d > 3) fail(ErrorKind::Capacity, "net strategy needs d <= 3 (net cardinality grows as (5/delta)^{2d})");
        if (!(opts.net_delta > 0.0 && opts.net_delta <= 0.5))
            fail(ErrorKind::Domain, "net strategy needs net_delta in (0, 0.5]");
        const EpsilonNet net = epsilon_net(d, opts.net_delta);
        std::size_t best = 0;
        for (std::size_t i = 0; i < net.size(); ++i) {
            const double f = evaluate_objective(book, net.vector(i), scratch, q);
            if (f < out.min_objective) {
                out.min_objective = f;
                best = i;
            }
        }
        out.evaluations = net.size();
        const auto v = net.vector(best);
        out.phi_star.phi.assign(v.begin(), v.end());
        // Any phi has a net point phi_i with trace distance <= delta, and then
        // ||Q(phi) - Q(phi_i)||_1 <= delta * ||sum_m A_m||. Bound how far the
        // objective can move over such a step.
        const double upper = total_operator_norm(book);
        const double t = net.delta * upper;
        const double per_entry = t / static_cast<double>(M);
        const double dh = static_cast<double>(M) * eta_unbounded(std::min(per_entry, 1.0 / std::numbers::e));
        out.net_correction = dh + eta_window(t, upper);
        out.certified = true;
        out.bound_bits = log_m - scale * (out.min_objective - out.net_correction);
        return out;
    }

    for (std::size_t s = 0; s < opts.starts; ++s) {
        Stream rng = make_stream(opts.seed, StreamTag::Start, s);
        MeasurementVector phi = random_measurement_vector(d, rng);

        if (strategy == MinimizerStrategy::RandomStarts) {
            const double f = evaluate_objective(book, phi.phi, scratch, q);
            ++out.evaluations;
            if (f < out.min_objective) {
                out.min_objective = f;
                out.phi_star = phi;
            }
            continue;
        }

        double previous = std::numeric_limits<double>::infinity();
        for (std::size_t it = 0; it <= opts.iterations; ++it) {
            ObjectiveGradient og = bound_objective_gradient(book, phi.phi);
            ++out.evaluations;
            if (og.value < out.min_objective) {
                out.min_objective = og.value;
                out.phi_star = phi;
            }
            if (std::abs(og.value - previous) < opts.tolerance || it == opts.iterations) break;
            previous = og.value;
            // Riemannian step on the unit sphere; the real gradient is 2 * dF/d conj(phi)
            const double radial = inner(phi.phi, og.gradient).real();
            for (std::size_t i = 0; i < d; ++i) {
                const cplx g = og.gradient[i] - radial * phi.phi[i];
                phi.phi[i] -= 2.0 * opts.step * g;
            }
            normalize(phi.phi);
        }
    }
    out.certified = false;
    out.bound_bits = log_m - scale * out.min_objective;
    return out;
}

ExplicitPOVM::ExplicitPOVM(std::size_t d, std::vector<cplx> rows, std::vector<double> weights)
    : d_(d), rows_(std::move(rows)), weights_(std::move(weights)) {
    if (d_ == 0 || rows_.size() != d_ * weights_.size()) fail(ErrorKind::Shape, "POVM rows do not match weights");
    for (double w : weights_)
        if (!(w >= 0.0)) fail(ErrorKind::Domain, "POVM weights must be nonnegative");
}

ExplicitPOVM ExplicitPOVM::computational_basis(std::size_t d) {
    std::vector<cplx> rows(d * d);
    for (std::size_t j = 0; j < d; ++j) rows[j * d + j] = 1.0;
    return ExplicitPOVM(d, std::move(rows), std::vector<double>(d, 1.0));
}

ExplicitPOVM ExplicitPOVM::fourier_basis(std::size_t d) {
    std::vector<cplx> rows;
    rows.reserve(d * d);
    for (std::size_t m = 1; m <= d; ++m) {
        const Codeword f = fourier_state(d, m);
        rows.insert(rows.end(), f.amplitudes.begin(), f.amplitudes.end());
    }
    return ExplicitPOVM(d, std::move(rows), std::vector<double>(d, 1.0));
}

ExplicitPOVM ExplicitPOVM::from_key_slice(const Codebook &book, std::size_t k) {
    std::vector<cplx> rows;
    rows.reserve(book.dim() * book.messages());
    for (std::size_t m = 0; m < book.messages(); ++m) {
        const auto w = book.word(m, k);
        rows.insert(rows.end(), w.begin(), w.end());
    }
    return ExplicitPOVM(book.dim(), std::move(rows), std::vector<double>(book.messages(), 1.0));
}

double ExplicitPOVM::completeness_defect() const {
    const auto w = linalg::columns(rows_, d_);
    const Eigen::Map<const Eigen::VectorXd> mu(weights_.data(), static_cast<Eigen::Index>(weights_.size()));
    const linalg::Matrix sum = w * mu.cast<cplx>().asDiagonal() * w.adjoint();
    const auto n = static_cast<Eigen::Index>(d_);
    return (sum - linalg::Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double measurement_mutual_info(const Codebook &book, const ExplicitPOVM &povm) {
    require_dim(book, povm.dim(), "measurement_mutual_info");
    const double defect = povm.completeness_defect();
    if (defect > 1e-6)
        fail(ErrorKind::Contract, "measurement_mutual_info: POVM completeness violated (defect " +
                                      std::to_string(defect) + ")");
    const std::size_t M = book.messages(), J = povm.size();
    std::vector<double> p(M * J);  // p[m*J + j] = p(y_j | m)
    std::vector<double> scratch, q;
    for (std::size_t j = 0; j < J; ++j) {
        fill_q(book, povm.vector(j), scratch, q);
        for (std::size_t m = 0; m < M; ++m) p[m * J + j] = povm.weights()[j] * q[m];
    }
    std::vector<double> py(J, 0.0);
    double conditional = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        const std::span<const double> row(p.data() + m * J, J);
        conditional += shannon_bits(row);
        for (std::size_t j = 0; j < J; ++j) py[j] += row[j];
    }
    for (double &v : py) v /= static_cast<double>(M);
    conditional /= static_cast<double>(M);
    const double info = shannon_bits(py) - conditional;
    return std::clamp(info, 0.0, std::log2(static_cast<double>(M)));
}

QConcentrationReport q_concentration(const Codebook &book, std::span<const MeasurementVector> phis, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::Domain, "q_concentration: delta must lie in (0, 1)");
    const std::size_t d = book.dim(), M = book.messages(), K = book.keys();
    QConcentrationReport r;
    r.d = d;
    r.M = M;
    r.K = K;
    r.delta = delta;
    r.threshold = (1.0 - delta) / static_cast<double>(d);
    r.maurer_bound = std::exp(-static_cast<double>(K) * delta * delta / 4.0);
    const double root = 1.0 + std::sqrt(static_cast<double>(d) / static_cast<double>(K));
    r.large_edge = (root * root + delta) / static_cast<double>(d);

    std::vector<double> scratch, q;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        require_dim(book, phis[i].dim(), "q_concentration");
        fill_q(book, phis[i].phi, scratch, q);
        std::size_t below = 0;
        for (std::size_t m = 0; m < M; ++m) {
            const bool b = q[m] < r.threshold;
            below += b ? 1 : 0;
            r.max_q = std::max(r.max_q, q[m]);
            r.above_large_edge += q[m] > r.large_edge ? 1 : 0;
            r.rows.push_back({i, m, q[m], b});
        }
        r.below += below;
        r.per_phi_fraction.push_back(static_cast<double>(below) / static_cast<double>(M));
    }
    r.samples = phis.size() * M;
    if (r.samples > 0) {
        r.empirical_frequency = static_cast<double>(r.below) / static_cast<double>(r.samples);
        r.binomial_sigma = std::sqrt(r.maurer_bound * (1.0 - r.maurer_bound) / static_cast<double>(r.samples));
    }
    return r;
}

double gamma_normalization(std::size_t d, std::size_t M, std::size_t K, double delta) {
    if (d < 1 || M < 1 || K < 1) fail(ErrorKind::Domain, "gamma_normalization: d, M, K must be >= 1");
    const double dm = static_cast<double>(d) / static_cast<double>(M);
    const double root = 1.0 + std::sqrt(dm / static_cast<double>(K));
    return dm / (root * root + delta);
}

IncompletePOVM gamma_povm(const Codebook &book, double delta) {
    if (!(delta >= 0.0)) fail(ErrorKind::Domain, "gamma_povm: delta must be >= 0");
    const std::size_t d = book.dim(), M = book.messages(), K = book.keys();
    IncompletePOVM out;
    out.d = d;
    out.delta = delta;
    out.normalization = gamma_normalization(d, M, K, delta);
    const double scale = out.normalization / static_cast<double>(K);
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    out.gammas.reserve(M);
    for (std::size_t m = 0; m < M; ++m) {
        out.gammas.push_back(linalg::gram(book.message_block(m), d, scale));
        const auto s = linalg::eigh(out.gammas.back(), false);
        out.min_eigenvalue = std::min(out.min_eigenvalue, s.values[0]);
    }
    const auto total = linalg::gram(book.data(), d, scale);
    const auto s = linalg::eigh(total, false);
    out.sum_max_eigenvalue = s.values[s.values.size() - 1];
    out.sub_normalized = out.sum_max_eigenvalue <= 1.0 + 1e-8;
    return out;
}

std::vector<double> IncompletePOVM::q_tilde(std::span<const cplx> phi) const {
    if (phi.size() != d) fail(ErrorKind::Shape, "q_tilde: dimension mismatch");
    const auto v = linalg::vec(phi);
    std::vector<double> out(gammas.size());
    for (std::size_t m = 0; m < gammas.size(); ++m) out[m] = v.dot(gammas[m] * v).real();
    return out;
}

LemmaCheck trace_norm_lemma_check(const Codebook &book, std::span<const cplx> phi, std::span<const cplx> phi2,
                                  double delta) {
    require_dim(book, phi.size(), "trace_norm_lemma_check");
    require_dim(book, phi2.size(), "trace_norm_lemma_check");
    LemmaCheck c;
    c.state_trace_norm = pure_trace_distance(phi, phi2);
    if (c.state_trace_norm > delta + 1e-12)
        fail(ErrorKind::Contract, "trace_norm_lemma_check: states are " + std::to_string(c.state_trace_norm) +
                                      " apart in trace norm, above delta = " + std::to_string(delta));
    const QVector a = q_vector(book, phi), b = q_vector(book, phi2);
    for (std::size_t m = 0; m < a.q.size(); ++m) c.lhs += std::abs(a.q[m] - b.q[m]);
    const std::size_t d = book.dim(), M = book.messages(), K = book.keys();
    const double mdr = static_cast<double>(M) / static_cast<double>(d);
    const double root = 1.0 + std::sqrt(1.0 / (mdr * static_cast<double>(K)));
    c.rhs = delta * mdr * (root * root + delta);
    c.rhs_simplified = 2.0 * delta * mdr;
    c.pass = c.lhs <= c.rhs;
    c.pass_simplified = c.lhs <= c.rhs_simplified;
    return c;
}

FannesCheck fannes_audenaert_check(std::span<const double> q1, std::span<const double> q2) {
    if (q1.size() != q2.size() || q1.empty()) fail(ErrorKind::Shape, "fannes_audenaert_check: size mismatch");
    FannesCheck f;
    for (std::size_t m = 0; m < q1.size(); ++m) f.t += std::abs(q1[m] - q2[m]);
    f.lhs = std::abs(shannon_bits(q1) - shannon_bits(q2));
    const double half = std::min(f.t / 2.0, 0.5);
    f.rhs = (f.t / 2.0) * std::log2(static_cast<double>(q1.size())) + h2(half);
    f.pass = f.lhs <= f.rhs;
    return f;
}

QSumSandwich q_sum_sandwich(std::size_t d, std::size_t M, std::size_t K, double delta) {
    const double mdr = static_cast<double>(M) / static_cast<double>(d);
    const double r = std::sqrt(static_cast<double>(d) / (static_cast<double>(M) * static_cast<double>(K)));
    return {mdr * ((1.0 - r) * (1.0 - r) - delta), mdr * ((1.0 + r) * (1.0 + r) + delta)};
}

double entropy_lower_bound(std::size_t d, std::size_t M, double delta) {
    return static_cast<double>(M) / static_cast<double>(d) * (1.0 - 2.0 * delta) * std::log2(static_cast<double>(d));
}

}  // namespace qdl
