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

#include "qdl/spectra.hpp"

#include <cmath>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/parallel.hpp"

namespace qdl {

namespace {

ExtremeEigenpairs check_residuals(const linalg::ExtremePairs &p) {
    if (p.residual_min > 1e-8 || p.residual_max > 1e-8)
        fail(ErrorKind::Numeric, "extreme_eigenvalues: eigenpair residual above 1e-8");
    return {p.lambda_min, p.lambda_max, p.residual_min, p.residual_max};
}

}  // namespace

GramOperator gram_operator(std::span<const Codeword> vectors) {
    if (vectors.empty()) fail(ErrorKind::Shape, "gram_operator: empty vector list");
    const std::size_t d = vectors.front().dim();
    std::vector<cplx> rows;
    rows.reserve(d * vectors.size());
    for (const auto &v : vectors) {
        if (v.dim() != d) fail(ErrorKind::Shape, "gram_operator: mixed dimensions");
        rows.insert(rows.end(), v.amplitudes.begin(), v.amplitudes.end());
    }
    return gram_operator(rows, d);
}

GramOperator gram_operator(std::span<const cplx> rows, std::size_t d, std::optional<double> sigma2) {
    if (d == 0 || rows.empty()) fail(ErrorKind::Shape, "gram_operator: empty vector list");
    if (rows.size() % d != 0) fail(ErrorKind::Shape, "gram_operator: mixed dimensions");
    if (d > max_dimension())
        fail(ErrorKind::Capacity, "gram_operator: d=" + std::to_string(d) + " exceeds QDL_MAX_DIM guard");
    const std::size_t n = rows.size() / d;
    GramOperator g;
    g.n = n;
    g.sigma2 = sigma2.value_or(1.0 / static_cast<double>(d));
    g.matrix = linalg::gram(rows, d, 1.0 / static_cast<double>(n));
    return g;
}

ExtremeEigenpairs extreme_eigenvalues(const GramOperator &x) {
    return check_residuals(linalg::extreme_pairs(x.matrix));
}

BaiYinLimits bai_yin_limits(std::size_t d, std::size_t n, double sigma2) {
    if (d < 1 || n < 1) fail(ErrorKind::Domain, "bai_yin_limits: d and n must be >= 1");
    BaiYinLimits b;
    b.y = static_cast<double>(d) / static_cast<double>(n);
    const double r = std::sqrt(b.y);
    b.predicted_max = (1.0 + r) * (1.0 + r) * sigma2;
    if (d <= n) b.predicted_min = (1.0 - r) * (1.0 - r) * sigma2;
    return b;
}

SpectralReport spectral_report(const GramOperator &x) {
    const auto e = extreme_eigenvalues(x);
    const auto b = bai_yin_limits(x.dim(), x.n, x.sigma2);
    SpectralReport r;
    r.y = b.y;
    r.lambda_min = e.lambda_min;
    r.lambda_max = e.lambda_max;
    r.predicted_min = b.predicted_min;
    r.predicted_max = b.predicted_max;
    r.deviation = std::abs(e.lambda_max - b.predicted_max) / b.predicted_max;
    if (b.predicted_min && *b.predicted_min > 0.0)
        r.deviation = std::max(r.deviation, std::abs(e.lambda_min - *b.predicted_min) / *b.predicted_min);
    return r;
}

SpectralTrial spectral_trial(const ProtocolParams &params, std::size_t trial, double delta) {
    ProtocolParams p = params;
    p.seed = derive_key(params.seed, StreamTag::Trial, trial);
    const Codebook book = sample_codebook(p);
    const GramOperator x{{}, p.M * p.K, 1.0 / static_cast<double>(p.d)};
    const double inv_n = 1.0 / static_cast<double>(x.n);
    // binary amplitudes are real, and the real problem is several times cheaper
    const ExtremeEigenpairs e =
        linalg::is_real(book.data())
            ? check_residuals(linalg::extreme_pairs(linalg::real_gram(book.data(), p.d, inv_n)))
            : extreme_eigenvalues(gram_operator(book.data(), p.d));
    const auto b = bai_yin_limits(p.d, x.n, x.sigma2);
    const double r = std::sqrt(b.y);

    SpectralTrial t;
    t.trial = trial;
    t.d = p.d;
    t.n = x.n;
    t.y = b.y;
    t.lambda_min = e.lambda_min;
    t.lambda_max = e.lambda_max;
    t.predicted_min = b.predicted_min;
    t.predicted_max = b.predicted_max;
    t.violated_max = e.lambda_max > ((1.0 + r) * (1.0 + r) + delta) * x.sigma2;
    if (p.d < x.n) t.violated_min = e.lambda_min < ((1.0 - r) * (1.0 - r) - delta) * x.sigma2;
    return t;
}

double DeviationRate::stderr_max() const noexcept {
    if (trials == 0) return 0.0;
    return std::sqrt(freq_max * (1.0 - freq_max) / static_cast<double>(trials));
}

DeviationRate deviation_rate(const ProtocolParams &params, double delta, std::size_t trials, std::size_t workers) {
    if (trials < 1) fail(ErrorKind::Usage, "deviation_rate: trials must be >= 1");
    params.validate();
    DeviationRate out;
    out.trials = trials;
    out.rows.resize(trials);
    parallel_for(trials, workers, [&](std::size_t t) { out.rows[t] = spectral_trial(params, t, delta); });
    for (const auto &r : out.rows) {
        out.max_violations += r.violated_max ? 1 : 0;
        out.min_violations += r.violated_min ? 1 : 0;
    }
    out.min_checked = params.d < params.M * params.K;
    out.freq_max = static_cast<double>(out.max_violations) / static_cast<double>(trials);
    out.freq_min = static_cast<double>(out.min_violations) / static_cast<double>(trials);
    return out;
}

double maurer_bound(std::size_t K, double tau, double second_moment) {
    if (K < 1) fail(ErrorKind::Domain, "maurer_bound: K must be >= 1");
    if (!(tau > 0.0)) fail(ErrorKind::Domain, "maurer_bound: tau must be > 0");
    if (!(second_moment > 0.0)) fail(ErrorKind::Domain, "maurer_bound: E[X^2] must be > 0");
    return std::exp(-static_cast<double>(K) * tau * tau / (2.0 * second_moment));
}

}  // namespace qdl
