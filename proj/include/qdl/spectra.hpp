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
#include <optional>
#include <span>
#include <vector>

#include "qdl/ensemble.hpp"
#include "qdl/linalg.hpp"

namespace qdl {

/// X = (1/n) sum_j |psi_j><psi_j| together with the entry variance of the
/// ensemble the vectors came from (1/d for phase vectors).
struct GramOperator {
    linalg::Matrix matrix;
    std::size_t n = 0;
    double sigma2 = 0.0;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

GramOperator gram_operator(std::span<const Codeword> vectors);
/// `rows` holds n contiguous length-d vectors; sigma2 defaults to 1/d.
GramOperator gram_operator(std::span<const cplx> rows, std::size_t d, std::optional<double> sigma2 = std::nullopt);

struct ExtremeEigenpairs {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double residual_min = 0.0;  // ||X v - lambda v||
    double residual_max = 0.0;
};

/// Smallest and largest eigenvalue; throws Error(Numeric) for a
/// non-Hermitian input or an eigenpair residual above 1e-8.
ExtremeEigenpairs extreme_eigenvalues(const GramOperator &x);

struct BaiYinLimits {
    double y = 0.0;
    std::optional<double> predicted_min;  // only when d <= n
    double predicted_max = 0.0;
};

/// (1 -/+ sqrt y)^2 sigma2 with y = d/n.
BaiYinLimits bai_yin_limits(std::size_t d, std::size_t n, double sigma2);

struct SpectralReport {
    double y = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::optional<double> predicted_min;
    double predicted_max = 0.0;
    double deviation = 0.0;  // max relative gap to the predicted edges
};

SpectralReport spectral_report(const GramOperator &x);

/// One row of the spectral CSV.
struct SpectralTrial {
    std::size_t trial = 0;
    std::size_t d = 0;
    std::size_t n = 0;
    double y = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::optional<double> predicted_min;
    double predicted_max = 0.0;
    bool violated_max = false;
    bool violated_min = false;
};

/// n = M*K phase vectors drawn from the seed of trial `trial` under
/// params.seed; violation flags use slack `delta` in units of sigma2.
SpectralTrial spectral_trial(const ProtocolParams &params, std::size_t trial, double delta);

struct DeviationRate {
    std::size_t trials = 0;
    std::size_t max_violations = 0;
    std::size_t min_violations = 0;
    bool min_checked = false;  // d < n
    double freq_max = 0.0;
    double freq_min = 0.0;
    std::vector<SpectralTrial> rows;

    /// Binomial standard error sqrt(p(1-p)/trials) of freq_max.
    double stderr_max() const noexcept;
};

/// Fraction of trials where lambda_max > [(1+sqrt y)^2 + delta] sigma2 (and
/// lambda_min < [(1-sqrt y)^2 - delta] sigma2 when d < n).
DeviationRate deviation_rate(const ProtocolParams &params, double delta, std::size_t trials, std::size_t workers = 0);

/// Tail bound exp(-K tau^2 / (2 E[X^2])) for the lower deviation of a mean of
/// K i.i.d. positive variables.
double maurer_bound(std::size_t K, double tau, double second_moment);

/// Universal upper bound 2/d^2 on E[|<phi|psi>|^4] over the phase ensemble.
inline double phase_overlap_second_moment(std::size_t d) noexcept {
    return 2.0 / (static_cast<double>(d) * static_cast<double>(d));
}

}  // namespace qdl
