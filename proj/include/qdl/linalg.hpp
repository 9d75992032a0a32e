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

// Thin layer over Eigen for the dense Hermitian work: Gram matrices,
// eigensolves, spectral functions.

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace qdl::linalg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// View `count` contiguous length-d vectors as the d x count matrix W = [v_1 ... v_count].
inline Eigen::Map<const Matrix> columns(std::span<const cplx> rows, std::size_t d) {
    return {rows.data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rows.size() / d)};
}

inline Eigen::Map<const Vector> vec(std::span<const cplx> v) {
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

/// max_ij |A_ij - conj(A_ji)|
double hermiticity_defect(const Matrix &a);

/// scale * W W^dagger with the full matrix filled in.
Matrix gram(std::span<const cplx> rows, std::size_t d, double scale = 1.0);

/// True when every entry has a zero imaginary part (binary-alphabet codebooks).
bool is_real(std::span<const cplx> v) noexcept;

/// scale * W W^T for real-valued rows; the imaginary parts are ignored.
Eigen::MatrixXd real_gram(std::span<const cplx> rows, std::size_t d, double scale = 1.0);

struct Spectrum {
    RealVector values;  // ascending
    Matrix vectors;     // columns, empty when not requested
};

/// Dense Hermitian eigensolve. Throws Error(Numeric) if `a` is not Hermitian
/// within `tol` (relative to max |a_ij|).
Spectrum eigh(const Matrix &a, bool with_vectors = true, double tol = 1e-10);

struct ExtremePairs {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double residual_min = 0.0;  // ||A v - lambda v|| for the computed eigenvector
    double residual_max = 0.0;
};

/// Extreme eigenvalues from a values-only solve, eigenvectors by shifted
/// inverse iteration (full solve as fallback). Defined for MatrixXd and MatrixXcd.
template <class M>
ExtremePairs extreme_pairs(const M &a);

/// f applied to the spectrum of a Hermitian matrix.
template <class F>
Matrix spectral_function(const Spectrum &s, F f) {
    RealVector fv(s.values.size());
    for (Eigen::Index i = 0; i < s.values.size(); ++i) fv[i] = f(s.values[i]);
    return s.vectors * fv.asDiagonal() * s.vectors.adjoint();
}

}  // namespace qdl::linalg
