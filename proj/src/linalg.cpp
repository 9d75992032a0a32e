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

#include "qdl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdl/errors.hpp"

namespace qdl::linalg {

double hermiticity_defect(const Matrix &a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Matrix gram(std::span<const cplx> rows, std::size_t d, double scale) {
    if (d == 0 || rows.size() % d != 0) fail(ErrorKind::Shape, "gram: buffer is not a whole number of vectors");
    const auto w = columns(rows, d);
    Matrix x = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    x.selfadjointView<Eigen::Lower>().rankUpdate(w, scale);
    // copy the strict lower triangle to the upper one
    x.triangularView<Eigen::StrictlyUpper>() = x.adjoint().triangularView<Eigen::StrictlyUpper>();
    // diagonal of a Hermitian matrix is real
    x.diagonal() = x.diagonal().real().cast<cplx>();
    return x;
}

bool is_real(std::span<const cplx> v) noexcept {
    return std::all_of(v.begin(), v.end(), [](const cplx &z) { return z.imag() == 0.0; });
}

Eigen::MatrixXd real_gram(std::span<const cplx> rows, std::size_t d, double scale) {
    if (d == 0 || rows.size() % d != 0) fail(ErrorKind::Shape, "real_gram: buffer is not a whole number of vectors");
    const auto n = static_cast<Eigen::Index>(rows.size() / d);
    // real parts sit at even offsets of the interleaved buffer
    const Eigen::Map<const Eigen::MatrixXd, 0, Eigen::Stride<Eigen::Dynamic, 2>> w(
        reinterpret_cast<const double *>(rows.data()), static_cast<Eigen::Index>(d), n,
        Eigen::Stride<Eigen::Dynamic, 2>(static_cast<Eigen::Index>(2 * d), 2));
    const Eigen::MatrixXd packed = w;
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    x.selfadjointView<Eigen::Lower>().rankUpdate(packed, scale);
    x.triangularView<Eigen::StrictlyUpper>() = x.transpose().triangularView<Eigen::StrictlyUpper>();
    return x;
}

Spectrum eigh(const Matrix &a, bool with_vectors, double tol) {
    if (a.rows() != a.cols()) fail(ErrorKind::Shape, "eigh: matrix is not square");
    if (a.size() == 0) fail(ErrorKind::Shape, "eigh: empty matrix");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double defect = hermiticity_defect(a);
    if (!(defect <= tol * scale))
        fail(ErrorKind::Numeric, "eigh: matrix not Hermitian (defect " + std::to_string(defect) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorKind::Numeric, "eigh: eigensolver did not converge");
    Spectrum s;
    s.values = es.eigenvalues();
    if (with_vectors) s.vectors = es.eigenvectors();
    return s;
}

namespace {

// Eigenvector for the extreme eigenvalue `lambda`: the shifted matrix is
// positive definite with a tiny smallest eigenvalue, so a few solves suffice.
template <class M>
bool inverse_iteration(const M &a, double lambda, double scale, bool top, double &residual) {
    using Vec = Eigen::Matrix<typename M::Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index n = a.rows();
    const double eps = 1e-9 * scale + std::numeric_limits<double>::min();
    const M id = M::Identity(n, n);
    const M shifted = top ? M((lambda + eps) * id - a) : M(a - (lambda - eps) * id);
    const Eigen::LLT<M> llt(shifted);
    if (llt.info() != Eigen::Success) return false;
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::cos(0.7 * static_cast<double>(i));
    for (int it = 0; it < 4; ++it) {
        v = llt.solve(v);
        const double nv = v.norm();
        if (!(nv > 0.0) || !std::isfinite(nv)) return false;
        v /= nv;
    }
    residual = (a * v - lambda * v).norm();
    return true;
}

}  // namespace

template <class M>
ExtremePairs extreme_pairs(const M &a) {
    if (a.rows() != a.cols() || a.size() == 0) fail(ErrorKind::Shape, "extreme_pairs: matrix must be square");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (!(defect <= 1e-10 * scale)) fail(ErrorKind::Numeric, "extreme_pairs: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<M> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorKind::Numeric, "extreme_pairs: eigensolver did not converge");
    ExtremePairs out;
    const Eigen::Index last = a.rows() - 1;
    out.lambda_min = es.eigenvalues()[0];
    out.lambda_max = es.eigenvalues()[last];
    const double spread = std::max({std::abs(out.lambda_min), std::abs(out.lambda_max), 1e-300});
    const bool ok = inverse_iteration(a, out.lambda_max, spread, true, out.residual_max) &&
                    inverse_iteration(a, out.lambda_min, spread, false, out.residual_min);
    if (!ok) {
        Eigen::SelfAdjointEigenSolver<M> full(a);
        if (full.info() != Eigen::Success) fail(ErrorKind::Numeric, "extreme_pairs: eigensolver did not converge");
        const auto &v = full.eigenvectors();
        out.residual_min = (a * v.col(0) - out.lambda_min * v.col(0)).norm();
        out.residual_max = (a * v.col(last) - out.lambda_max * v.col(last)).norm();
    }
    return out;
}

template ExtremePairs extreme_pairs<Eigen::MatrixXd>(const Eigen::MatrixXd &);
template ExtremePairs extreme_pairs<Matrix>(const Matrix &);

}  // namespace qdl::linalg
