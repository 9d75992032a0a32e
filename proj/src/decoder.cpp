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

#include "qdl/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/simd/kernels.hpp"

namespace qdl {

namespace {

linalg::Matrix key_slice(const Codebook &book, std::size_t k) {
    const std::size_t d = book.dim(), M = book.messages();
    linalg::Matrix psi(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(M));
    for (std::size_t m = 0; m < M; ++m) psi.col(static_cast<Eigen::Index>(m)) = linalg::vec(book.word(m, k));
    return psi;
}

}  // namespace

std::uint64_t slice_fingerprint(const Codebook &book, std::size_t k) {
    const auto &p = book.params();
    std::uint64_t h = mix64(p.d ^ mix64(p.M ^ mix64(p.K ^ mix64(p.seed + k))));
    for (std::size_t m = 0; m < book.messages(); ++m)
        for (const cplx &z : book.word(m, k)) {
            h = mix64(h ^ std::bit_cast<std::uint64_t>(z.real()));
            h = mix64(h ^ std::bit_cast<std::uint64_t>(z.imag()));
        }
    return h;
}

linalg::Matrix PGM::element(std::size_t m) const {
    if (m >= M) fail(ErrorKind::Index, "PGM element index out of range");
    const auto v = vectors.col(static_cast<Eigen::Index>(m));
    return v * v.adjoint();
}

linalg::Matrix PGM::element_sum() const { return vectors * vectors.adjoint(); }

linalg::Matrix PGM::residual() const {
    return linalg::Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) - element_sum();
}

PGM build_pgm(const Codebook &book, std::size_t k) {
    if (k >= book.keys()) fail(ErrorKind::Index, "key index k out of range");
    const linalg::Matrix psi = key_slice(book, k);
    // Sigma = Psi Psi^dagger and G = Psi^dagger Psi share their nonzero
    // spectrum; Sigma^{-1/2} Psi = Psi G^{-1/2} on the support.
    const linalg::Matrix g = psi.adjoint() * psi;
    linalg::Matrix gh = 0.5 * (g + g.adjoint());
    const auto s = linalg::eigh(gh, true);
    const double top = s.values[s.values.size() - 1];
    if (s.values[0] < -1e-8) fail(ErrorKind::Numeric, "build_pgm: Sigma_k has a negative eigenvalue");

    linalg::RealVector inv_sqrt(s.values.size());
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.values.size(); ++i) {
        if (s.values[i] > kPgmCutoff * top) {
            inv_sqrt[i] = 1.0 / std::sqrt(s.values[i]);
            ++rank;
        } else {
            inv_sqrt[i] = 0.0;
        }
    }
    PGM pgm;
    pgm.d = book.dim();
    pgm.M = book.messages();
    pgm.key = k;
    pgm.support_rank = rank;
    pgm.sigma_spectrum = s.values;
    pgm.vectors = psi * (s.vectors * inv_sqrt.asDiagonal() * s.vectors.adjoint());
    pgm.fingerprint = slice_fingerprint(book, k);
    return pgm;
}

double success_probability(const PGM &pgm, const Codebook &book, std::size_t k) {
    if (k >= book.keys()) fail(ErrorKind::Index, "key index k out of range");
    if (pgm.key != k || pgm.d != book.dim() || pgm.M != book.messages() || pgm.fingerprint != slice_fingerprint(book, k))
        fail(ErrorKind::Contract, "success_probability: PGM was built from a different codebook or key");
    double total = 0.0;
    for (std::size_t m = 0; m < pgm.M; ++m) {
        const cplx overlap = linalg::vec(book.word(m, k)).dot(pgm.vectors.col(static_cast<Eigen::Index>(m)));
        total += std::norm(overlap);
    }
    return std::clamp(total / static_cast<double>(pgm.M), 0.0, 1.0);
}

double pgm_lower_bound(std::size_t d, std::size_t M, double delta) {
    if (M < 1 || d < 1) fail(ErrorKind::Domain, "pgm_lower_bound: d and M must be >= 1");
    if (M > d) fail(ErrorKind::Domain, "pgm_lower_bound: requires M <= d");
    if (!(delta >= 0.0)) fail(ErrorKind::Domain, "pgm_lower_bound: delta must be >= 0");
    const double r = static_cast<double>(d) / static_cast<double>(M);
    const double edge = (1.0 + std::sqrt(r)) * (1.0 + std::sqrt(r)) + delta;
    return r / edge;
}

std::vector<double> pgm_outcome_distribution(const PGM &pgm, std::span<const cplx> received) {
    if (received.size() != pgm.d) fail(ErrorKind::Shape, "received state has the wrong dimension");
    std::vector<double> p(pgm.M + 1);
    simd::kernels().overlap_norms(pgm.vectors.data(), pgm.M, pgm.d, received.data(), p.data());
    double sum = 0.0;
    for (std::size_t m = 0; m < pgm.M; ++m) sum += p[m];
    p[pgm.M] = std::max(0.0, 1.0 - sum);
    return p;
}

std::size_t sample_pgm_outcome(const PGM &pgm, std::span<const cplx> received, Stream &rng) {
    const auto p = pgm_outcome_distribution(pgm, received);
    double u = rng.uniform();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (u < p[i]) return i;
        u -= p[i];
    }
    return pgm.M;
}

std::size_t unitary_decode(const Codebook &book, std::size_t k, std::span<const cplx> received) {
    if (book.origin() != CodebookOrigin::PhaseUnitaries || book.unitaries().size() != book.keys())
        fail(ErrorKind::Contract, "unitary_decode: codebook is not a phase-unitary codebook");
    if (k >= book.keys()) fail(ErrorKind::Index, "key index k out of range");
    const std::size_t d = book.dim();
    if (received.size() != d) fail(ErrorKind::Shape, "received state has the wrong dimension");

    std::vector<cplx> undone(d);
    book.unitaries()[k].apply_inverse(received, undone);

    std::vector<cplx> basis(d * d);
    for (std::size_t m = 0; m < d; ++m) {
        const Codeword f = fourier_state(d, m + 1);
        std::copy(f.amplitudes.begin(), f.amplitudes.end(), basis.begin() + static_cast<std::ptrdiff_t>(m * d));
    }
    std::vector<double> w(d);
    simd::kernels().overlap_norms(basis.data(), d, d, undone.data(), w.data());
    return static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
}

}  // namespace qdl
