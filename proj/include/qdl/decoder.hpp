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

#include "qdl/ensemble.hpp"
#include "qdl/linalg.hpp"
#include "qdl/rng.hpp"

namespace qdl {

/// Pretty good measurement for key value k:
///   Lambda_m = Sigma^{-1/2} |psi_mk><psi_mk| Sigma^{-1/2},  Sigma = sum_m |psi_mk><psi_mk|
/// with the inverse square root taken on the support of Sigma. Every element
/// is rank one, Lambda_m = |v_m><v_m|, so only the vectors v_m are stored.
/// The residual I - sum_m Lambda_m is the explicit failure outcome.
struct PGM {
    std::size_t d = 0;
    std::size_t M = 0;
    std::size_t key = 0;
    std::size_t support_rank = 0;
    linalg::Matrix vectors;             // d x M, column m is v_m
    linalg::RealVector sigma_spectrum;  // nonzero spectrum of Sigma (ascending, M values incl. cut ones)
    std::uint64_t fingerprint = 0;      // identifies the codebook slice it was built from

    linalg::Matrix element(std::size_t m) const;
    linalg::Matrix element_sum() const;
    linalg::Matrix residual() const;
};

/// Eigenvalues of Sigma below 1e-10 * lambda_max are treated as zero.
inline constexpr double kPgmCutoff = 1e-10;

/// Throws Error(Numeric) if Sigma has an eigenvalue below -1e-8.
PGM build_pgm(const Codebook &book, std::size_t k);

/// (1/M) sum_m Tr(Lambda_m |psi_mk><psi_mk|). Error(Contract) when `pgm`
/// was not built from this codebook and key.
double success_probability(const PGM &pgm, const Codebook &book, std::size_t k);

/// (d/M) [(1 + sqrt(d/M))^2 + delta]^{-1}; requires M <= d.
double pgm_lower_bound(std::size_t d, std::size_t M, double delta);

/// Probability of each PGM outcome on pure state `received`: M message
/// outcomes followed by the failure outcome.
std::vector<double> pgm_outcome_distribution(const PGM &pgm, std::span<const cplx> received);

/// Draws one measurement outcome (demo path). Returns M for failure.
std::size_t sample_pgm_outcome(const PGM &pgm, std::span<const cplx> received, Stream &rng);

/// Unitary-scheme decoder: undo U_k, measure in the Fourier basis, return
/// the 0-based message index with the largest overlap.
std::size_t unitary_decode(const Codebook &book, std::size_t k, std::span<const cplx> received);

/// Hash of the k-slice of a codebook, used for the PGM contract check.
std::uint64_t slice_fingerprint(const Codebook &book, std::size_t k);

}  // namespace qdl
