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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qdl/rng.hpp"

namespace qdl {

using cplx = std::complex<double>;

enum class Alphabet : std::uint8_t { Binary = 0, Uniform = 1 };
enum class CodebookOrigin : std::uint8_t { IidVectors = 0, PhaseUnitaries = 1 };

std::string_view to_string(Alphabet a) noexcept;
std::string_view to_string(CodebookOrigin o) noexcept;
Alphabet parse_alphabet(std::string_view s);
CodebookOrigin parse_origin(std::string_view s);

/// One QDL instance: dimension d, M messages, K key values.
struct ProtocolParams {
    std::size_t d = 2;
    std::size_t M = 1;
    std::size_t K = 1;
    Alphabet alphabet = Alphabet::Binary;
    std::uint64_t seed = 0;

    /// Throws Error(Domain) naming the offending field.
    void validate() const;
    /// The PGM success bound assumes M <= d (really M << d).
    bool in_pgm_regime() const noexcept { return M <= d; }

    bool operator==(const ProtocolParams &) const = default;
};

struct Codeword {
    std::vector<cplx> amplitudes;

    std::size_t dim() const noexcept { return amplitudes.size(); }
    double norm() const noexcept;
};

/// Diagonal unitary sum_w e^{i theta(w)} |w><w|.
struct PhaseUnitary {
    std::vector<double> phases;

    std::size_t dim() const noexcept { return phases.size(); }
    cplx factor(std::size_t w) const noexcept;
    void apply(std::span<const cplx> in, std::span<cplx> out) const;
    void apply_inverse(std::span<const cplx> in, std::span<cplx> out) const;
    Codeword apply(const Codeword &v) const;

    bool operator==(const PhaseUnitary &) const = default;
};

/// M x K grid of unit vectors in C^d stored as one dense buffer, row-major
/// over (m, k, w). Indices are 0-based here; reports add one.
class Codebook {
  public:
    Codebook(ProtocolParams params, CodebookOrigin origin);

    const ProtocolParams &params() const noexcept { return params_; }
    CodebookOrigin origin() const noexcept { return origin_; }
    std::size_t dim() const noexcept { return params_.d; }
    std::size_t messages() const noexcept { return params_.M; }
    std::size_t keys() const noexcept { return params_.K; }

    std::span<const cplx> word(std::size_t m, std::size_t k) const;
    std::span<cplx> word(std::size_t m, std::size_t k);
    Codeword codeword(std::size_t m, std::size_t k) const;

    /// The K codewords of message m, contiguous (K rows of length d).
    std::span<const cplx> message_block(std::size_t m) const;
    /// All M*K codewords, contiguous.
    std::span<const cplx> data() const noexcept { return data_; }
    std::span<cplx> data() noexcept { return data_; }

    /// Present for origin == PhaseUnitaries.
    const std::vector<PhaseUnitary> &unitaries() const noexcept { return unitaries_; }
    void set_unitaries(std::vector<PhaseUnitary> u);

    bool operator==(const Codebook &) const = default;

  private:
    ProtocolParams params_;
    CodebookOrigin origin_;
    std::vector<cplx> data_;
    std::vector<PhaseUnitary> unitaries_;
};

/// Dimension guard (default 4096, QDL_MAX_DIM overrides).
std::size_t max_dimension();
/// Codebook memory budget in bytes (default 1 GiB, QDL_MAX_CODEBOOK_BYTES overrides).
std::size_t codebook_memory_budget();

/// (1/sqrt d) sum_w e^{i theta(w)} |w>, theta i.i.d. from the alphabet.
Codeword sample_phase_vector(std::size_t d, Alphabet alphabet, Stream &rng);
void sample_phase_vector_into(Alphabet alphabet, Stream &rng, std::span<cplx> out);

/// i.i.d. phase-ensemble codebook; draw (m, k) uses its own stream, so the
/// result depends only on params.seed.
Codebook sample_codebook(const ProtocolParams &params);

/// (1/sqrt d) sum_w e^{i 2 pi m w / d} |w>, m in 1..d, w in 1..d.
Codeword fourier_state(std::size_t d, std::size_t m);

PhaseUnitary sample_phase_unitary(std::size_t d, Alphabet alphabet, Stream &rng);

/// words[m][k] = U_k |m+1>, M = d, U_k drawn from stream (seed, Unitary, k).
Codebook unitary_codebook(std::size_t d, std::size_t K, Alphabet alphabet, std::uint64_t seed);
/// Same construction from explicit unitaries.
Codebook unitary_codebook(std::span<const PhaseUnitary> unitaries, Alphabet alphabet, std::uint64_t seed);

}  // namespace qdl
