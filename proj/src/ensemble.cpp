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

#include "qdl/ensemble.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "qdl/errors.hpp"

namespace qdl {

namespace {

std::size_t env_size(const char *name, std::size_t fallback) {
    const char *v = std::getenv(name);
    if (!v || !*v) return fallback;
    char *end = nullptr;
    const unsigned long long x = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || x == 0) fail(ErrorKind::Usage, std::string(name) + " must be a positive integer");
    return static_cast<std::size_t>(x);
}

void check_dimension(std::size_t d) {
    if (d < 2) fail(ErrorKind::Domain, "invalid dimension d=" + std::to_string(d) + " (need d >= 2)");
    if (d > max_dimension())
        fail(ErrorKind::Capacity,
             "dimension d=" + std::to_string(d) + " exceeds guard " + std::to_string(max_dimension()) + " (QDL_MAX_DIM)");
}

void check_budget(std::size_t d, std::size_t M, std::size_t K) {
    const std::size_t limit = codebook_memory_budget() / sizeof(cplx);
    // d*M*K without overflow
    if (M > limit / d || K > limit / (d * M))
        fail(ErrorKind::Capacity, "codebook d*M*K = " + std::to_string(d) + "*" + std::to_string(M) + "*" +
                                      std::to_string(K) + " exceeds the memory budget of " +
                                      std::to_string(codebook_memory_budget()) + " bytes");
}

}  // namespace

std::string_view to_string(Alphabet a) noexcept { return a == Alphabet::Binary ? "binary" : "uniform"; }

std::string_view to_string(CodebookOrigin o) noexcept {
    return o == CodebookOrigin::IidVectors ? "iid-vectors" : "phase-unitaries";
}

Alphabet parse_alphabet(std::string_view s) {
    if (s == "binary") return Alphabet::Binary;
    if (s == "uniform") return Alphabet::Uniform;
    fail(ErrorKind::Usage, "unknown phase alphabet '" + std::string(s) + "' (binary|uniform)");
}

CodebookOrigin parse_origin(std::string_view s) {
    if (s == "iid-vectors") return CodebookOrigin::IidVectors;
    if (s == "phase-unitaries") return CodebookOrigin::PhaseUnitaries;
    fail(ErrorKind::Usage, "unknown codebook origin '" + std::string(s) + "'");
}

void ProtocolParams::validate() const {
    if (d < 2) fail(ErrorKind::Domain, "params.d must be >= 2");
    if (M < 1) fail(ErrorKind::Domain, "params.M must be >= 1");
    if (K < 1) fail(ErrorKind::Domain, "params.K must be >= 1");
}

double Codeword::norm() const noexcept {
    double s = 0.0;
    for (const auto &a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

cplx PhaseUnitary::factor(std::size_t w) const noexcept {
    const double t = phases[w];
    // exact values for the binary alphabet
    if (t == 0.0) return {1.0, 0.0};
    if (t == std::numbers::pi) return {-1.0, 0.0};
    return std::polar(1.0, t);
}

void PhaseUnitary::apply(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != dim() || out.size() != dim()) fail(ErrorKind::Shape, "phase unitary dimension mismatch");
    for (std::size_t w = 0; w < dim(); ++w) out[w] = factor(w) * in[w];
}

void PhaseUnitary::apply_inverse(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != dim() || out.size() != dim()) fail(ErrorKind::Shape, "phase unitary dimension mismatch");
    for (std::size_t w = 0; w < dim(); ++w) out[w] = std::conj(factor(w)) * in[w];
}

Codeword PhaseUnitary::apply(const Codeword &v) const {
    Codeword out{std::vector<cplx>(v.dim())};
    apply(v.amplitudes, out.amplitudes);
    return out;
}

Codebook::Codebook(ProtocolParams params, CodebookOrigin origin) : params_(params), origin_(origin) {
    params_.validate();
    check_dimension(params_.d);
    check_budget(params_.d, params_.M, params_.K);
    if (origin_ == CodebookOrigin::PhaseUnitaries && params_.M != params_.d)
        fail(ErrorKind::Contract, "phase-unitary codebooks require M = d");
    data_.assign(params_.d * params_.M * params_.K, cplx{});
}

std::span<const cplx> Codebook::word(std::size_t m, std::size_t k) const {
    if (m >= params_.M || k >= params_.K) fail(ErrorKind::Index, "codeword index out of range");
    return std::span<const cplx>(data_).subspan((m * params_.K + k) * params_.d, params_.d);
}

std::span<cplx> Codebook::word(std::size_t m, std::size_t k) {
    if (m >= params_.M || k >= params_.K) fail(ErrorKind::Index, "codeword index out of range");
    return std::span<cplx>(data_).subspan((m * params_.K + k) * params_.d, params_.d);
}

Codeword Codebook::codeword(std::size_t m, std::size_t k) const {
    const auto w = word(m, k);
    return Codeword{std::vector<cplx>(w.begin(), w.end())};
}

std::span<const cplx> Codebook::message_block(std::size_t m) const {
    if (m >= params_.M) fail(ErrorKind::Index, "message index out of range");
    return std::span<const cplx>(data_).subspan(m * params_.K * params_.d, params_.K * params_.d);
}

void Codebook::set_unitaries(std::vector<PhaseUnitary> u) {
    if (u.size() != params_.K) fail(ErrorKind::Shape, "expected one unitary per key value");
    for (const auto &x : u)
        if (x.dim() != params_.d) fail(ErrorKind::Shape, "unitary dimension mismatch");
    unitaries_ = std::move(u);
}

std::size_t max_dimension() { return env_size("QDL_MAX_DIM", 4096); }

std::size_t codebook_memory_budget() { return env_size("QDL_MAX_CODEBOOK_BYTES", std::size_t{1} << 30); }

void sample_phase_vector_into(Alphabet alphabet, Stream &rng, std::span<cplx> out) {
    const double a = 1.0 / std::sqrt(static_cast<double>(out.size()));
    if (alphabet == Alphabet::Binary) {
        for (auto &x : out) x = {rng.bit() ? -a : a, 0.0};
    } else {
        for (auto &x : out) x = std::polar(a, 2.0 * std::numbers::pi * rng.uniform());
    }
}

Codeword sample_phase_vector(std::size_t d, Alphabet alphabet, Stream &rng) {
    if (d < 2) fail(ErrorKind::Domain, "invalid dimension d=" + std::to_string(d) + " (need d >= 2)");
    Codeword out{std::vector<cplx>(d)};
    sample_phase_vector_into(alphabet, rng, out.amplitudes);
    return out;
}

Codebook sample_codebook(const ProtocolParams &params) {
    Codebook book(params, CodebookOrigin::IidVectors);
    for (std::size_t m = 0; m < params.M; ++m)
        for (std::size_t k = 0; k < params.K; ++k) {
            Stream rng = make_stream(params.seed, StreamTag::Codeword, m, k);
            sample_phase_vector_into(params.alphabet, rng, book.word(m, k));
        }
    return book;
}

Codeword fourier_state(std::size_t d, std::size_t m) {
    if (d < 2) fail(ErrorKind::Domain, "invalid dimension d=" + std::to_string(d));
    if (m < 1 || m > d) fail(ErrorKind::Index, "Fourier index m=" + std::to_string(m) + " outside 1.." + std::to_string(d));
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    Codeword out{std::vector<cplx>(d)};
    for (std::size_t w = 1; w <= d; ++w) {
        // reduce m*w mod d first so the angle stays in [0, 2 pi)
        const std::size_t r = (m * w) % d;
        if (r == 0) {
            out.amplitudes[w - 1] = {a, 0.0};
        } else if (2 * r == d) {
            out.amplitudes[w - 1] = {-a, 0.0};
        } else {
            out.amplitudes[w - 1] =
                std::polar(a, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d));
        }
    }
    return out;
}

PhaseUnitary sample_phase_unitary(std::size_t d, Alphabet alphabet, Stream &rng) {
    if (d < 2) fail(ErrorKind::Domain, "invalid dimension d=" + std::to_string(d) + " (need d >= 2)");
    PhaseUnitary u{std::vector<double>(d)};
    for (auto &t : u.phases) {
        if (alphabet == Alphabet::Binary)
            t = rng.bit() ? std::numbers::pi : 0.0;
        else
            t = 2.0 * std::numbers::pi * rng.uniform();
    }
    return u;
}

Codebook unitary_codebook(std::span<const PhaseUnitary> unitaries, Alphabet alphabet, std::uint64_t seed) {
    if (unitaries.empty()) fail(ErrorKind::Domain, "need at least one unitary");
    const std::size_t d = unitaries.front().dim();
    ProtocolParams p{d, d, unitaries.size(), alphabet, seed};
    Codebook book(p, CodebookOrigin::PhaseUnitaries);
    for (std::size_t m = 0; m < d; ++m) {
        const Codeword f = fourier_state(d, m + 1);
        for (std::size_t k = 0; k < unitaries.size(); ++k) unitaries[k].apply(f.amplitudes, book.word(m, k));
    }
    book.set_unitaries(std::vector<PhaseUnitary>(unitaries.begin(), unitaries.end()));
    return book;
}

Codebook unitary_codebook(std::size_t d, std::size_t K, Alphabet alphabet, std::uint64_t seed) {
    if (d < 2) fail(ErrorKind::Domain, "invalid dimension d=" + std::to_string(d) + " (need d >= 2)");
    if (K < 1) fail(ErrorKind::Domain, "K must be >= 1");
    check_dimension(d);
    check_budget(d, d, K);
    std::vector<PhaseUnitary> us;
    us.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        Stream rng = make_stream(seed, StreamTag::Unitary, k);
        us.push_back(sample_phase_unitary(d, alphabet, rng));
    }
    return unitary_codebook(us, alphabet, seed);
}

}  // namespace qdl
