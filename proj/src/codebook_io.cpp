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

#include "qdl/codebook_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "qdl/errors.hpp"

namespace qdl {

namespace {

constexpr std::array<char, 8> kMagic{'Q', 'D', 'L', 'C', 'B', 'K', '\0', '\1'};

void put_u64(std::ostream &out, std::uint64_t v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream &in) {
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char *>(b.data()), 8);
    if (!in) fail(ErrorKind::Parse, "truncated codebook");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void recover_unitaries(Codebook &book) {
    const std::size_t d = book.dim();
    const double s = std::sqrt(static_cast<double>(d));
    std::vector<PhaseUnitary> us;
    for (std::size_t k = 0; k < book.keys(); ++k) {
        const auto w = book.word(d - 1, k);
        PhaseUnitary u{std::vector<double>(d)};
        for (std::size_t i = 0; i < d; ++i) {
            const cplx z = w[i] * s;
            if (z == cplx(1.0, 0.0))
                u.phases[i] = 0.0;
            else if (z == cplx(-1.0, 0.0))
                u.phases[i] = std::numbers::pi;
            else {
                double t = std::arg(z);
                if (t < 0) t += 2.0 * std::numbers::pi;
                u.phases[i] = t;
            }
        }
        us.push_back(std::move(u));
    }
    book.set_unitaries(std::move(us));
}

}  // namespace

void write_codebook(std::ostream &out, const Codebook &book) {
    const auto &p = book.params();
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, p.d);
    put_u64(out, p.M);
    put_u64(out, p.K);
    const std::array<char, 8> tags{static_cast<char>(p.alphabet), static_cast<char>(book.origin()), 0, 0, 0, 0, 0, 0};
    out.write(tags.data(), tags.size());
    put_u64(out, p.seed);
    for (const cplx &z : book.data()) {
        put_u64(out, std::bit_cast<std::uint64_t>(z.real()));
        put_u64(out, std::bit_cast<std::uint64_t>(z.imag()));
    }
    if (!out) fail(ErrorKind::Usage, "failed writing codebook");
}

Codebook read_codebook(std::istream &in) {
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) fail(ErrorKind::Parse, "not a qdl codebook (bad magic)");
    ProtocolParams p;
    p.d = get_u64(in);
    p.M = get_u64(in);
    p.K = get_u64(in);
    std::array<char, 8> tags{};
    in.read(tags.data(), tags.size());
    if (!in) fail(ErrorKind::Parse, "truncated codebook header");
    if (tags[0] > 1 || tags[1] > 1) fail(ErrorKind::Parse, "unknown alphabet/origin tag in codebook header");
    p.alphabet = static_cast<Alphabet>(tags[0]);
    const auto origin = static_cast<CodebookOrigin>(tags[1]);
    p.seed = get_u64(in);
    Codebook book(p, origin);
    for (cplx &z : book.data()) {
        const double re = std::bit_cast<double>(get_u64(in));
        const double im = std::bit_cast<double>(get_u64(in));
        z = {re, im};
    }
    if (origin == CodebookOrigin::PhaseUnitaries) recover_unitaries(book);
    return book;
}

void save_codebook(const std::string &path, const Codebook &book) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Usage, "cannot open " + path + " for writing");
    write_codebook(out, book);
}

Codebook load_codebook(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Usage, "cannot open " + path);
    return read_codebook(in);
}

std::string codebook_to_json(const Codebook &book) {
    const auto &p = book.params();
    if (p.d * p.M * p.K > kJsonDumpLimit)
        fail(ErrorKind::Capacity, "JSON dump limited to d*M*K <= " + std::to_string(kJsonDumpLimit));
    nlohmann::json j;
    j["d"] = p.d;
    j["M"] = p.M;
    j["K"] = p.K;
    j["alphabet"] = std::string(to_string(p.alphabet));
    j["seed"] = p.seed;
    j["origin"] = std::string(to_string(book.origin()));
    auto &words = j["words"] = nlohmann::json::array();
    for (std::size_t m = 0; m < p.M; ++m) {
        auto row = nlohmann::json::array();
        for (std::size_t k = 0; k < p.K; ++k) {
            auto v = nlohmann::json::array();
            for (const cplx &z : book.word(m, k)) v.push_back({z.real(), z.imag()});
            row.push_back(std::move(v));
        }
        words.push_back(std::move(row));
    }
    return j.dump(1);
}

}  // namespace qdl
