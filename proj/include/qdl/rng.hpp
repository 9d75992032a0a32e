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

#include <cstdint>
#include <limits>

namespace qdl {

/// Identifies which family of draws a stream feeds, so that e.g. codeword
/// (m, k) and probe vector (m, k) never share bits.
enum class StreamTag : std::uint64_t {
    Codeword = 0x11,
    Unitary = 0x12,
    Probe = 0x21,
    Pair = 0x22,
    Start = 0x23,
    Trial = 0x31,
    Query = 0x32,
    Demo = 0x41,
};

/// Counter-based generator: output i is mix(key + (i+1)·γ). A stream is fully
/// determined by its 64-bit key, so streams for different (seed, tag, a, b)
/// can be materialized independently on any worker.
class Stream {
  public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t key) noexcept : state_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    /// Fair coin.
    bool bit() noexcept { return ((*this)() >> 63) != 0; }
    /// Standard normal via Box-Muller (both values are consumed pairwise).
    double normal() noexcept;

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Key derivation: (seed, tag, a, b) -> stream key.
std::uint64_t derive_key(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0, std::uint64_t b = 0) noexcept;

inline Stream make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0, std::uint64_t b = 0) noexcept {
    return Stream(derive_key(seed, tag, a, b));
}

}  // namespace qdl
