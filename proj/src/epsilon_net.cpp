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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qdl/adversary.hpp"
#include "qdl/errors.hpp"
#include "qdl/simd/kernels.hpp"

namespace qdl {

namespace {

constexpr double kPi = std::numbers::pi;

// Grid over [0, pi/2] with cells of half-width at most `half`.
struct Axis {
    std::size_t cells;
    double width;

    Axis(double half) : cells(static_cast<std::size_t>(std::ceil((kPi / 2.0) / (2.0 * half)))), width(kPi / 2.0 / cells) {}
    double lo(std::size_t i) const { return width * static_cast<double>(i); }
    double hi(std::size_t i) const { return width * static_cast<double>(i + 1); }
    double centre(std::size_t i) const { return width * (static_cast<double>(i) + 0.5); }
};

// max of s sqrt(1 - s^2) for s in [lo, hi], lo, hi in [0, 1]
double phase_speed(double lo, double hi) {
    const double peak = std::numbers::sqrt2 / 2.0;
    if (lo <= peak && peak <= hi) return 0.5;
    auto f = [](double s) { return s * std::sqrt(std::max(0.0, 1.0 - s * s)); };
    return std::max(f(lo), f(hi));
}

// Phase cells needed so that a half cell moves the state by at most `half`
// in Fubini-Study angle.
std::size_t phase_cells(double speed, double half) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(kPi * speed / half)));
}

std::size_t net_size_2(const Axis &a, double half) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.cells; ++i) n += phase_cells(phase_speed(std::sin(a.lo(i)), std::sin(a.hi(i))), half);
    return n;
}

struct Cell3 {
    std::size_t n1, n2;
};

Cell3 cell_3(const Axis &ax, std::size_t i, std::size_t j, double half) {
    const double sa_lo = std::sin(ax.lo(i)), sa_hi = std::sin(ax.hi(i));
    const double cb_lo = std::cos(ax.hi(j)), cb_hi = std::cos(ax.lo(j));
    const double sb_lo = std::sin(ax.lo(j)), sb_hi = std::sin(ax.hi(j));
    return {phase_cells(phase_speed(sa_lo * cb_lo, sa_hi * cb_hi), half),
            phase_cells(phase_speed(sa_lo * sb_lo, sa_hi * sb_hi), half)};
}

}  // namespace

double EpsilonNet::cardinality_bound() const { return std::pow(5.0 / delta, 2.0 * static_cast<double>(d)); }

// States are taken up to global phase with a real nonnegative first amplitude:
//   d = 2: (cos a, sin a e^{i p})
//   d = 3: (cos a, sin a cos b e^{i p1}, sin a sin b e^{i p2})
// Walking from a cell centre to any point one coordinate at a time moves the
// state by at most `half` Fubini-Study angle per coordinate, so every state is
// within angle asin(delta / 2) of a grid point, i.e. trace distance delta.
EpsilonNet epsilon_net(std::size_t d, double delta) {
    if (d < 2) fail(ErrorKind::Domain, "epsilon_net: d must be >= 2");
    if (d > 3) fail(ErrorKind::Capacity, "epsilon_net: only d <= 3 is supported");
    if (!(delta >= 0.05)) fail(ErrorKind::Capacity, "epsilon_net: delta below 0.05 exceeds the cardinality guard");
    if (!(delta <= 2.0)) fail(ErrorKind::Domain, "epsilon_net: delta must be <= 2");

    const double radius = std::asin(std::min(delta, 2.0) / 2.0);
    const double half = radius / (d == 2 ? 2.0 : 4.0);
    const Axis ax(half);

    EpsilonNet net;
    net.d = d;
    net.delta = delta;

    if (d == 2) {
        net.rows.reserve(2 * net_size_2(ax, half));
        for (std::size_t i = 0; i < ax.cells; ++i) {
            const double a = ax.centre(i);
            const std::size_t n = phase_cells(phase_speed(std::sin(ax.lo(i)), std::sin(ax.hi(i))), half);
            for (std::size_t p = 0; p < n; ++p) {
                const double phase = 2.0 * kPi * (static_cast<double>(p) + 0.5) / static_cast<double>(n);
                net.rows.emplace_back(std::cos(a), 0.0);
                net.rows.push_back(std::polar(std::sin(a), phase));
            }
        }
        return net;
    }

    std::size_t total = 0;
    for (std::size_t i = 0; i < ax.cells; ++i)
        for (std::size_t j = 0; j < ax.cells; ++j) {
            const Cell3 c = cell_3(ax, i, j, half);
            total += c.n1 * c.n2;
        }
    if (total > kMaxNetSize)
        fail(ErrorKind::Capacity, "epsilon_net: " + std::to_string(total) + " elements exceeds the limit of " +
                                      std::to_string(kMaxNetSize));
    net.rows.reserve(3 * total);
    for (std::size_t i = 0; i < ax.cells; ++i) {
        const double a = ax.centre(i);
        for (std::size_t j = 0; j < ax.cells; ++j) {
            const double b = ax.centre(j);
            const Cell3 c = cell_3(ax, i, j, half);
            for (std::size_t p = 0; p < c.n1; ++p) {
                const double p1 = 2.0 * kPi * (static_cast<double>(p) + 0.5) / static_cast<double>(c.n1);
                for (std::size_t r = 0; r < c.n2; ++r) {
                    const double p2 = 2.0 * kPi * (static_cast<double>(r) + 0.5) / static_cast<double>(c.n2);
                    net.rows.emplace_back(std::cos(a), 0.0);
                    net.rows.push_back(std::polar(std::sin(a) * std::cos(b), p1));
                    net.rows.push_back(std::polar(std::sin(a) * std::sin(b), p2));
                }
            }
        }
    }
    return net;
}

NearestNetElement nearest_net_element(const EpsilonNet &net, std::span<const cplx> phi) {
    if (phi.size() != net.d) fail(ErrorKind::Shape, "nearest_net_element: dimension mismatch");
    if (net.size() == 0) fail(ErrorKind::Shape, "nearest_net_element: empty net");
    std::vector<double> f(net.size());
    simd::kernels().overlap_norms(net.rows.data(), net.size(), net.d, phi.data(), f.data());
    const auto best = std::max_element(f.begin(), f.end());
    return {static_cast<std::size_t>(best - f.begin()), 2.0 * std::sqrt(std::max(0.0, 1.0 - *best))};
}

NetCoverage verify_net(const EpsilonNet &net, std::size_t probes, std::uint64_t seed) {
    NetCoverage c;
    c.probes = probes;
    for (std::size_t i = 0; i < probes; ++i) {
        Stream rng = make_stream(seed, StreamTag::Probe, i);
        const MeasurementVector phi = random_measurement_vector(net.d, rng);
        const NearestNetElement e = nearest_net_element(net, phi.phi);
        c.max_distance = std::max(c.max_distance, e.trace_distance);
        if (e.trace_distance > net.delta + 1e-12) ++c.uncovered;
    }
    return c;
}

}  // namespace qdl
