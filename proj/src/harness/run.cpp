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

#include "qdl/harness/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "qdl/adversary.hpp"
#include "qdl/decoder.hpp"
#include "qdl/errors.hpp"
#include "qdl/keyrate.hpp"
#include "qdl/parallel.hpp"
#include "qdl/spectra.hpp"

namespace qdl::harness {

namespace {

using Row = std::vector<Value>;

Value opt(const std::optional<double> &x) { return x ? Value(*x) : Value(std::monostate{}); }
Value u64(std::size_t x) { return Value(static_cast<std::uint64_t>(x)); }

void put_stats(RunRecord &r, const std::string &prefix, std::span<const double> x) {
    const ColumnStats s = column_stats(x);
    r.summary.emplace_back(prefix + "_mean", s.mean);
    r.summary.emplace_back(prefix + "_stddev", s.stddev);
    r.summary.emplace_back(prefix + "_min", s.min);
    r.summary.emplace_back(prefix + "_max", s.max);
}

Codebook make_codebook(const ExperimentConfig &cfg, std::uint64_t seed) {
    if (cfg.origin == CodebookOrigin::PhaseUnitaries)
        return unitary_codebook(cfg.params.d, cfg.params.K, cfg.params.alphabet, seed);
    ProtocolParams p = cfg.params;
    p.seed = seed;
    return sample_codebook(p);
}

std::uint64_t trial_seed(const ExperimentConfig &cfg, std::size_t i) {
    return derive_key(cfg.seed, StreamTag::Trial, i);
}

void run_spectra(const ExperimentConfig &cfg, RunRecord &r) {
    ProtocolParams p = cfg.params;
    p.seed = cfg.seed;
    const DeviationRate dr = deviation_rate(p, cfg.deltas.spec, cfg.trials, cfg.workers);
    r.columns = {"trial", "d", "n", "y", "lambda_min", "lambda_max", "predicted_min", "predicted_max", "violated_max",
                 "violated_min"};
    std::vector<double> lmax, lmin;
    for (const SpectralTrial &t : dr.rows) {
        r.rows.push_back({u64(t.trial), u64(t.d), u64(t.n), t.y, t.lambda_min, t.lambda_max, opt(t.predicted_min),
                          t.predicted_max, t.violated_max, t.violated_min});
        lmax.push_back(t.lambda_max);
        lmin.push_back(t.lambda_min);
    }
    put_stats(r, "lambda_max", lmax);
    put_stats(r, "lambda_min", lmin);
    r.summary.emplace_back("max_violations", u64(dr.max_violations));
    r.summary.emplace_back("min_violations", u64(dr.min_violations));
    r.summary.emplace_back("freq_max", dr.freq_max);
    r.summary.emplace_back("freq_min", dr.freq_min);
    r.summary.emplace_back("min_checked", dr.min_checked);
}

void run_decode(const ExperimentConfig &cfg, RunRecord &r) {
    const std::size_t K = cfg.params.K, d = cfg.params.d, M = cfg.params.M;
    const Value bound = M <= d ? Value(pgm_lower_bound(d, M, cfg.deltas.spec)) : Value(std::monostate{});
    std::vector<double> p(cfg.trials * K);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
        const Codebook book = make_codebook(cfg, trial_seed(cfg, i));
        for (std::size_t k = 0; k < K; ++k) p[i * K + k] = success_probability(build_pgm(book, k), book, k);
    });
    r.columns = {"codebook_seed", "d", "M", "K", "k", "p_succ", "bound_value"};
    for (std::size_t i = 0; i < cfg.trials; ++i)
        for (std::size_t k = 0; k < K; ++k)
            r.rows.push_back({trial_seed(cfg, i), u64(d), u64(M), u64(K), u64(k), p[i * K + k], bound});
    put_stats(r, "p_succ", p);
    r.summary.emplace_back("pgm_lower_bound", bound);
    if (M <= d) r.summary.emplace_back("one_minus_two_sqrt_M_over_d", 1.0 - 2.0 * std::sqrt(double(M) / double(d)));
}

void run_eve_bound(const ExperimentConfig &cfg, RunRecord &r) {
    std::vector<IaccBound> out(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
        const std::uint64_t s = trial_seed(cfg, i);
        const Codebook book = make_codebook(cfg, s);
        MinimizerOptions opts;
        opts.seed = s;
        opts.net_delta = cfg.deltas.net;
        out[i] = iacc_upper_bound(book, cfg.strategy, opts);
    });
    r.columns = {"codebook_seed", "strategy", "bound_bits", "certified", "min_objective", "net_correction"};
    std::vector<double> bits;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        const IaccBound &b = out[i];
        r.rows.push_back({trial_seed(cfg, i), std::string(to_string(b.strategy)), b.bound_bits, b.certified,
                          b.min_objective, b.net_correction});
        bits.push_back(b.bound_bits);
    }
    put_stats(r, "bound_bits", bits);
    r.summary.emplace_back("certified", out.front().certified);
    r.summary.emplace_back("log2_M", std::log2(static_cast<double>(cfg.params.M)));
}

void run_qconc(const ExperimentConfig &cfg, RunRecord &r) {
    const Codebook book = make_codebook(cfg, cfg.seed);
    std::vector<MeasurementVector> phis;
    phis.reserve(cfg.trials);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Stream rng = make_stream(cfg.seed, StreamTag::Probe, i);
        phis.push_back(random_measurement_vector(cfg.params.d, rng));
    }
    const QConcentrationReport q = q_concentration(book, phis, cfg.deltas.conc);
    r.columns = {"phi_id", "m", "Q_m", "below_threshold"};
    for (const QConcentrationRow &row : q.rows) r.rows.push_back({u64(row.phi_id), u64(row.m), row.q, row.below_threshold});
    r.summary.emplace_back("threshold", q.threshold);
    r.summary.emplace_back("samples", u64(q.samples));
    r.summary.emplace_back("below", u64(q.below));
    r.summary.emplace_back("empirical_frequency", q.empirical_frequency);
    r.summary.emplace_back("maurer_bound", q.maurer_bound);
    r.summary.emplace_back("binomial_sigma", q.binomial_sigma);
    r.summary.emplace_back("within_bound", q.within_bound());
    r.summary.emplace_back("max_q", q.max_q);
    r.summary.emplace_back("large_edge", q.large_edge);
    r.summary.emplace_back("above_large_edge", u64(q.above_large_edge));
}

void run_net_check(const ExperimentConfig &cfg, RunRecord &r) {
    const EpsilonNet net = epsilon_net(cfg.params.d, cfg.deltas.net);
    std::vector<NearestNetElement> hit(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
        Stream rng = make_stream(cfg.seed, StreamTag::Probe, i);
        hit[i] = nearest_net_element(net, random_measurement_vector(net.d, rng).phi);
    });
    r.columns = {"probe_id", "nearest_index", "trace_distance", "covered"};
    std::size_t uncovered = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        const bool covered = hit[i].trace_distance <= net.delta + 1e-12;
        uncovered += covered ? 0 : 1;
        worst = std::max(worst, hit[i].trace_distance);
        r.rows.push_back({u64(i), u64(hit[i].index), hit[i].trace_distance, covered});
    }
    r.summary.emplace_back("net_size", u64(net.size()));
    r.summary.emplace_back("cardinality_bound", net.cardinality_bound());
    r.summary.emplace_back("uncovered", u64(uncovered));
    r.summary.emplace_back("max_distance", worst);
}

void run_lemma_check(const ExperimentConfig &cfg, RunRecord &r) {
    struct Out {
        LemmaCheck lemma;
        FannesCheck fannes;
        bool sub_normalized = false;
    };
    const double delta = cfg.deltas.net;
    std::vector<Out> out(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
        const Codebook book = make_codebook(cfg, trial_seed(cfg, i));
        Stream rng = make_stream(cfg.seed, StreamTag::Pair, i);
        const MeasurementVector phi = random_measurement_vector(cfg.params.d, rng);
        // a hair inside delta so rounding cannot trip the precondition
        const MeasurementVector phi2 = nearby_measurement_vector(phi, delta * (1.0 - 1e-12), rng);
        out[i].lemma = trace_norm_lemma_check(book, phi.phi, phi2.phi, delta);
        out[i].fannes = fannes_audenaert_check(q_vector(book, phi).q, q_vector(book, phi2).q);
        out[i].sub_normalized = gamma_povm(book, delta).sub_normalized;
    });
    r.columns = {"pair_id", "lhs", "rhs", "pass", "flagged", "rhs_simplified", "fannes_lhs", "fannes_rhs", "fannes_pass"};
    std::size_t pass = 0, flagged = 0, failed_unflagged = 0, fannes_fail = 0;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        const Out &o = out[i];
        const bool flag = !o.sub_normalized;
        pass += o.lemma.pass ? 1 : 0;
        flagged += flag ? 1 : 0;
        failed_unflagged += (!o.lemma.pass && !flag) ? 1 : 0;
        fannes_fail += o.fannes.pass ? 0 : 1;
        r.rows.push_back({u64(i), o.lemma.lhs, o.lemma.rhs, o.lemma.pass, flag, o.lemma.rhs_simplified, o.fannes.lhs,
                          o.fannes.rhs, o.fannes.pass});
    }
    r.summary.emplace_back("pass", u64(pass));
    r.summary.emplace_back("flagged", u64(flagged));
    r.summary.emplace_back("failed_unflagged", u64(failed_unflagged));
    r.summary.emplace_back("sub_normalized_fraction",
                           static_cast<double>(cfg.trials - flagged) / static_cast<double>(cfg.trials));
    r.summary.emplace_back("fannes_failures", u64(fannes_fail));
}

std::vector<double> or_default(const std::vector<double> &v, std::vector<double> fallback) {
    return v.empty() ? fallback : v;
}

void run_keyrate(const ExperimentConfig &cfg, RunRecord &r) {
    const auto deltas = or_default(cfg.sweep.delta, {cfg.deltas.conc});
    const auto gammas = or_default(cfg.sweep.gamma, {0.0});
    const auto ns = or_default(cfg.sweep.n, {0.0});
    const double M = static_cast<double>(cfg.params.M), d = static_cast<double>(cfg.params.d);
    const double K = static_cast<double>(cfg.params.K);
    r.columns = {"delta", "M", "d", "K", "gamma", "n", "K_threshold", "pfail_coeff", "iacc_scale_bits", "feasible",
                 "regime", "log2K_bits"};
    std::size_t feasible = 0;
    for (double delta : deltas)
        for (double gamma : gammas)
            for (double n : ns) {
                const KeyRateReport kr = key_rate_report({delta, M, d, gamma, n}, K);
                feasible += kr.feasible ? 1 : 0;
                r.rows.push_back({delta, u64(cfg.params.M), u64(cfg.params.d), u64(cfg.params.K), gamma, n,
                                  kr.K_threshold, kr.pfail_exponent, kr.iacc_bound_bits, kr.feasible, kr.regime_flags,
                                  kr.log2K_bits});
            }
    r.summary.emplace_back("grid_points", u64(r.rows.size()));
    r.summary.emplace_back("feasible", u64(feasible));
}

// Least-squares slope of y on x.
double fit_slope(const std::vector<double> &x, const std::vector<double> &y) {
    const double n = static_cast<double>(x.size());
    const double mx = pairwise_sum(x) / n, my = pairwise_sum(y) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

void run_leakage(const ExperimentConfig &cfg, RunRecord &r) {
    const auto deltas = or_default(cfg.sweep.delta, {0.1});
    const auto gammas = or_default(cfg.sweep.gamma, {0.0, 0.1, 0.2});
    const auto ns = or_default(cfg.sweep.n, {4, 5, 6, 7, 8, 9, 10});
    const double M = static_cast<double>(cfg.params.M);
    r.columns = {"kind", "delta", "M", "d", "gamma", "n", "log2K_bits", "delta_log2K", "ratio"};
    double worst_ratio = 0.0;
    for (double delta : deltas) {
        const double d = M / delta;  // M/d = delta
        std::vector<double> xs, ys;
        for (double n : ns) {
            const LeakMsgThreshold t = key_threshold_leak_msg(delta, M, d, n);
            const double bits = std::log2(t.real);
            xs.push_back(n);
            ys.push_back(bits);
            r.rows.push_back({std::string("message"), delta, M, d, Value(), n, bits, t.delta_log2K, Value()});
        }
        if (xs.size() >= 2) {
            char key[48];
            std::snprintf(key, sizeof key, "slope_delta_%g", delta);
            r.summary.emplace_back(key, fit_slope(xs, ys));
        }
        const double base_bits = key_threshold_leak_key(delta, M, 0.0).log2K_bits;
        for (double gamma : gammas) {
            const LeakKeyThreshold t = key_threshold_leak_key(delta, M, gamma);
            const double ratio = t.log2K_bits / base_bits;
            worst_ratio = std::max(worst_ratio, std::abs(ratio - (1.0 + gamma)));
            r.rows.push_back({std::string("key"), delta, M, d, gamma, Value(), t.log2K_bits, Value(), ratio});
        }
    }
    r.summary.emplace_back("max_ratio_error", worst_ratio);
}

}  // namespace

ColumnStats column_stats(std::span<const double> x) {
    ColumnStats s;
    s.count = x.size();
    if (x.empty()) return s;
    s.mean = pairwise_sum(x) / static_cast<double>(x.size());
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dev[i] = (x[i] - s.mean) * (x[i] - s.mean);
    s.stddev = x.size() > 1 ? std::sqrt(pairwise_sum(dev) / static_cast<double>(x.size() - 1)) : 0.0;
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

RunRecord run(const ExperimentConfig &cfg) {
    require_valid(cfg);
    const auto start = std::chrono::steady_clock::now();
    RunRecord r;
    r.experiment = std::string(to_string(cfg.experiment));
    r.seed = cfg.seed;
    r.config = config_echo(cfg);
    switch (cfg.experiment) {
    case Experiment::Spectra:
        run_spectra(cfg, r);
        break;
    case Experiment::Decode:
        run_decode(cfg, r);
        break;
    case Experiment::EveBound:
        run_eve_bound(cfg, r);
        break;
    case Experiment::QConc:
        run_qconc(cfg, r);
        break;
    case Experiment::NetCheck:
        run_net_check(cfg, r);
        break;
    case Experiment::LemmaCheck:
        run_lemma_check(cfg, r);
        break;
    case Experiment::KeyRate:
        run_keyrate(cfg, r);
        break;
    case Experiment::Leakage:
        run_leakage(cfg, r);
        break;
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace qdl::harness
