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

#include "qdl/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qdl/errors.hpp"

namespace qdl::harness {

using nlohmann::json;

namespace {

struct Tag {
    Experiment e;
    std::string_view name;
};

constexpr Tag kTags[] = {
    {Experiment::Spectra, "spectra"},       {Experiment::Decode, "decode"},
    {Experiment::EveBound, "eve-bound"},    {Experiment::QConc, "qconc"},
    {Experiment::NetCheck, "net-check"},    {Experiment::LemmaCheck, "lemma-check"},
    {Experiment::KeyRate, "keyrate"},       {Experiment::Leakage, "leakage"},
};

[[noreturn]] void field_error(const std::string &field, const std::string &what) {
    fail(ErrorKind::Parse, "config field '" + field + "': " + what);
}

void check_keys(const json &obj, const std::string &prefix, std::initializer_list<std::string_view> allowed) {
    for (const auto &[key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            field_error(prefix + key, "unknown field");
    }
}

const json &object_at(const json &root, const char *key, const std::string &field) {
    const json &v = root.at(key);
    if (!v.is_object()) field_error(field, "expected an object");
    return v;
}

std::uint64_t get_uint(const json &obj, const char *key, const std::string &field) {
    const json &v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        const auto i = v.get<std::int64_t>();
        if (i < 0) field_error(field, "must be nonnegative");
        return static_cast<std::uint64_t>(i);
    }
    field_error(field, "expected a nonnegative integer");
}

double get_real(const json &obj, const char *key, const std::string &field) {
    const json &v = obj.at(key);
    if (!v.is_number()) field_error(field, "expected a number");
    return v.get<double>();
}

std::string get_string(const json &obj, const char *key, const std::string &field) {
    const json &v = obj.at(key);
    if (!v.is_string()) field_error(field, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_reals(const json &obj, const char *key, const std::string &field) {
    const json &v = obj.at(key);
    if (!v.is_array()) field_error(field, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) field_error(field + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void add(std::vector<Diagnostic> &out, std::string field, std::string message,
         Diagnostic::Severity s = Diagnostic::Severity::Error) {
    out.push_back({s, std::move(field), std::move(message)});
}

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

std::string_view to_string(Experiment e) noexcept {
    for (const Tag &t : kTags)
        if (t.e == e) return t.name;
    return "?";
}

Experiment parse_experiment(std::string_view s) {
    for (const Tag &t : kTags)
        if (t.name == s) return t.e;
    std::string known;
    for (const Tag &t : kTags) known += (known.empty() ? "" : "|") + std::string(t.name);
    fail(ErrorKind::Usage, "unknown experiment '" + std::string(s) + "' (" + known + ")");
}

std::string_view to_string(Format f) noexcept { return f == Format::Csv ? "csv" : "json"; }

Format parse_format(std::string_view s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    fail(ErrorKind::Usage, "unknown output format '" + std::string(s) + "' (csv|json)");
}

std::string to_string(const Diagnostic &d) {
    return std::string(d.severity == Diagnostic::Severity::Error ? "error" : "warning") + ": " + d.field + ": " +
           d.message;
}

ExperimentConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const auto [line, col] = line_column(text, e.byte);
        fail(ErrorKind::Parse, "config parse error at line " + std::to_string(line) + ", column " +
                                   std::to_string(col) + ": " + e.what());
    }
    if (!root.is_object()) fail(ErrorKind::Parse, "config parse error at line 1: top level must be an object");

    check_keys(root, "", {"schema", "experiment", "params", "trials", "seed", "deltas", "strategy", "sweep", "workers",
                          "output"});
    ExperimentConfig cfg;
    if (root.contains("schema")) {
        const std::string schema = get_string(root, "schema", "schema");
        if (schema != kConfigSchema)
            field_error("schema", "unsupported schema '" + schema + "', expected '" + std::string(kConfigSchema) + "'");
    }
    if (!root.contains("experiment")) field_error("experiment", "missing required field");
    cfg.experiment = parse_experiment(get_string(root, "experiment", "experiment"));

    if (root.contains("params")) {
        const json &p = object_at(root, "params", "params");
        check_keys(p, "params.", {"d", "M", "K", "alphabet", "origin"});
        if (p.contains("d")) cfg.params.d = get_uint(p, "d", "params.d");
        if (p.contains("M")) cfg.params.M = get_uint(p, "M", "params.M");
        if (p.contains("K")) cfg.params.K = get_uint(p, "K", "params.K");
        if (p.contains("alphabet")) cfg.params.alphabet = parse_alphabet(get_string(p, "alphabet", "params.alphabet"));
        if (p.contains("origin")) cfg.origin = parse_origin(get_string(p, "origin", "params.origin"));
    }
    if (root.contains("trials")) cfg.trials = get_uint(root, "trials", "trials");
    if (root.contains("seed")) cfg.seed = get_uint(root, "seed", "seed");
    cfg.params.seed = cfg.seed;
    if (root.contains("deltas")) {
        const json &d = object_at(root, "deltas", "deltas");
        check_keys(d, "deltas.", {"delta_spec", "delta_conc", "delta_net"});
        if (d.contains("delta_spec")) cfg.deltas.spec = get_real(d, "delta_spec", "deltas.delta_spec");
        if (d.contains("delta_conc")) cfg.deltas.conc = get_real(d, "delta_conc", "deltas.delta_conc");
        if (d.contains("delta_net")) cfg.deltas.net = get_real(d, "delta_net", "deltas.delta_net");
    }
    if (root.contains("strategy")) cfg.strategy = parse_strategy(get_string(root, "strategy", "strategy"));
    if (root.contains("sweep")) {
        const json &s = object_at(root, "sweep", "sweep");
        check_keys(s, "sweep.", {"delta", "gamma", "n"});
        if (s.contains("delta")) cfg.sweep.delta = get_reals(s, "delta", "sweep.delta");
        if (s.contains("gamma")) cfg.sweep.gamma = get_reals(s, "gamma", "sweep.gamma");
        if (s.contains("n")) cfg.sweep.n = get_reals(s, "n", "sweep.n");
    }
    if (root.contains("workers")) cfg.workers = get_uint(root, "workers", "workers");
    if (root.contains("output")) {
        const json &o = object_at(root, "output", "output");
        check_keys(o, "output.", {"path", "format"});
        if (o.contains("path")) cfg.out_path = get_string(o, "path", "output.path");
        if (o.contains("format")) cfg.format = parse_format(get_string(o, "format", "output.format"));
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Parse, "cannot read config file '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

std::vector<Diagnostic> validate(const ExperimentConfig &cfg) {
    std::vector<Diagnostic> out;
    const ProtocolParams &p = cfg.params;
    if (p.d < 2) add(out, "params.d", "must be >= 2");
    if (p.M < 1) add(out, "params.M", "must be >= 1");
    if (p.K < 1) add(out, "params.K", "must be >= 1");
    if (cfg.trials < 1) add(out, "trials", "must be >= 1");
    if (!open_unit(cfg.deltas.spec)) add(out, "deltas.delta_spec", "must lie in (0, 1)");
    if (!open_unit(cfg.deltas.conc)) add(out, "deltas.delta_conc", "must lie in (0, 1)");
    if (!open_unit(cfg.deltas.net)) add(out, "deltas.delta_net", "must lie in (0, 1)");
    if (cfg.origin == CodebookOrigin::PhaseUnitaries && p.M != p.d)
        add(out, "params.M", "phase-unitary codebooks require M = d");

    switch (cfg.experiment) {
    case Experiment::Decode:
        if (p.M > p.d)
            add(out, "params.M", "M > d is outside the regime of the PGM success bound", Diagnostic::Severity::Warning);
        break;
    case Experiment::EveBound:
        if (cfg.strategy == MinimizerStrategy::Net) {
            if (p.d > 3) add(out, "params.d", "net strategy supports d <= 3 only", Diagnostic::Severity::Warning);
            if (cfg.deltas.net > 0.5) add(out, "deltas.delta_net", "net strategy needs delta_net <= 0.5");
        }
        break;
    case Experiment::NetCheck:
        if (p.d > 3) add(out, "params.d", "nets are built for d <= 3 only", Diagnostic::Severity::Warning);
        if (cfg.deltas.net < 0.05) add(out, "deltas.delta_net", "below the cardinality guard 0.05",
                                       Diagnostic::Severity::Warning);
        break;
    case Experiment::KeyRate:
    case Experiment::Leakage: {
        for (std::size_t i = 0; i < cfg.sweep.delta.size(); ++i)
            if (!open_unit(cfg.sweep.delta[i])) add(out, "sweep.delta[" + std::to_string(i) + "]", "must lie in (0, 1)");
        for (std::size_t i = 0; i < cfg.sweep.gamma.size(); ++i)
            if (!(cfg.sweep.gamma[i] >= 0.0 && cfg.sweep.gamma[i] < 1.0))
                add(out, "sweep.gamma[" + std::to_string(i) + "]", "must lie in [0, 1)");
        const double bits = std::log2(static_cast<double>(std::max<std::size_t>(p.M, 1)));
        for (std::size_t i = 0; i < cfg.sweep.n.size(); ++i)
            if (!(cfg.sweep.n[i] >= 0.0 && cfg.sweep.n[i] < bits))
                add(out, "sweep.n[" + std::to_string(i) + "]", "must satisfy 0 <= n < log2 M");
        if (cfg.experiment == Experiment::Leakage && cfg.sweep.n.empty() && !(bits > 10.0))
            add(out, "sweep.n", "the default range 4..10 needs log2 M > 10; give sweep.n explicitly");
        break;
    }
    default:
        break;
    }
    return out;
}

void require_valid(const ExperimentConfig &cfg) {
    std::string msg;
    for (const Diagnostic &d : validate(cfg))
        if (d.severity == Diagnostic::Severity::Error) msg += (msg.empty() ? "" : "; ") + d.field + ": " + d.message;
    if (!msg.empty()) fail(ErrorKind::Usage, "invalid config: " + msg);
}

std::string config_echo(const ExperimentConfig &cfg) {
    json j;
    j["schema"] = kConfigSchema;
    j["experiment"] = to_string(cfg.experiment);
    j["params"] = {{"d", cfg.params.d},
                   {"M", cfg.params.M},
                   {"K", cfg.params.K},
                   {"alphabet", to_string(cfg.params.alphabet)},
                   {"origin", to_string(cfg.origin)}};
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["deltas"] = {{"delta_spec", cfg.deltas.spec}, {"delta_conc", cfg.deltas.conc}, {"delta_net", cfg.deltas.net}};
    j["strategy"] = to_string(cfg.strategy);
    j["sweep"] = {{"delta", cfg.sweep.delta}, {"gamma", cfg.sweep.gamma}, {"n", cfg.sweep.n}};
    return j.dump();
}

}  // namespace qdl::harness
