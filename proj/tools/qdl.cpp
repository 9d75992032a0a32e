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

// qdl: run quantum data locking experiments from a JSON config.
//
//   qdl <experiment> --config <file> [--seed N] [--trials N] [--out PATH] [--format csv|json]
//   qdl validate --config <file>

#include <cstdlib>
#include <iostream>
#include <new>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qdl/errors.hpp"
#include "qdl/harness/config.hpp"
#include "qdl/harness/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumeric = 4;

const char *const kExperiments[] = {"spectra", "decode", "eve-bound", "qconc",
                                    "net-check", "lemma-check", "keyrate", "leakage"};

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

int do_validate(const std::string &path) {
    const auto cfg = qdl::harness::load_config(path);
    const auto diags = qdl::harness::validate(cfg);
    bool errors = false;
    for (const auto &d : diags) {
        std::cout << qdl::harness::to_string(d) << "\n";
        errors = errors || d.severity == qdl::harness::Diagnostic::Severity::Error;
    }
    if (diags.empty()) std::cout << "ok\n";
    return errors ? kExitUsage : kExitOk;
}

int do_run(const std::string &experiment, const Overrides &o) {
    auto cfg = qdl::harness::load_config(o.config);
    const auto wanted = qdl::harness::parse_experiment(experiment);
    if (cfg.experiment != wanted)
        qdl::fail(qdl::ErrorKind::Usage, "config '" + o.config + "' describes experiment '" +
                                             std::string(qdl::harness::to_string(cfg.experiment)) + "', not '" +
                                             experiment + "'");
    if (o.seed) {
        cfg.seed = *o.seed;
        cfg.params.seed = *o.seed;
    }
    if (o.trials) cfg.trials = *o.trials;
    if (o.out) cfg.out_path = *o.out;
    if (o.format) cfg.format = qdl::harness::parse_format(*o.format);
    const auto record = qdl::harness::run(cfg);
    qdl::harness::emit(record, cfg.out_path, cfg.format);
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum data locking experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qdl::harness::kVersion));

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "check a config file without running it");
    validate->add_option("--config", validate_path, "config file")->required();

    Overrides o;
    for (const char *name : kExperiments) {
        auto *sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
        sub->add_option("--config", o.config, "config file")->required();
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--trials", o.trials, "trial count");
        sub->add_option("--out", o.out, "output path ('-' for stdout)");
        sub->add_option("--format", o.format, "csv or json");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) return do_validate(validate_path);
        for (const char *name : kExperiments)
            if (app.got_subcommand(name)) return do_run(name, o);
    } catch (const qdl::Error &e) {
        std::cerr << "qdl: " << qdl::to_string(e.kind()) << ": " << e.what() << "\n";
        return qdl::exit_code(e.kind());
    } catch (const std::bad_alloc &) {
        std::cerr << "qdl: capacity error: out of memory\n";
        return kExitCapacity;
    } catch (const std::exception &e) {
        std::cerr << "qdl: numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
