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
#include <string>
#include <string_view>
#include <vector>

#include "qdl/adversary.hpp"
#include "qdl/ensemble.hpp"

namespace qdl::harness {

inline constexpr std::string_view kConfigSchema = "qdl-config/1";

enum class Experiment { Spectra, Decode, EveBound, QConc, NetCheck, LemmaCheck, KeyRate, Leakage };

std::string_view to_string(Experiment e) noexcept;
/// Error(Usage) for an unknown tag.
Experiment parse_experiment(std::string_view s);

enum class Format { Csv, Json };
std::string_view to_string(Format f) noexcept;
Format parse_format(std::string_view s);

/// The same symbol plays three roles; they are kept apart here.
struct Deltas {
    double spec = 0.1;  // spectral slack
    double conc = 0.3;  // concentration threshold
    double net = 0.5;   // net fineness / nearby-pair distance
};

struct Sweep {
    std::vector<double> delta;
    std::vector<double> gamma;
    std::vector<double> n;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Spectra;
    ProtocolParams params;
    CodebookOrigin origin = CodebookOrigin::IidVectors;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    Deltas deltas;
    MinimizerStrategy strategy = MinimizerStrategy::Gradient;
    Sweep sweep;
    std::size_t workers = 0;
    std::string out_path;  // empty: stdout
    Format format = Format::Csv;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string field;
    std::string message;
};

std::string to_string(const Diagnostic &d);

/// Parses JSON text. Error(Parse) with line and column for malformed JSON or
/// a field of the wrong type; invariant violations are left to validate().
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string &path);

/// Every invariant violation (errors) and regime remark (warnings).
std::vector<Diagnostic> validate(const ExperimentConfig &cfg);

/// Throws Error(Usage) listing all errors from validate().
void require_valid(const ExperimentConfig &cfg);

/// Canonical JSON echo of the config (no output section).
std::string config_echo(const ExperimentConfig &cfg);

}  // namespace qdl::harness
