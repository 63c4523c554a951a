// Copyright 2026 The IQEC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Declarative experiment configs, presets and the sweep driver.
//
// A config is a JSON object with a version field; unknown keys are errors.
// Sites are 1-based in configs. See presets/*.json for complete examples.

#ifndef IQEC_EXPERIMENTS_H
#define IQEC_EXPERIMENTS_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "iqec/gatefinder.h"
#include "iqec/metrology.h"
#include "iqec/qec.h"

namespace iqec {

inline constexpr int kConfigVersion = 1;

struct SystemSpec {
    /// qubit, many_body or cv.
    std::string kind = "qubit";
    int n = 1;
    int n_max = 30;
    Complex alpha{2.0, 0.0};
    double chi = 0.0;

    bool operator==(const SystemSpec &) const = default;
};

struct NoiseSpec {
    std::string label;
    /// 1-based; empty means every site.
    std::vector<int> sites;
    double rate = 0.1;
    double theta = 0.0;
    /// One operator: the product of the single-site operators over `sites` (Pauli labels only).
    bool correlated = false;

    bool operator==(const NoiseSpec &) const = default;
};

struct ProtocolSpec {
    std::string mode = "bare";
    double dt = 0.25;
    /// Pauli words ("X", "IZ", "Y1"), "parity" for cv, or the single entry "auto".
    std::vector<std::string> gates;
    std::string recovery = "invert_jump";
    std::string noise_knowledge = "known";
    bool final_time_correction = false;
    bool backaction_filter = false;

    bool operator==(const ProtocolSpec &) const = default;
};

struct ScenarioConfig {
    std::string name;
    SystemSpec system;
    /// Pauli expression multiplied by omega; empty selects the default (sum of Z over sites).
    std::string hamiltonian;
    /// plus, zero, ghz, cat_even or cat_odd; empty selects the system default.
    std::string initial;
    std::vector<NoiseSpec> noise;
    ProtocolSpec protocol;

    bool operator==(const ScenarioConfig &) const = default;
};

struct SweepSpec {
    /// gamma, N, dt or chi.
    std::string axis;
    std::vector<double> values;

    bool operator==(const SweepSpec &) const = default;
};

struct ExperimentConfig {
    int version = kConfigVersion;
    std::string name;
    std::string description;
    double omega0 = 1.0;
    std::vector<double> times;
    uint64_t seed = 0;
    /// ensemble, trajectory or off.
    std::string syndrome_log = "ensemble";
    std::optional<SweepSpec> sweep;
    std::vector<ScenarioConfig> scenarios;

    bool operator==(const ExperimentConfig &) const = default;
};

/// T in {0.25, 0.5, ..., 5.0}.
std::vector<double> default_time_grid();

/// Parses and validates; throws ParseError on malformed JSON and ConfigError on schema violations.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::filesystem::path &path);
/// Effective config with every default spelled out; parse_config(dump_config(c)) == c.
std::string dump_config(const ExperimentConfig &cfg);
/// Schema checks that do not need parsing (sites in range, one mode, positive rates, ...).
void validate_config(const ExperimentConfig &cfg);

std::filesystem::path preset_dir();
std::vector<std::string> preset_names();
ExperimentConfig load_preset(const std::string &name);

/// Noise operators of a qubit scenario as formal Pauli sums (0-based sites inside).
std::vector<PauliSum> noise_pauli_sums(const ScenarioConfig &sc);
PauliSum hamiltonian_pauli_sum(const ScenarioConfig &sc);

struct BuiltScenario {
    Scenario scenario;
    ProtocolConfig protocol;
    /// Gate strings after resolving "auto".
    std::vector<std::string> gate_labels;
};

BuiltScenario build_scenario(const ScenarioConfig &sc, double omega0);

/// Applies one sweep value to a copy of the config.
ExperimentConfig apply_sweep_value(const ExperimentConfig &cfg, const std::string &axis, double value);

struct ScenarioOutput {
    QfiCurve curve;
    std::vector<SyndromeRecord> syndromes;
    bool has_syndromes = false;
};

struct ExperimentResult {
    std::vector<ScenarioOutput> scenarios;
};

/// Evaluates every (scenario, T) point on `workers` threads (0 = hardware concurrency). Results are merged
/// in config order, so the output does not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig &cfg, int workers = 0);

struct SweepResult {
    std::vector<double> values;
    /// curves[i] belongs to values[i / scenario count].
    std::vector<QfiCurve> curves;
    std::vector<double> curve_values;
};

SweepResult run_sweep(const ExperimentConfig &cfg, int workers = 0);

/// Writes <name>_qfi.csv, one <name>_<scenario>_syndromes.csv per switch-protocol scenario and
/// <name>_effective.json into `dir`. Returns the paths written.
std::vector<std::filesystem::path> write_experiment(const ExperimentConfig &cfg, const ExperimentResult &res,
                                                    const std::filesystem::path &dir);
std::vector<std::filesystem::path> write_sweep(const ExperimentConfig &cfg, const SweepResult &res,
                                               const std::filesystem::path &dir);

/// One line: final-T QFI per scenario.
std::string summary_line(const ExperimentConfig &cfg, const ExperimentResult &res);

}  // namespace iqec

#endif
