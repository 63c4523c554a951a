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

// iqec command line: run, sweep, find-gates, check, presets.
// Exit codes: 0 ok, 1 no solution, 2 bad input, 3 physics precondition.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iqec/errors.h"
#include "iqec/experiments.h"
#include "iqec/gatefinder.h"
#include "json.hpp"

namespace {

using namespace iqec;

constexpr int kExitOk = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitInput = 2;
constexpr int kExitPhysics = 3;

struct Common {
    std::string config;
    std::string preset;
    std::string out = "out";
    int workers = 0;
    long long seed = -1;
};

void add_common(CLI::App *cmd, Common &c) {
    auto *cfg = cmd->add_option("--config", c.config, "experiment config (JSON)");
    auto *pre = cmd->add_option("--preset", c.preset, "name of a shipped preset");
    cfg->excludes(pre);
    cmd->add_option("--out", c.out, "output directory")->capture_default_str();
    cmd->add_option("--workers", c.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", c.seed, "overrides the config seed")->check(CLI::NonNegativeNumber);
}

ExperimentConfig load(const Common &c) {
    if (c.config.empty() == c.preset.empty()) {
        throw ConfigError("give exactly one of --config or --preset");
    }
    ExperimentConfig cfg = c.config.empty() ? load_preset(c.preset) : load_config(c.config);
    if (c.seed >= 0) {
        cfg.seed = static_cast<uint64_t>(c.seed);
    }
    return cfg;
}

std::vector<std::string> split_noise(const std::vector<std::string> &args) {
    std::vector<std::string> out;
    for (const auto &a : args) {
        for (auto &e : split_expr_list(a)) {
            out.push_back(e);
        }
    }
    return out;
}

struct Parsed {
    PauliSum h;
    std::vector<PauliSum> noise;
    std::vector<PauliString> gates;
};

Parsed parse_problem(const std::string &h, const std::vector<std::string> &noise,
                     const std::vector<std::string> &gates) {
    std::vector<std::string> exprs{h};
    const auto n_list = split_noise(noise);
    const auto g_list = split_noise(gates);
    if (n_list.empty()) {
        throw ConfigError("at least one noise operator is required");
    }
    exprs.insert(exprs.end(), n_list.begin(), n_list.end());
    exprs.insert(exprs.end(), g_list.begin(), g_list.end());
    auto sums = parse_pauli_exprs(exprs);
    Parsed p;
    p.h = sums[0];
    p.noise.assign(sums.begin() + 1, sums.begin() + 1 + static_cast<long>(n_list.size()));
    for (size_t i = 1 + n_list.size(); i < sums.size(); ++i) {
        auto w = sums[i].as_string();
        if (!w) {
            throw ParseError("gate '" + g_list[i - 1 - n_list.size()] + "' is not a single Pauli word");
        }
        p.gates.push_back(*w);
    }
    if (!p.h.is_hermitian()) {
        throw NonHermitianInput("the Hamiltonian must be Hermitian");
    }
    return p;
}

void print_report(const std::vector<ClauseResult> &report) {
    for (const auto &c : report) {
        std::printf("  [%s] %s%s%s\n", c.pass ? "ok" : "fail", c.clause.c_str(), c.detail.empty() ? "" : ": ",
                    c.detail.c_str());
    }
}

int cmd_find_gates(const std::string &h, const std::vector<std::string> &noise, const std::string &mode_name) {
    const Parsed p = parse_problem(h, noise, {});
    const GateMode mode = mode_name == "sniqec" ? GateMode::kSniqec : GateMode::kIqec;
    GenSetReport gens;
    GateSearchResult r = find_gates_for_noise(p.noise, p.h, mode, &gens);
    std::printf("mode: %s\n", gate_mode_name(mode));
    std::printf("generators (%s):", gen_kind_name(gens.kind));
    for (const auto &g : gens.generators) {
        std::printf(" %s", g.str().c_str());
    }
    std::printf("\n");
    if (!r.found) {
        std::printf("result: no_solution\ncertificate: %s\n", r.certificate.c_str());
        print_report(r.report);
        return kExitNoSolution;
    }
    std::printf("gates:");
    for (const auto &g : r.gates) {
        std::printf(" %s", g.word().c_str());
    }
    std::printf("\nancillas: %d\n", r.ancillas());
    print_report(r.report);
    return kExitOk;
}

int cmd_check(const std::string &h, const std::vector<std::string> &noise, const std::vector<std::string> &gates,
              const std::string &theorem) {
    const Parsed p = parse_problem(h, noise, gates);
    if (p.gates.empty()) {
        throw ConfigError("--gates is required");
    }
    const Theorem t = theorem == "t1" ? Theorem::kT1 : theorem == "t2" ? Theorem::kT2 : Theorem::kT3;
    TheoremReport r = check_theorem(p.noise, p.h, p.gates, t);
    std::printf("theorem: %s\n", theorem.c_str());
    print_report(r.clauses);
    std::printf("hnls: %s\n", hnls_satisfied(p.h, p.noise) ? "satisfied" : "violated");
    std::printf("result: %s\n", r.pass ? "admissible" : "not admissible");
    return r.pass ? kExitOk : kExitNoSolution;
}

int cmd_run(const Common &c) {
    ExperimentConfig cfg = load(c);
    ExperimentResult res = run_experiment(cfg, c.workers);
    for (const auto &p : write_experiment(cfg, res, c.out)) {
        std::fprintf(stderr, "wrote %s\n", p.string().c_str());
    }
    std::printf("%s\n", summary_line(cfg, res).c_str());
    return kExitOk;
}

std::vector<double> parse_values(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error &) {
            throw ConfigError("--values: '" + item + "' is not a number");
        }
    }
    if (out.empty()) {
        throw ConfigError("sweep: empty value list");
    }
    return out;
}

int cmd_sweep(const Common &c, const std::string &axis, const std::string &values_text, bool values_given) {
    ExperimentConfig cfg = load(c);
    const std::vector<double> values = values_given ? parse_values(values_text) : std::vector<double>{};
    if (!axis.empty() || values_given) {
        SweepSpec s = cfg.sweep.value_or(SweepSpec{});
        if (!axis.empty()) {
            s.axis = axis;
        }
        if (values_given) {
            s.values = values;
        }
        cfg.sweep = s;
        validate_config(cfg);
    }
    SweepResult res = run_sweep(cfg, c.workers);
    for (const auto &p : write_sweep(cfg, res, c.out)) {
        std::fprintf(stderr, "wrote %s\n", p.string().c_str());
    }
    std::printf("%s: %zu curves over %s = {", cfg.name.c_str(), res.curves.size(), cfg.sweep->axis.c_str());
    for (size_t i = 0; i < res.values.size(); ++i) {
        std::printf("%s%g", i ? ", " : "", res.values[i]);
    }
    std::printf("}\n");
    return kExitOk;
}

int cmd_presets(const std::string &name) {
    if (name.empty()) {
        for (const auto &n : preset_names()) {
            ExperimentConfig cfg = load_preset(n);
            std::printf("%-8s %s\n", n.c_str(), cfg.description.c_str());
        }
        return kExitOk;
    }
    std::printf("%s", dump_config(load_preset(name)).c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Indefinite-causal-order error correction for quantum metrology"};
    app.require_subcommand(1);

    Common run_opts;
    auto *run = app.add_subcommand("run", "evaluate QFI curves for every scenario of a config");
    add_common(run, run_opts);

    Common sweep_opts;
    std::string axis;
    std::string values;
    auto *sweep = app.add_subcommand("sweep", "repeat a config over one parameter axis");
    add_common(sweep, sweep_opts);
    sweep->add_option("--axis", axis, "gamma, N, dt or chi")->check(CLI::IsMember({"gamma", "N", "dt", "chi"}));
    auto *values_opt = sweep->add_option("--values", values, "comma-separated axis values");

    std::string h, mode = "iqec", theorem = "t1";
    std::vector<std::string> noise, gates;
    auto *find = app.add_subcommand("find-gates", "search for admissible auxiliary gates");
    find->set_help_flag("--help", "print this help");
    find->add_option("--h", h, "Hamiltonian, e.g. \"Z1+Z2\"")->required();
    find->add_option("--noise", noise, "noise operators, comma separated")->required();
    find->add_option("--mode", mode, "iqec or sniqec")->check(CLI::IsMember({"iqec", "sniqec"}))->capture_default_str();

    auto *check = app.add_subcommand("check", "evaluate the admissibility conditions for given gates");
    check->set_help_flag("--help", "print this help");
    check->add_option("--h", h, "Hamiltonian")->required();
    check->add_option("--noise", noise, "noise operators, comma separated")->required();
    check->add_option("--gates", gates, "auxiliary gates, comma separated")->required();
    check->add_option("--theorem", theorem, "t1, t2 or t3")->check(CLI::IsMember({"t1", "t2", "t3"}))
        ->capture_default_str();

    std::string preset_name;
    auto *presets = app.add_subcommand("presets", "list presets or print one as an effective config");
    presets->add_option("--preset", preset_name, "preset to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*run) {
            return cmd_run(run_opts);
        }
        if (*sweep) {
            return cmd_sweep(sweep_opts, axis, values, values_opt->count() > 0);
        }
        if (*find) {
            return cmd_find_gates(h, noise, mode);
        }
        if (*check) {
            return cmd_check(h, noise, gates, theorem);
        }
        return cmd_presets(preset_name);
    } catch (const NoSolution &e) {
        std::fprintf(stderr, "no_solution: %s\n", e.what());
        return kExitNoSolution;
    } catch (const InputError &e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const nlohmann::json::exception &e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const PhysicsError &e) {
        std::fprintf(stderr, "physics error: %s\n", e.what());
        return kExitPhysics;
    } catch (const std::filesystem::filesystem_error &e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitInput;
    }
}
