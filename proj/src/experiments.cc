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

#include "iqec/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "iqec/cv.h"
#include "iqec/errors.h"
#include "json.hpp"

namespace iqec {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kQubitLabels = {"pauli_x", "pauli_y", "pauli_z", "pauli_theta", "amplitude_damping",
                                            "collective_z"};

const std::set<std::string> kPauliLabels = {"pauli_x", "pauli_y", "pauli_z", "pauli_theta"};

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto &[k, v] : j.items()) {
        if (!allowed.count(k)) {
            throw ConfigError(where + ": unknown key '" + k + "'");
        }
    }
}

template <typename T>
T get_or(const json &j, const char *key, T fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->template get<T>();
}

bool safe_name(const std::string &s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
}

std::string default_hamiltonian(int n) {
    std::string h;
    for (int k = 1; k <= n; ++k) {
        h += (k > 1 ? "+Z" : "Z") + std::to_string(k);
    }
    return h;
}

std::string default_initial(const SystemSpec &s) {
    if (s.kind == "cv") {
        return "cat_even";
    }
    return s.kind == "many_body" ? "ghz" : "plus";
}

bool is_switch_mode(const std::string &mode) {
    return mode == "iqec" || mode == "sniqec" || mode == "iqec_unitary" || mode == "iqec_postselect";
}

double round12(double x) {
    return std::round(x * 1e12) / 1e12;
}

SystemSpec parse_system(const json &j) {
    check_keys(j, {"kind", "n", "n_max", "alpha", "chi"}, "system");
    SystemSpec s;
    s.kind = get_or<std::string>(j, "kind", "qubit");
    s.n = get_or<int>(j, "n", 1);
    s.n_max = get_or<int>(j, "n_max", 30);
    s.chi = get_or<double>(j, "chi", 0.0);
    if (auto it = j.find("alpha"); it != j.end()) {
        if (it->is_array()) {
            if (it->size() != 2) {
                throw ConfigError("system.alpha: expected a number or [re, im]");
            }
            s.alpha = Complex((*it)[0].get<double>(), (*it)[1].get<double>());
        } else {
            s.alpha = Complex(it->get<double>(), 0.0);
        }
    }
    return s;
}

NoiseSpec parse_noise(const json &j) {
    check_keys(j, {"label", "sites", "rate", "theta", "correlated"}, "noise");
    NoiseSpec n;
    if (!j.contains("label")) {
        throw ConfigError("noise: missing 'label'");
    }
    n.label = j.at("label").get<std::string>();
    n.sites = get_or<std::vector<int>>(j, "sites", {});
    n.rate = get_or<double>(j, "rate", 0.1);
    n.theta = get_or<double>(j, "theta", 0.0);
    n.correlated = get_or<bool>(j, "correlated", false);
    return n;
}

ProtocolSpec parse_protocol(const json &j) {
    check_keys(j, {"mode", "dt", "gates", "recovery", "noise_knowledge", "final_time_correction", "backaction_filter"},
               "protocol");
    ProtocolSpec p;
    if (!j.contains("mode")) {
        throw ConfigError("protocol: missing 'mode'");
    }
    p.mode = j.at("mode").get<std::string>();
    p.dt = get_or<double>(j, "dt", 0.25);
    if (auto it = j.find("gates"); it != j.end()) {
        p.gates = it->is_string() ? std::vector<std::string>{it->get<std::string>()}
                                  : it->get<std::vector<std::string>>();
    }
    p.recovery = get_or<std::string>(j, "recovery", "invert_jump");
    p.noise_knowledge = get_or<std::string>(j, "noise_knowledge", "known");
    p.final_time_correction = get_or<bool>(j, "final_time_correction", false);
    p.backaction_filter = get_or<bool>(j, "backaction_filter", false);
    return p;
}

ScenarioConfig parse_scenario(const json &j) {
    check_keys(j, {"name", "system", "hamiltonian", "initial", "noise", "protocol"}, "scenario");
    ScenarioConfig s;
    if (!j.contains("name") || !j.contains("protocol")) {
        throw ConfigError("scenario: 'name' and 'protocol' are required");
    }
    s.name = j.at("name").get<std::string>();
    if (j.contains("system")) {
        s.system = parse_system(j.at("system"));
    }
    s.hamiltonian = get_or<std::string>(j, "hamiltonian", "");
    if (s.hamiltonian.empty() && s.system.kind != "cv") {
        s.hamiltonian = default_hamiltonian(s.system.n);
    }
    s.initial = get_or<std::string>(j, "initial", "");
    if (s.initial.empty()) {
        s.initial = default_initial(s.system);
    }
    if (auto it = j.find("noise"); it != j.end()) {
        if (!it->is_array()) {
            throw ConfigError("scenario '" + s.name + "': 'noise' must be a list");
        }
        for (const auto &n : *it) {
            s.noise.push_back(parse_noise(n));
        }
    }
    if (j.at("protocol").is_array()) {
        throw ConfigError("scenario '" + s.name + "': exactly one protocol per scenario");
    }
    s.protocol = parse_protocol(j.at("protocol"));
    return s;
}

void validate_scenario(const ScenarioConfig &s, const std::vector<double> &times) {
    const std::string where = "scenario '" + s.name + "'";
    if (!safe_name(s.name)) {
        throw ConfigError(where + ": names may use letters, digits, '_', '-' and '.' only");
    }
    const auto &sys = s.system;
    const bool cv = sys.kind == "cv";
    if (sys.kind != "qubit" && sys.kind != "many_body" && !cv) {
        throw ConfigError(where + ": system.kind must be qubit, many_body or cv");
    }
    if (sys.kind == "qubit" && sys.n != 1) {
        throw ConfigError(where + ": a qubit system has n = 1; use many_body for more sites");
    }
    if (sys.kind == "many_body" && (sys.n < 1 || sys.n > 6)) {
        throw ConfigError(where + ": many_body n must be in [1, 6]");
    }
    if (cv && (sys.n_max < 2 || sys.n_max > 200)) {
        throw ConfigError(where + ": n_max must be in [2, 200]");
    }
    if (!(sys.chi >= 0.0) || !std::isfinite(sys.chi)) {
        throw ConfigError(where + ": chi must be a nonnegative number");
    }
    if (cv && !s.hamiltonian.empty()) {
        throw ConfigError(where + ": cv systems take their Hamiltonian from omega and chi");
    }
    if (!cv) {
        PauliSum h = parse_pauli_expr(s.hamiltonian, sys.n);
        if (!h.is_hermitian()) {
            throw ConfigError(where + ": Hamiltonian must be Hermitian");
        }
    }
    static const std::set<std::string> qubit_states = {"plus", "zero", "ghz"};
    static const std::set<std::string> cv_states = {"cat_even", "cat_odd"};
    if (!(cv ? cv_states : qubit_states).count(s.initial)) {
        throw ConfigError(where + ": initial state '" + s.initial + "' does not fit the system");
    }
    for (const auto &n : s.noise) {
        if (cv ? n.label != "photon_loss" : !kQubitLabels.count(n.label)) {
            if (n.label != "photon_loss" && !kQubitLabels.count(n.label)) {
                throw UnknownLabel(where + ": unknown noise label '" + n.label + "'");
            }
            throw ConfigError(where + ": noise '" + n.label + "' does not fit a " + sys.kind + " system");
        }
        if (!(n.rate >= 0.0) || !std::isfinite(n.rate)) {
            throw ConfigError(where + ": noise rates must be nonnegative");
        }
        if (n.correlated && (!kPauliLabels.count(n.label) || n.sites.size() < 2)) {
            throw ConfigError(where + ": correlated noise needs a Pauli label and at least two sites");
        }
        for (int site : n.sites) {
            if (cv || site < 1 || site > sys.n) {
                throw BadSite(where + ": noise site " + std::to_string(site) + " is outside the system");
            }
        }
    }
    const auto &p = s.protocol;
    ProtocolMode mode = parse_mode(p.mode);
    if (!(p.dt > 0.0) || !std::isfinite(p.dt)) {
        throw ConfigError(where + ": dt must be positive");
    }
    if (p.recovery != "invert_jump" && p.recovery != "discard_branch") {
        throw ConfigError(where + ": recovery must be invert_jump or discard_branch");
    }
    if (p.noise_knowledge != "known" && p.noise_knowledge != "unknown") {
        throw ConfigError(where + ": noise_knowledge must be known or unknown");
    }
    if (mode == ProtocolMode::kTqec && !(sys.kind == "qubit")) {
        throw ConfigError(where + ": tqec needs a single-qubit system");
    }
    if (is_switch_mode(p.mode)) {
        if (p.gates.empty()) {
            throw ConfigError(where + ": mode " + p.mode + " needs 'gates' (a list or \"auto\")");
        }
        const bool automatic = p.gates.size() == 1 && p.gates.front() == "auto";
        for (const auto &g : p.gates) {
            if (automatic) {
                break;
            }
            if (cv) {
                if (g != "parity") {
                    throw ConfigError(where + ": cv gates must be \"parity\"");
                }
                continue;
            }
            auto w = parse_pauli_expr(g, sys.n).as_string();
            if (!w || w->size() != sys.n) {
                throw ConfigError(where + ": gate '" + g + "' is not a Pauli word on " + std::to_string(sys.n) +
                                  " sites");
            }
            if (mode == ProtocolMode::kSniqec && w->support().size() != 1) {
                throw ConfigError(where + ": sniqec gates act on exactly one site");
            }
        }
    } else if (!p.gates.empty()) {
        throw ConfigError(where + ": mode " + p.mode + " takes no gates");
    }
    if (!p.final_time_correction) {
        for (double t : times) {
            const long r = std::lround(t / p.dt);
            if (r < 1 || std::abs(r * p.dt - t) > 1e-9) {
                throw ConfigError(where + ": T = " + std::to_string(t) + " is not a multiple of dt");
            }
        }
    }
}

json dump_scenario(const ScenarioConfig &s) {
    json sys = {{"kind", s.system.kind}, {"n", s.system.n}};
    if (s.system.kind == "cv") {
        sys["n_max"] = s.system.n_max;
        sys["alpha"] = {s.system.alpha.real(), s.system.alpha.imag()};
        sys["chi"] = s.system.chi;
    }
    json noise = json::array();
    for (const auto &n : s.noise) {
        noise.push_back({{"label", n.label}, {"sites", n.sites}, {"rate", n.rate}, {"theta", n.theta},
                         {"correlated", n.correlated}});
    }
    json out = {{"name", s.name}, {"system", sys}};
    if (!s.hamiltonian.empty()) {
        out["hamiltonian"] = s.hamiltonian;
    }
    out["initial"] = s.initial;
    out["noise"] = noise;
    out["protocol"] = {{"mode", s.protocol.mode},
                       {"dt", s.protocol.dt},
                       {"gates", s.protocol.gates},
                       {"recovery", s.protocol.recovery},
                       {"noise_knowledge", s.protocol.noise_knowledge},
                       {"final_time_correction", s.protocol.final_time_correction},
                       {"backaction_filter", s.protocol.backaction_filter}};
    return out;
}

Vector initial_state(const ScenarioConfig &s) {
    const int n = s.system.n;
    const int d = 1 << n;
    if (s.initial == "ghz") {
        return ghz_ket(n);
    }
    if (s.initial == "zero") {
        return basis_ket(d, 0);
    }
    return Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
}

// Runs fn(i) for i in [0, n) on a pool; rethrows the exception of the lowest failing index.
void parallel_for(size_t n, int workers, const std::function<void(size_t)> &fn) {
    if (workers <= 0) {
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    workers = static_cast<int>(std::min<size_t>(static_cast<size_t>(workers), std::max<size_t>(n, 1)));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void write_file(const std::filesystem::path &p, const std::string &content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot write " + p.string());
    }
    f << content;
}

}  // namespace

std::vector<double> default_time_grid() {
    std::vector<double> t;
    for (int k = 1; k <= 20; ++k) {
        t.push_back(0.25 * k);
    }
    return t;
}

ExperimentConfig parse_config(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;
    try {
        check_keys(j, {"version", "name", "description", "omega0", "times", "time_grid", "seed", "syndrome_log",
                       "sweep", "scenarios"},
                   "config");
        if (!j.contains("version")) {
            throw ConfigError("config: missing 'version'");
        }
        c.version = j.at("version").get<int>();
        if (c.version != kConfigVersion) {
            throw ConfigError("config: unsupported version " + std::to_string(c.version));
        }
        if (!j.contains("name")) {
            throw ConfigError("config: missing 'name'");
        }
        c.name = j.at("name").get<std::string>();
        c.description = get_or<std::string>(j, "description", "");
        c.omega0 = get_or<double>(j, "omega0", 1.0);
        c.seed = get_or<uint64_t>(j, "seed", 0);
        c.syndrome_log = get_or<std::string>(j, "syndrome_log", "ensemble");
        if (j.contains("times") && j.contains("time_grid")) {
            throw ConfigError("config: give either 'times' or 'time_grid'");
        }
        if (j.contains("times")) {
            c.times = j.at("times").get<std::vector<double>>();
        } else if (j.contains("time_grid")) {
            const json &g = j.at("time_grid");
            check_keys(g, {"start", "stop", "step"}, "time_grid");
            const double start = g.at("start").get<double>();
            const double stop = g.at("stop").get<double>();
            const double step = g.at("step").get<double>();
            if (!(step > 0.0) || !(stop >= start)) {
                throw ConfigError("time_grid: need step > 0 and stop >= start");
            }
            const long count = std::lround(std::floor((stop - start) / step + 1e-9));
            for (long k = 0; k <= count; ++k) {
                c.times.push_back(round12(start + k * step));
            }
        } else {
            c.times = default_time_grid();
        }
        if (auto it = j.find("sweep"); it != j.end()) {
            check_keys(*it, {"axis", "values"}, "sweep");
            SweepSpec s;
            s.axis = it->at("axis").get<std::string>();
            s.values = get_or<std::vector<double>>(*it, "values", {});
            c.sweep = s;
        }
        if (!j.contains("scenarios") || !j.at("scenarios").is_array()) {
            throw ConfigError("config: 'scenarios' must be a list");
        }
        for (const auto &s : j.at("scenarios")) {
            c.scenarios.push_back(parse_scenario(s));
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: wrong value type: ") + e.what());
    }
    validate_config(c);
    return c;
}

void validate_config(const ExperimentConfig &c) {
    if (!safe_name(c.name)) {
        throw ConfigError("config: name may use letters, digits, '_', '-' and '.' only");
    }
    if (!std::isfinite(c.omega0)) {
        throw ConfigError("config: omega0 must be finite");
    }
    if (c.times.empty()) {
        throw ConfigError("config: empty time grid");
    }
    for (size_t i = 0; i < c.times.size(); ++i) {
        if (!(c.times[i] > 0.0) || (i > 0 && !(c.times[i] > c.times[i - 1]))) {
            throw ConfigError("config: times must be positive and strictly increasing");
        }
    }
    if (c.syndrome_log != "ensemble" && c.syndrome_log != "trajectory" && c.syndrome_log != "off") {
        throw ConfigError("config: syndrome_log must be ensemble, trajectory or off");
    }
    if (c.sweep) {
        static const std::set<std::string> axes = {"gamma", "N", "dt", "chi"};
        if (!axes.count(c.sweep->axis)) {
            throw ConfigError("sweep: axis must be gamma, N, dt or chi");
        }
        if (c.sweep->values.empty()) {
            throw ConfigError("sweep: empty value list");
        }
    }
    if (c.scenarios.empty()) {
        throw ConfigError("config: at least one scenario is required");
    }
    std::set<std::string> names;
    for (const auto &s : c.scenarios) {
        if (!names.insert(s.name).second) {
            throw ConfigError("config: duplicate scenario name '" + s.name + "'");
        }
        validate_scenario(s, c.times);
    }
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot read config " + path.string());
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig &c) {
    json j = {{"version", c.version}, {"name", c.name}};
    if (!c.description.empty()) {
        j["description"] = c.description;
    }
    j["omega0"] = c.omega0;
    j["times"] = c.times;
    j["seed"] = c.seed;
    j["syndrome_log"] = c.syndrome_log;
    if (c.sweep) {
        j["sweep"] = {{"axis", c.sweep->axis}, {"values", c.sweep->values}};
    }
    json sc = json::array();
    for (const auto &s : c.scenarios) {
        sc.push_back(dump_scenario(s));
    }
    j["scenarios"] = sc;
    return j.dump(2) + "\n";
}

std::filesystem::path preset_dir() {
    if (const char *env = std::getenv("IQEC_PRESET_DIR")) {
        return env;
    }
    return IQEC_PRESET_DIR;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto &e : std::filesystem::directory_iterator(preset_dir(), ec)) {
        if (e.path().extension() == ".json") {
            out.push_back(e.path().stem().string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExperimentConfig load_preset(const std::string &name) {
    if (!safe_name(name)) {
        throw ConfigError("unknown preset '" + name + "'");
    }
    auto p = preset_dir() / (name + ".json");
    if (!std::filesystem::exists(p)) {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return load_config(p);
}

std::vector<PauliSum> noise_pauli_sums(const ScenarioConfig &sc) {
    const int n = sc.system.n;
    std::vector<PauliSum> out;
    for (const auto &spec : sc.noise) {
        std::vector<int> sites = spec.sites;
        if (sites.empty()) {
            for (int k = 1; k <= n; ++k) {
                sites.push_back(k);
            }
        }
        if (spec.label == "collective_z") {
            PauliSum s(n);
            for (int k : sites) {
                s = s + PauliSum::from(PauliString::single(n, k - 1, 'Z'));
            }
            out.push_back(s);
            continue;
        }
        std::vector<PauliSum> ops;
        for (int k : sites) {
            auto one = [&](char l) { return PauliSum::from(PauliString::single(n, k - 1, l)); };
            if (spec.label == "pauli_x") {
                ops.push_back(one('X'));
            } else if (spec.label == "pauli_y") {
                ops.push_back(one('Y'));
            } else if (spec.label == "pauli_z") {
                ops.push_back(one('Z'));
            } else if (spec.label == "pauli_theta") {
                ops.push_back(one('X') * Complex(std::cos(spec.theta), 0.0) +
                              one('Z') * Complex(std::sin(spec.theta), 0.0));
            } else if (spec.label == "amplitude_damping") {
                ops.push_back(one('X') * Complex(0.5, 0.0) + one('Y') * Complex(0.0, 0.5));
            } else {
                throw ConfigError("noise '" + spec.label + "' has no Pauli form");
            }
        }
        if (spec.correlated) {
            PauliSum prod = PauliSum::identity(n);
            for (const auto &o : ops) {
                prod = prod * o;
            }
            out.push_back(prod);
        } else {
            out.insert(out.end(), ops.begin(), ops.end());
        }
    }
    return out;
}

PauliSum hamiltonian_pauli_sum(const ScenarioConfig &sc) {
    return parse_pauli_expr(sc.hamiltonian, sc.system.n);
}

BuiltScenario build_scenario(const ScenarioConfig &sc, double omega0) {
    BuiltScenario out;
    Scenario &s = out.scenario;
    ProtocolConfig &p = out.protocol;
    s.name = sc.name;
    s.omega0 = omega0;
    p.mode = parse_mode(sc.protocol.mode);
    p.dt = sc.protocol.dt;
    p.recovery_policy =
        sc.protocol.recovery == "discard_branch" ? RecoveryPolicy::kDiscardBranch : RecoveryPolicy::kInvertJump;
    p.knowledge = sc.protocol.noise_knowledge == "unknown" ? NoiseKnowledge::kUnknown : NoiseKnowledge::kKnown;
    p.final_time_correction = sc.protocol.final_time_correction;
    p.backaction_filter = sc.protocol.backaction_filter;
    const bool automatic = sc.protocol.gates.size() == 1 && sc.protocol.gates.front() == "auto";

    if (sc.system.kind == "cv") {
        FockSpace space{sc.system.n_max};
        const double chi = sc.system.chi;
        s.probe = ProbeSpec::fock(space.n_max);
        s.h_terms = [chi, space](double w) { return std::vector<Matrix>{build_cv_hamiltonian(w, chi, space)}; };
        std::vector<NoiseModel> parts;
        for (const auto &n : sc.noise) {
            parts.push_back(make_noise("photon_loss", {}, n.rate, s.probe));
        }
        if (parts.empty()) {
            parts.push_back(make_noise("photon_loss", {}, 0.0, s.probe));
        }
        s.noise = combine(parts);
        const auto parity =
            sc.initial == "cat_odd" ? CatState::Parity::kOdd : CatState::Parity::kEven;
        s.initial = CatState{sc.system.alpha, parity}.ket(space);
        s.leakage_index = space.n_max;
        if (chi == 0.0) {
            s.jump_recovery.assign(s.noise.size(), space.lowering());
        }
        if (!sc.protocol.gates.empty()) {
            p.gates = {parity_gate(space)};
            out.gate_labels = {"parity"};
        }
        return out;
    }

    const int n = sc.system.n;
    s.probe = ProbeSpec::qubits(n);
    const PauliSum h0 = hamiltonian_pauli_sum(sc);
    std::vector<Matrix> terms;
    if (p.mode == ProtocolMode::kSniqec) {
        for (const auto &t : split_site_terms(h0)) {
            terms.push_back(t.matrix());
        }
    } else {
        terms.push_back(h0.matrix());
    }
    s.h_terms = [terms](double w) {
        std::vector<Matrix> out;
        for (const auto &t : terms) {
            out.push_back(w * t);
        }
        return out;
    };
    s.initial = initial_state(sc);

    std::vector<NoiseModel> parts;
    std::vector<std::optional<Matrix>> recovery;
    for (const auto &spec : sc.noise) {
        std::vector<int> sites;
        for (int k : spec.sites) {
            sites.push_back(k - 1);
        }
        NoiseModel m;
        if (spec.correlated) {
            Matrix prod = identity(s.probe.dim());
            for (int k : sites) {
                prod = prod * make_noise(spec.label, {k}, spec.rate, s.probe, spec.theta).jump_ops.at(0);
            }
            m.jump_ops = {prod};
            m.rates = {spec.rate};
            m.label = "custom";
        } else {
            m = make_noise(spec.label, sites, spec.rate, s.probe, spec.theta);
        }
        for (size_t i = 0; i < m.size(); ++i) {
            if (spec.label == "collective_z" && sc.initial == "ghz") {
                recovery.push_back(collective_recovery_operator(n));
                s.support = ghz_projector(n);
            } else {
                recovery.push_back(std::nullopt);
            }
        }
        parts.push_back(std::move(m));
    }
    if (parts.empty()) {
        parts.push_back(make_noise("pauli_z", {0}, 0.0, s.probe));
        recovery.push_back(std::nullopt);
    }
    s.noise = combine(parts);
    s.jump_recovery = recovery;

    if (sc.protocol.gates.empty()) {
        return out;
    }
    const GateMode gm = p.mode == ProtocolMode::kSniqec ? GateMode::kSniqec : GateMode::kIqec;
    std::vector<PauliString> words;
    if (automatic) {
        GateSearchResult r;
        if (p.knowledge == NoiseKnowledge::kUnknown) {
            r = find_gates(trace_preserving_generating_set(n), h0, gm);
        } else {
            r = find_gates_for_noise(noise_pauli_sums(sc), h0, gm);
        }
        if (!r.found) {
            throw NoSolution("scenario '" + sc.name + "': " + r.certificate);
        }
        words = r.gates;
    } else {
        for (const auto &g : sc.protocol.gates) {
            PauliSum sum = parse_pauli_expr(g, n);
            auto w = sum.as_string();
            if (!w) {
                throw ConfigError("scenario '" + sc.name + "': gate '" + g + "' is not a single Pauli word");
            }
            words.push_back(*w);
        }
    }
    for (const auto &w : words) {
        p.gates.push_back(w.matrix());
        out.gate_labels.push_back(w.word());
        if (gm == GateMode::kSniqec) {
            auto supp = w.support();
            if (supp.size() != 1) {
                throw ConfigError("scenario '" + sc.name + "': sniqec gate " + w.str() + " is not site-local");
            }
            p.gate_site.push_back(supp.front());
        }
    }
    return out;
}

ExperimentConfig apply_sweep_value(const ExperimentConfig &cfg, const std::string &axis, double value) {
    ExperimentConfig c = cfg;
    bool touched = false;
    for (auto &s : c.scenarios) {
        if (axis == "gamma") {
            for (auto &n : s.noise) {
                n.rate = value;
                touched = true;
            }
        } else if (axis == "dt") {
            s.protocol.dt = value;
            touched = true;
        } else if (axis == "chi") {
            if (s.system.kind == "cv") {
                s.system.chi = value;
                touched = true;
            }
        } else if (axis == "N") {
            if (s.system.kind != "many_body") {
                continue;
            }
            const int n = static_cast<int>(std::lround(value));
            if (n < 1 || std::abs(n - value) > 1e-12) {
                throw ConfigError("sweep: N values must be positive integers");
            }
            if (s.hamiltonian != default_hamiltonian(s.system.n)) {
                throw ConfigError("sweep: N sweeps need the default Hamiltonian in scenario '" + s.name + "'");
            }
            s.system.n = n;
            s.hamiltonian = default_hamiltonian(n);
            touched = true;
        } else {
            throw ConfigError("sweep: unknown axis '" + axis + "'");
        }
    }
    if (!touched) {
        throw ConfigError("sweep: axis '" + axis + "' does not apply to any scenario");
    }
    c.sweep.reset();
    validate_config(c);
    return c;
}

ExperimentResult run_experiment(const ExperimentConfig &cfg, int workers) {
    validate_config(cfg);
    std::vector<BuiltScenario> built;
    for (const auto &s : cfg.scenarios) {
        built.push_back(build_scenario(s, cfg.omega0));
    }
    const size_t ns = built.size();
    const size_t nt = cfg.times.size();
    std::vector<QfiPoint> points(ns * nt);
    ExperimentResult res;
    res.scenarios.resize(ns);
    const bool logs = cfg.syndrome_log != "off";
    // Tasks [0, ns*nt) are grid points; the next ns are syndrome logs at the final time.
    parallel_for(ns * nt + (logs ? ns : 0), workers, [&](size_t task) {
        if (task < ns * nt) {
            const auto &b = built[task / nt];
            points[task] = qfi_point(b.scenario, b.protocol, cfg.times[task % nt]);
            return;
        }
        const size_t i = task - ns * nt;
        const auto &b = built[i];
        const ProtocolMode m = b.protocol.mode;
        if (m != ProtocolMode::kIqec && m != ProtocolMode::kSniqec && m != ProtocolMode::kIqecPostselect) {
            return;
        }
        const ProtocolConfig pc = config_for_time(b.protocol, cfg.times.back());
        std::mt19937_64 rng(cfg.seed + i);
        RunOptions opt;
        if (cfg.syndrome_log == "trajectory") {
            opt.rng = &rng;
        }
        res.scenarios[i].syndromes = run_protocol(b.scenario, pc, cfg.omega0, opt).log;
        res.scenarios[i].has_syndromes = true;
    });
    for (size_t i = 0; i < ns; ++i) {
        QfiCurve &c = res.scenarios[i].curve;
        c.protocol = mode_name(built[i].protocol.mode);
        c.scenario = built[i].scenario.name;
        c.omega0 = cfg.omega0;
        c.dt = built[i].protocol.dt;
        c.rates = built[i].scenario.noise.rates;
        for (size_t k = 0; k < nt; ++k) {
            c.times.push_back(cfg.times[k]);
            c.qfi.push_back(points[i * nt + k].qfi);
            c.success_prob.push_back(points[i * nt + k].success_prob);
        }
    }
    return res;
}

SweepResult run_sweep(const ExperimentConfig &cfg, int workers) {
    if (!cfg.sweep) {
        throw ConfigError("sweep: the config has no 'sweep' section");
    }
    if (cfg.sweep->values.empty()) {
        throw ConfigError("sweep: empty value list");
    }
    SweepResult out;
    out.values = cfg.sweep->values;
    std::vector<ExperimentConfig> per_value;
    for (double v : out.values) {
        per_value.push_back(apply_sweep_value(cfg, cfg.sweep->axis, v));
        per_value.back().syndrome_log = "off";
    }
    // Each value runs single-threaded inside; the pool spreads the values.
    std::vector<ExperimentResult> results(per_value.size());
    parallel_for(per_value.size(), workers, [&](size_t i) { results[i] = run_experiment(per_value[i], 1); });
    for (size_t i = 0; i < results.size(); ++i) {
        for (auto &s : results[i].scenarios) {
            out.curves.push_back(std::move(s.curve));
            out.curve_values.push_back(out.values[i]);
        }
    }
    return out;
}

std::vector<std::filesystem::path> write_experiment(const ExperimentConfig &cfg, const ExperimentResult &res,
                                                    const std::filesystem::path &dir) {
    std::vector<std::pair<std::filesystem::path, std::string>> files;
    std::vector<QfiCurve> curves;
    for (const auto &s : res.scenarios) {
        curves.push_back(s.curve);
    }
    std::ostringstream qfi;
    write_qfi_csv(qfi, curves);
    files.emplace_back(dir / (cfg.name + "_qfi.csv"), qfi.str());
    for (const auto &s : res.scenarios) {
        if (!s.has_syndromes) {
            continue;
        }
        std::ostringstream log;
        write_syndrome_csv(log, s.syndromes);
        files.emplace_back(dir / (cfg.name + "_" + s.curve.scenario + "_syndromes.csv"), log.str());
    }
    files.emplace_back(dir / (cfg.name + "_effective.json"), dump_config(cfg));
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto &[p, content] : files) {
        write_file(p, content);
        written.push_back(p);
    }
    return written;
}

std::vector<std::filesystem::path> write_sweep(const ExperimentConfig &cfg, const SweepResult &res,
                                               const std::filesystem::path &dir) {
    std::ostringstream csv;
    write_sweep_csv(csv, res.curves, res.curve_values);
    std::filesystem::create_directories(dir);
    auto p = dir / (cfg.name + "_sweep.csv");
    write_file(p, csv.str());
    auto e = dir / (cfg.name + "_effective.json");
    write_file(e, dump_config(cfg));
    return {p, e};
}

std::string summary_line(const ExperimentConfig &cfg, const ExperimentResult &res) {
    std::string line = cfg.name + ":";
    for (size_t i = 0; i < res.scenarios.size(); ++i) {
        const auto &c = res.scenarios[i].curve;
        line += (i ? " | " : " ") + c.scenario + " [" + c.protocol + "] qfi(T=" + fmt(c.times.back()) +
                ")=" + fmt(c.qfi.back());
    }
    return line;
}

}  // namespace iqec
