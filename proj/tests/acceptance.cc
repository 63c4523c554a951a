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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "iqec/cv.h"
#include "iqec/errors.h"
#include "iqec/experiments.h"
#include "iqec/gatefinder.h"
#include "iqec/metrology.h"
#include "test_util.h"

namespace {

using namespace iqec;
using testing::ghz_scenario;
using testing::plus_ket;
using testing::protocol;
using testing::qubit_scenario;

const Matrix kX = pauli_matrix('X'), kY = pauli_matrix('Y'), kZ = pauli_matrix('Z');

std::vector<double> grid() {
    return default_time_grid();
}

double rel(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string &s) {
        detail += (detail.empty() ? "" : "; ") + s;
    }
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome ac1() {
    Outcome o;
    double worst = 0.0;
    const Scenario sc = qubit_scenario({}, 0.0);
    for (double t : grid()) {
        worst = std::max(worst, rel(qfi_point(sc, protocol(ProtocolMode::kBare, 0.25), t).qfi, 4 * t * t));
    }
    for (int n : {2, 3}) {
        const Scenario g = ghz_scenario(n, 0.0);
        for (double t : grid()) {
            worst = std::max(worst, rel(qfi_point(g, protocol(ProtocolMode::kBare, 0.25), t).qfi, 4.0 * n * n * t * t));
        }
    }
    o.require(worst <= 1e-8, "relative error <= 1e-8");
    o.note("max rel err " + fmt("%.2e", worst));
    return o;
}

Outcome ac2() {
    Outcome o;
    const double g = 0.1;
    const Scenario sc = qubit_scenario({"pauli_z"}, g);
    double worst = 0.0;
    for (double t : grid()) {
        const double f = qfi_point(sc, protocol(ProtocolMode::kNoisy, 0.25), t).qfi;
        worst = std::max(worst, std::abs(f - 4 * t * t * std::exp(-4 * g * t)));
    }
    o.require(worst <= 1e-6, "|QFI - 4T^2 exp(-4 gamma T)| <= 1e-6");
    o.note("max abs err " + fmt("%.2e", worst));
    return o;
}

Outcome ac3() {
    Outcome o;
    const Scenario sc = qubit_scenario({"pauli_z"}, 0.1);
    auto iq = protocol(ProtocolMode::kIqec, 0.25, {kX});
    iq.final_time_correction = true;
    const auto tq = protocol(ProtocolMode::kTqec, 0.25);
    double worst = 0.0, prev_ratio = 0.0;
    bool monotone = true;
    for (double t : grid()) {
        const double fi = qfi_point(sc, iq, t).qfi;
        worst = std::max(worst, std::abs(fi - 4 * t * t));
        const double ratio = fi / qfi_point(sc, tq, t).qfi;
        monotone &= ratio > prev_ratio;
        prev_ratio = ratio;
    }
    o.require(worst <= 1e-6, "|QFI_iqec - 4T^2| <= 1e-6");
    o.require(monotone, "QFI_iqec / QFI_tqec increasing in T");
    o.note("max abs err " + fmt("%.2e", worst) + ", ratio at T=5 " + fmt("%.3g", prev_ratio));
    return o;
}

Outcome ac4() {
    Outcome o;
    const double kappa = 0.1;
    const Scenario sc = qubit_scenario({"pauli_x", "pauli_y", "pauli_z"}, kappa);
    std::vector<double> dts = {0.1, 0.05, 0.025}, errs;
    for (double dt : dts) {
        RoundEngine e(sc, protocol(ProtocolMode::kIqec, dt, {kY, kX}), 1.0);
        const HeraldTable &t = e.table();
        std::set<int> outs;
        for (int c : t.class_outcome) {
            outs.insert(c);
        }
        o.require(t.aux_count == 2, "two ancillas");
        o.require(outs.size() == 4 && !outs.count(HeraldTable::kUnresolved), "four distinct outcomes");
        o.require(t.max_overlap < 1e-9, "overlaps < 1e-9");
        const RoundResult r = e.run_round(QuantumState::pure(plus_ket(), {2}), 0);
        const double err = trace_distance(r.corrected_unnormalized, projector(expm_hermitian(kZ, dt) * plus_ket()));
        o.require(err <= 10 * std::pow(kappa * dt, 2), "error <= 10 (kappa dt)^2 at dt=" + fmt("%g", dt));
        errs.push_back(err);
    }
    const double slope = std::log(errs.front() / errs.back()) / std::log(dts.front() / dts.back());
    o.require(slope >= 1.9 && slope <= 2.1, "log-log slope in [1.9, 2.1]");
    o.note("slope " + fmt("%.4f", slope) + ", err(0.025) " + fmt("%.2e", errs.back()));
    return o;
}

Outcome ac5() {
    Outcome o;
    const double kappa = 0.1;
    const Scenario sc = qubit_scenario({"pauli_x", "amplitude_damping"}, kappa);
    auto cfg = protocol(ProtocolMode::kIqec, 0.25, {kY, kX});
    cfg.knowledge = NoiseKnowledge::kUnknown;
    double worst = 1e9;
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
        worst = std::min(worst, qfi_point(sc, cfg, t).qfi / (4 * t * t));
    }
    o.require(worst >= 0.9, "QFI >= 0.9 noiseless for kappa T <= 0.1");
    const KrausChannel c = short_time_channel(kZ, sc.noise, 0.25);
    const double choi_err = max_abs(choi_from_expansion(pauli_expansion(c)) - choi_matrix(c));
    o.require(choi_err <= 1e-10, "Pauli c_ij expansion reconstructs the Choi matrix");
    o.note("min QFI ratio " + fmt("%.6f", worst) + ", Choi err " + fmt("%.1e", choi_err));
    return o;
}

Outcome ac6() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const PauliSum h2 = parse_pauli_expr("Z1+Z2", 2);
    const auto j1 = parse_pauli_exprs(split_expr_list("theta(0.7)@1,theta(0.7)@2,theta(0.7)@1*theta(0.7)@2"));
    o.require(!find_gates_for_noise(j1, h2, GateMode::kIqec).found, "J1 iqec no_solution");
    o.require(find_gates_for_noise(j1, h2, GateMode::kSniqec).found, "J1 sniqec found");
    const auto j2 = parse_pauli_exprs({"X1*X2", "Y1"}, 2);
    const auto r2 = find_gates_for_noise(j2, h2, GateMode::kIqec);
    o.require(r2.found && r2.ancillas() == 2, "J2 iqec with 2 ancillas");
    GenSetReport used;
    const auto r3 = find_gates_for_noise(parse_pauli_exprs({"X", "Y", "Z"}, 1), parse_pauli_expr("Z", 1),
                                         GateMode::kIqec, &used);
    auto join = [](const auto &ws, auto text) {
        std::string s;
        for (const auto &w : ws) {
            s += (s.empty() ? "" : ", ") + text(w);
        }
        return s;
    };
    const std::string g = join(used.generators, [](const PauliSum &x) { return x.str(); });
    const std::string d = join(r3.gates, [](const PauliString &x) { return x.word(); });
    o.require(g == "X, Y", "G = {X, Y}");
    o.require(d == "Y, X", "D = {Y, X}");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < 10.0, "runtime < 10 s");
    o.note("G = {" + g + "}, D = {" + d + "}, " + fmt("%.3f s", secs));
    return o;
}

Outcome ac7() {
    Outcome o;
    const PauliSum sz = parse_pauli_expr("Z1+Z2", 2);
    o.require(!hnls_satisfied(sz, {sz}), "HNLS violated");
    const Scenario g = ghz_scenario(2, 0.1);
    bool tqec_rejected = false;
    try {
        run_protocol(g, protocol(ProtocolMode::kTqec, 0.25), 1.0);
    } catch (const InputError &) {
        tqec_rejected = true;
    }
    o.require(tqec_rejected, "TQEC inapplicable");
    const auto cfg = protocol(ProtocolMode::kIqec, 0.25, {pauli_word_matrix("XX")});
    double worst = 0.0;
    for (double t : grid()) {
        worst = std::max(worst, std::abs(qfi_point(g, cfg, t).qfi - 16 * t * t));
    }
    o.require(worst <= 1e-6, "|QFI - 4N^2T^2| <= 1e-6");
    o.note("max abs err " + fmt("%.2e", worst));
    return o;
}

Outcome ac8() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    double worst0 = 0.0, worst2 = 0.0, drift = 0.0, min_success = 1.0;
    for (int rounds : {2, 4, 8, 12}) {
        const CvRun r = run_cv_scenario(1.0, 0.0, 2.0, 0.1, 0.25, rounds, ProtocolMode::kIqec, FockSpace{30});
        worst0 = std::max(worst0, rel(r.qfi, r.qfi_noiseless));
    }
    for (int rounds : {1, 2}) {
        const CvRun r = run_cv_scenario(1.0, 0.2, 2.0, 0.1, 0.25, rounds, ProtocolMode::kIqecPostselect, FockSpace{30});
        worst2 = std::max(worst2, rel(r.qfi, r.qfi_noiseless));
        min_success = std::min(min_success, r.success_prob);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (double chi : {0.0, 0.2}) {
        const int rounds = chi == 0.0 ? 12 : 2;
        const auto mode = chi == 0.0 ? ProtocolMode::kIqec : ProtocolMode::kIqecPostselect;
        const double a = run_cv_scenario(1.0, chi, 2.0, 0.1, 0.25, rounds, mode, FockSpace{30}).qfi;
        const double b = run_cv_scenario(1.0, chi, 2.0, 0.1, 0.25, rounds, mode, FockSpace{60}).qfi;
        drift = std::max(drift, rel(a, b));
    }
    o.require(worst0 <= 1e-5, "chi = 0 within 1e-5 of noiseless");
    o.require(worst2 <= 1e-4, "chi = 0.2 post-selected within 1e-4 of noiseless");
    o.require(min_success > 0.0 && min_success < 1.0, "success probability logged");
    o.require(drift < 1e-6, "cutoff doubling changes QFI by < 1e-6");
    o.require(secs < 60.0, "runtime < 60 s at n_max = 30");
    o.note("chi=0 " + fmt("%.1e", worst0) + ", chi=0.2 " + fmt("%.1e", worst2) + " (T <= 0.5), success " +
           fmt("%.4f", min_success) + ", cutoff drift " + fmt("%.1e", drift) + ", " + fmt("%.1f s", secs));
    return o;
}

Outcome ac9() {
    Outcome o;
    const Scenario sc = qubit_scenario({"pauli_z"}, 0.1);
    const auto un = protocol(ProtocolMode::kIqecUnitary, 0.25, {kX});
    const auto sy = protocol(ProtocolMode::kIqec, 0.25, {kX});
    double td = 0.0, worst = 0.0;
    for (double t : grid()) {
        const Matrix a = run_protocol(sc, config_for_time(un, t), 1.0).state.rho();
        const Matrix b = run_protocol(sc, config_for_time(sy, t), 1.0).state.rho();
        td = std::max(td, trace_distance(a, b));
        worst = std::max(worst, std::abs(qfi_point(sc, un, t).qfi - 4 * t * t));
        worst = std::max(worst, std::abs(qfi_point(sc, sy, t).qfi - 4 * t * t));
    }
    o.require(td <= 1e-8, "trace distance <= 1e-8");
    o.require(worst <= 1e-6, "both restore 4T^2 within 1e-6");
    o.note("trace distance " + fmt("%.1e", td) + ", QFI err " + fmt("%.1e", worst));
    return o;
}

Outcome ac10() {
    Outcome o;
    const Scenario sc = qubit_scenario({"pauli_x", "amplitude_damping"}, 0.1);
    std::vector<double> dts = {0.1, 0.05, 0.025}, deficits;
    for (double dt : dts) {
        deficits.push_back(short_time_channel(kZ, sc.noise, dt).completeness_deficit);
    }
    const double slope = std::log(deficits.front() / deficits.back()) / std::log(dts.front() / dts.back());
    o.require(std::abs(slope - 2.0) < 0.05, "completeness deficit order 2 in dt");

    bool states_ok = true;
    for (const auto &name : preset_names()) {
        const ExperimentConfig cfg = load_preset(name);
        for (const auto &s : cfg.scenarios) {
            const BuiltScenario b = build_scenario(s, cfg.omega0);
            for (double t : {cfg.times.front(), cfg.times[cfg.times.size() / 2]}) {
                const Matrix rho = run_protocol(b.scenario, config_for_time(b.protocol, t), cfg.omega0).state.rho();
                states_ok &= is_psd(rho, tol::kPsd) && std::abs(rho.trace().real() - 1.0) < 1e-10;
            }
        }
    }
    o.require(states_ok, "every final state PSD with trace 1");

    ExperimentConfig cfg = load_preset("fig2b");
    cfg.syndrome_log = "trajectory";
    auto render = [&](int workers) {
        const ExperimentResult r = run_experiment(cfg, workers);
        std::ostringstream os;
        std::vector<QfiCurve> curves;
        for (const auto &s : r.scenarios) {
            curves.push_back(s.curve);
            write_syndrome_csv(os, s.syndromes);
        }
        write_qfi_csv(os, curves);
        return os.str();
    };
    o.require(render(1) == render(2), "byte-identical CSV under a fixed seed");
    o.note("deficit slope " + fmt("%.4f", slope));
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Outcome()> run;
        double time_limit;
    };
    const double none = 1e9;
    const std::vector<Criterion> criteria = {
        {"AC1", ac1, 5.0},   {"AC2", ac2, 10.0}, {"AC3", ac3, none}, {"AC4", ac4, none}, {"AC5", ac5, none},
        {"AC6", ac6, 10.0},  {"AC7", ac7, none}, {"AC8", ac8, none}, {"AC9", ac9, none}, {"AC10", ac10, none}};
    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs < c.time_limit, "runtime limit " + fmt("%g s", c.time_limit));
        std::printf("%s %s (%.2f s) %s\n", c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
