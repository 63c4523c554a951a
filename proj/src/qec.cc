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

#include "iqec/qec.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "iqec/errors.h"

namespace iqec {

namespace {

// Smallest outcome weight (relative to the round total) that gets a branch.
constexpr double kNegligible = 1e-12;

bool is_iqec_family(ProtocolMode m) {
    return m == ProtocolMode::kIqec || m == ProtocolMode::kSniqec || m == ProtocolMode::kIqecUnitary ||
           m == ProtocolMode::kIqecPostselect;
}

// L^-1 when L^dag L = s^2 I for some s > 0.
std::optional<Matrix> scaled_unitary_inverse(const Matrix &l) {
    Matrix ldl = l.adjoint() * l;
    const double s2 = ldl.trace().real() / static_cast<double>(l.rows());
    if (s2 <= 0.0) {
        return std::nullopt;
    }
    if ((ldl - s2 * Matrix::Identity(l.rows(), l.cols())).norm() > tol::kConstruction * std::max(1.0, s2)) {
        return std::nullopt;
    }
    return Matrix(l.adjoint() / s2);
}

bool proportional_to_identity(const Matrix &m) {
    const Complex c = m.trace() / static_cast<double>(m.rows());
    return (m - c * Matrix::Identity(m.rows(), m.cols())).norm() <= tol::kConstruction * std::max(1.0, std::abs(c));
}

Matrix invert(const Matrix &m) {
    if (is_unitary(m)) {
        return m.adjoint();
    }
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) {
        throw IrreversibleJump("recovery needs an invertible operator");
    }
    return lu.inverse();
}

Matrix normalize(const Matrix &rho) {
    const double t = rho.trace().real();
    if (!(t > 0.0)) {
        throw UnnormalizedState("state has nonpositive trace");
    }
    Matrix out = rho / t;
    return 0.5 * (out + out.adjoint());
}

void check_leakage(const Scenario &sc, const Matrix &rho) {
    if (sc.leakage_index < 0) {
        return;
    }
    const double pop = rho(sc.leakage_index, sc.leakage_index).real() / rho.trace().real();
    if (pop > kLeakageThreshold) {
        throw LeakageExceeded("scenario '" + sc.name + "': truncation level population " + std::to_string(pop) +
                              " exceeds the threshold; raise the cutoff");
    }
}

std::string fmt_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", p);
    return buf;
}

}  // namespace

const char *mode_name(ProtocolMode m) {
    switch (m) {
        case ProtocolMode::kBare:
            return "bare";
        case ProtocolMode::kNoisy:
            return "noisy";
        case ProtocolMode::kTqec:
            return "tqec";
        case ProtocolMode::kIqec:
            return "iqec";
        case ProtocolMode::kSniqec:
            return "sniqec";
        case ProtocolMode::kIqecUnitary:
            return "iqec_unitary";
        case ProtocolMode::kIqecPostselect:
            return "iqec_postselect";
    }
    return "?";
}

ProtocolMode parse_mode(const std::string &s) {
    for (auto m : {ProtocolMode::kBare, ProtocolMode::kNoisy, ProtocolMode::kTqec, ProtocolMode::kIqec,
                   ProtocolMode::kSniqec, ProtocolMode::kIqecUnitary, ProtocolMode::kIqecPostselect}) {
        if (s == mode_name(m)) {
            return m;
        }
    }
    throw ConfigError("unknown protocol mode '" + s + "'");
}

void ProtocolConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("protocol: dt must be positive");
    }
    if (rounds < 1) {
        throw ConfigError("protocol: rounds must be at least 1");
    }
    if (is_iqec_family(mode) && gates.empty()) {
        throw ConfigError(std::string("protocol: mode ") + mode_name(mode) + " needs at least one gate");
    }
    if (mode == ProtocolMode::kSniqec && gate_site.size() != gates.size()) {
        throw ConfigError("protocol: sniqec needs a site for every gate");
    }
    if (mode != ProtocolMode::kSniqec && !gate_site.empty()) {
        throw ConfigError("protocol: gate sites are only meaningful for sniqec");
    }
}

Matrix Scenario::hamiltonian(double omega) const {
    auto terms = h_terms(omega);
    if (terms.empty()) {
        throw ConfigError("scenario '" + name + "': no Hamiltonian terms");
    }
    Matrix h = terms.front();
    for (size_t k = 1; k < terms.size(); ++k) {
        h += terms[k];
    }
    return h;
}

RoundEngine::RoundEngine(const Scenario &sc, const ProtocolConfig &cfg, double omega, double t0)
    : sc_(&sc), cfg_(cfg) {
    cfg_.validate();
    if (!is_iqec_family(cfg_.mode)) {
        throw ConfigError(std::string("RoundEngine: mode ") + mode_name(cfg_.mode) + " has no switch rounds");
    }
    ShortTimeOptions step;
    step.t0 = t0;
    auto terms = sc.h_terms(omega);
    Matrix h = sc.hamiltonian(omega);
    if (cfg_.final_time_correction) {
        for (size_t i = 0; i < sc.noise.size(); ++i) {
            if (classify(h, sc.noise.jump_ops[i]) != CompatibilityFlag::kCommutes) {
                throw ShortTimeViolation("final-time correction needs every jump operator to commute with H");
            }
        }
        step.allow_long_step = true;
    }
    if (cfg_.mode == ProtocolMode::kSniqec) {
        spec_ = make_site_superchannel_spec(cfg_.gates, cfg_.gate_site, std::move(terms), sc.noise, step);
    } else {
        spec_ = make_superchannel_spec(cfg_.gates, h, sc.noise, step);
    }

    std::vector<HeraldClass> classes;
    if (cfg_.knowledge == NoiseKnowledge::kUnknown) {
        if (sc.probe.kind != ProbeSpec::Kind::kQubits) {
            throw ConfigError("unknown-noise mode needs a qubit probe");
        }
        classes = pauli_classes(sc.probe.sites);
    } else {
        classes = noise_classes(sc.noise, cfg_.dt, step);
    }
    table_ = herald_table(spec_, classes, cfg_.dt);

    BranchEvolution ev(spec_, cfg_.dt);
    auto factors = short_time_noise_factors(sc.noise, cfg_.dt, step);
    const int nb = ev.branches();
    const Matrix d_inv = invert(ev.gate_product());
    outcome_kraus_.resize(nb);
    recovery_.resize(nb);
    recovery_label_.resize(nb);
    outcome_class_.resize(nb);
    for (int o = 0; o < nb; ++o) {
        for (const auto &n : factors) {
            outcome_kraus_[o].push_back(ev.outcome_operator(o, n));
        }
        const int c = table_.decode(o);
        outcome_class_[o] = c;
        if (c == HeraldTable::kUnresolved) {
            recovery_label_[o] = "none";
            continue;
        }
        const HeraldClass &cls = table_.classes[c];
        const bool no_jump = cls.label == "no_jump";
        if (cfg_.mode == ProtocolMode::kIqecPostselect && !no_jump) {
            recovery_label_[o] = "discard";
            continue;
        }
        if (no_jump) {
            if (cfg_.backaction_filter && !proportional_to_identity(cls.op)) {
                recovery_[o] = Matrix(invert(cls.op) * d_inv);
                recovery_label_[o] = "N0^-1 D^-1";
            } else {
                recovery_[o] = d_inv;
                recovery_label_[o] = "D^-1";
            }
            continue;
        }
        if (cls.jump_index >= 0 && static_cast<size_t>(cls.jump_index) < sc.jump_recovery.size() &&
            sc.jump_recovery[cls.jump_index]) {
            recovery_[o] = Matrix(*sc.jump_recovery[cls.jump_index] * d_inv);
            recovery_label_[o] = "R_" + cls.label + " D^-1";
            continue;
        }
        if (auto inv = scaled_unitary_inverse(cls.op)) {
            recovery_[o] = Matrix(*inv * d_inv);
            recovery_label_[o] = cls.label + "^-1 D^-1";
            continue;
        }
        if (cfg_.recovery_policy == RecoveryPolicy::kDiscardBranch) {
            recovery_label_[o] = "discard";
            continue;
        }
        throw IrreversibleJump("jump " + cls.label + " is not invertible; use discard_branch or post-selection");
    }
}

RoundResult RoundEngine::run_round(const QuantumState &state, int round_index) const {
    const Matrix &rho = state.rho();
    if (rho.rows() != spec_.probe_dim()) {
        throw DimensionMismatch("run_round: state and probe dimensions differ");
    }
    const int nb = static_cast<int>(outcome_kraus_.size());
    std::vector<Matrix> sigma(nb);
    std::vector<double> weight(nb);
    double total = 0.0;
    for (int o = 0; o < nb; ++o) {
        sigma[o] = Matrix::Zero(rho.rows(), rho.cols());
        for (const auto &k : outcome_kraus_[o]) {
            sigma[o].noalias() += k * rho * k.adjoint();
        }
        weight[o] = std::max(0.0, sigma[o].trace().real());
        total += weight[o];
    }
    if (!(total > 0.0)) {
        throw UnnormalizedState("run_round: lifted channel output has zero trace");
    }
    RoundResult res{{}, Matrix::Zero(rho.rows(), rho.cols()), total};
    for (int o = 0; o < nb; ++o) {
        const double p = weight[o] / total;
        if (p <= kNegligible) {
            continue;
        }
        SyndromeRecord rec;
        rec.round = round_index;
        rec.outcome = outcome_label(o, spec_.aux_count());
        rec.decoded_class =
            outcome_class_[o] == HeraldTable::kUnresolved ? "unresolved" : table_.classes[outcome_class_[o]].label;
        rec.recovery = recovery_label_[o];
        rec.probability = p;
        if (!recovery_[o]) {
            if (outcome_class_[o] == HeraldTable::kUnresolved && cfg_.recovery_policy == RecoveryPolicy::kInvertJump &&
                cfg_.mode != ProtocolMode::kIqecPostselect) {
                throw IrreversibleJump("outcome " + rec.outcome + " has no decoded class (probability " +
                                       fmt_prob(p) + ")");
            }
            rec.discarded = true;
            res.branches.push_back({QuantumState(normalize(sigma[o]), state.dims()), rec});
            continue;
        }
        const Matrix &r = *recovery_[o];
        Matrix corrected = r * sigma[o] * r.adjoint();
        Matrix branch = normalize(corrected);
        if (sc_->support) {
            const double inside = (*sc_->support * branch).trace().real();
            if (inside < 1.0 - tol::kPsd) {
                throw OutOfSubspace("run_round: recovered branch leaves the protected subspace (weight " +
                                    fmt_prob(inside) + ")");
            }
        }
        res.corrected_unnormalized += corrected;
        res.branches.push_back({QuantumState(branch, state.dims()), rec});
    }
    return res;
}

RoundResult run_round(const QuantumState &state, const Scenario &sc, const ProtocolConfig &cfg, double omega,
                      int round_index) {
    RoundEngine engine(sc, cfg, omega);
    return engine.run_round(state, round_index);
}

Vector tqec_encode(const Vector &probe) {
    if (probe.size() != 2) {
        throw DimensionMismatch("tqec_encode: probe must be a single qubit");
    }
    Vector out = Vector::Zero(4);
    out(0) = probe(0);
    out(3) = probe(1);
    return out;
}

Matrix tqec_round(const Matrix &rho, const Matrix &h_probe, const NoiseModel &probe_noise, double dt,
                  const ShortTimeOptions &step) {
    if (rho.rows() != 4 || h_probe.rows() != 2) {
        throw DimensionMismatch("tqec_round: expects ancilla (x) single-qubit probe");
    }
    const Matrix id2 = Matrix::Identity(2, 2);
    NoiseModel joint = probe_noise;
    for (auto &l : joint.jump_ops) {
        l = tensor(id2, l);
    }
    KrausChannel ch = short_time_channel(tensor(id2, h_probe), joint, dt, step);
    Matrix sigma = apply_channel(ch, rho);
    const Matrix zz = tensor(pauli_matrix('Z'), pauli_matrix('Z'));
    const Matrix id4 = Matrix::Identity(4, 4);
    const Matrix even = 0.5 * (id4 + zz);
    const Matrix odd = 0.5 * (id4 - zz);
    const Matrix fix = tensor(id2, pauli_matrix('X'));
    return even * sigma * even + fix * odd * sigma * odd * fix.adjoint();
}

Matrix unitary_correction_round(const Matrix &rho, const RoundEngine &engine) {
    const SuperchannelSpec &spec = engine.spec();
    const Matrix h = spec.hamiltonian();
    for (size_t i = 0; i < spec.noise.size(); ++i) {
        const Matrix &l = spec.noise.jump_ops[i];
        if (classify(h, l) != CompatibilityFlag::kCommutes) {
            throw TheoremThreeViolated("[H, L" + std::to_string(i + 1) + "] != 0");
        }
        if (spec.noise.rates[i] != 0.0 && !scaled_unitary_inverse(l)) {
            throw TheoremThreeViolated("L" + std::to_string(i + 1) + " is not unitary up to scale");
        }
    }
    const int m = spec.aux_count();
    const int d = spec.probe_dim();
    const int na = 1 << m;
    std::vector<Matrix> rec;
    for (int o = 0; o < na; ++o) {
        const auto &r = engine.recoveries()[o];
        if (r) {
            rec.push_back(*r);
        } else if (engine.outcome_kraus()[o].empty()) {
            rec.push_back(Matrix::Identity(d, d));
        } else {
            // An outcome without recovery that never fires can take any unitary.
            double w = 0.0;
            for (const auto &k : engine.outcome_kraus()[o]) {
                w += k.norm();
            }
            if (w > 1e-12) {
                throw TheoremThreeViolated("outcome " + outcome_label(o, m) + " has no unitary recovery");
            }
            rec.push_back(Matrix::Identity(d, d));
        }
    }
    KrausChannel lifted = build_superchannel(spec, engine.dt());
    Matrix hm = Matrix::Ones(1, 1);
    const Matrix had = (Matrix(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0);
    for (int j = 0; j < m; ++j) {
        hm = tensor(hm, had);
    }
    Matrix control = Matrix::Zero(static_cast<Eigen::Index>(na) * d, static_cast<Eigen::Index>(na) * d);
    for (int c = 0; c < na; ++c) {
        control.block(static_cast<Eigen::Index>(c) * d, static_cast<Eigen::Index>(c) * d, d, d) = rec[c];
    }
    const Matrix hm_full = tensor(hm, Matrix::Identity(d, d));
    const Matrix v = hm_full * control * hm_full;
    Vector plus = Vector::Constant(na, 1.0 / std::sqrt(static_cast<double>(na)));
    Matrix joint = tensor(projector(plus), rho);
    Matrix out = Matrix::Zero(joint.rows(), joint.cols());
    for (const auto &w : lifted.kraus_ops) {
        Matrix vw = v * w;
        out.noalias() += vw * joint * vw.adjoint();
    }
    std::vector<int> dims(m, 2);
    dims.push_back(d);
    const int keep[] = {m};
    return partial_trace(out, dims, keep);
}

ProtocolResult run_protocol(const Scenario &sc, const ProtocolConfig &cfg, double omega, const RunOptions &opt) {
    cfg.validate();
    if (sc.initial.size() != sc.dim()) {
        throw DimensionMismatch("scenario '" + sc.name + "': initial state has the wrong dimension");
    }
    const Vector psi0 = sc.initial / sc.initial.norm();
    const double total_time = cfg.total_time();
    const Matrix h = sc.hamiltonian(omega);
    ProtocolResult res{QuantumState::pure(psi0, sc.probe.dims()), {}, 1.0, 0.0};

    switch (cfg.mode) {
        case ProtocolMode::kBare: {
            res.state = QuantumState::pure(expm_hermitian(h, total_time) * psi0, sc.probe.dims());
            check_leakage(sc, res.state.rho());
            return res;
        }
        case ProtocolMode::kNoisy: {
            Matrix rho = projector(psi0);
            if (sc.noise.rate_profiles.empty()) {
                rho = sc.dim() <= kDenseLindbladDim ? lindblad_evolve(h, sc.noise, total_time).apply(rho)
                                                    : lindblad_apply(h, sc.noise, total_time, rho);
            } else {
                for (int r = 0; r < cfg.rounds; ++r) {
                    ShortTimeOptions step;
                    step.t0 = r * cfg.dt;
                    rho = normalize(apply_channel(short_time_channel(h, sc.noise, cfg.dt, step), rho));
                    check_leakage(sc, rho);
                }
            }
            res.state = QuantumState(normalize(rho), sc.probe.dims());
            check_leakage(sc, res.state.rho());
            return res;
        }
        case ProtocolMode::kTqec: {
            if (sc.probe.kind != ProbeSpec::Kind::kQubits || sc.probe.sites != 1) {
                throw ConfigError("tqec: the repetition baseline needs a single-qubit probe");
            }
            Matrix rho = projector(tqec_encode(psi0));
            for (int r = 0; r < cfg.rounds; ++r) {
                ShortTimeOptions step;
                step.t0 = r * cfg.dt;
                Matrix next = tqec_round(rho, h, sc.noise, cfg.dt, step);
                res.max_deficit = std::max(res.max_deficit, std::abs(1.0 - next.trace().real()));
                rho = normalize(next);
            }
            res.state = QuantumState(rho, {2, 2});
            return res;
        }
        default:
            break;
    }

    const bool time_dependent = !sc.noise.rate_profiles.empty();
    std::optional<RoundEngine> engine;
    QuantumState state = res.state;
    for (int r = 0; r < cfg.rounds; ++r) {
        if (!engine || time_dependent) {
            engine.emplace(sc, cfg, omega, r * cfg.dt);
        }
        if (cfg.mode == ProtocolMode::kIqecUnitary) {
            Matrix out = unitary_correction_round(state.rho(), *engine);
            res.max_deficit = std::max(res.max_deficit, std::abs(1.0 - out.trace().real()));
            state = QuantumState(normalize(out), sc.probe.dims());
            check_leakage(sc, state.rho());
            continue;
        }
        RoundResult rr = engine->run_round(state, r);
        res.max_deficit = std::max(res.max_deficit, std::abs(1.0 - rr.round_trace));
        double kept = 0.0;
        for (const auto &b : rr.branches) {
            res.log.push_back(b.record);
            if (!b.record.discarded) {
                kept += b.record.probability;
            }
        }
        if (!(kept > 0.0)) {
            throw IrreversibleJump("round " + std::to_string(r) + ": every branch was discarded");
        }
        res.success_probability *= kept;
        if (opt.rng) {
            std::uniform_real_distribution<double> u(0.0, kept);
            double x = u(*opt.rng);
            const Branch *pick = nullptr;
            for (const auto &b : rr.branches) {
                if (b.record.discarded) {
                    continue;
                }
                pick = &b;
                x -= b.record.probability;
                if (x < 0.0) {
                    break;
                }
            }
            state = pick->state;
            check_leakage(sc, state.rho());
            continue;
        }
        Matrix merged = Matrix::Zero(state.dim(), state.dim());
        for (const auto &b : rr.branches) {
            if (!b.record.discarded) {
                merged += (b.record.probability / kept) * b.state.rho();
            }
        }
        state = QuantumState(normalize(merged), sc.probe.dims());
        check_leakage(sc, state.rho());
    }
    res.state = state;
    return res;
}

Vector ghz_ket(int qubits) {
    if (qubits < 1 || qubits > 10) {
        throw ConfigError("ghz_ket: qubit count out of range");
    }
    const int d = 1 << qubits;
    Vector v = Vector::Zero(d);
    v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
    return v;
}

Matrix ghz_projector(int qubits) {
    const int d = 1 << qubits;
    Matrix p = Matrix::Zero(d, d);
    p(0, 0) = p(d - 1, d - 1) = 1.0;
    return p;
}

Matrix collective_recovery_operator(int qubits) {
    const int d = 1 << qubits;
    Matrix r = Matrix::Identity(d, d);
    for (int x = 0; x < d; ++x) {
        if (qubits - 2 * std::popcount(static_cast<unsigned>(x)) < 0) {
            r(x, x) = -1.0;
        }
    }
    return r;
}

Matrix collective_recovery(const Matrix &rho, int qubits) {
    const Matrix p = ghz_projector(qubits);
    if (rho.rows() != p.rows()) {
        throw DimensionMismatch("collective_recovery: state dimension does not match the qubit count");
    }
    const double t = rho.trace().real();
    if (!(t > 0.0) || (p * rho).trace().real() / t < 1.0 - tol::kPsd) {
        throw OutOfSubspace("collective_recovery: state is not supported on the GHZ subspace");
    }
    const Matrix r = collective_recovery_operator(qubits);
    return r * rho * r.adjoint();
}

void write_syndrome_csv(std::ostream &os, const std::vector<SyndromeRecord> &log) {
    os << "round,outcome,class,probability\n";
    for (const auto &r : log) {
        os << r.round << ',' << r.outcome << ',' << r.decoded_class << ',' << fmt_prob(r.probability) << '\n';
    }
}

}  // namespace iqec
