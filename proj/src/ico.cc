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

#include "iqec/ico.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "iqec/errors.h"

namespace iqec {

namespace {

constexpr double kDeterministic = 1.0 - 1e-9;

int bit(int b, int j, int m) {
    return (b >> (m - 1 - j)) & 1;
}

int parity(int x) {
    return std::popcount(static_cast<unsigned>(x)) & 1;
}

}  // namespace

const char *flag_name(CompatibilityFlag f) {
    switch (f) {
        case CompatibilityFlag::kCommutes:
            return "commutes";
        case CompatibilityFlag::kAnticommutes:
            return "anticommutes";
        default:
            return "incompatible";
    }
}

CompatibilityFlag classify(const Matrix &a, const Matrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw DimensionMismatch("classify: operands must be square and of equal size");
    }
    Matrix ab = a * b;
    Matrix ba = b * a;
    if ((ab - ba).norm() < tol) {
        return CompatibilityFlag::kCommutes;
    }
    if ((ab + ba).norm() < tol) {
        return CompatibilityFlag::kAnticommutes;
    }
    return CompatibilityFlag::kIncompatible;
}

Matrix SuperchannelSpec::hamiltonian() const {
    Matrix h = Matrix::Zero(probe_dim(), probe_dim());
    for (const auto &t : h_terms) {
        h += t;
    }
    return h;
}

void SuperchannelSpec::validate() const {
    if (h_terms.empty()) {
        throw ConfigError("SuperchannelSpec: no Hamiltonian terms");
    }
    const int d = probe_dim();
    for (const auto &t : h_terms) {
        if (t.rows() != d || t.cols() != d) {
            throw DimensionMismatch("SuperchannelSpec: Hamiltonian terms have mixed dimensions");
        }
    }
    if (noise.dim() != d) {
        throw DimensionMismatch("SuperchannelSpec: noise and Hamiltonian dimensions differ");
    }
    if (gate_term.size() != gates.size() || nu.size() != gates.size() || gate_pair_flags.size() != gates.size()) {
        throw LengthMismatch("SuperchannelSpec: per-gate fields have inconsistent lengths");
    }
    for (size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].rows() != d || gates[i].cols() != d) {
            throw DimensionMismatch("SuperchannelSpec: gate " + std::to_string(i + 1) + " has the wrong dimension");
        }
        if (gate_term[i] < 0 || gate_term[i] >= static_cast<int>(h_terms.size())) {
            throw BadSite("SuperchannelSpec: gate " + std::to_string(i + 1) + " refers to a missing term");
        }
        if (nu[i] == CompatibilityFlag::kIncompatible) {
            throw IncompatibleGate("gate D" + std::to_string(i + 1) +
                                   " neither commutes nor anticommutes with its Hamiltonian term");
        }
        for (size_t j = 0; j < gates.size(); ++j) {
            if (i != j && gate_pair_flags[i][j] == CompatibilityFlag::kIncompatible) {
                throw IncompatibleGate("gates D" + std::to_string(i + 1) + " and D" + std::to_string(j + 1) +
                                       " neither commute nor anticommute");
            }
        }
    }
}

SuperchannelSpec make_site_superchannel_spec(std::vector<Matrix> gates, std::vector<int> gate_term,
                                             std::vector<Matrix> h_terms, NoiseModel noise, ShortTimeOptions step) {
    SuperchannelSpec s;
    s.gates = std::move(gates);
    s.gate_term = std::move(gate_term);
    s.h_terms = std::move(h_terms);
    s.noise = std::move(noise);
    s.step = step;
    const size_t m = s.gates.size();
    if (s.gate_term.size() != m) {
        throw LengthMismatch("make_site_superchannel_spec: one term index per gate required");
    }
    for (size_t i = 0; i < m; ++i) {
        int t = s.gate_term[i];
        if (t < 0 || t >= static_cast<int>(s.h_terms.size())) {
            throw BadSite("make_site_superchannel_spec: gate " + std::to_string(i + 1) + " refers to a missing term");
        }
        s.nu.push_back(classify(s.gates[i], s.h_terms[t]));
    }
    s.gate_pair_flags.assign(m, std::vector<CompatibilityFlag>(m, CompatibilityFlag::kCommutes));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            if (i != j) {
                s.gate_pair_flags[i][j] = classify(s.gates[i], s.gates[j]);
            }
        }
    }
    s.validate();
    return s;
}

SuperchannelSpec make_superchannel_spec(std::vector<Matrix> gates, const Matrix &h, NoiseModel noise,
                                        ShortTimeOptions step) {
    std::vector<int> terms(gates.size(), 0);
    return make_site_superchannel_spec(std::move(gates), std::move(terms), {h}, std::move(noise), step);
}

BranchEvolution::BranchEvolution(const SuperchannelSpec &spec, double dt) : m_(spec.aux_count()) {
    spec.validate();
    if (m_ > 10) {
        throw DimensionTooLarge("BranchEvolution: more than 10 auxiliaries");
    }
    const int d = spec.probe_dim();
    gate_product_ = Matrix::Identity(d, d);
    for (const auto &g : spec.gates) {
        gate_product_ = gate_product_ * g;
    }
    for (int b = 0; b < branches(); ++b) {
        Matrix pre = Matrix::Identity(d, d);
        Matrix post = Matrix::Identity(d, d);
        std::vector<int> term_sign(spec.h_terms.size(), 1);
        for (int j = 0; j < m_; ++j) {
            if (bit(b, j, m_)) {
                pre = spec.gates[j] * pre;
                term_sign[spec.gate_term[j]] *= static_cast<int>(spec.nu[j]);
            }
        }
        for (int j = m_ - 1; j >= 0; --j) {
            if (!bit(b, j, m_)) {
                post = spec.gates[j] * post;
            }
        }
        Matrix hb = Matrix::Zero(d, d);
        for (size_t k = 0; k < spec.h_terms.size(); ++k) {
            hb += static_cast<double>(term_sign[k]) * spec.h_terms[k];
        }
        pre_.push_back(std::move(pre));
        post_.push_back(std::move(post));
        unitaries_.push_back(expm_hermitian(hb, dt));
    }
}

Matrix BranchEvolution::branch_operator(int b, const Matrix &e) const {
    return post_[b] * e * unitaries_[b] * pre_[b];
}

Matrix BranchEvolution::outcome_operator(int o, const Matrix &e) const {
    Matrix acc = Matrix::Zero(e.rows(), e.cols());
    for (int b = 0; b < branches(); ++b) {
        double s = parity(o & b) ? -1.0 : 1.0;
        acc += s * branch_operator(b, e);
    }
    return acc / static_cast<double>(branches());
}

KrausChannel build_superchannel(const SuperchannelSpec &spec, double dt) {
    BranchEvolution ev(spec, dt);
    auto factors = short_time_noise_factors(spec.noise, dt, spec.step);
    const int d = spec.probe_dim();
    const int nb = ev.branches();
    std::vector<Matrix> kraus;
    for (const auto &n : factors) {
        Matrix w = Matrix::Zero(static_cast<Eigen::Index>(nb) * d, static_cast<Eigen::Index>(nb) * d);
        for (int b = 0; b < nb; ++b) {
            w.block(static_cast<Eigen::Index>(b) * d, static_cast<Eigen::Index>(b) * d, d, d) =
                ev.branch_operator(b, n);
        }
        kraus.push_back(std::move(w));
    }
    return make_kraus_channel(std::move(kraus));
}

std::string outcome_label(int outcome, int aux_count) {
    std::string s;
    for (int j = 0; j < aux_count; ++j) {
        s += bit(outcome, j, aux_count) ? '-' : '+';
    }
    return s;
}

int HeraldTable::decode(int outcome) const {
    auto it = outcome_class.find(outcome);
    return it == outcome_class.end() ? kUnresolved : it->second;
}

HeraldTable herald_table(const SuperchannelSpec &spec, const std::vector<HeraldClass> &classes, double dt) {
    BranchEvolution ev(spec, dt);
    const int m = ev.aux_count();
    const int nb = ev.branches();
    const int d = spec.probe_dim();
    HeraldTable t;
    t.aux_count = m;
    t.classes = classes;
    std::vector<Matrix> aux_states;
    for (const auto &c : classes) {
        // rho_A[b, b'] = 2^-m tr(O_b O_b'^dag) / d for the input |+><+|^m (x) I/d.
        std::vector<Matrix> ops;
        for (int b = 0; b < nb; ++b) {
            ops.push_back(ev.branch_operator(b, c.op));
        }
        Matrix rho_a(nb, nb);
        for (int b = 0; b < nb; ++b) {
            for (int bp = 0; bp < nb; ++bp) {
                rho_a(b, bp) = (ops[b] * ops[bp].adjoint()).trace() / static_cast<double>(nb * d);
            }
        }
        double total = rho_a.trace().real();
        int modal = HeraldTable::kUnresolved;
        double best = 0.0;
        if (total > 0.0) {
            rho_a /= total;
            for (int o = 0; o < nb; ++o) {
                Complex p = 0.0;
                for (int b = 0; b < nb; ++b) {
                    for (int bp = 0; bp < nb; ++bp) {
                        double s = (parity(o & b) ^ parity(o & bp)) ? -1.0 : 1.0;
                        p += s * rho_a(b, bp);
                    }
                }
                double pr = p.real() / nb;
                if (pr > best) {
                    best = pr;
                    modal = o;
                }
            }
        }
        t.class_modal_probability.push_back(best);
        t.class_outcome.push_back(best >= kDeterministic ? modal : HeraldTable::kUnresolved);
        aux_states.push_back(rho_a);
    }
    std::map<int, std::vector<int>> by_outcome;
    for (size_t c = 0; c < classes.size(); ++c) {
        if (t.class_outcome[c] != HeraldTable::kUnresolved) {
            by_outcome[t.class_outcome[c]].push_back(static_cast<int>(c));
        }
    }
    for (const auto &[o, members] : by_outcome) {
        int owner = members.front();
        for (int c : members) {
            // Classes sharing an outcome must share their recovery, i.e. be proportional operators.
            Complex num = (classes[owner].op.adjoint() * classes[c].op).trace();
            double den = classes[owner].op.norm() * classes[c].op.norm();
            if (den == 0.0 || std::abs(std::abs(num) / den - 1.0) > 1e-9) {
                owner = HeraldTable::kUnresolved;
                break;
            }
        }
        t.outcome_class[o] = owner;
    }
    for (size_t i = 0; i < classes.size(); ++i) {
        for (size_t j = i + 1; j < classes.size(); ++j) {
            if (t.class_outcome[i] == HeraldTable::kUnresolved || t.class_outcome[j] == HeraldTable::kUnresolved ||
                t.class_outcome[i] == t.class_outcome[j]) {
                continue;
            }
            double ov = std::abs((aux_states[i] * aux_states[j]).trace());
            t.max_overlap = std::max(t.max_overlap, ov);
        }
    }
    return t;
}

std::vector<HeraldClass> noise_classes(const NoiseModel &noise, double dt, const ShortTimeOptions &step) {
    auto factors = short_time_noise_factors(noise, dt, step);
    std::vector<HeraldClass> out{{"no_jump", factors.front(), -1}};
    for (size_t i = 0; i < noise.size(); ++i) {
        if (noise.integrated_rate(i, step.t0, dt) == 0.0) {
            continue;
        }
        out.push_back({"L" + std::to_string(i + 1), noise.jump_ops[i], static_cast<int>(i)});
    }
    return out;
}

std::vector<HeraldClass> pauli_classes(int qubits) {
    std::vector<HeraldClass> out;
    for (const auto &w : pauli_words(qubits)) {
        bool id = w.find_first_not_of('I') == std::string::npos;
        out.push_back({id ? "no_jump" : w, pauli_word_matrix(w), -1});
    }
    return out;
}

}  // namespace iqec
