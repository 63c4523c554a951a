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

// Switch superchannel on auxiliary (x) probe with indefinite time direction,
// and the herald table that maps X-basis auxiliary outcomes to error classes.
//
// Branch b in {0,1}^m (auxiliary j is bit j, auxiliary 0 leftmost) applies
// every D_j with b_j = 1 before the evolution, in ascending j, and every D_j
// with b_j = 0 after it, in descending j. The evolution generator in branch b
// is sum_k nu_k(b) H^(k), where nu_k(b) multiplies the flags of the selected
// gates attached to term k. A single term gives the global construction.

#ifndef IQEC_ICO_H
#define IQEC_ICO_H

#include <map>
#include <string>
#include <vector>

#include "iqec/channels.h"
#include "iqec/qmath.h"

namespace iqec {

enum class CompatibilityFlag { kCommutes = 1, kAnticommutes = -1, kIncompatible = 0 };

const char *flag_name(CompatibilityFlag f);

/// commutes if ||ab - ba|| < tol, anticommutes if ||ab + ba|| < tol (Frobenius norms). Zero operands commute.
CompatibilityFlag classify(const Matrix &a, const Matrix &b, double tol = tol::kConstruction);

struct SuperchannelSpec {
    std::vector<Matrix> gates;
    /// Terms H^(k) of the Hamiltonian; one entry for the global construction.
    std::vector<Matrix> h_terms;
    /// Index into h_terms for every gate.
    std::vector<int> gate_term;
    std::vector<CompatibilityFlag> nu;
    std::vector<std::vector<CompatibilityFlag>> gate_pair_flags;
    NoiseModel noise;
    ShortTimeOptions step;

    int aux_count() const {
        return static_cast<int>(gates.size());
    }
    int probe_dim() const {
        return h_terms.empty() ? 0 : static_cast<int>(h_terms.front().rows());
    }
    Matrix hamiltonian() const;
    /// Throws IncompatibleGate when a flag is incompatible, DimensionMismatch on shape errors.
    void validate() const;
};

/// Global construction: every gate is checked against the full H.
SuperchannelSpec make_superchannel_spec(std::vector<Matrix> gates, const Matrix &h, NoiseModel noise,
                                        ShortTimeOptions step = {});

/// Site-local construction: gate i is checked against h_terms[gate_term[i]] only.
SuperchannelSpec make_site_superchannel_spec(std::vector<Matrix> gates, std::vector<int> gate_term,
                                             std::vector<Matrix> h_terms, NoiseModel noise,
                                             ShortTimeOptions step = {});

/// Branch operators precomputed for one step of length dt.
class BranchEvolution {
   public:
    BranchEvolution(const SuperchannelSpec &spec, double dt);

    int aux_count() const {
        return m_;
    }
    int branches() const {
        return 1 << m_;
    }
    /// O_b(E) = post_b E U_b pre_b.
    Matrix branch_operator(int b, const Matrix &e) const;
    /// Kraus operator on the probe for X-basis outcome o with auxiliaries prepared in |+>^m:
    /// 2^-m sum_b (-1)^{o.b} O_b(E).
    Matrix outcome_operator(int o, const Matrix &e) const;
    /// D_1 D_2 ... D_m: the gate product carried by every branch once the gates are commuted out.
    const Matrix &gate_product() const {
        return gate_product_;
    }
    const Matrix &forward_unitary() const {
        return unitaries_.front();
    }

   private:
    int m_ = 0;
    std::vector<Matrix> pre_, post_, unitaries_;
    Matrix gate_product_;
};

/// Lifted channel on A (x) P: one W_K = sum_b |b><b| (x) O_b(K) per base Kraus operator K = N U.
/// The auxiliaries are not initialized here.
KrausChannel build_superchannel(const SuperchannelSpec &spec, double dt);

/// Outcome bits rendered as '+'/'-', auxiliary 0 first.
std::string outcome_label(int outcome, int aux_count);

struct HeraldClass {
    std::string label;
    /// Class operator E: the probe branch is (D_1...D_m) E U up to a scalar.
    Matrix op;
    /// Index of the jump operator in the noise model, -1 for no_jump and Pauli classes.
    int jump_index = -1;
};

struct HeraldTable {
    static constexpr int kUnresolved = -1;

    int aux_count = 0;
    std::vector<HeraldClass> classes;
    /// Deterministic outcome per class, or kUnresolved.
    std::vector<int> class_outcome;
    std::vector<double> class_modal_probability;
    /// outcome -> class index (kUnresolved on collisions between inequivalent classes).
    std::map<int, int> outcome_class;

    /// Class for an outcome; kUnresolved when the outcome is not in the table or collides.
    int decode(int outcome) const;
    /// Largest |<a_i|a_j>| between the auxiliary post-states of distinct resolved classes.
    double max_overlap = 0.0;
};

/// Calibrates the table by pushing every class operator through the switch with auxiliaries in |+>^m
/// and a maximally mixed probe. Classes whose modal outcome probability is below 1 - 1e-9 are
/// unresolved.
HeraldTable herald_table(const SuperchannelSpec &spec, const std::vector<HeraldClass> &classes, double dt);

/// Classes for the known-noise mode: no_jump (operator N_0) followed by every jump with nonzero rate.
std::vector<HeraldClass> noise_classes(const NoiseModel &noise, double dt, const ShortTimeOptions &step = {});

/// Classes for the unknown-noise mode: every Pauli word on a qubit probe.
std::vector<HeraldClass> pauli_classes(int qubits);

}  // namespace iqec

#endif
