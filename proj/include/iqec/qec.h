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

// Round-by-round correction protocols over density matrices.
//
// One round of the switch-based protocol attaches fresh |+>^m auxiliaries,
// applies the superchannel, projects on every X-basis outcome, discards the
// auxiliaries and recovers each branch with E^-1 (D_1...D_m)^-1, where E is
// the decoded class operator. Branches are averaged with their outcome
// probabilities. Nothing is sampled unless a trajectory RNG is supplied.

#ifndef IQEC_QEC_H
#define IQEC_QEC_H

#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iqec/channels.h"
#include "iqec/ico.h"

namespace iqec {

/// Largest population allowed on the watched truncation level.
inline constexpr double kLeakageThreshold = 1e-6;
/// Probes up to this dimension use the dense superoperator exponential in noisy mode.
inline constexpr int kDenseLindbladDim = 16;

enum class ProtocolMode { kBare, kNoisy, kTqec, kIqec, kSniqec, kIqecUnitary, kIqecPostselect };
enum class RecoveryPolicy { kInvertJump, kDiscardBranch };
/// known: classes are the jump operators; unknown: classes are all Pauli words (branch calibration).
enum class NoiseKnowledge { kKnown, kUnknown };

const char *mode_name(ProtocolMode m);
ProtocolMode parse_mode(const std::string &s);

struct ProtocolConfig {
    ProtocolMode mode = ProtocolMode::kBare;
    double dt = 0.1;
    int rounds = 1;
    RecoveryPolicy recovery_policy = RecoveryPolicy::kInvertJump;
    NoiseKnowledge knowledge = NoiseKnowledge::kKnown;
    /// Global gates (iqec modes) or site-local gates (sniqec) on the probe.
    std::vector<Matrix> gates;
    /// Hamiltonian term of each gate for sniqec; empty for the global construction.
    std::vector<int> gate_site;
    /// Lets a single long round stand in for the whole evolution when every jump commutes with H.
    bool final_time_correction = false;
    /// Undo the no-jump back-action N_0 = I - 1/2 sum q L^dag L when it is not proportional to I.
    bool backaction_filter = false;

    double total_time() const {
        return dt * rounds;
    }
    /// Throws ConfigError on inconsistent fields.
    void validate() const;
};

/// Probe, Hamiltonian family and noise for one experiment curve.
struct Scenario {
    std::string name = "scenario";
    ProbeSpec probe;
    /// Terms H^(k)(omega); their sum is the Hamiltonian. One term for global problems.
    std::function<std::vector<Matrix>(double)> h_terms;
    NoiseModel noise;
    Vector initial;
    double omega0 = 1.0;
    /// Replacement for L_i^-1 per jump operator (empty entries fall back to inversion).
    std::vector<std::optional<Matrix>> jump_recovery;
    /// When set, every recovered branch must lie in the range of this projector.
    std::optional<Matrix> support;
    /// Basis index watched by the leakage monitor (the top Fock level), -1 to disable.
    int leakage_index = -1;

    Matrix hamiltonian(double omega) const;
    int dim() const {
        return probe.dim();
    }
};

struct SyndromeRecord {
    int round = 0;
    std::string outcome;
    std::string decoded_class;
    std::string recovery;
    /// Normalized over the outcomes of the round.
    double probability = 0.0;
    bool discarded = false;
};

struct Branch {
    QuantumState state;
    SyndromeRecord record;
};

struct RoundResult {
    std::vector<Branch> branches;
    /// Sum over outcomes of R sigma_o R^dag before any renormalization.
    Matrix corrected_unnormalized;
    /// Raw trace of the lifted channel output: 1 minus the completeness deficit on this input.
    double round_trace = 1.0;
};

/// Precomputed operators for repeated rounds of a fixed length.
class RoundEngine {
   public:
    /// `t0` is the start of the round; it matters only for time-dependent rates.
    RoundEngine(const Scenario &sc, const ProtocolConfig &cfg, double omega, double t0 = 0.0);

    RoundResult run_round(const QuantumState &state, int round_index) const;

    double dt() const {
        return cfg_.dt;
    }
    const HeraldTable &table() const {
        return table_;
    }
    const SuperchannelSpec &spec() const {
        return spec_;
    }
    /// Recovery per outcome, nullopt for discarded outcomes.
    const std::vector<std::optional<Matrix>> &recoveries() const {
        return recovery_;
    }
    const std::vector<std::string> &recovery_labels() const {
        return recovery_label_;
    }
    /// Kraus operators on the probe for every outcome.
    const std::vector<std::vector<Matrix>> &outcome_kraus() const {
        return outcome_kraus_;
    }

   private:
    const Scenario *sc_;
    ProtocolConfig cfg_;
    SuperchannelSpec spec_;
    HeraldTable table_;
    std::vector<std::vector<Matrix>> outcome_kraus_;
    std::vector<std::optional<Matrix>> recovery_;
    std::vector<std::string> recovery_label_;
    std::vector<int> outcome_class_;
};

/// Single round, as a free function.
RoundResult run_round(const QuantumState &state, const Scenario &sc, const ProtocolConfig &cfg, double omega,
                      int round_index = 0);

struct ProtocolResult {
    QuantumState state;
    std::vector<SyndromeRecord> log;
    /// Product of per-round kept probabilities (post-selection); 1 otherwise.
    double success_probability = 1.0;
    /// Largest per-round completeness deficit seen.
    double max_deficit = 0.0;
};

struct RunOptions {
    /// Trajectory mode: sample one outcome per round instead of averaging. Ensemble when null.
    std::mt19937_64 *rng = nullptr;
};

ProtocolResult run_protocol(const Scenario &sc, const ProtocolConfig &cfg, double omega, const RunOptions &opt = {});

/// Two-qubit repetition encoding |0>_A|0>_P, |1>_A|1>_P of the probe state.
Vector tqec_encode(const Vector &probe);

/// One TQEC round on ancilla (x) probe: noisy evolution for dt, Z(x)Z measurement, X on the probe for the
/// odd-parity outcome.
Matrix tqec_round(const Matrix &rho, const Matrix &h_probe, const NoiseModel &probe_noise, double dt,
                  const ShortTimeOptions &step = {});

/// One syndrome-free round: fresh auxiliaries, the superchannel, then the auxiliary-controlled recovery
/// V = (H^m (x) I)(sum_c |c><c| (x) R_c)(H^m (x) I) and the partial trace. Requires [H, L_i] = 0 and
/// unitary jumps; throws TheoremThreeViolated otherwise.
Matrix unitary_correction_round(const Matrix &rho, const RoundEngine &engine);

/// Diagonal phase gate that undoes a collective S_z jump on span{|0...0>, |1...1>}: -1 on every basis
/// state with negative S_z eigenvalue.
Matrix collective_recovery_operator(int qubits);

/// Applies the collective recovery to a post-jump state. Throws OutOfSubspace when the state leaves the
/// GHZ subspace.
Matrix collective_recovery(const Matrix &rho, int qubits);

/// Projector onto span{|0...0>, |1...1>}.
Matrix ghz_projector(int qubits);
Vector ghz_ket(int qubits);

void write_syndrome_csv(std::ostream &os, const std::vector<SyndromeRecord> &log);

}  // namespace iqec

#endif
