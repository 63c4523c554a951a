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

// Noisy sensing channels.
//
// The short-time channel is the first-order Kraus map
//   K_0 = (I - 1/2 sum_i q_i L_i^dag L_i) U(dt),   K_i = sqrt(q_i) L_i U(dt),
// with q_i = integral of kappa_i over the step. Its O(dt^2) completeness
// deficit is measured and reported, never renormalized away. The exact
// Lindblad superoperator is kept alongside as an independent reference.

#ifndef IQEC_CHANNELS_H
#define IQEC_CHANNELS_H

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "iqec/qmath.h"

namespace iqec {

/// Shape of the probe Hilbert space: N qubits, or one truncated bosonic mode.
struct ProbeSpec {
    enum class Kind { kQubits, kFock };
    Kind kind = Kind::kQubits;
    int sites = 1;
    int n_max = 0;

    static ProbeSpec qubits(int n) {
        return {Kind::kQubits, n, 0};
    }
    static ProbeSpec fock(int n_max) {
        return {Kind::kFock, 1, n_max};
    }
    std::vector<int> dims() const;
    int dim() const;
};

struct NoiseModel {
    std::vector<Matrix> jump_ops;
    /// Constant rates kappa_i.
    std::vector<double> rates;
    /// One of pauli_x, pauli_y, pauli_z, pauli_theta, amplitude_damping, collective_z, photon_loss, custom.
    std::string label = "custom";
    /// Optional time-dependent rates kappa_i(t). When non-empty it overrides `rates` in the short-time
    /// channel; the Lindblad reference always uses the constant `rates`.
    std::vector<std::function<double(double)>> rate_profiles;

    int dim() const;
    size_t size() const {
        return jump_ops.size();
    }
    /// q_i over [t0, t0 + dt].
    double integrated_rate(size_t i, double t0, double dt) const;
    /// Throws on empty or ragged input, negative rates or mixed dimensions.
    void validate() const;
    NoiseModel scaled(double factor) const;
};

/// Concatenates the jump operators of several models (e.g. Pauli noise plus amplitude damping).
NoiseModel combine(const std::vector<NoiseModel> &parts);

struct KrausChannel {
    std::vector<Matrix> kraus_ops;
    /// Operator norm of I - sum_k K_k^dag K_k, recorded at construction.
    double completeness_deficit = 0.0;

    int dim() const {
        return kraus_ops.empty() ? 0 : static_cast<int>(kraus_ops.front().rows());
    }
};

/// Builds a channel from Kraus operators and records its completeness deficit.
KrausChannel make_kraus_channel(std::vector<Matrix> kraus_ops);

struct ShortTimeOptions {
    /// Short-time validity guard on max_i q_i.
    double max_rate_step = 0.2;
    bool allow_long_step = false;
    /// Start of the step, used only with time-dependent rates.
    double t0 = 0.0;
};

/// Noise factors N_k of the short-time channel, K_k = N_k U(dt): N_0 first, then one per jump operator.
std::vector<Matrix> short_time_noise_factors(const NoiseModel &noise, double dt, const ShortTimeOptions &opt = {});

/// First-order channel for one step. Jump operators with zero integrated rate are dropped, so
/// a noiseless model yields the single Kraus operator U(dt).
KrausChannel short_time_channel(const Matrix &h, const NoiseModel &noise, double dt, const ShortTimeOptions &opt = {});

Matrix apply_channel(const KrausChannel &c, const Matrix &rho);
QuantumState apply_channel(const KrausChannel &c, const QuantumState &s);

/// Dense superoperator acting on column-stacked density matrices.
struct Superoperator {
    Matrix matrix;
    int dim = 0;

    Matrix apply(const Matrix &rho) const;
};

Matrix liouvillian(const Matrix &h, const NoiseModel &noise);

/// Exact e^{L t}. Probe dimension is limited to 64.
Superoperator lindblad_evolve(const Matrix &h, const NoiseModel &noise, double t);

/// e^{L t} applied to one state without forming the superoperator: truncated Taylor series on
/// substeps, summed until the terms fall below 1e-15 of the state norm. Used for large probes.
Matrix lindblad_apply(const Matrix &h, const NoiseModel &noise, double t, const Matrix &rho);

/// Named noise models embedded on the full probe space. `sites` are 0-based; empty means all sites.
/// Per-site labels produce one jump operator per site; collective_z produces a single sum.
NoiseModel make_noise(std::string_view label, const std::vector<int> &sites, double rate, const ProbeSpec &probe,
                      double theta = 0.0);

/// cos(theta) X + sin(theta) Z.
Matrix sigma_theta(double theta);

/// Choi matrix sum_k vec(K_k) vec(K_k)^dag (column stacking).
Matrix choi_matrix(const KrausChannel &c);

/// Generalized Kraus form E(rho) = sum_ij c_ij P_i rho P_j^dag over the n-qubit Pauli basis.
struct PauliExpansion {
    std::vector<std::string> labels;
    std::vector<Matrix> basis;
    Matrix coefficients;
};

/// All 4^n Pauli words on n qubits in lexicographic order (I < X < Y < Z), with their matrices.
std::vector<std::string> pauli_words(int qubits);
Matrix pauli_word_matrix(std::string_view word);

/// c_ij obtained by projecting the channel's Choi matrix onto the Pauli operator basis.
PauliExpansion pauli_expansion(const KrausChannel &c);
Matrix choi_from_expansion(const PauliExpansion &e);

}  // namespace iqec

#endif
