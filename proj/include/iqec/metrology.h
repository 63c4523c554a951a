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

// Quantum Fisher information from deterministic omega -> rho pipelines.

#ifndef IQEC_METROLOGY_H
#define IQEC_METROLOGY_H

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iqec/qec.h"
#include "iqec/qmath.h"

namespace iqec {

/// 4(<dpsi|dpsi> - |<psi|dpsi>|^2). Throws UnnormalizedState unless ||psi|| = 1 within 1e-10.
double qfi_pure(const Vector &psi, const Vector &dpsi);

/// SLD sum over eigenpairs with lambda_i + lambda_j above `floor`.
double qfi_mixed(const Matrix &rho, const Matrix &drho, double floor = tol::kSldFloor);

using StatePipeline = std::function<Matrix(double)>;

/// Default finite-difference step 1e-5 max(1, |omega0|).
double default_step(double omega0);

/// Central difference with one Richardson level: (4 D(h/2) - D(h)) / 3, then Hermitized.
Matrix derivative(const StatePipeline &pipeline, double omega0, double h = 0.0);

/// Plain central difference (rho(w + h) - rho(w - h)) / 2h, Hermitized.
Matrix central_difference(const StatePipeline &pipeline, double omega0, double h);

/// 1 / (shots * fisher). Throws NonpositiveFisher for fisher <= 0.
double crb(double fisher, long shots);

/// Values above -1e-9 are clipped to zero; anything lower is a numerical failure and is kept visible.
double clip_qfi(double f);

struct QfiCurve {
    std::vector<double> times;
    std::vector<double> qfi;
    /// Success probability per point for post-selection, empty optional otherwise.
    std::vector<std::optional<double>> success_prob;
    std::string protocol;
    std::string scenario;
    double omega0 = 1.0;
    double dt = 0.0;
    std::vector<double> rates;
};

/// Rounds and round length used at total time T: one round when `final_time_correction` is set,
/// otherwise T / dt rounds (T must be a multiple of dt within 1e-9).
ProtocolConfig config_for_time(const ProtocolConfig &base, double total_time);

/// QFI of the final (normalized) protocol state at omega0 for every T.
QfiCurve qfi_curve(const Scenario &sc, const ProtocolConfig &base, const std::vector<double> &times);

/// QFI at a single total time together with the success probability.
struct QfiPoint {
    double qfi = 0.0;
    std::optional<double> success_prob;
};
QfiPoint qfi_point(const Scenario &sc, const ProtocolConfig &base, double total_time);

/// Columns t,qfi,protocol,scenario,success_prob,qfi_per_t2; one row per point.
void write_qfi_csv(std::ostream &os, const std::vector<QfiCurve> &curves);
/// Same with a leading sweep_value column; `sweep_values[i]` labels `curves[i]`.
void write_sweep_csv(std::ostream &os, const std::vector<QfiCurve> &curves, const std::vector<double> &sweep_values);

}  // namespace iqec

#endif
