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

#include "iqec/metrology.h"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "iqec/errors.h"

namespace iqec {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

double qfi_pure(const Vector &psi, const Vector &dpsi) {
    if (psi.size() != dpsi.size()) {
        throw DimensionMismatch("qfi_pure: state and derivative sizes differ");
    }
    if (std::abs(psi.norm() - 1.0) > tol::kConstruction) {
        throw UnnormalizedState("qfi_pure: state norm differs from 1");
    }
    const double f = 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
    return clip_qfi(f);
}

double qfi_mixed(const Matrix &rho, const Matrix &drho, double floor) {
    if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
        throw DimensionMismatch("qfi_mixed: state and derivative sizes differ");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
    const auto &lam = es.eigenvalues();
    const Matrix &v = es.eigenvectors();
    const Matrix d = v.adjoint() * drho * v;
    double f = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        for (Eigen::Index j = 0; j < lam.size(); ++j) {
            const double s = lam(i) + lam(j);
            if (s > floor) {
                f += 2.0 * std::norm(d(i, j)) / s;
            }
        }
    }
    return clip_qfi(f);
}

double default_step(double omega0) {
    return 1e-5 * std::max(1.0, std::abs(omega0));
}

Matrix central_difference(const StatePipeline &pipeline, double omega0, double h) {
    Matrix d = (pipeline(omega0 + h) - pipeline(omega0 - h)) / (2.0 * h);
    return 0.5 * (d + d.adjoint());
}

Matrix derivative(const StatePipeline &pipeline, double omega0, double h) {
    if (h == 0.0) {
        h = default_step(omega0);
    }
    if (!(h > 0.0)) {
        throw ConfigError("derivative: step must be positive");
    }
    Matrix coarse = central_difference(pipeline, omega0, h);
    Matrix fine = central_difference(pipeline, omega0, 0.5 * h);
    Matrix d = (4.0 * fine - coarse) / 3.0;
    return 0.5 * (d + d.adjoint());
}

double crb(double fisher, long shots) {
    if (!(fisher > 0.0)) {
        throw NonpositiveFisher("crb: Fisher information must be positive");
    }
    if (shots < 1) {
        throw ConfigError("crb: shots must be positive");
    }
    return 1.0 / (static_cast<double>(shots) * fisher);
}

double clip_qfi(double f) {
    return (f < 0.0 && f >= -1e-9) ? 0.0 : f;
}

ProtocolConfig config_for_time(const ProtocolConfig &base, double total_time) {
    if (!(total_time > 0.0)) {
        throw ConfigError("time grid: every T must be positive");
    }
    ProtocolConfig cfg = base;
    if (base.final_time_correction) {
        cfg.dt = total_time;
        cfg.rounds = 1;
        return cfg;
    }
    const double n = total_time / base.dt;
    const long rounds = std::lround(n);
    if (rounds < 1 || std::abs(rounds * base.dt - total_time) > 1e-9) {
        throw ConfigError("time grid: T = " + fmt(total_time) + " is not a multiple of dt = " + fmt(base.dt));
    }
    cfg.rounds = static_cast<int>(rounds);
    return cfg;
}

QfiPoint qfi_point(const Scenario &sc, const ProtocolConfig &base, double total_time) {
    const ProtocolConfig cfg = config_for_time(base, total_time);
    StatePipeline pipe = [&](double w) { return run_protocol(sc, cfg, w).state.rho(); };
    ProtocolResult center = run_protocol(sc, cfg, sc.omega0);
    QfiPoint pt;
    pt.qfi = qfi_mixed(center.state.rho(), derivative(pipe, sc.omega0));
    if (cfg.mode == ProtocolMode::kIqecPostselect || cfg.recovery_policy == RecoveryPolicy::kDiscardBranch) {
        pt.success_prob = center.success_probability;
    }
    return pt;
}

QfiCurve qfi_curve(const Scenario &sc, const ProtocolConfig &base, const std::vector<double> &times) {
    if (times.empty()) {
        throw ConfigError("qfi_curve: empty time grid");
    }
    QfiCurve c;
    c.protocol = mode_name(base.mode);
    c.scenario = sc.name;
    c.omega0 = sc.omega0;
    c.dt = base.dt;
    c.rates = sc.noise.rates;
    for (size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw ConfigError("qfi_curve: times must be strictly increasing");
        }
        QfiPoint pt = qfi_point(sc, base, times[i]);
        c.times.push_back(times[i]);
        c.qfi.push_back(pt.qfi);
        c.success_prob.push_back(pt.success_prob);
    }
    return c;
}

namespace {

void write_rows(std::ostream &os, const QfiCurve &c, const std::string &prefix) {
    for (size_t i = 0; i < c.times.size(); ++i) {
        const double t = c.times[i];
        os << prefix << fmt(t) << ',' << fmt(c.qfi[i]) << ',' << c.protocol << ',' << c.scenario << ','
           << (c.success_prob[i] ? fmt(*c.success_prob[i]) : "") << ',' << fmt(c.qfi[i] / (t * t)) << '\n';
    }
}

}  // namespace

void write_qfi_csv(std::ostream &os, const std::vector<QfiCurve> &curves) {
    os << "t,qfi,protocol,scenario,success_prob,qfi_per_t2\n";
    for (const auto &c : curves) {
        write_rows(os, c, "");
    }
}

void write_sweep_csv(std::ostream &os, const std::vector<QfiCurve> &curves, const std::vector<double> &sweep_values) {
    if (curves.size() != sweep_values.size()) {
        throw LengthMismatch("write_sweep_csv: one sweep value per curve required");
    }
    os << "sweep_value,t,qfi,protocol,scenario,success_prob,qfi_per_t2\n";
    for (size_t i = 0; i < curves.size(); ++i) {
        write_rows(os, curves[i], fmt(sweep_values[i]) + ",");
    }
}

}  // namespace iqec
