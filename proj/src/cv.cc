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

#include "iqec/cv.h"

#include <cmath>

#include "iqec/errors.h"

namespace iqec {

Matrix FockSpace::lowering() const {
    Matrix a = Matrix::Zero(dim(), dim());
    for (int n = 1; n <= n_max; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Matrix FockSpace::number() const {
    Matrix n = Matrix::Zero(dim(), dim());
    for (int k = 0; k <= n_max; ++k) {
        n(k, k) = k;
    }
    return n;
}

Vector coherent_amplitudes(Complex alpha, const FockSpace &space) {
    Vector v(space.dim());
    // alpha^n / sqrt(n!) by recurrence avoids overflow in the factorial.
    Complex c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n <= space.n_max; ++n) {
        v(n) = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return v;
}

Vector CatState::ket(const FockSpace &space) const {
    const double sign = parity == Parity::kEven ? 1.0 : -1.0;
    Vector v = coherent_amplitudes(alpha, space) + sign * coherent_amplitudes(-alpha, space);
    const double norm = v.norm();
    if (norm < 1e-12) {
        throw UnnormalizedState("CatState: odd cat of vanishing amplitude");
    }
    return v / norm;
}

Matrix build_cv_hamiltonian(double omega, double chi, const FockSpace &space) {
    if (space.n_max < 2) {
        throw ConfigError("build_cv_hamiltonian: cutoff must be at least 2");
    }
    const Matrix a = space.lowering();
    const Matrix a2 = a * a;
    return omega * space.number() + chi * (a2 + a2.adjoint());
}

Matrix parity_gate(const FockSpace &space) {
    Matrix p = Matrix::Zero(space.dim(), space.dim());
    for (int n = 0; n <= space.n_max; ++n) {
        p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

double top_population(const Matrix &rho, const FockSpace &space) {
    if (rho.rows() != space.dim()) {
        throw DimensionMismatch("top_population: state is not on this Fock space");
    }
    return rho(space.n_max, space.n_max).real() / rho.trace().real();
}

Scenario cv_scenario(double omega0, double chi, Complex alpha, double gamma, const FockSpace &space) {
    Scenario sc;
    sc.name = chi == 0.0 ? "cv_nonsqueezed" : "cv_squeezed";
    sc.probe = ProbeSpec::fock(space.n_max);
    sc.h_terms = [chi, space](double w) { return std::vector<Matrix>{build_cv_hamiltonian(w, chi, space)}; };
    sc.noise = make_noise("photon_loss", {}, gamma, sc.probe);
    sc.initial = CatState{alpha, CatState::Parity::kEven}.ket(space);
    sc.omega0 = omega0;
    sc.leakage_index = space.n_max;
    if (chi == 0.0) {
        // a maps the odd cat back onto the even cat of the same amplitude.
        sc.jump_recovery = {space.lowering()};
    }
    return sc;
}

CvRun run_cv_scenario(double omega0, double chi, Complex alpha, double gamma, double dt, int rounds, ProtocolMode mode,
                      const FockSpace &space) {
    if (mode != ProtocolMode::kIqec && mode != ProtocolMode::kIqecPostselect) {
        throw ConfigError("run_cv_scenario: mode must be iqec or iqec_postselect");
    }
    Scenario sc = cv_scenario(omega0, chi, alpha, gamma, space);
    ProtocolConfig cfg;
    cfg.mode = mode;
    cfg.dt = dt;
    cfg.rounds = rounds;
    cfg.gates = {parity_gate(space)};
    cfg.backaction_filter = true;
    ProtocolConfig bare = cfg;
    bare.mode = ProtocolMode::kBare;
    bare.gates.clear();

    const double total = dt * rounds;
    CvRun out;
    ProtocolResult corrected = run_protocol(sc, cfg, omega0);
    ProtocolResult reference = run_protocol(sc, bare, omega0);
    out.leakage =
        std::max(top_population(corrected.state.rho(), space), top_population(reference.state.rho(), space));
    if (out.leakage > kLeakageThreshold) {
        throw LeakageExceeded("run_cv_scenario: |n_max> population " + std::to_string(out.leakage) +
                              " exceeds the threshold; raise the cutoff");
    }
    QfiPoint q = qfi_point(sc, cfg, total);
    out.qfi = q.qfi;
    out.success_prob = corrected.success_probability;
    out.qfi_noiseless = qfi_point(sc, bare, total).qfi;
    return out;
}

}  // namespace iqec
