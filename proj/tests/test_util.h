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

#ifndef IQEC_TESTS_TEST_UTIL_H
#define IQEC_TESTS_TEST_UTIL_H

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "iqec/channels.h"
#include "iqec/qec.h"

namespace iqec::testing {

inline Vector plus_ket(int qubits = 1) {
    const int d = 1 << qubits;
    return Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
}

/// H = omega Z on one qubit, probe |+>.
inline Scenario qubit_scenario(const std::vector<std::string> &noise_labels, double rate) {
    Scenario sc;
    sc.probe = ProbeSpec::qubits(1);
    sc.h_terms = [](double w) { return std::vector<Matrix>{w * pauli_matrix('Z')}; };
    std::vector<NoiseModel> parts;
    for (const auto &l : noise_labels) {
        parts.push_back(make_noise(l, {0}, rate, sc.probe));
    }
    if (parts.empty()) {
        parts.push_back(make_noise("pauli_z", {0}, 0.0, sc.probe));
    }
    sc.noise = combine(parts);
    sc.initial = plus_ket();
    return sc;
}

/// H = omega S_z, collective S_z noise, GHZ probe with the subspace recovery attached.
inline Scenario ghz_scenario(int n, double rate) {
    Scenario g;
    g.probe = ProbeSpec::qubits(n);
    g.noise = make_noise("collective_z", {}, rate, g.probe);
    const Matrix sz = g.noise.jump_ops[0];
    g.h_terms = [sz](double w) { return std::vector<Matrix>{w * sz}; };
    g.initial = ghz_ket(n);
    g.jump_recovery = {collective_recovery_operator(n)};
    g.support = ghz_projector(n);
    return g;
}

inline ProtocolConfig protocol(ProtocolMode mode, double dt, std::vector<Matrix> gates = {}) {
    ProtocolConfig c;
    c.mode = mode;
    c.dt = dt;
    c.gates = std::move(gates);
    return c;
}

inline Matrix random_density(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = Complex(n(rng), n(rng));
        }
    }
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

inline Matrix random_hermitian(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = Complex(n(rng), n(rng));
        }
    }
    return 0.5 * (g + g.adjoint());
}

}  // namespace iqec::testing

#endif
