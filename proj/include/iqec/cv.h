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

// Single bosonic mode on a truncated Fock basis {|0>, ..., |n_max>}.

#ifndef IQEC_CV_H
#define IQEC_CV_H

#include <vector>

#include "iqec/metrology.h"
#include "iqec/qec.h"

namespace iqec {

struct FockSpace {
    int n_max = 30;

    int dim() const {
        return n_max + 1;
    }
    /// a|n> = sqrt(n)|n-1>.
    Matrix lowering() const;
    Matrix number() const;
};

/// Truncated coherent amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!), not renormalized.
Vector coherent_amplitudes(Complex alpha, const FockSpace &space);

struct CatState {
    enum class Parity { kEven, kOdd };
    Complex alpha{2.0, 0.0};
    Parity parity = Parity::kEven;

    /// (|alpha> +- |-alpha>) normalized on the truncated space.
    Vector ket(const FockSpace &space) const;
};

/// omega a^dag a + chi (a^2 + a^dag^2).
Matrix build_cv_hamiltonian(double omega, double chi, const FockSpace &space);

/// diag((-1)^n).
Matrix parity_gate(const FockSpace &space);

/// Population of |n_max>.
double top_population(const Matrix &rho, const FockSpace &space);

/// Photon loss on a cat probe with parity heralding. The jump recovery a (applied to the odd branch,
/// scale dropped by normalization) is attached only when chi = 0.
Scenario cv_scenario(double omega0, double chi, Complex alpha, double gamma, const FockSpace &space);

struct CvRun {
    double qfi = 0.0;
    double qfi_noiseless = 0.0;
    /// Product of kept-branch probabilities (1 for full correction).
    double success_prob = 1.0;
    /// Largest |n_max> population over the three pipelines.
    double leakage = 0.0;
};

/// Runs iqec (chi = 0) or iqec_postselect at total time dt * rounds and the bare reference. Throws
/// LeakageExceeded when the top Fock level exceeds 1e-6 and IrreversibleJump when full correction is
/// requested with chi != 0.
CvRun run_cv_scenario(double omega0, double chi, Complex alpha, double gamma, double dt, int rounds, ProtocolMode mode,
                      const FockSpace &space = {});

}  // namespace iqec

#endif
