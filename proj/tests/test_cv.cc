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

#include <gtest/gtest.h>

#include <cmath>

#include "iqec/cv.h"
#include "iqec/errors.h"

namespace iqec {
namespace {

TEST(Cv, LadderOperators) {
    const FockSpace s{10};
    const Matrix a = s.lowering();
    EXPECT_NEAR(std::abs(a(2, 3)), std::sqrt(3.0), 1e-15);
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    // Canonical commutator holds everywhere except the truncation level.
    EXPECT_LT(max_abs(comm.topLeftCorner(10, 10) - identity(10)), 1e-14);
    EXPECT_LT(max_abs(a.adjoint() * a - s.number()), 1e-14);
}

TEST(Cv, CatStatesHaveDefiniteParity) {
    const FockSpace s{40};
    const Vector even = CatState{2.0, CatState::Parity::kEven}.ket(s);
    const Vector odd = CatState{2.0, CatState::Parity::kOdd}.ket(s);
    const Matrix p = parity_gate(s);
    EXPECT_LT((p * even - even).norm(), 1e-14);
    EXPECT_LT((p * odd + odd).norm(), 1e-14);
    // Photon loss maps the even cat onto the odd cat.
    const Vector lost = s.lowering() * even;
    EXPECT_NEAR(std::abs(odd.dot(lost)) / lost.norm(), 1.0, 1e-12);
    EXPECT_NEAR(coherent_amplitudes(2.0, s).norm(), 1.0, 1e-12);
}

TEST(Cv, HamiltonianIsHermitian) {
    const FockSpace s{20};
    EXPECT_TRUE(is_hermitian(build_cv_hamiltonian(1.0, 0.2, s)));
    EXPECT_THROW(build_cv_hamiltonian(1.0, 0.0, FockSpace{1}), ConfigError);
}

TEST(Cv, NonsqueezedParityCorrectionIsNoiseless) {
    for (int rounds : {2, 8}) {
        const CvRun r = run_cv_scenario(1.0, 0.0, 2.0, 0.1, 0.25, rounds, ProtocolMode::kIqec);
        EXPECT_NEAR(r.qfi, r.qfi_noiseless, 1e-5 * r.qfi_noiseless) << rounds;
        EXPECT_NEAR(r.success_prob, 1.0, 1e-12);
        EXPECT_LT(r.leakage, 1e-10);
    }
}

TEST(Cv, SqueezedPostselectionRecoversNoiselessQfi) {
    for (int rounds : {1, 2}) {
        const CvRun r = run_cv_scenario(1.0, 0.2, 2.0, 0.1, 0.25, rounds, ProtocolMode::kIqecPostselect);
        EXPECT_NEAR(r.qfi, r.qfi_noiseless, 1e-4 * r.qfi_noiseless) << rounds;
        EXPECT_LT(r.success_prob, 1.0);
        EXPECT_GT(r.success_prob, 0.5);
    }
}

TEST(Cv, CutoffDoublingIsStable) {
    const CvRun a = run_cv_scenario(1.0, 0.0, 2.0, 0.1, 0.25, 8, ProtocolMode::kIqec, FockSpace{30});
    const CvRun b = run_cv_scenario(1.0, 0.0, 2.0, 0.1, 0.25, 8, ProtocolMode::kIqec, FockSpace{60});
    EXPECT_LT(std::abs(a.qfi - b.qfi) / b.qfi, 1e-6);
    const CvRun c = run_cv_scenario(1.0, 0.2, 2.0, 0.1, 0.25, 2, ProtocolMode::kIqecPostselect, FockSpace{30});
    const CvRun d = run_cv_scenario(1.0, 0.2, 2.0, 0.1, 0.25, 2, ProtocolMode::kIqecPostselect, FockSpace{60});
    EXPECT_LT(std::abs(c.qfi - d.qfi) / d.qfi, 1e-6);
}

TEST(Cv, GuardsFailLoudly) {
    EXPECT_THROW(run_cv_scenario(1.0, 0.0, 2.0, 0.1, 0.25, 4, ProtocolMode::kIqec, FockSpace{8}), LeakageExceeded);
    EXPECT_THROW(run_cv_scenario(1.0, 0.2, 2.0, 0.1, 0.25, 1, ProtocolMode::kIqec), IrreversibleJump);
    EXPECT_THROW(run_cv_scenario(1.0, 0.0, 2.0, 0.1, 0.25, 1, ProtocolMode::kNoisy), ConfigError);
}

}  // namespace
}  // namespace iqec
