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

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "iqec/errors.h"
#include "iqec/qmath.h"
#include "test_util.h"

namespace iqec {
namespace {

TEST(Qmath, PauliAlgebra) {
    const Matrix x = pauli_matrix('X'), y = pauli_matrix('Y'), z = pauli_matrix('Z');
    EXPECT_LT(max_abs(x * y - kI * z), 1e-15);
    EXPECT_LT(max_abs(anticommutator(x, z)), 1e-15);
    EXPECT_LT(max_abs(commutator(x, y) - 2.0 * kI * z), 1e-15);
    EXPECT_THROW(pauli_matrix('Q'), InputError);
}

TEST(Qmath, TensorOrderLeftmostIsMostSignificant) {
    const Vector k01 = tensor(basis_ket(2, 0), basis_ket(2, 1));
    EXPECT_NEAR(std::abs(k01(1)), 1.0, 1e-15);
    const int dims[] = {2, 2};
    const Matrix x0 = embed(pauli_matrix('X'), 0, dims);
    EXPECT_LT(max_abs(x0 - tensor(pauli_matrix('X'), identity(2))), 1e-15);
}

TEST(Qmath, PartialTraceOfProductState) {
    std::mt19937_64 rng(3);
    const Matrix a = testing::random_density(2, rng), b = testing::random_density(3, rng);
    const Matrix ab = tensor(a, b);
    const int dims[] = {2, 3};
    const int keep0[] = {0}, keep1[] = {1};
    EXPECT_LT(max_abs(partial_trace(ab, dims, keep0) - a), 1e-14);
    EXPECT_LT(max_abs(partial_trace(ab, dims, keep1) - b), 1e-14);
    const int bad[] = {2};
    EXPECT_THROW(partial_trace(ab, dims, bad), BadSubsystemIndex);
}

TEST(Qmath, ExpmHermitianMatchesPade) {
    std::mt19937_64 rng(5);
    for (int d : {2, 4, 7}) {
        const Matrix h = testing::random_hermitian(d, rng);
        const Matrix ref = (Complex(0.0, -0.7) * h).exp();
        EXPECT_LT(max_abs(expm_hermitian(h, 0.7) - ref), 1e-12);
        EXPECT_TRUE(is_unitary(expm_hermitian(h, 0.7)));
    }
    Matrix nh = pauli_matrix('X');
    nh(0, 1) = 2.0;
    EXPECT_THROW(expm_hermitian(nh, 1.0), NonHermitianInput);
}

TEST(Qmath, TraceDistanceAndFidelity) {
    const Matrix p0 = projector(basis_ket(2, 0)), p1 = projector(basis_ket(2, 1));
    EXPECT_NEAR(trace_distance(p0, p1), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(p0, 0.5 * identity(2)), 0.5, 1e-15);
    EXPECT_NEAR(fidelity_to_pure(testing::plus_ket(), p0), 0.5, 1e-15);
}

TEST(Qmath, QuantumStateValidation) {
    EXPECT_NO_THROW(QuantumState::pure(testing::plus_ket(), {2}));
    EXPECT_THROW(QuantumState(identity(2), {2}), UnnormalizedState);
    EXPECT_THROW(QuantumState(0.5 * identity(2), {3}), DimensionMismatch);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(QuantumState(neg, {2}), PhysicsError);
    EXPECT_NO_THROW(QuantumState(0.3 * identity(2), {2}, QuantumState::Kind::kBranch));
}

TEST(Qmath, SldSolvesLyapunovEquation) {
    std::mt19937_64 rng(11);
    for (int d : {2, 3, 5}) {
        const Matrix rho = testing::random_density(d, rng);
        Matrix drho = testing::random_hermitian(d, rng);
        drho -= (drho.trace() / static_cast<double>(d)) * identity(d);
        const Matrix l = sld_solve(rho, drho);
        EXPECT_TRUE(is_hermitian(l, 1e-9));
        EXPECT_LT(max_abs(0.5 * (l * rho + rho * l) - drho), 1e-9);
    }
}

}  // namespace
}  // namespace iqec
