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

// Dense complex linear algebra shared by every other module.
//
// Subsystem convention: in a composite space the leftmost tensor factor has
// index 0 and is the most significant digit of the basis index. Auxiliary
// registers always sit to the left of the probe.

#ifndef IQEC_QMATH_H
#define IQEC_QMATH_H

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace iqec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Tolerance ladder: construction checks, physics assertions, SLD eigenvalue floor.
namespace tol {
inline constexpr double kConstruction = 1e-10;
inline constexpr double kPhysics = 1e-8;
inline constexpr double kPsd = 1e-9;
inline constexpr double kSldFloor = 1e-12;
}  // namespace tol

bool is_hermitian(const Matrix &m, double tol = tol::kConstruction);
bool is_unitary(const Matrix &m, double tol = tol::kConstruction);
bool is_psd(const Matrix &m, double tol = tol::kPsd);

Matrix identity(int dim);
Vector basis_ket(int dim, int index);
Matrix projector(const Vector &psi);
Matrix dagger(const Matrix &m);
Matrix commutator(const Matrix &a, const Matrix &b);
Matrix anticommutator(const Matrix &a, const Matrix &b);

/// Kronecker product; `a` is the more significant factor.
Matrix tensor(const Matrix &a, const Matrix &b);
Matrix tensor_all(std::span<const Matrix> factors);
Vector tensor(const Vector &a, const Vector &b);

/// Single-qubit Pauli matrix for letter 'I', 'X', 'Y' or 'Z'.
Matrix pauli_matrix(char letter);

/// Lifts a single-subsystem operator to the full space `dims`, identity elsewhere.
Matrix embed(const Matrix &op, int site, std::span<const int> dims);

/// e^{-i h t} through the eigendecomposition of the Hermitian generator `h`.
/// Throws NonHermitianInput when h deviates from Hermitian by more than 1e-10 (relative to its scale).
Matrix expm_hermitian(const Matrix &h, double t);

double trace_distance(const Matrix &a, const Matrix &b);
/// <psi|rho|psi> for a normalized pure reference.
double fidelity_to_pure(const Vector &psi, const Matrix &rho);
/// Largest absolute entry; the norm used for all "within tol" matrix comparisons.
double max_abs(const Matrix &m);
double operator_norm(const Matrix &m);

/// Density matrix on an ordered tensor product of subsystems.
class QuantumState {
   public:
    enum class Kind {
        /// trace 1 within 1e-10.
        kNormalized,
        /// Unnormalized branch or channel output; trace is a weight, only required to be positive.
        kBranch,
    };

    QuantumState(Matrix rho, std::vector<int> dims, Kind kind = Kind::kNormalized);

    static QuantumState pure(const Vector &psi, std::vector<int> dims);

    const Matrix &rho() const {
        return rho_;
    }
    const std::vector<int> &dims() const {
        return dims_;
    }
    int dim() const {
        return static_cast<int>(rho_.rows());
    }
    Kind kind() const {
        return kind_;
    }
    double trace() const;
    QuantumState normalized() const;

   private:
    Matrix rho_;
    std::vector<int> dims_;
    Kind kind_;
};

/// Traces out every subsystem not listed in `keep`. Kept subsystems stay in ascending index order.
Matrix partial_trace(const Matrix &rho, std::span<const int> dims, std::span<const int> keep);
QuantumState partial_trace(const QuantumState &s, std::span<const int> keep);

/// Symmetric logarithmic derivative: Lambda_ij = 2 drho_ij / (l_i + l_j) in the eigenbasis of rho,
/// zero where l_i + l_j < floor.
Matrix sld_solve(const Matrix &rho, const Matrix &drho, double floor = tol::kSldFloor);

}  // namespace iqec

#endif
