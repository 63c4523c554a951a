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

#include "iqec/qmath.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "iqec/errors.h"

namespace iqec {

namespace {

double scale_of(const Matrix &m) {
    return std::max(1.0, max_abs(m));
}

}  // namespace

double max_abs(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

double operator_norm(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

bool is_hermitian(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m - m.adjoint()) <= tol * scale_of(m);
}

bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m * m.adjoint() - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_psd(const Matrix &m, double tol) {
    if (!is_hermitian(m, std::max(tol, tol::kConstruction))) {
        return false;
    }
    Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

Matrix identity(int dim) {
    return Matrix::Identity(dim, dim);
}

Vector basis_ket(int dim, int index) {
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return v;
}

Matrix projector(const Vector &psi) {
    return psi * psi.adjoint();
}

Matrix dagger(const Matrix &m) {
    return m.adjoint();
}

Matrix commutator(const Matrix &a, const Matrix &b) {
    return a * b - b * a;
}

Matrix anticommutator(const Matrix &a, const Matrix &b) {
    return a * b + b * a;
}

Matrix tensor(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vector tensor(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Matrix tensor_all(std::span<const Matrix> factors) {
    Matrix out = Matrix::Identity(1, 1);
    for (const auto &f : factors) {
        out = tensor(out, f);
    }
    return out;
}

Matrix pauli_matrix(char letter) {
    Matrix m = Matrix::Zero(2, 2);
    switch (letter) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -kI, kI, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw ParseError(std::string("not a Pauli letter: ") + letter);
    }
    return m;
}

Matrix embed(const Matrix &op, int site, std::span<const int> dims) {
    if (site < 0 || site >= static_cast<int>(dims.size())) {
        throw BadSubsystemIndex("embed: site " + std::to_string(site) + " out of range");
    }
    if (op.rows() != dims[site] || op.cols() != dims[site]) {
        throw DimensionMismatch("embed: operator does not match subsystem dimension");
    }
    int before = 1;
    int after = 1;
    for (int k = 0; k < site; ++k) {
        before *= dims[k];
    }
    for (size_t k = site + 1; k < dims.size(); ++k) {
        after *= dims[k];
    }
    return tensor(tensor(identity(before), op), identity(after));
}

Matrix expm_hermitian(const Matrix &h, double t) {
    if (!is_hermitian(h, tol::kConstruction)) {
        throw NonHermitianInput("expm_hermitian: generator is not Hermitian within 1e-10");
    }
    Matrix hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
    Vector phases = (es.eigenvalues().cast<Complex>() * (-kI * t)).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double trace_distance(const Matrix &a, const Matrix &b) {
    Matrix d = a - b;
    Matrix hd = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hd, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity_to_pure(const Vector &psi, const Matrix &rho) {
    return (psi.adjoint() * rho * psi)(0).real();
}

QuantumState::QuantumState(Matrix rho, std::vector<int> dims, Kind kind)
    : rho_(std::move(rho)), dims_(std::move(dims)), kind_(kind) {
    if (rho_.rows() != rho_.cols()) {
        throw DimensionMismatch("QuantumState: density matrix must be square");
    }
    int product = std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
    if (dims_.empty() || product != rho_.rows()) {
        throw DimensionMismatch("QuantumState: subsystem dimensions do not multiply to the matrix size");
    }
    if (!is_hermitian(rho_, tol::kConstruction)) {
        throw PhysicsError("QuantumState: density matrix is not Hermitian within 1e-10");
    }
    double tr = trace();
    if (kind_ == Kind::kNormalized && std::abs(tr - 1.0) > tol::kConstruction) {
        throw UnnormalizedState("QuantumState: trace " + std::to_string(tr) + " differs from 1");
    }
    if (kind_ == Kind::kBranch && !(tr > 0.0 && std::isfinite(tr))) {
        throw UnnormalizedState("QuantumState: branch weight must be positive");
    }
    if (!is_psd(rho_, tol::kPsd)) {
        throw PhysicsError("QuantumState: density matrix has an eigenvalue below -1e-9");
    }
}

QuantumState QuantumState::pure(const Vector &psi, std::vector<int> dims) {
    double n = psi.norm();
    if (std::abs(n - 1.0) > tol::kConstruction) {
        throw UnnormalizedState("QuantumState::pure: state vector is not normalized");
    }
    return QuantumState(projector(psi), std::move(dims));
}

double QuantumState::trace() const {
    return rho_.trace().real();
}

QuantumState QuantumState::normalized() const {
    return QuantumState(rho_ / trace(), dims_, Kind::kNormalized);
}

Matrix partial_trace(const Matrix &rho, std::span<const int> dims, std::span<const int> keep) {
    const int n = static_cast<int>(dims.size());
    if (keep.empty()) {
        throw BadSubsystemIndex("partial_trace: keep set is empty");
    }
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n || kept[k]) {
            throw BadSubsystemIndex("partial_trace: bad subsystem index " + std::to_string(k));
        }
        kept[k] = true;
    }
    int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
    if (rho.rows() != total || rho.cols() != total) {
        throw DimensionMismatch("partial_trace: matrix size does not match subsystem dimensions");
    }
    std::vector<int> stride(n, 1);
    for (int k = n - 2; k >= 0; --k) {
        stride[k] = stride[k + 1] * dims[k + 1];
    }
    std::vector<int> keep_sorted(keep.begin(), keep.end());
    std::sort(keep_sorted.begin(), keep_sorted.end());
    std::vector<int> traced;
    for (int k = 0; k < n; ++k) {
        if (!kept[k]) {
            traced.push_back(k);
        }
    }
    // Offset of every kept-multi-index and traced-multi-index in the full basis.
    auto offsets = [&](const std::vector<int> &subs) {
        std::vector<int> out{0};
        for (int k : subs) {
            std::vector<int> next;
            next.reserve(out.size() * dims[k]);
            for (int base : out) {
                for (int v = 0; v < dims[k]; ++v) {
                    next.push_back(base + v * stride[k]);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    std::vector<int> kept_off = offsets(keep_sorted);
    std::vector<int> traced_off = offsets(traced);
    const int dk = static_cast<int>(kept_off.size());
    Matrix out = Matrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i) {
        for (int j = 0; j < dk; ++j) {
            Complex acc = 0.0;
            for (int t : traced_off) {
                acc += rho(kept_off[i] + t, kept_off[j] + t);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

QuantumState partial_trace(const QuantumState &s, std::span<const int> keep) {
    Matrix reduced = partial_trace(s.rho(), s.dims(), keep);
    std::vector<int> keep_sorted(keep.begin(), keep.end());
    std::sort(keep_sorted.begin(), keep_sorted.end());
    std::vector<int> dims;
    for (int k : keep_sorted) {
        dims.push_back(s.dims()[k]);
    }
    return QuantumState(std::move(reduced), std::move(dims), s.kind());
}

Matrix sld_solve(const Matrix &rho, const Matrix &drho, double floor) {
    Matrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Matrix &v = es.eigenvectors();
    const auto &lam = es.eigenvalues();
    Matrix d = v.adjoint() * drho * v;
    Matrix l = Matrix::Zero(d.rows(), d.cols());
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index j = 0; j < d.cols(); ++j) {
            double s = lam(i) + lam(j);
            if (s >= floor) {
                l(i, j) = 2.0 * d(i, j) / s;
            }
        }
    }
    Matrix out = v * l * v.adjoint();
    return 0.5 * (out + out.adjoint());
}

}  // namespace iqec
