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

#include "iqec/channels.h"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "iqec/errors.h"

namespace iqec {

std::vector<int> ProbeSpec::dims() const {
    if (kind == Kind::kFock) {
        return {n_max + 1};
    }
    return std::vector<int>(sites, 2);
}

int ProbeSpec::dim() const {
    if (kind == Kind::kFock) {
        return n_max + 1;
    }
    return 1 << sites;
}

int NoiseModel::dim() const {
    return jump_ops.empty() ? 0 : static_cast<int>(jump_ops.front().rows());
}

double NoiseModel::integrated_rate(size_t i, double t0, double dt) const {
    if (rate_profiles.empty()) {
        return rates.at(i) * dt;
    }
    // Composite Simpson, 32 panels; profiles are smooth by assumption.
    const auto &k = rate_profiles.at(i);
    const int panels = 32;
    double h = dt / panels;
    double acc = k(t0) + k(t0 + dt);
    for (int p = 1; p < panels; ++p) {
        acc += (p % 2 ? 4.0 : 2.0) * k(t0 + p * h);
    }
    return acc * h / 3.0;
}

void NoiseModel::validate() const {
    if (jump_ops.empty() || jump_ops.size() != rates.size()) {
        throw ConfigError("NoiseModel: jump_ops and rates must have equal nonzero length");
    }
    if (!rate_profiles.empty() && rate_profiles.size() != jump_ops.size()) {
        throw ConfigError("NoiseModel: rate_profiles must match jump_ops");
    }
    const auto d = jump_ops.front().rows();
    for (size_t i = 0; i < jump_ops.size(); ++i) {
        if (jump_ops[i].rows() != d || jump_ops[i].cols() != d) {
            throw DimensionMismatch("NoiseModel: jump operators have mixed dimensions");
        }
        if (!(rates[i] >= 0.0)) {
            throw ConfigError("NoiseModel: rates must be nonnegative");
        }
    }
}

NoiseModel NoiseModel::scaled(double factor) const {
    NoiseModel out = *this;
    for (auto &r : out.rates) {
        r *= factor;
    }
    for (auto &p : out.rate_profiles) {
        p = [f = p, factor](double t) { return factor * f(t); };
    }
    return out;
}

NoiseModel combine(const std::vector<NoiseModel> &parts) {
    NoiseModel out;
    if (parts.size() == 1) {
        return parts.front();
    }
    bool profiled = std::any_of(parts.begin(), parts.end(), [](const auto &p) { return !p.rate_profiles.empty(); });
    for (const auto &p : parts) {
        out.jump_ops.insert(out.jump_ops.end(), p.jump_ops.begin(), p.jump_ops.end());
        out.rates.insert(out.rates.end(), p.rates.begin(), p.rates.end());
        if (profiled) {
            for (size_t i = 0; i < p.size(); ++i) {
                if (p.rate_profiles.empty()) {
                    out.rate_profiles.push_back([r = p.rates[i]](double) { return r; });
                } else {
                    out.rate_profiles.push_back(p.rate_profiles[i]);
                }
            }
        }
    }
    out.label = "custom";
    out.validate();
    return out;
}

KrausChannel make_kraus_channel(std::vector<Matrix> kraus_ops) {
    if (kraus_ops.empty()) {
        throw ConfigError("KrausChannel: needs at least one Kraus operator");
    }
    const auto d = kraus_ops.front().rows();
    Matrix acc = Matrix::Zero(d, d);
    for (const auto &k : kraus_ops) {
        if (k.rows() != d || k.cols() != d) {
            throw DimensionMismatch("KrausChannel: Kraus operators have mixed dimensions");
        }
        acc += k.adjoint() * k;
    }
    KrausChannel c;
    c.completeness_deficit = operator_norm(Matrix::Identity(d, d) - acc);
    c.kraus_ops = std::move(kraus_ops);
    return c;
}

std::vector<Matrix> short_time_noise_factors(const NoiseModel &noise, double dt, const ShortTimeOptions &opt) {
    noise.validate();
    if (!(dt > 0.0)) {
        throw ConfigError("short_time_channel: dt must be positive");
    }
    const int d = noise.dim();
    std::vector<double> q(noise.size());
    for (size_t i = 0; i < noise.size(); ++i) {
        q[i] = noise.integrated_rate(i, opt.t0, dt);
    }
    double q_max = *std::max_element(q.begin(), q.end());
    if (q_max > opt.max_rate_step && !opt.allow_long_step) {
        throw ShortTimeViolation("short_time_channel: kappa*dt = " + std::to_string(q_max) + " exceeds the guard " +
                                 std::to_string(opt.max_rate_step));
    }
    Matrix n0 = Matrix::Identity(d, d);
    std::vector<Matrix> out;
    out.emplace_back();
    for (size_t i = 0; i < noise.size(); ++i) {
        if (q[i] == 0.0) {
            continue;
        }
        const Matrix &l = noise.jump_ops[i];
        n0 -= 0.5 * q[i] * (l.adjoint() * l);
        out.push_back(std::sqrt(q[i]) * l);
    }
    out.front() = std::move(n0);
    return out;
}

KrausChannel short_time_channel(const Matrix &h, const NoiseModel &noise, double dt, const ShortTimeOptions &opt) {
    if (h.rows() != noise.dim()) {
        throw DimensionMismatch("short_time_channel: Hamiltonian and noise dimensions differ");
    }
    Matrix u = expm_hermitian(h, dt);
    auto factors = short_time_noise_factors(noise, dt, opt);
    for (auto &f : factors) {
        f = f * u;
    }
    return make_kraus_channel(std::move(factors));
}

Matrix apply_channel(const KrausChannel &c, const Matrix &rho) {
    if (rho.rows() != c.dim() || rho.cols() != c.dim()) {
        throw DimensionMismatch("apply_channel: state and channel dimensions differ");
    }
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto &k : c.kraus_ops) {
        out.noalias() += k * rho * k.adjoint();
    }
    return out;
}

QuantumState apply_channel(const KrausChannel &c, const QuantumState &s) {
    return QuantumState(apply_channel(c, s.rho()), s.dims(), QuantumState::Kind::kBranch);
}

Matrix Superoperator::apply(const Matrix &rho) const {
    if (rho.rows() != dim || rho.cols() != dim) {
        throw DimensionMismatch("Superoperator::apply: dimension mismatch");
    }
    Vector v = Eigen::Map<const Vector>(rho.data(), rho.size());
    Vector w = matrix * v;
    return Eigen::Map<const Matrix>(w.data(), dim, dim);
}

Matrix liouvillian(const Matrix &h, const NoiseModel &noise) {
    noise.validate();
    const int d = static_cast<int>(h.rows());
    if (noise.dim() != d) {
        throw DimensionMismatch("liouvillian: Hamiltonian and noise dimensions differ");
    }
    // vec(A X B) = (B^T kron A) vec(X) for column stacking.
    Matrix id = identity(d);
    Matrix gen = -kI * (tensor(id, h) - tensor(h.transpose(), id));
    for (size_t i = 0; i < noise.size(); ++i) {
        const Matrix &l = noise.jump_ops[i];
        Matrix ldl = l.adjoint() * l;
        gen += noise.rates[i] *
               (tensor(l.conjugate(), l) - 0.5 * tensor(id, ldl) - 0.5 * tensor(ldl.transpose(), id));
    }
    return gen;
}

Superoperator lindblad_evolve(const Matrix &h, const NoiseModel &noise, double t) {
    if (h.rows() > 64) {
        throw DimensionTooLarge("lindblad_evolve: probe dimension above 64");
    }
    Matrix gen = liouvillian(h, noise);
    Superoperator s;
    s.dim = static_cast<int>(h.rows());
    s.matrix = (gen * Complex(t, 0.0)).exp();
    return s;
}

Matrix lindblad_apply(const Matrix &h, const NoiseModel &noise, double t, const Matrix &rho) {
    noise.validate();
    const int d = static_cast<int>(h.rows());
    if (noise.dim() != d || rho.rows() != d) {
        throw DimensionMismatch("lindblad_apply: dimensions differ");
    }
    // L(rho) = -i (K rho - rho K^dag) + sum_i k_i L_i rho L_i^dag with K = H - (i/2) sum_i k_i L_i^dag L_i.
    Matrix k = h;
    double bound = 0.0;
    std::vector<Matrix> jumps, jumps_dag;
    for (size_t i = 0; i < noise.size(); ++i) {
        if (noise.rates[i] == 0.0) {
            continue;
        }
        const Matrix &l = noise.jump_ops[i];
        k -= Complex(0.0, 0.5 * noise.rates[i]) * (l.adjoint() * l);
        jumps.push_back(std::sqrt(noise.rates[i]) * l);
        jumps_dag.push_back(jumps.back().adjoint());
        bound += std::pow(jumps.back().cwiseAbs().colwise().sum().maxCoeff(), 2);
    }
    const Matrix k_dag = k.adjoint();
    bound += 2.0 * k.cwiseAbs().colwise().sum().maxCoeff();
    auto gen = [&](const Matrix &x) {
        Matrix y = Complex(0.0, -1.0) * (k * x - x * k_dag);
        for (size_t i = 0; i < jumps.size(); ++i) {
            y += jumps[i] * x * jumps_dag[i];
        }
        return y;
    };
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) * bound / 2.0)));
    const double tau = t / steps;
    Matrix out = rho;
    for (int s = 0; s < steps; ++s) {
        Matrix term = out;
        const double scale = out.norm();
        for (int n = 1; n < 200; ++n) {
            term = gen(term) * (tau / n);
            out += term;
            if (term.norm() < 1e-15 * scale) {
                break;
            }
        }
    }
    return out;
}

Matrix sigma_theta(double theta) {
    return std::cos(theta) * pauli_matrix('X') + std::sin(theta) * pauli_matrix('Z');
}

NoiseModel make_noise(std::string_view label, const std::vector<int> &sites, double rate, const ProbeSpec &probe,
                      double theta) {
    if (!(rate >= 0.0)) {
        throw ConfigError("make_noise: rate must be nonnegative");
    }
    NoiseModel m;
    m.label = std::string(label);
    if (label == "photon_loss") {
        if (probe.kind != ProbeSpec::Kind::kFock) {
            throw BadSite("make_noise: photon_loss needs a bosonic probe");
        }
        const int d = probe.dim();
        Matrix a = Matrix::Zero(d, d);
        for (int n = 1; n < d; ++n) {
            a(n - 1, n) = std::sqrt(static_cast<double>(n));
        }
        m.jump_ops.push_back(a);
        m.rates.push_back(rate);
        return m;
    }
    Matrix local;
    if (label == "pauli_x") {
        local = pauli_matrix('X');
    } else if (label == "pauli_y") {
        local = pauli_matrix('Y');
    } else if (label == "pauli_z" || label == "collective_z") {
        local = pauli_matrix('Z');
    } else if (label == "pauli_theta") {
        local = sigma_theta(theta);
    } else if (label == "amplitude_damping") {
        local = Matrix::Zero(2, 2);
        local(0, 1) = 1.0;
    } else {
        throw UnknownLabel("make_noise: unknown noise label '" + std::string(label) + "'");
    }
    if (probe.kind != ProbeSpec::Kind::kQubits) {
        throw BadSite("make_noise: qubit noise on a bosonic probe");
    }
    std::vector<int> targets = sites;
    if (targets.empty()) {
        for (int k = 0; k < probe.sites; ++k) {
            targets.push_back(k);
        }
    }
    const auto dims = probe.dims();
    for (int s : targets) {
        if (s < 0 || s >= probe.sites) {
            throw BadSite("make_noise: site " + std::to_string(s) + " outside the probe");
        }
    }
    if (label == "collective_z") {
        Matrix sum = Matrix::Zero(probe.dim(), probe.dim());
        for (int s : targets) {
            sum += embed(local, s, dims);
        }
        m.jump_ops.push_back(sum);
        m.rates.push_back(rate);
        return m;
    }
    for (int s : targets) {
        m.jump_ops.push_back(embed(local, s, dims));
        m.rates.push_back(rate);
    }
    return m;
}

Matrix choi_matrix(const KrausChannel &c) {
    const int d = c.dim();
    Matrix out = Matrix::Zero(d * d, d * d);
    for (const auto &k : c.kraus_ops) {
        Eigen::Map<const Vector> v(k.data(), k.size());
        out.noalias() += v * v.adjoint();
    }
    return out;
}

std::vector<std::string> pauli_words(int qubits) {
    std::vector<std::string> out{""};
    for (int q = 0; q < qubits; ++q) {
        std::vector<std::string> next;
        for (const auto &w : out) {
            for (char c : {'I', 'X', 'Y', 'Z'}) {
                next.push_back(w + c);
            }
        }
        out = std::move(next);
    }
    return out;
}

Matrix pauli_word_matrix(std::string_view word) {
    Matrix out = Matrix::Identity(1, 1);
    for (char c : word) {
        out = tensor(out, pauli_matrix(c));
    }
    return out;
}

PauliExpansion pauli_expansion(const KrausChannel &c) {
    const int d = c.dim();
    int qubits = 0;
    while ((1 << qubits) < d) {
        ++qubits;
    }
    if ((1 << qubits) != d) {
        throw DimensionMismatch("pauli_expansion: channel dimension is not a power of two");
    }
    PauliExpansion e;
    e.labels = pauli_words(qubits);
    const int n = static_cast<int>(e.labels.size());
    Matrix vecs(d * d, n);
    for (int i = 0; i < n; ++i) {
        e.basis.push_back(pauli_word_matrix(e.labels[i]));
        vecs.col(i) = Eigen::Map<const Vector>(e.basis.back().data(), d * d);
    }
    Matrix choi = choi_matrix(c);
    e.coefficients = vecs.adjoint() * choi * vecs / static_cast<double>(d * d);
    return e;
}

Matrix choi_from_expansion(const PauliExpansion &e) {
    const auto d = e.basis.front().rows();
    const auto n = static_cast<Eigen::Index>(e.basis.size());
    Matrix vecs(d * d, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        vecs.col(i) = Eigen::Map<const Vector>(e.basis[i].data(), d * d);
    }
    return vecs * e.coefficients * vecs.adjoint();
}

}  // namespace iqec
