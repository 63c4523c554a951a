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

#include <set>

#include "iqec/channels.h"
#include "iqec/errors.h"
#include "iqec/ico.h"
#include "test_util.h"

namespace iqec {
namespace {

const Matrix kX = pauli_matrix('X'), kY = pauli_matrix('Y'), kZ = pauli_matrix('Z');

// |<a, b>| / (|a| |b|): 1 exactly when the operators are proportional.
double alignment(const Matrix &a, const Matrix &b) {
    return std::abs((a.adjoint() * b).trace()) / (a.norm() * b.norm());
}

TEST(Ico, ClassifyFlags) {
    EXPECT_EQ(classify(kX, kZ), CompatibilityFlag::kAnticommutes);
    EXPECT_EQ(classify(kX, kX), CompatibilityFlag::kCommutes);
    EXPECT_EQ(classify(kX, kX + kZ), CompatibilityFlag::kIncompatible);
    EXPECT_THROW(classify(kX, identity(4)), DimensionMismatch);
}

TEST(Ico, IncompatibleGateIsRejected) {
    const ProbeSpec p = ProbeSpec::qubits(1);
    const Matrix g = (kX + kZ) / std::sqrt(2.0);
    EXPECT_THROW(make_superchannel_spec({g}, kZ, make_noise("pauli_z", {0}, 0.1, p)).validate(), IncompatibleGate);
}

TEST(Ico, SingleGateHeraldsAnticommutingJump) {
    const ProbeSpec p = ProbeSpec::qubits(1);
    const double dt = 0.1;
    auto spec = make_superchannel_spec({kX}, kZ, make_noise("pauli_z", {0}, 0.1, p));
    BranchEvolution ev(spec, dt);
    const Matrix u = expm_hermitian(kZ, dt);
    // A jump anticommuting with D lands entirely in the '-' outcome as D L U; a commuting one in '+'.
    EXPECT_LT(max_abs(ev.outcome_operator(1, kZ) - kX * kZ * u), 1e-14);
    EXPECT_LT(max_abs(ev.outcome_operator(0, kZ)), 1e-14);
    EXPECT_LT(max_abs(ev.outcome_operator(0, identity(2)) - kX * u), 1e-14);
    EXPECT_LT(max_abs(ev.outcome_operator(1, identity(2))), 1e-14);

    const HeraldTable t = herald_table(spec, noise_classes(spec.noise, dt), dt);
    ASSERT_EQ(t.classes.size(), 2u);
    EXPECT_EQ(outcome_label(t.class_outcome[0], 1), "+");
    EXPECT_EQ(outcome_label(t.class_outcome[1], 1), "-");
    EXPECT_LT(t.max_overlap, 1e-9);
}

TEST(Ico, TwoGatesSeparateAllSingleQubitPaulis) {
    const ProbeSpec p = ProbeSpec::qubits(1);
    const double dt = 0.05;
    auto spec = make_superchannel_spec({kY, kX}, kZ, make_noise("pauli_z", {0}, 0.1, p));
    BranchEvolution ev(spec, dt);
    const Matrix u = expm_hermitian(kZ, dt);
    std::set<int> outcomes;
    for (char l : std::string("IXYZ")) {
        const Matrix e = pauli_matrix(l);
        int hits = 0;
        for (int o = 0; o < 4; ++o) {
            const Matrix m = ev.outcome_operator(o, e);
            if (m.norm() < 1e-12) {
                continue;
            }
            ++hits;
            outcomes.insert(o);
            EXPECT_NEAR(alignment(m, ev.gate_product() * e * u), 1.0, 1e-12) << l;
            EXPECT_NEAR(m.norm(), (e * u).norm(), 1e-12);
        }
        EXPECT_EQ(hits, 1) << l;
    }
    EXPECT_EQ(outcomes.size(), 4u);

    const auto noise = combine({make_noise("pauli_x", {0}, 0.1, p), make_noise("pauli_y", {0}, 0.1, p),
                                make_noise("pauli_z", {0}, 0.1, p)});
    spec.noise = noise;
    const HeraldTable t = herald_table(spec, noise_classes(noise, dt), dt);
    std::set<int> seen;
    for (size_t c = 0; c < t.classes.size(); ++c) {
        ASSERT_NE(t.class_outcome[c], HeraldTable::kUnresolved) << t.classes[c].label;
        seen.insert(t.class_outcome[c]);
    }
    EXPECT_EQ(seen.size(), 4u);
    EXPECT_LT(t.max_overlap, 1e-9);
}

TEST(Ico, OutcomeKrausSetIsCompleteToSecondOrder) {
    const ProbeSpec p = ProbeSpec::qubits(1);
    const NoiseModel noise =
        combine({make_noise("pauli_x", {0}, 0.1, p), make_noise("amplitude_damping", {0}, 0.1, p)});
    auto spec = make_superchannel_spec({kY, kX}, kZ, noise);
    std::vector<double> deficits;
    for (double dt : {0.1, 0.05}) {
        BranchEvolution ev(spec, dt);
        Matrix completeness = Matrix::Zero(2, 2);
        for (const auto &n : short_time_noise_factors(noise, dt)) {
            for (int o = 0; o < 4; ++o) {
                const Matrix m = ev.outcome_operator(o, n);
                completeness += m.adjoint() * m;
            }
        }
        deficits.push_back(operator_norm(identity(2) - completeness));
        EXPECT_LE(deficits.back(), build_superchannel(spec, dt).completeness_deficit + 1e-12);
    }
    EXPECT_NEAR(std::log2(deficits[0] / deficits[1]), 2.0, 0.05);
}

TEST(Ico, PauliClassesForUnknownNoise) {
    const ProbeSpec p = ProbeSpec::qubits(1);
    auto spec = make_superchannel_spec({kY, kX}, kZ, make_noise("pauli_z", {0}, 0.1, p));
    const auto classes = pauli_classes(1);
    ASSERT_EQ(classes.size(), 4u);
    EXPECT_EQ(classes[0].label, "no_jump");
    const HeraldTable t = herald_table(spec, classes, 0.1);
    for (int o = 0; o < 4; ++o) {
        EXPECT_NE(t.decode(o), HeraldTable::kUnresolved);
    }
}

TEST(Ico, SiteResolvedSpecHeraldsEachSite) {
    const ProbeSpec p = ProbeSpec::qubits(2);
    const std::vector<int> dims = {2, 2};
    const Matrix z1 = embed(kZ, 0, dims), z2 = embed(kZ, 1, dims);
    const Matrix y1 = embed(kY, 0, dims), y2 = embed(kY, 1, dims);
    const NoiseModel noise = make_noise("pauli_theta", {}, 0.05, p, 0.7);
    auto spec = make_site_superchannel_spec({y1, y2}, {0, 1}, {z1, z2}, noise);
    const double dt = 0.05;
    const HeraldTable t = herald_table(spec, noise_classes(noise, dt), dt);
    ASSERT_EQ(t.classes.size(), 3u);
    std::set<int> seen;
    for (int o : t.class_outcome) {
        ASSERT_NE(o, HeraldTable::kUnresolved);
        seen.insert(o);
    }
    EXPECT_EQ(seen.size(), 3u);
    EXPECT_LT(t.max_overlap, 1e-9);
}

TEST(Ico, OutcomeLabelsPutTheFirstAuxiliaryFirst) {
    EXPECT_EQ(outcome_label(0, 2), "++");
    EXPECT_EQ(outcome_label(2, 2), "-+");
    EXPECT_EQ(outcome_label(1, 2), "+-");
}

}  // namespace
}  // namespace iqec
