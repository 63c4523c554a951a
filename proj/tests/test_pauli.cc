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

#include "iqec/channels.h"
#include "iqec/errors.h"
#include "iqec/ico.h"
#include "iqec/pauli.h"

namespace iqec {
namespace {

TEST(Pauli, RelationAgreesWithMatrixClassificationOnAllThreeQubitPairs) {
    const auto words = pauli_words(3);
    int checked = 0;
    for (const auto &a : words) {
        const PauliString p = PauliString::from_str(a);
        const Matrix pm = p.matrix();
        for (const auto &b : words) {
            const PauliString q = PauliString::from_str(b);
            const auto flag = classify(pm, q.matrix());
            const Relation r = pauli_relation(p, q);
            ASSERT_EQ(flag == CompatibilityFlag::kCommutes, r == Relation::kCommute) << a << " " << b;
            ASSERT_NE(flag, CompatibilityFlag::kIncompatible);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 4096);
}

TEST(Pauli, ProductPhaseMatchesMatrixProduct) {
    const auto words = pauli_words(2);
    for (const auto &a : words) {
        for (const auto &b : words) {
            const PauliString p = PauliString::from_str(a), q = PauliString::from_str(b);
            const PauliString pq = p * q;
            ASSERT_LT(max_abs(pq.matrix() - p.matrix() * q.matrix()), 1e-14) << a << "*" << b;
        }
    }
    EXPECT_EQ((PauliString::from_str("X") * PauliString::from_str("Y")).str(), "+iZ");
}

TEST(Pauli, ParsesWordsSignsAndSites) {
    EXPECT_EQ(PauliString::from_str("-YY").str(), "-YY");
    EXPECT_EQ(PauliString::from_str("XIZ").weight(), 2);
    EXPECT_EQ(parse_pauli_expr("Z1+Z2", 2).str(), parse_pauli_expr("ZI + IZ", 2).str());
    const PauliSum w = parse_pauli_expr("0.5*XZ + 0.5*ZX", 2);
    EXPECT_EQ(w.terms().size(), 2u);
    EXPECT_TRUE(w.is_hermitian());
    EXPECT_THROW(parse_pauli_expr("Q", 1), InputError);
    EXPECT_THROW(parse_pauli_expr("X+", 1), InputError);
}

TEST(Pauli, ThetaShorthandIsCosXPlusSinZ) {
    const PauliSum s = parse_pauli_expr("theta(0.3)@1", 1);
    EXPECT_LT(max_abs(s.matrix() - sigma_theta(0.3)), 1e-14);
    auto sums = parse_pauli_exprs(split_expr_list("theta(0.7)@1,theta(0.7)@2,theta(0.7)@1*theta(0.7)@2"));
    ASSERT_EQ(sums.size(), 3u);
    EXPECT_EQ(sums[2].size(), 2);
    EXPECT_LT(max_abs(sums[2].matrix() - sums[0].matrix() * sums[1].matrix()), 1e-14);
}

TEST(Pauli, SumRelationIsDefiniteOnlyWhenEveryTermAgrees) {
    const PauliSum h = parse_pauli_expr("Z1+Z2", 2);
    EXPECT_EQ(relation(PauliString::from_str("XX"), h), std::optional<Relation>(Relation::kAnticommute));
    EXPECT_EQ(relation(PauliString::from_str("ZI"), h), std::optional<Relation>(Relation::kCommute));
    EXPECT_FALSE(relation(PauliString::from_str("XI"), h).has_value());
}

TEST(Pauli, RatioUpToScalar) {
    const PauliSum a = parse_pauli_expr("X + Z", 1);
    const auto r = a.ratio_to(a * Complex(0.0, 2.0));
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(std::abs(*r - Complex(0.0, 2.0)), 0.0, 1e-14);
    EXPECT_FALSE(a.ratio_to(parse_pauli_expr("X - Z", 1)).has_value());
}

}  // namespace
}  // namespace iqec
