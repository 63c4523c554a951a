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

#include <algorithm>
#include <chrono>
#include <random>

#include "iqec/channels.h"
#include "iqec/errors.h"
#include "iqec/gatefinder.h"

namespace iqec {
namespace {

std::vector<PauliSum> exprs(const std::string &list, int n = 0) {
    return parse_pauli_exprs(split_expr_list(list), n);
}

std::vector<std::string> words(const std::vector<PauliString> &gates) {
    std::vector<std::string> out;
    for (const auto &g : gates) {
        out.push_back(g.word());
    }
    return out;
}

void expect_witnesses_reproduce(const std::vector<PauliSum> &noise, const GenSetReport &r) {
    ASSERT_EQ(r.witness.size(), noise.size());
    for (size_t i = 0; i < noise.size(); ++i) {
        const PauliSum back = evaluate_witness(r, r.witness[i]);
        EXPECT_LT(max_abs(back.matrix() - noise[i].matrix()), 1e-10) << noise[i].str();
    }
}

TEST(Gatefinder, SingleQubitDephasingUsesX) {
    const auto r = find_gates_for_noise(exprs("Z", 1), parse_pauli_expr("Z", 1), GateMode::kIqec);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(words(r.gates), std::vector<std::string>{"X"});
    EXPECT_EQ(r.ancillas(), 1);
}

TEST(Gatefinder, ThreePaulisNeedTwoGenerators) {
    const auto noise = exprs("X,Y,Z", 1);
    const GenSetReport g = group_generating_set(noise, Locality::kGlobal);
    ASSERT_EQ(g.total(), 2);
    EXPECT_EQ(g.generators[0].str(), PauliSum::from(PauliString::from_str("X")).str());
    EXPECT_EQ(g.generators[1].str(), PauliSum::from(PauliString::from_str("Y")).str());
    expect_witnesses_reproduce(noise, g);
    // Minimality: one word w only generates {I, w}, which holds at most one of X, Y, Z.
    for (const auto &w : pauli_words(1)) {
        int generated = 0;
        for (const auto &l : {"X", "Y", "Z"}) {
            generated += PauliString::from_str(w).same_word(PauliString::from_str(l));
        }
        EXPECT_LT(generated, 3);
    }
    const auto r = find_gates_for_noise(noise, parse_pauli_expr("Z", 1), GateMode::kIqec);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(words(r.gates), (std::vector<std::string>{"Y", "X"}));
}

// Rank over GF(2) of the symplectic vectors of Pauli words: the size of a minimal generating set.
int gf2_rank(const std::vector<std::string> &ws) {
    std::vector<unsigned> rows;
    for (const auto &w : ws) {
        unsigned v = 0;
        for (size_t k = 0; k < w.size(); ++k) {
            const bool x = w[k] == 'X' || w[k] == 'Y', z = w[k] == 'Z' || w[k] == 'Y';
            v |= (x ? 1u : 0u) << (2 * k);
            v |= (z ? 1u : 0u) << (2 * k + 1);
        }
        rows.push_back(v);
    }
    int rank = 0;
    for (int bit = 0; bit < 32; ++bit) {
        auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](unsigned r) { return (r >> bit) & 1u; });
        if (pivot == rows.end()) {
            continue;
        }
        std::iter_swap(rows.begin() + rank, pivot);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) != rank && ((rows[i] >> bit) & 1u)) {
                rows[i] ^= rows[rank];
            }
        }
        ++rank;
    }
    return rank;
}

TEST(Gatefinder, GroupSetSizeEqualsSymplecticRank) {
    std::mt19937 rng(4);
    const auto all = pauli_words(2);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> count(1, 5), pick(1, 15);
        std::vector<std::string> ws;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            ws.push_back(all[pick(rng)]);
        }
        std::vector<PauliSum> noise;
        for (const auto &w : ws) {
            noise.push_back(PauliSum::from(PauliString::from_str(w)));
        }
        const GenSetReport g = group_generating_set(noise, Locality::kGlobal);
        EXPECT_EQ(g.total(), gf2_rank(ws));
        expect_witnesses_reproduce(noise, g);
    }
}

TEST(Gatefinder, CorrelatedThetaNoiseNeedsSiteResolvedControl) {
    const auto start = std::chrono::steady_clock::now();
    const auto noise = exprs("theta(0.7)@1,theta(0.7)@2,theta(0.7)@1*theta(0.7)@2");
    const PauliSum h = parse_pauli_expr("Z1+Z2", 2);
    const auto iqec = find_gates_for_noise(noise, h, GateMode::kIqec);
    EXPECT_FALSE(iqec.found);
    EXPECT_FALSE(iqec.certificate.empty());
    GenSetReport used;
    const auto sniqec = find_gates_for_noise(noise, h, GateMode::kSniqec, &used);
    ASSERT_TRUE(sniqec.found);
    EXPECT_EQ(words(sniqec.gates), (std::vector<std::string>{"YI", "IY"}));
    EXPECT_EQ(used.kind, GenKind::kLocalGroup);
    expect_witnesses_reproduce(noise, used);
    for (const auto &c : sniqec.report) {
        EXPECT_TRUE(c.pass) << c.clause;
    }
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);
}

TEST(Gatefinder, J2PrefersGlobalGates) {
    const auto noise = exprs("X1*X2,Y1", 2);
    const PauliSum h = parse_pauli_expr("Z1+Z2", 2);
    const auto iqec = find_gates_for_noise(noise, h, GateMode::kIqec);
    ASSERT_TRUE(iqec.found);
    EXPECT_EQ(iqec.ancillas(), 2);
    const auto sniqec = find_gates_for_noise(noise, h, GateMode::kSniqec);
    ASSERT_TRUE(sniqec.found);
    EXPECT_GT(sniqec.ancillas(), iqec.ancillas());
    // Each returned gate satisfies the first theorem's clauses on its own.
    const TheoremReport t = check_theorem(noise, h, iqec.gates, Theorem::kT1);
    EXPECT_TRUE(t.pass);
}

TEST(Gatefinder, AlgebraSetCoversCollectiveNoise) {
    const auto noise = exprs("Z1+Z2", 2);
    const GenSetReport a = algebra_generating_set(noise, 2);
    EXPECT_EQ(a.kind, GenKind::kAlgebra);
    expect_witnesses_reproduce(noise, a);
    const GenSetReport tp = trace_preserving_generating_set(2);
    EXPECT_EQ(tp.total(), 4);
}

TEST(Gatefinder, CheckTheoremReportsFailingClause) {
    const auto noise = exprs("Z", 1);
    const PauliSum h = parse_pauli_expr("Z", 1);
    const auto bad = check_theorem(noise, h, {PauliString::from_str("Z")}, Theorem::kT1);
    EXPECT_FALSE(bad.pass);
    bool some_fail = false;
    for (const auto &c : bad.clauses) {
        some_fail |= !c.pass;
    }
    EXPECT_TRUE(some_fail);
    EXPECT_TRUE(check_theorem(noise, h, {PauliString::from_str("X")}, Theorem::kT3).pass);
    EXPECT_FALSE(check_theorem(exprs("X", 1), h, {PauliString::from_str("Z")}, Theorem::kT3).pass);
}

TEST(Gatefinder, HnlsCondition) {
    EXPECT_FALSE(hnls_satisfied(parse_pauli_expr("Z1+Z2", 2), exprs("Z1+Z2", 2)));
    EXPECT_TRUE(hnls_satisfied(parse_pauli_expr("Z", 1), exprs("X", 1)));
    EXPECT_FALSE(hnls_satisfied(parse_pauli_expr("Z", 1), exprs("Z", 1)));
}

TEST(Gatefinder, SplitSiteTermsRejectsInteractions) {
    EXPECT_EQ(split_site_terms(parse_pauli_expr("Z1+Z2", 2)).size(), 2u);
    EXPECT_THROW(split_site_terms(parse_pauli_expr("Z1*Z2", 2)), ConfigError);
}

TEST(Gatefinder, ExhaustiveSearchOnTwoQubitsIsFast) {
    const auto start = std::chrono::steady_clock::now();
    const PauliSum h = parse_pauli_expr("Z1+Z2", 2);
    for (const auto &w : pauli_words(2)) {
        if (w == "II") {
            continue;
        }
        std::vector<PauliSum> noise = {PauliSum::from(PauliString::from_str(w))};
        const auto r = find_gates_for_noise(noise, h, GateMode::kIqec);
        if (r.found) {
            EXPECT_TRUE(check_theorem(noise, h, r.gates, Theorem::kT1).pass) << w;
        }
    }
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);
}

}  // namespace
}  // namespace iqec
