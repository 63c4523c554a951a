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

// Generating sets of noise operators and the search for auxiliary gates.
//
// A gate set D = {D_i} is admissible for generators {G_i} and Hamiltonian H when
//   D_i and D_j commute or anticommute (i != j),
//   D_i and H commute or anticommute,
//   D_i anticommutes with G_i and commutes with every G_j (j != i).
// In the site-local mode every generator and gate lives on one site and the
// Hamiltonian clause is checked against that site's term H^(k) only.
//
// Gates are Pauli words; generators may be weighted sums, for which a clause
// holds only if it holds for every term. All checks are exact symbol
// manipulations, so a no_solution result is a certificate.

#ifndef IQEC_GATEFINDER_H
#define IQEC_GATEFINDER_H

#include <string>
#include <vector>

#include "iqec/pauli.h"

namespace iqec {

enum class Locality { kGlobal, kPerSite };
enum class GateMode { kIqec, kSniqec };
enum class GenKind { kGroup, kLocalGroup, kAlgebra };

const char *gen_kind_name(GenKind k);
const char *gate_mode_name(GateMode m);

/// One product of generators, in the listed order, times a scalar.
struct Monomial {
    Complex scalar{1.0, 0.0};
    std::vector<int> generators;
};

struct GenSetReport {
    GenKind kind = GenKind::kGroup;
    std::vector<PauliSum> generators;
    /// Site of each generator for local kinds, -1 for global generators.
    std::vector<int> generator_site;
    /// m_b^(k) (or m_c^(k)) per site for local kinds; a single entry m_a for the global kind.
    std::vector<int> per_site_count;
    /// For every input element, a linear combination of generator products reproducing it exactly.
    /// Group kinds always use a single monomial.
    std::vector<std::vector<Monomial>> witness;

    int total() const {
        return static_cast<int>(generators.size());
    }
};

/// Evaluates a witness back into a sum.
PauliSum evaluate_witness(const GenSetReport &r, const std::vector<Monomial> &w);

/// Minimum-cardinality set whose products (up to scalars) reproduce every noise element. Candidates
/// are the noise elements themselves (global) or their single-site tensor factors (per_site). The
/// search is exhaustive when the candidate pool has at most 6 members and greedy beyond.
GenSetReport group_generating_set(const std::vector<PauliSum> &noise, Locality locality);

/// Every minimum-cardinality global generating set (exhaustive pools only).
std::vector<GenSetReport> all_minimal_group_generating_sets(const std::vector<PauliSum> &noise);

/// Local generators closed under products and linear combinations covering every Pauli term of the noise.
GenSetReport algebra_generating_set(const std::vector<PauliSum> &noise, int num_sites);

/// {X^(k), Y^(k)} on every site: generates the whole operator algebra, hence any trace-preserving noise.
GenSetReport trace_preserving_generating_set(int num_sites);

struct ClauseResult {
    std::string clause;
    bool pass = false;
    std::string detail;
};

struct GateSearchResult {
    bool found = false;
    GateMode mode = GateMode::kIqec;
    std::vector<PauliString> gates;
    /// Site of each gate (sniqec) or -1.
    std::vector<int> gate_site;
    std::vector<ClauseResult> report;
    /// Human readable reason when no gate set exists.
    std::string certificate;
    /// Number of candidate words examined.
    long candidates_examined = 0;

    int ancillas() const {
        return static_cast<int>(gates.size());
    }
};

/// Per-site terms H^(k) of a locally generated Hamiltonian. Throws ConfigError when some term acts on
/// more than one site.
std::vector<PauliSum> split_site_terms(const PauliSum &h);

/// Exhaustive search: all 4^N words (iqec) or single-site words (sniqec), ascending weight then
/// lexicographic order (I < X < Y < Z); the first admissible word per generator wins.
GateSearchResult find_gates(const GenSetReport &gens, const PauliSum &h, GateMode mode);

/// Tries every minimal generating set (iqec) or the local set (sniqec); no_solution only if all fail.
GateSearchResult find_gates_for_noise(const std::vector<PauliSum> &noise, const PauliSum &h, GateMode mode,
                                      GenSetReport *used = nullptr);

enum class Theorem { kT1, kT2, kT3 };

struct TheoremReport {
    Theorem which = Theorem::kT1;
    bool pass = false;
    std::vector<ClauseResult> clauses;
};

/// Evaluates every clause of the chosen admissibility theorem for a user-supplied gate set. The
/// gate-to-generator assignment is chosen by trying permutations. t3 additionally requires
/// [H, L_i] = 0 and generators that are unitary with square +-I.
TheoremReport check_theorem(const std::vector<PauliSum> &noise, const PauliSum &h, const std::vector<PauliString> &gates,
                            Theorem which);

/// True when H lies outside span{I, L_i, L_i^dag, L_i^dag L_j}.
bool hnls_satisfied(const PauliSum &h, const std::vector<PauliSum> &noise);

}  // namespace iqec

#endif
