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

#include "iqec/gatefinder.h"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "iqec/errors.h"

namespace iqec {

namespace {

constexpr size_t kExhaustivePool = 6;

bool is_scalar(const PauliSum &s) {
    return s.terms().size() == 1 && s.terms().begin()->first.find_first_not_of('I') == std::string::npos;
}

// Products of every subset of `gens` (ascending order); index = subset bitmask.
std::vector<PauliSum> subset_products(const std::vector<PauliSum> &gens, int num_sites) {
    std::vector<PauliSum> out(size_t{1} << gens.size(), PauliSum(num_sites));
    out[0] = PauliSum::identity(num_sites);
    for (size_t mask = 1; mask < out.size(); ++mask) {
        int low = __builtin_ctzll(mask);
        // Rebuild in ascending generator order: lowest generator first.
        out[mask] = gens[low] * out[mask & (mask - 1)];
    }
    return out;
}

std::vector<int> mask_to_indices(size_t mask) {
    std::vector<int> out;
    for (int k = 0; mask; ++k, mask >>= 1) {
        if (mask & 1) {
            out.push_back(k);
        }
    }
    return out;
}

// Witness for every target in the closure of `gens`, or nullopt if some target is missing.
std::optional<std::vector<std::vector<Monomial>>> closure_witness(const std::vector<PauliSum> &gens,
                                                                  const std::vector<PauliSum> &targets,
                                                                  int num_sites) {
    auto products = subset_products(gens, num_sites);
    std::vector<std::vector<Monomial>> out;
    for (const auto &t : targets) {
        bool hit = false;
        for (size_t mask = 0; mask < products.size(); ++mask) {
            if (auto c = products[mask].ratio_to(t)) {
                out.push_back({Monomial{*c, mask_to_indices(mask)}});
                hit = true;
                break;
            }
        }
        if (!hit) {
            return std::nullopt;
        }
    }
    return out;
}

// Distinct (up to scalar), non-scalar elements of `items`, in order of first appearance.
std::vector<PauliSum> dedupe(const std::vector<PauliSum> &items) {
    std::vector<PauliSum> out;
    for (const auto &s : items) {
        if (s.is_zero() || is_scalar(s)) {
            continue;
        }
        bool seen = std::any_of(out.begin(), out.end(), [&](const PauliSum &o) { return o.ratio_to(s).has_value(); });
        if (!seen) {
            out.push_back(s);
        }
    }
    return out;
}

void for_each_combination(size_t n, size_t k, const std::function<bool(const std::vector<int> &)> &visit) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) {
        return;
    }
    for (;;) {
        if (visit(idx)) {
            return;
        }
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[i] == static_cast<int>(n - k) + i) {
            --i;
        }
        if (i < 0) {
            return;
        }
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct PoolSearch {
    std::vector<std::vector<int>> minimal_subsets;
    std::vector<std::vector<std::vector<Monomial>>> witnesses;
};

// Minimal generating subsets of `pool` for `targets`. `all` collects every subset of the minimal size.
PoolSearch search_pool(const std::vector<PauliSum> &pool, const std::vector<PauliSum> &targets, int num_sites,
                       bool all) {
    PoolSearch res;
    if (pool.size() <= kExhaustivePool) {
        for (size_t k = 0; k <= pool.size(); ++k) {
            for_each_combination(pool.size(), k, [&](const std::vector<int> &idx) {
                std::vector<PauliSum> gens;
                for (int i : idx) {
                    gens.push_back(pool[i]);
                }
                if (auto w = closure_witness(gens, targets, num_sites)) {
                    res.minimal_subsets.push_back(idx);
                    res.witnesses.push_back(std::move(*w));
                    return !all;
                }
                return false;
            });
            if (!res.minimal_subsets.empty()) {
                return res;
            }
        }
        return res;
    }
    // Greedy: keep an element only if the current set does not already generate it.
    std::vector<int> chosen;
    std::vector<PauliSum> gens;
    for (size_t i = 0; i < pool.size(); ++i) {
        if (!closure_witness(gens, {pool[i]}, num_sites)) {
            chosen.push_back(static_cast<int>(i));
            gens.push_back(pool[i]);
        }
    }
    auto w = closure_witness(gens, targets, num_sites);
    if (!w) {
        throw NotGeneratable("group_generating_set: greedy closure failed to reach every noise element");
    }
    res.minimal_subsets.push_back(chosen);
    res.witnesses.push_back(std::move(*w));
    return res;
}

// Splits a sum into single-site tensor factors, one per site (identity where untouched).
std::optional<std::vector<PauliSum>> factorize_local(const PauliSum &s) {
    const int n = s.size();
    if (s.terms().empty()) {
        return std::nullopt;
    }
    auto best = std::max_element(s.terms().begin(), s.terms().end(),
                                 [](const auto &a, const auto &b) { return std::abs(a.second) < std::abs(b.second); });
    const std::string &w0 = best->first;
    const Complex c0 = best->second;
    std::vector<PauliSum> factors;
    PauliSum product = PauliSum::identity(n);
    for (int k = 0; k < n; ++k) {
        PauliSum f(n);
        for (char l : {'I', 'X', 'Y', 'Z'}) {
            std::string w = w0;
            w[k] = l;
            auto it = s.terms().find(w);
            if (it != s.terms().end()) {
                std::string single(n, 'I');
                single[k] = l;
                f.add(single, it->second / c0);
            }
        }
        product = product * f;
        factors.push_back(f);
    }
    auto ratio = product.ratio_to(s);
    if (!ratio) {
        return std::nullopt;
    }
    return factors;
}

std::string clause_text(const std::string &lhs, const std::string &rhs, Relation r) {
    return (r == Relation::kCommute ? "[" : "{") + lhs + ", " + rhs + (r == Relation::kCommute ? "] = 0" : "} = 0");
}

std::string rel_text(std::optional<Relation> r) {
    return r ? relation_name(*r) : "neither";
}

// Clauses for gates assigned one-to-one to generators. `h_terms[i]` is the Hamiltonian the i-th gate
// must be compatible with.
std::vector<ClauseResult> admissibility_clauses(const std::vector<PauliString> &gates,
                                                const std::vector<PauliSum> &gens,
                                                const std::vector<PauliSum> &h_terms) {
    std::vector<ClauseResult> out;
    const size_t m = gates.size();
    for (size_t i = 0; i < m; ++i) {
        std::string di = "D" + std::to_string(i + 1) + "=" + gates[i].str();
        for (size_t j = i + 1; j < m; ++j) {
            auto r = pauli_relation(gates[i], gates[j]);
            out.push_back({"D" + std::to_string(i + 1) + " vs D" + std::to_string(j + 1) + " commute or anticommute",
                           true, relation_name(r)});
        }
        auto rh = relation(gates[i], h_terms[i]);
        out.push_back({di + " vs H commute or anticommute", rh.has_value(),
                       "H=" + h_terms[i].str() + ": " + rel_text(rh)});
        for (size_t j = 0; j < gens.size(); ++j) {
            auto r = relation(gates[i], gens[j]);
            Relation want = (i == j) ? Relation::kAnticommute : Relation::kCommute;
            out.push_back({clause_text(di, "G" + std::to_string(j + 1) + "=" + gens[j].str(), want),
                           r.has_value() && *r == want, rel_text(r)});
        }
    }
    return out;
}

int failures(const std::vector<ClauseResult> &clauses) {
    return static_cast<int>(std::count_if(clauses.begin(), clauses.end(), [](const auto &c) { return !c.pass; }));
}

std::vector<PauliString> candidate_words(int num_sites) {
    std::vector<PauliString> out;
    size_t total = size_t{1} << (2 * num_sites);
    for (size_t code = 1; code < total; ++code) {
        std::vector<uint8_t> letters(num_sites);
        size_t c = code;
        for (int k = num_sites - 1; k >= 0; --k) {
            letters[k] = static_cast<uint8_t>(c & 3);
            c >>= 2;
        }
        out.emplace_back(std::move(letters), 0);
    }
    // Codes already enumerate lexicographically with I < X < Y < Z; stable sort by weight keeps that.
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.weight() < b.weight(); });
    return out;
}

}  // namespace

const char *gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::kGroup:
            return "group";
        case GenKind::kLocalGroup:
            return "local_group";
        default:
            return "algebra";
    }
}

const char *gate_mode_name(GateMode m) {
    return m == GateMode::kIqec ? "iqec" : "sniqec";
}

PauliSum evaluate_witness(const GenSetReport &r, const std::vector<Monomial> &w) {
    const int n = r.generators.empty() ? 0 : r.generators.front().size();
    PauliSum acc(n);
    for (const auto &m : w) {
        PauliSum p = PauliSum::identity(n);
        for (int g : m.generators) {
            p = p * r.generators.at(g);
        }
        acc = acc + p * m.scalar;
    }
    return acc;
}

GenSetReport group_generating_set(const std::vector<PauliSum> &noise, Locality locality) {
    if (noise.empty()) {
        throw ConfigError("group_generating_set: empty noise set");
    }
    const int n = noise.front().size();
    GenSetReport rep;
    if (locality == Locality::kGlobal) {
        rep.kind = GenKind::kGroup;
        auto pool = dedupe(noise);
        auto res = search_pool(pool, noise, n, false);
        for (int i : res.minimal_subsets.front()) {
            rep.generators.push_back(pool[i]);
            rep.generator_site.push_back(-1);
        }
        rep.witness = res.witnesses.front();
        rep.per_site_count = {rep.total()};
        assert(rep.total() <= static_cast<int>(noise.size()));
        return rep;
    }

    rep.kind = GenKind::kLocalGroup;
    std::vector<std::vector<PauliSum>> factors;
    for (const auto &s : noise) {
        auto f = factorize_local(s);
        if (!f) {
            throw NotGeneratable("group_generating_set: '" + s.str() + "' has no site-local factorization");
        }
        factors.push_back(std::move(*f));
    }
    rep.per_site_count.assign(n, 0);
    std::vector<std::vector<int>> site_gen_index(n);
    for (int k = 0; k < n; ++k) {
        std::vector<PauliSum> local;
        for (const auto &f : factors) {
            local.push_back(f[k]);
        }
        auto pool = dedupe(local);
        auto res = search_pool(pool, pool, n, false);
        for (int i : res.minimal_subsets.front()) {
            site_gen_index[k].push_back(rep.total());
            rep.generators.push_back(pool[i]);
            rep.generator_site.push_back(k);
        }
        rep.per_site_count[k] = static_cast<int>(res.minimal_subsets.front().size());
    }
    for (size_t e = 0; e < noise.size(); ++e) {
        Monomial m;
        for (int k = 0; k < n; ++k) {
            std::vector<PauliSum> site_gens;
            for (int g : site_gen_index[k]) {
                site_gens.push_back(rep.generators[g]);
            }
            auto w = closure_witness(site_gens, {factors[e][k]}, n);
            if (!w) {
                throw NotGeneratable("group_generating_set: local factor outside the site closure");
            }
            for (int g : w->front().front().generators) {
                m.generators.push_back(site_gen_index[k][g]);
            }
        }
        PauliSum prod = evaluate_witness(rep, {m});
        auto c = prod.ratio_to(noise[e]);
        if (!c) {
            throw NotGeneratable("group_generating_set: witness does not reproduce '" + noise[e].str() + "'");
        }
        m.scalar = *c;
        rep.witness.push_back({m});
    }
    return rep;
}

std::vector<GenSetReport> all_minimal_group_generating_sets(const std::vector<PauliSum> &noise) {
    if (noise.empty()) {
        throw ConfigError("all_minimal_group_generating_sets: empty noise set");
    }
    const int n = noise.front().size();
    auto pool = dedupe(noise);
    auto res = search_pool(pool, noise, n, true);
    std::vector<GenSetReport> out;
    for (size_t s = 0; s < res.minimal_subsets.size(); ++s) {
        GenSetReport rep;
        rep.kind = GenKind::kGroup;
        for (int i : res.minimal_subsets[s]) {
            rep.generators.push_back(pool[i]);
            rep.generator_site.push_back(-1);
        }
        rep.witness = res.witnesses[s];
        rep.per_site_count = {rep.total()};
        out.push_back(std::move(rep));
    }
    return out;
}

GenSetReport algebra_generating_set(const std::vector<PauliSum> &noise, int num_sites) {
    if (noise.empty()) {
        throw ConfigError("algebra_generating_set: empty noise set");
    }
    std::vector<PauliSum> words;
    std::map<std::string, int> word_index;
    for (const auto &s : noise) {
        if (s.size() != num_sites) {
            throw LengthMismatch("algebra_generating_set: noise element on the wrong register");
        }
        for (const auto &[w, c] : s.terms()) {
            if (!word_index.count(w)) {
                word_index[w] = static_cast<int>(words.size());
                words.push_back(PauliSum::from(PauliString::from_str(w)));
            }
        }
    }
    GenSetReport rep = group_generating_set(words, Locality::kPerSite);
    rep.kind = GenKind::kAlgebra;
    std::vector<std::vector<Monomial>> word_witness = rep.witness;
    rep.witness.clear();
    for (const auto &s : noise) {
        std::vector<Monomial> combo;
        for (const auto &[w, c] : s.terms()) {
            Monomial m = word_witness[word_index[w]].front();
            m.scalar *= c;
            combo.push_back(m);
        }
        rep.witness.push_back(std::move(combo));
    }
    return rep;
}

GenSetReport trace_preserving_generating_set(int num_sites) {
    GenSetReport rep;
    rep.kind = GenKind::kAlgebra;
    rep.per_site_count.assign(num_sites, 2);
    for (int k = 0; k < num_sites; ++k) {
        rep.generators.push_back(PauliSum::from(PauliString::single(num_sites, k, 'X')));
        rep.generator_site.push_back(k);
        rep.generators.push_back(PauliSum::from(PauliString::single(num_sites, k, 'Y')));
        rep.generator_site.push_back(k);
    }
    return rep;
}

std::vector<PauliSum> split_site_terms(const PauliSum &h) {
    const int n = h.size();
    std::vector<PauliSum> out(n, PauliSum(n));
    for (const auto &[w, c] : h.terms()) {
        auto supp = PauliString::from_str(w).support();
        if (supp.size() > 1) {
            throw ConfigError("Hamiltonian term '" + w + "' is not site-local");
        }
        if (supp.empty()) {
            continue;  // identity shifts the energy only
        }
        out[supp.front()].add(w, c);
    }
    return out;
}

GateSearchResult find_gates(const GenSetReport &gens, const PauliSum &h, GateMode mode) {
    GateSearchResult res;
    res.mode = mode;
    const int n = h.size();
    const int m = gens.total();
    std::vector<PauliSum> site_terms;
    if (mode == GateMode::kSniqec) {
        site_terms = split_site_terms(h);
        for (int s : gens.generator_site) {
            if (s < 0) {
                throw ConfigError("find_gates: sniqec needs site-local generators");
            }
        }
    }
    auto global_candidates = candidate_words(n);
    std::vector<PauliSum> h_for_gate;
    for (int i = 0; i < m; ++i) {
        const PauliSum &hi = (mode == GateMode::kSniqec) ? site_terms[gens.generator_site[i]] : h;
        std::vector<PauliString> candidates;
        if (mode == GateMode::kSniqec) {
            for (char l : {'X', 'Y', 'Z'}) {
                candidates.push_back(PauliString::single(n, gens.generator_site[i], l));
            }
        } else {
            candidates = global_candidates;
        }
        std::optional<PauliString> pick;
        for (const auto &d : candidates) {
            ++res.candidates_examined;
            auto self = relation(d, gens.generators[i]);
            if (!self || *self != Relation::kAnticommute) {
                continue;
            }
            bool ok = relation(d, hi).has_value();
            for (int j = 0; ok && j < m; ++j) {
                if (j == i) {
                    continue;
                }
                auto r = relation(d, gens.generators[j]);
                ok = r && *r == Relation::kCommute;
            }
            if (ok) {
                pick = d;
                break;
            }
        }
        if (!pick) {
            std::ostringstream os;
            os << "no " << (mode == GateMode::kSniqec ? "site-local " : "") << "Pauli word anticommutes with G"
               << i + 1 << "=" << gens.generators[i].str() << ", commutes with every other generator and has a "
               << "definite relation with H" << (mode == GateMode::kSniqec ? "^(k)" : "") << "=" << hi.str() << " ("
               << candidates.size() << " candidates checked)";
            res.certificate = os.str();
            res.found = false;
            res.gates.clear();
            res.gate_site.clear();
            return res;
        }
        res.gates.push_back(*pick);
        res.gate_site.push_back(mode == GateMode::kSniqec ? gens.generator_site[i] : -1);
        h_for_gate.push_back(hi);
    }
    res.report = admissibility_clauses(res.gates, gens.generators, h_for_gate);
    res.found = failures(res.report) == 0;
    return res;
}

GateSearchResult find_gates_for_noise(const std::vector<PauliSum> &noise, const PauliSum &h, GateMode mode,
                                      GenSetReport *used) {
    if (mode == GateMode::kSniqec) {
        GenSetReport g;
        try {
            g = group_generating_set(noise, Locality::kPerSite);
        } catch (const NotGeneratable &) {
            g = algebra_generating_set(noise, h.size());
        }
        if (used) {
            *used = g;
        }
        return find_gates(g, h, mode);
    }
    auto sets = all_minimal_group_generating_sets(noise);
    GateSearchResult last;
    long examined = 0;
    std::string certs;
    for (const auto &g : sets) {
        last = find_gates(g, h, mode);
        examined += last.candidates_examined;
        if (last.found) {
            last.candidates_examined = examined;
            if (used) {
                *used = g;
            }
            return last;
        }
        certs += (certs.empty() ? "" : "; ") + last.certificate;
    }
    if (used && !sets.empty()) {
        *used = sets.front();
    }
    last.candidates_examined = examined;
    last.certificate = "all " + std::to_string(sets.size()) + " minimal generating set(s) fail: " + certs;
    return last;
}

TheoremReport check_theorem(const std::vector<PauliSum> &noise, const PauliSum &h,
                            const std::vector<PauliString> &gates, Theorem which) {
    TheoremReport rep;
    rep.which = which;
    const int n = h.size();

    std::vector<GenSetReport> candidates;
    switch (which) {
        case Theorem::kT1:
            candidates = all_minimal_group_generating_sets(noise);
            break;
        case Theorem::kT2:
            try {
                candidates = {group_generating_set(noise, Locality::kPerSite)};
            } catch (const NotGeneratable &) {
                candidates = {algebra_generating_set(noise, n)};
            }
            break;
        case Theorem::kT3:
            candidates = {algebra_generating_set(noise, n)};
            break;
    }

    std::vector<PauliSum> site_terms;
    if (which == Theorem::kT2) {
        site_terms = split_site_terms(h);
    }

    std::optional<std::vector<ClauseResult>> best;
    for (const auto &g : candidates) {
        if (static_cast<int>(gates.size()) != g.total()) {
            std::vector<ClauseResult> c{{"gate count equals generator count", false,
                                         std::to_string(gates.size()) + " gates vs " + std::to_string(g.total()) +
                                             " generators"}};
            if (!best) {
                best = c;
            }
            continue;
        }
        std::vector<int> perm(gates.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<PauliString> ordered;
            std::vector<PauliSum> h_terms;
            bool local_ok = true;
            for (size_t i = 0; i < perm.size(); ++i) {
                ordered.push_back(gates[perm[i]]);
                if (which == Theorem::kT2) {
                    auto supp = ordered.back().support();
                    int site = g.generator_site[i];
                    if (supp.size() != 1 || supp.front() != site) {
                        local_ok = false;
                    }
                    h_terms.push_back(site_terms[site]);
                } else {
                    h_terms.push_back(h);
                }
            }
            auto clauses = admissibility_clauses(ordered, g.generators, h_terms);
            if (which == Theorem::kT2) {
                clauses.push_back({"every D acts on its generator's site", local_ok, ""});
            }
            if (!best || failures(clauses) < failures(*best)) {
                best = clauses;
            }
            if (failures(clauses) == 0) {
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (best && failures(*best) == 0) {
            break;
        }
    }
    rep.clauses = best.value_or(std::vector<ClauseResult>{});

    if (which == Theorem::kT3) {
        for (size_t i = 0; i < noise.size(); ++i) {
            PauliSum comm = h * noise[i] - noise[i] * h;
            rep.clauses.push_back({"[H, L" + std::to_string(i + 1) + "] = 0", comm.is_zero(1e-12),
                                   "L" + std::to_string(i + 1) + "=" + noise[i].str()});
        }
        const auto &g = candidates.front();
        for (int i = 0; i < g.total(); ++i) {
            PauliSum sq = g.generators[i] * g.generators[i];
            auto c = PauliSum::identity(n).ratio_to(sq);
            bool pm_one = c && (std::abs(*c - Complex(1, 0)) < 1e-10 || std::abs(*c + Complex(1, 0)) < 1e-10);
            rep.clauses.push_back({"G" + std::to_string(i + 1) + " unitary with square +-I", pm_one,
                                   "G" + std::to_string(i + 1) + "=" + g.generators[i].str()});
        }
    }
    rep.pass = !rep.clauses.empty() && failures(rep.clauses) == 0;
    return rep;
}

bool hnls_satisfied(const PauliSum &h, const std::vector<PauliSum> &noise) {
    const int n = h.size();
    std::vector<PauliSum> span{PauliSum::identity(n)};
    for (const auto &l : noise) {
        span.push_back(l);
        span.push_back(l.adjoint());
    }
    for (const auto &a : noise) {
        for (const auto &b : noise) {
            span.push_back(a.adjoint() * b);
        }
    }
    std::map<std::string, int> row;
    auto index_words = [&](const PauliSum &s) {
        for (const auto &[w, c] : s.terms()) {
            if (!row.count(w)) {
                int r = static_cast<int>(row.size());
                row[w] = r;
            }
        }
    };
    index_words(h);
    for (const auto &s : span) {
        index_words(s);
    }
    Matrix a = Matrix::Zero(static_cast<Eigen::Index>(row.size()), static_cast<Eigen::Index>(span.size()));
    Vector b = Vector::Zero(static_cast<Eigen::Index>(row.size()));
    for (size_t j = 0; j < span.size(); ++j) {
        for (const auto &[w, c] : span[j].terms()) {
            a(row[w], static_cast<Eigen::Index>(j)) = c;
        }
    }
    for (const auto &[w, c] : h.terms()) {
        b(row[w]) = c;
    }
    if (b.norm() == 0.0) {
        return false;
    }
    Vector x = a.completeOrthogonalDecomposition().solve(b);
    return (a * x - b).norm() > 1e-9 * b.norm();
}

}  // namespace iqec
