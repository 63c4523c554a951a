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

// Symbolic Pauli algebra: signed Pauli words with exact phase tracking, and
// formal weighted sums of words for operators such as cos(t) X + sin(t) Z or
// collective S_z.
//
// Text format (sites are 1-based in text, 0-based in code):
//   "XIZ", "-YY", "iXZ"              full words, optional sign / i prefix
//   "Z1", "X2*Y3"                    single letters placed on a site
//   "0.5*XZ + 0.5*ZX", "Z1+Z2"       weighted sums
//   "theta(0.3)@1"                   cos(0.3) X + sin(0.3) Z on site 1

#ifndef IQEC_PAULI_H
#define IQEC_PAULI_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iqec/qmath.h"

namespace iqec {

enum class Relation { kCommute, kAnticommute };

const char *relation_name(Relation r);

/// i^phase times a tensor product of single-site Paulis. Letters are 0=I, 1=X, 2=Y, 3=Z.
class PauliString {
   public:
    explicit PauliString(int num_sites = 0);
    PauliString(std::vector<uint8_t> letters, uint8_t phase);

    /// Parses an optional sign ("+", "-", "i", "-i") followed by letters from "IXYZ_".
    static PauliString from_str(std::string_view text);
    /// Single letter ('X', 'Y', 'Z' or 'I') on `site` of an `num_sites` register.
    static PauliString single(int num_sites, int site, char letter);

    int size() const {
        return static_cast<int>(letters_.size());
    }
    /// Power of i, in [0, 4).
    uint8_t phase() const {
        return phase_;
    }
    uint8_t letter(int site) const {
        return letters_[site];
    }
    const std::vector<uint8_t> &letters() const {
        return letters_;
    }
    int weight() const;
    bool is_identity() const {
        return weight() == 0;
    }
    /// Sites with a non-identity letter.
    std::vector<int> support() const;

    /// Word without sign, e.g. "XIZ".
    std::string word() const;
    /// Signed form, e.g. "+XIZ", "-iYY".
    std::string str() const;
    Complex coefficient() const;

    PauliString operator*(const PauliString &other) const;
    PauliString with_phase(uint8_t phase) const;
    bool operator==(const PauliString &other) const = default;
    bool same_word(const PauliString &other) const {
        return letters_ == other.letters_;
    }

    Matrix matrix() const;

   private:
    std::vector<uint8_t> letters_;
    uint8_t phase_ = 0;
};

/// Anticommute iff the number of sites where both letters are non-identity and differ is odd.
Relation pauli_relation(const PauliString &p, const PauliString &q);

/// Formal complex-weighted sum of unsigned Pauli words on a fixed number of sites.
class PauliSum {
   public:
    explicit PauliSum(int num_sites = 0) : num_sites_(num_sites) {
    }
    static PauliSum from(const PauliString &p);
    static PauliSum identity(int num_sites);

    int size() const {
        return num_sites_;
    }
    /// word -> coefficient; zero coefficients are pruned.
    const std::map<std::string, Complex> &terms() const {
        return terms_;
    }
    void add(const std::string &word, Complex c);
    bool is_zero(double tol = 1e-12) const;
    /// The unique word if the sum has exactly one term.
    std::optional<PauliString> as_string() const;
    std::vector<PauliString> term_strings() const;

    PauliSum operator*(const PauliSum &other) const;
    PauliSum operator+(const PauliSum &other) const;
    PauliSum operator-(const PauliSum &other) const;
    PauliSum operator*(Complex s) const;
    PauliSum adjoint() const;

    /// other = c * this for some nonzero c; returns c.
    std::optional<Complex> ratio_to(const PauliSum &other, double tol = 1e-10) const;
    bool is_hermitian(double tol = 1e-12) const;

    /// Sites touched by some term.
    std::vector<int> support() const;
    std::string str() const;
    Matrix matrix() const;

   private:
    int num_sites_ = 0;
    std::map<std::string, Complex> terms_;
};

/// Clause relation between a Pauli word and a weighted sum: commute when every term commutes with `d`,
/// anticommute when every term anticommutes, nullopt otherwise. The zero sum commutes.
std::optional<Relation> relation(const PauliString &d, const PauliSum &s);
/// Same, between two sums, evaluated termwise.
std::optional<Relation> relation(const PauliSum &a, const PauliSum &b);

/// Parses every expression onto a common register whose size is the largest site referenced.
/// `min_sites` forces a lower bound on the register size.
std::vector<PauliSum> parse_pauli_exprs(const std::vector<std::string> &exprs, int min_sites = 0);
PauliSum parse_pauli_expr(std::string_view expr, int num_sites);

/// Splits a comma-separated list at top level ("X,Y,theta(0.2)@1").
std::vector<std::string> split_expr_list(std::string_view text);

}  // namespace iqec

#endif
