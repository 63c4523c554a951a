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

#include "iqec/pauli.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "iqec/errors.h"

namespace iqec {

namespace {

constexpr char kLetters[] = "IXYZ";

uint8_t letter_code(char c) {
    switch (c) {
        case 'I':
        case '_':
            return 0;
        case 'X':
            return 1;
        case 'Y':
            return 2;
        case 'Z':
            return 3;
        default:
            throw ParseError(std::string("not a Pauli letter: '") + c + "'");
    }
}

// Product of single-site letters: returns (phase power of i, letter).
std::pair<uint8_t, uint8_t> letter_product(uint8_t a, uint8_t b) {
    if (a == 0) {
        return {0, b};
    }
    if (b == 0 || a == b) {
        return {0, static_cast<uint8_t>(a ^ b)};
    }
    // X*Y = iZ, Y*Z = iX, Z*X = iY.
    uint8_t phase = ((b + 3 - a) % 3 == 1) ? 1 : 3;
    return {phase, static_cast<uint8_t>(a ^ b)};
}

Complex i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

}  // namespace

const char *relation_name(Relation r) {
    return r == Relation::kCommute ? "commute" : "anticommute";
}

PauliString::PauliString(int num_sites) : letters_(num_sites, 0) {
}

PauliString::PauliString(std::vector<uint8_t> letters, uint8_t phase) : letters_(std::move(letters)), phase_(phase & 3) {
    for (auto l : letters_) {
        if (l > 3) {
            throw ParseError("PauliString: letter code out of range");
        }
    }
}

PauliString PauliString::from_str(std::string_view text) {
    uint8_t phase = 0;
    size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') {
            phase = 2;
        }
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase = (phase + 1) & 3;
        ++pos;
    }
    if (pos >= text.size()) {
        throw ParseError("PauliString: empty word in '" + std::string(text) + "'");
    }
    std::vector<uint8_t> letters;
    for (; pos < text.size(); ++pos) {
        letters.push_back(letter_code(text[pos]));
    }
    return PauliString(std::move(letters), phase);
}

PauliString PauliString::single(int num_sites, int site, char letter) {
    if (site < 0 || site >= num_sites) {
        throw BadSite("PauliString::single: site out of range");
    }
    PauliString p(num_sites);
    p.letters_[site] = letter_code(letter);
    return p;
}

int PauliString::weight() const {
    return static_cast<int>(std::count_if(letters_.begin(), letters_.end(), [](uint8_t l) { return l != 0; }));
}

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k) {
        if (letters_[k] != 0) {
            out.push_back(k);
        }
    }
    return out;
}

std::string PauliString::word() const {
    std::string s;
    for (auto l : letters_) {
        s += kLetters[l];
    }
    return s;
}

std::string PauliString::str() const {
    static const char *prefix[] = {"+", "+i", "-", "-i"};
    return prefix[phase_] + word();
}

Complex PauliString::coefficient() const {
    return i_power(phase_);
}

PauliString PauliString::operator*(const PauliString &other) const {
    if (size() != other.size()) {
        throw LengthMismatch("PauliString: product of words with different lengths");
    }
    PauliString out(size());
    int phase = phase_ + other.phase_;
    for (int k = 0; k < size(); ++k) {
        auto [p, l] = letter_product(letters_[k], other.letters_[k]);
        phase += p;
        out.letters_[k] = l;
    }
    out.phase_ = static_cast<uint8_t>(phase & 3);
    return out;
}

PauliString PauliString::with_phase(uint8_t phase) const {
    PauliString out = *this;
    out.phase_ = phase & 3;
    return out;
}

Matrix PauliString::matrix() const {
    Matrix m = Matrix::Identity(1, 1);
    for (auto l : letters_) {
        m = tensor(m, pauli_matrix(kLetters[l]));
    }
    return coefficient() * m;
}

Relation pauli_relation(const PauliString &p, const PauliString &q) {
    if (p.size() != q.size()) {
        throw LengthMismatch("pauli_relation: words of different lengths");
    }
    int clashes = 0;
    for (int k = 0; k < p.size(); ++k) {
        uint8_t a = p.letter(k);
        uint8_t b = q.letter(k);
        if (a != 0 && b != 0 && a != b) {
            ++clashes;
        }
    }
    return (clashes & 1) ? Relation::kAnticommute : Relation::kCommute;
}

PauliSum PauliSum::from(const PauliString &p) {
    PauliSum s(p.size());
    s.add(p.word(), p.coefficient());
    return s;
}

PauliSum PauliSum::identity(int num_sites) {
    return from(PauliString(num_sites));
}

void PauliSum::add(const std::string &word, Complex c) {
    if (static_cast<int>(word.size()) != num_sites_) {
        throw LengthMismatch("PauliSum: word '" + word + "' has the wrong length");
    }
    Complex &slot = terms_[word];
    slot += c;
    if (std::abs(slot) < 1e-15) {
        terms_.erase(word);
    }
}

bool PauliSum::is_zero(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(), [tol](const auto &t) { return std::abs(t.second) <= tol; });
}

std::optional<PauliString> PauliSum::as_string() const {
    if (terms_.size() != 1) {
        return std::nullopt;
    }
    const auto &[w, c] = *terms_.begin();
    for (uint8_t ph = 0; ph < 4; ++ph) {
        if (std::abs(c - i_power(ph)) < 1e-12) {
            return PauliString::from_str(w).with_phase(ph);
        }
    }
    return std::nullopt;
}

std::vector<PauliString> PauliSum::term_strings() const {
    std::vector<PauliString> out;
    for (const auto &[w, c] : terms_) {
        out.push_back(PauliString::from_str(w));
    }
    return out;
}

PauliSum PauliSum::operator*(const PauliSum &other) const {
    if (num_sites_ != other.num_sites_) {
        throw LengthMismatch("PauliSum: product of sums on different registers");
    }
    PauliSum out(num_sites_);
    for (const auto &[wa, ca] : terms_) {
        PauliString pa = PauliString::from_str(wa);
        for (const auto &[wb, cb] : other.terms_) {
            PauliString prod = pa * PauliString::from_str(wb);
            out.add(prod.word(), ca * cb * prod.coefficient());
        }
    }
    return out;
}

PauliSum PauliSum::operator+(const PauliSum &other) const {
    if (num_sites_ != other.num_sites_) {
        throw LengthMismatch("PauliSum: sum on different registers");
    }
    PauliSum out = *this;
    for (const auto &[w, c] : other.terms_) {
        out.add(w, c);
    }
    return out;
}

PauliSum PauliSum::operator-(const PauliSum &other) const {
    return *this + other * Complex(-1.0, 0.0);
}

PauliSum PauliSum::operator*(Complex s) const {
    PauliSum out(num_sites_);
    for (const auto &[w, c] : terms_) {
        out.add(w, c * s);
    }
    return out;
}

PauliSum PauliSum::adjoint() const {
    PauliSum out(num_sites_);
    for (const auto &[w, c] : terms_) {
        out.add(w, std::conj(c));
    }
    return out;
}

std::optional<Complex> PauliSum::ratio_to(const PauliSum &other, double tol) const {
    if (num_sites_ != other.num_sites_ || terms_.empty() || other.terms_.empty()) {
        return std::nullopt;
    }
    if (terms_.size() != other.terms_.size()) {
        return std::nullopt;
    }
    const auto &[w0, c0] = *terms_.begin();
    auto it = other.terms_.find(w0);
    if (it == other.terms_.end()) {
        return std::nullopt;
    }
    Complex ratio = it->second / c0;
    for (const auto &[w, c] : terms_) {
        auto jt = other.terms_.find(w);
        if (jt == other.terms_.end() || std::abs(jt->second - ratio * c) > tol * std::max(1.0, std::abs(jt->second))) {
            return std::nullopt;
        }
    }
    return ratio;
}

bool PauliSum::is_hermitian(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(), [tol](const auto &t) { return std::abs(t.second.imag()) <= tol; });
}

std::vector<int> PauliSum::support() const {
    std::vector<bool> used(num_sites_, false);
    for (const auto &[w, c] : terms_) {
        for (int k = 0; k < num_sites_; ++k) {
            if (w[k] != 'I') {
                used[k] = true;
            }
        }
    }
    std::vector<int> out;
    for (int k = 0; k < num_sites_; ++k) {
        if (used[k]) {
            out.push_back(k);
        }
    }
    return out;
}

std::string PauliSum::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[w, c] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        if (std::abs(c - Complex(1, 0)) < 1e-14) {
            os << w;
        } else if (std::abs(c.imag()) < 1e-14) {
            os << c.real() << "*" << w;
        } else {
            os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)*" << w;
        }
    }
    return os.str();
}

Matrix PauliSum::matrix() const {
    const int d = 1 << num_sites_;
    Matrix m = Matrix::Zero(d, d);
    for (const auto &[w, c] : terms_) {
        m += c * PauliString::from_str(w).matrix();
    }
    return m;
}

std::optional<Relation> relation(const PauliString &d, const PauliSum &s) {
    bool all_commute = true;
    bool all_anti = true;
    for (const auto &t : s.term_strings()) {
        if (pauli_relation(d, t) == Relation::kCommute) {
            all_anti = false;
        } else {
            all_commute = false;
        }
    }
    if (all_commute) {
        return Relation::kCommute;
    }
    if (all_anti) {
        return Relation::kAnticommute;
    }
    return std::nullopt;
}

std::optional<Relation> relation(const PauliSum &a, const PauliSum &b) {
    bool all_commute = true;
    bool all_anti = true;
    for (const auto &p : a.term_strings()) {
        auto r = relation(p, b);
        if (!r) {
            return std::nullopt;
        }
        if (*r == Relation::kCommute) {
            all_anti = false;
        } else {
            all_commute = false;
        }
    }
    if (all_commute) {
        return Relation::kCommute;
    }
    if (all_anti) {
        return Relation::kAnticommute;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsing. Expressions are first read into sparse site->letter maps so that
// the register size can be fixed after every expression has been seen.

namespace {

struct SparseTerm {
    Complex coeff{1.0, 0.0};
    std::map<int, uint8_t> letters;
};
using SparseSum = std::vector<SparseTerm>;

SparseSum multiply(const SparseSum &a, const SparseSum &b) {
    SparseSum out;
    for (const auto &ta : a) {
        for (const auto &tb : b) {
            SparseTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.letters = ta.letters;
            int phase = 0;
            for (const auto &[site, l] : tb.letters) {
                auto [p, res] = letter_product(t.letters.count(site) ? t.letters[site] : 0, l);
                phase += p;
                t.letters[site] = res;
            }
            t.coeff *= i_power(phase);
            out.push_back(std::move(t));
        }
    }
    return out;
}

class ExprParser {
   public:
    explicit ExprParser(std::string_view text) : text_(text) {
    }

    SparseSum parse() {
        SparseSum s = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return s;
    }

   private:
    [[noreturn]] void fail(const std::string &why) const {
        throw ParseError("cannot parse Pauli expression '" + std::string(text_) + "' at column " +
                         std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    SparseSum expr() {
        SparseSum out;
        Complex sign = 1.0;
        if (peek('+')) {
            ++pos_;
        } else if (peek('-')) {
            ++pos_;
            sign = -1.0;
        }
        for (;;) {
            SparseSum t = term();
            for (auto &x : t) {
                x.coeff *= sign;
                out.push_back(std::move(x));
            }
            if (peek('+')) {
                ++pos_;
                sign = 1.0;
            } else if (peek('-')) {
                ++pos_;
                sign = -1.0;
            } else {
                break;
            }
        }
        return out;
    }

    SparseSum term() {
        SparseSum acc = factor();
        while (peek('*')) {
            ++pos_;
            acc = multiply(acc, factor());
        }
        return acc;
    }

    double number() {
        skip_ws();
        std::string rest(text_.substr(pos_));
        char *end = nullptr;
        double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) {
            fail("expected a number");
        }
        pos_ += static_cast<size_t>(end - rest.c_str());
        return v;
    }

    int site_index() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a site index");
        }
        int s = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (s < 1) {
            fail("site indices are 1-based");
        }
        return s - 1;
    }

    SparseSum factor() {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            SparseSum inner = expr();
            if (!peek(')')) {
                fail("expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return {SparseTerm{Complex(number(), 0.0), {}}};
        }
        if (text_.substr(pos_, 6) == "theta(") {
            pos_ += 6;
            double theta = number();
            if (!peek(')')) {
                fail("expected ')' after theta angle");
            }
            ++pos_;
            if (!peek('@')) {
                fail("expected '@site' after theta(...)");
            }
            ++pos_;
            int site = site_index();
            return {SparseTerm{Complex(std::cos(theta), 0.0), {{site, 1}}},
                    SparseTerm{Complex(std::sin(theta), 0.0), {{site, 3}}}};
        }
        if (c == 'i' && (pos_ + 1 >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])) ||
                         std::string_view("IXYZ_").find(text_[pos_ + 1]) != std::string_view::npos)) {
            ++pos_;
            SparseSum unit{SparseTerm{Complex(0.0, 1.0), {}}};
            skip_ws();
            if (pos_ < text_.size() && std::string_view("IXYZ_(").find(text_[pos_]) != std::string_view::npos) {
                return multiply(unit, factor());
            }
            return unit;
        }
        size_t start = pos_;
        while (pos_ < text_.size() && std::string_view("IXYZ_").find(text_[pos_]) != std::string_view::npos) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a Pauli word, sited letter, number or theta(...)");
        }
        std::string_view run = text_.substr(start, pos_ - start);
        SparseTerm t;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (run.size() != 1) {
                fail("a site index may only follow a single letter");
            }
            int site = site_index();
            t.letters[site] = letter_code(run[0]);
        } else {
            for (size_t k = 0; k < run.size(); ++k) {
                t.letters[static_cast<int>(k)] = letter_code(run[k]);
            }
        }
        return {t};
    }

    std::string_view text_;
    size_t pos_ = 0;
};

int max_site(const SparseSum &s) {
    int m = -1;
    for (const auto &t : s) {
        if (!t.letters.empty()) {
            m = std::max(m, t.letters.rbegin()->first);
        }
    }
    return m;
}

PauliSum materialize(const SparseSum &s, int num_sites) {
    PauliSum out(num_sites);
    for (const auto &t : s) {
        std::string w(num_sites, 'I');
        for (const auto &[site, l] : t.letters) {
            if (site >= num_sites) {
                throw BadSite("Pauli expression references site " + std::to_string(site + 1) + " beyond the register");
            }
            w[site] = kLetters[l];
        }
        out.add(w, t.coeff);
    }
    return out;
}

}  // namespace

std::vector<PauliSum> parse_pauli_exprs(const std::vector<std::string> &exprs, int min_sites) {
    std::vector<SparseSum> parsed;
    int n = min_sites;
    for (const auto &e : exprs) {
        parsed.push_back(ExprParser(e).parse());
        n = std::max(n, max_site(parsed.back()) + 1);
    }
    if (n < 1) {
        n = 1;
    }
    std::vector<PauliSum> out;
    for (const auto &p : parsed) {
        out.push_back(materialize(p, n));
    }
    return out;
}

PauliSum parse_pauli_expr(std::string_view expr, int num_sites) {
    return materialize(ExprParser(expr).parse(), num_sites);
}

std::vector<std::string> split_expr_list(std::string_view text) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        }
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto &s : out) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        if (s.empty()) {
            throw ParseError("empty entry in expression list '" + std::string(text) + "'");
        }
    }
    return out;
}

}  // namespace iqec
