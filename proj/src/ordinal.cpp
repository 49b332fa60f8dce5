#include "rankforge/ordinal.hpp"

#include <cctype>
#include <limits>

namespace rankforge {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        throw DomainError("ordinal coefficient overflow");
    }
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw DomainError("ordinal coefficient overflow");
    }
    return a * b;
}

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
    if (n > 0) terms_.push_back(OrdinalTerm{Ordinal{}, n});
}

Ordinal Ordinal::omega() { return omega_pow(Ordinal(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& exponent) {
    Ordinal r;
    r.terms_.push_back(OrdinalTerm{exponent, 1});
    return r;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coefficient == 0) throw DomainError("CNF coefficient must be positive");
        if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
            throw DomainError("CNF exponents must be strictly decreasing");
        }
    }
    Ordinal r;
    r.terms_ = std::move(terms);
    return r;
}

bool Ordinal::is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool Ordinal::is_successor() const {
    return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool Ordinal::is_limit() const {
    return !terms_.empty() && !terms_.back().exponent.is_zero();
}

std::uint64_t Ordinal::to_natural() const {
    if (!is_finite()) throw DomainError("ordinal is not finite: " + format_ordinal(*this));
    return terms_.empty() ? 0 : terms_[0].coefficient;
}

Ordinal Ordinal::predecessor() const {
    if (!is_successor()) throw DomainError("ordinal has no predecessor: " + format_ordinal(*this));
    Ordinal r = *this;
    if (--r.terms_.back().coefficient == 0) r.terms_.pop_back();
    return r;
}

const Ordinal& Ordinal::leading_exponent() const {
    if (terms_.empty()) throw DomainError("zero has no leading exponent");
    return terms_[0].exponent;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
        if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
    }
    return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

Cmp compare(const Ordinal& a, const Ordinal& b) {
    auto c = a <=> b;
    if (c < 0) return Cmp::LT;
    if (c > 0) return Cmp::GT;
    return Cmp::EQ;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const Ordinal& lead = b.leading_exponent();
    std::vector<OrdinalTerm> out;
    for (const auto& t : a.terms()) {
        if (t.exponent > lead) out.push_back(t);
    }
    auto bt = b.terms();
    for (const auto& t : a.terms()) {
        if (t.exponent == lead) bt[0].coefficient = checked_add(bt[0].coefficient, t.coefficient);
    }
    out.insert(out.end(), bt.begin(), bt.end());
    return Ordinal::from_terms(std::move(out));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal{};
    // Left distributivity: a * (sum of terms of b) = sum of a * term.
    Ordinal result;
    const Ordinal& a_lead = a.leading_exponent();
    for (const auto& t : b.terms()) {
        std::vector<OrdinalTerm> piece;
        if (t.exponent.is_zero()) {
            piece = a.terms();
            piece[0].coefficient = checked_mul(piece[0].coefficient, t.coefficient);
        } else {
            piece.push_back(OrdinalTerm{add(a_lead, t.exponent), t.coefficient});
        }
        result = add(result, Ordinal::from_terms(std::move(piece)));
    }
    return result;
}

Ordinal nat_add(const Ordinal& a, const Ordinal& b) {
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::vector<OrdinalTerm> out;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].exponent > y[j].exponent)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].exponent > x[i].exponent) {
            out.push_back(y[j++]);
        } else {
            out.push_back(OrdinalTerm{x[i].exponent, checked_add(x[i].coefficient, y[j].coefficient)});
            ++i;
            ++j;
        }
    }
    return Ordinal::from_terms(std::move(out));
}

Ordinal omega_pow(const Ordinal& exponent) { return Ordinal::omega_pow(exponent); }

OrdinalAnalysis analyze(const Ordinal& a) {
    OrdinalAnalysis r;
    if (a.is_zero()) return r;
    r.kind = a.is_successor() ? OrdinalKind::Successor : OrdinalKind::Limit;
    for (const auto& t : a.terms()) r.cnf_length = checked_add(r.cnf_length, t.coefficient);
    r.indecomposable = a.terms().size() == 1 && a.terms()[0].coefficient == 1;
    return r;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Ordinal parse_all() {
        Ordinal r = ord();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError("ordinal syntax error: " + what, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::uint64_t nat() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a natural number");
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(s_[pos_] - '0'));
            ++pos_;
        }
        return v;
    }

    Ordinal ord() {
        Ordinal r = term();
        while (accept('+')) r = add(r, term());
        return r;
    }

    Ordinal term() {
        if (accept('w')) {
            Ordinal exponent(1);
            if (accept('^')) {
                if (accept('(')) {
                    exponent = ord();
                    if (!accept(')')) fail("expected ')'");
                } else if (accept('w')) {
                    exponent = Ordinal::omega();
                } else {
                    exponent = Ordinal(nat());
                }
            }
            Ordinal t = omega_pow(exponent);
            if (accept('*')) t = mul(t, Ordinal(nat()));
            return t;
        }
        return Ordinal(nat());
    }
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return Parser(text).parse_all(); }

std::string format_ordinal(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty()) out += '+';
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += 'w';
        if (t.exponent != Ordinal(1)) {
            if (t.exponent.is_finite() || t.exponent == Ordinal::omega()) {
                out += '^' + format_ordinal(t.exponent);
            } else {
                out += "^(" + format_ordinal(t.exponent) + ')';
            }
        }
        if (t.coefficient != 1) out += '*' + std::to_string(t.coefficient);
    }
    return out;
}

const char* to_string(Cmp c) {
    switch (c) {
        case Cmp::LT: return "LT";
        case Cmp::EQ: return "EQ";
        case Cmp::GT: return "GT";
    }
    return "?";
}

const char* to_string(OrdinalKind k) {
    switch (k) {
        case OrdinalKind::Zero: return "zero";
        case OrdinalKind::Successor: return "successor";
        case OrdinalKind::Limit: return "limit";
    }
    return "?";
}

}  // namespace rankforge
