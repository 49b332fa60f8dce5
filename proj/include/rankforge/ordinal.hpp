#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rankforge/errors.hpp"

namespace rankforge {

struct OrdinalTerm;

// An ordinal below epsilon_0 in Cantor normal form. Terms are kept with
// strictly decreasing exponents and positive coefficients; the empty term
// list is zero.
class Ordinal {
public:
    Ordinal() = default;
    Ordinal(std::uint64_t n);  // NOLINT(google-explicit-constructor): naturals embed

    static Ordinal omega();
    static Ordinal omega_pow(const Ordinal& exponent);
    // Builds from raw terms; throws DomainError unless they are already in
    // normal form.
    static Ordinal from_terms(std::vector<OrdinalTerm> terms);

    const std::vector<OrdinalTerm>& terms() const { return terms_; }

    bool is_zero() const;
    bool is_finite() const;
    bool is_successor() const;
    bool is_limit() const;
    // Value of a finite ordinal; throws DomainError otherwise.
    std::uint64_t to_natural() const;
    // Predecessor of a successor ordinal; throws DomainError otherwise.
    Ordinal predecessor() const;
    const Ordinal& leading_exponent() const;

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b);

private:
    std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
    Ordinal exponent;
    std::uint64_t coefficient = 1;

    friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

inline bool Ordinal::is_zero() const { return terms_.empty(); }

enum class Cmp { LT, EQ, GT };

enum class OrdinalKind { Zero, Successor, Limit };

struct OrdinalAnalysis {
    OrdinalKind kind = OrdinalKind::Zero;
    std::uint64_t cnf_length = 0;
    bool indecomposable = false;
};

Cmp compare(const Ordinal& a, const Ordinal& b);
Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
Ordinal nat_add(const Ordinal& a, const Ordinal& b);
Ordinal omega_pow(const Ordinal& exponent);
OrdinalAnalysis analyze(const Ordinal& a);

Ordinal parse_ordinal(std::string_view text);
std::string format_ordinal(const Ordinal& a);

const char* to_string(Cmp c);
const char* to_string(OrdinalKind k);

}  // namespace rankforge
