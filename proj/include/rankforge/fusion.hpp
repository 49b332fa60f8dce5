#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rankforge/ordinal.hpp"
#include "rankforge/zline.hpp"

namespace rankforge {

// Throws DomainError unless mu is a power of omega.
void validate_top(const Ordinal& mu);
// Throws DomainError unless the node's height and support lie below mu and
// every support position is at or above the height.
void validate_node(const Ordinal& mu, const TNode& s);

TNode meet(const TNode& s, const TNode& t);
// s is an initial segment of t: t extends s.
bool initial_segment(const TNode& s, const TNode& t);
bool comparable(const TNode& s, const TNode& t);
TNode as_node(const ZElement& a);

struct FPair {
    std::vector<TNode> F0, F1;
    friend bool operator==(const FPair&, const FPair&) = default;
};

using HeightSum = Ordinal (*)(const Ordinal&, const Ordinal&);

// Antichain and disjointness of F0 and F1, and the height condition
// sum(ht(s), ht(t)) < ht(meet(s, t)) across the two sides. The height sum is
// natural addition; the parameter exists so tests can show it matters.
bool in_F(const FPair& p, HeightSum sum = nat_add);

SymAutomorphism nhat(const TNode& r, std::int64_t n, const Ordinal& gamma, const Ordinal& delta_combined);

struct Extension {
    FPair pair;
    std::int64_t n = 0;
    Ordinal gamma;
    Ordinal delta_combined;
};

Extension extend_requirement(const Ordinal& mu, const FPair& p, const TNode& s, const TNode& r, int side,
                             const Ordinal& beta, const std::vector<ZElement>& C);

using ValueMap = std::function<std::int64_t(const ZElement&)>;
using SideRule = std::function<int(const ZElement&)>;

std::int64_t fuse_value(const FPair& p, const SideRule& default_rule, const ValueMap& x0, const ValueMap& x1,
                        const ZElement& a);

SymAutomorphism glue_system(const std::vector<std::pair<TNode, SymAutomorphism>>& system);

std::optional<SymAutomorphism> star_check(const Ordinal& mu, const std::vector<TNode>& J, const Ordinal& alpha,
                                          const std::vector<ZElement>& A, const std::vector<ZElement>& B,
                                          const Ordinal& beta, std::uint64_t search_bound);

}  // namespace rankforge
