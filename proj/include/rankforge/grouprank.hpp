#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rankforge/ordinal.hpp"

namespace rankforge {

struct GroupExpr;
using GroupExprPtr = std::shared_ptr<const GroupExpr>;

// Members of a construction: either listed explicitly, or the symbolic tower
// family (tower(beta))_{1 <= beta < bound}.
struct FamilySpec {
    enum class Kind { Explicit, Tower };
    Kind kind = Kind::Explicit;
    std::vector<GroupExprPtr> members;
    Ordinal bound;

    static FamilySpec explicit_family(std::vector<GroupExprPtr> members);
    static FamilySpec tower_family(Ordinal bound);
};

struct GroupExpr {
    enum class Kind { Trivial, Discrete, Product, LocalDirectProduct, ZWreath };
    Kind kind = Kind::Trivial;
    FamilySpec family;   // Product and LocalDirectProduct
    GroupExprPtr inner;  // ZWreath
    // False when the node carries no designated open subgroup; such a node
    // cannot appear inside a LocalDirectProduct or under a ZWreath.
    bool marked = true;

    static GroupExprPtr trivial();
    static GroupExprPtr discrete();
    static GroupExprPtr product(FamilySpec f);
    static GroupExprPtr ldp(FamilySpec f);
    static GroupExprPtr zwreath(GroupExprPtr inner);
    static GroupExprPtr unmarked(const GroupExprPtr& g);
};

struct RankProfile {
    Ordinal rank;
    std::optional<Ordinal> marked_pair_rank;
};

GroupExprPtr tower(const Ordinal& alpha);
RankProfile eval_rank(const GroupExpr& g);

struct Classification {
    bool tsi = false;
    bool cli = false;
};

Classification classify(const GroupExpr& g);
std::vector<std::string> validate(const GroupExpr& g);

}  // namespace rankforge
