#include "rankforge/grouprank.hpp"

#include <algorithm>

namespace rankforge {

FamilySpec FamilySpec::explicit_family(std::vector<GroupExprPtr> members) {
    FamilySpec f;
    f.kind = Kind::Explicit;
    f.members = std::move(members);
    return f;
}

FamilySpec FamilySpec::tower_family(Ordinal bound) {
    FamilySpec f;
    f.kind = Kind::Tower;
    f.bound = std::move(bound);
    return f;
}

GroupExprPtr GroupExpr::trivial() { return std::make_shared<GroupExpr>(); }

GroupExprPtr GroupExpr::discrete() {
    auto g = std::make_shared<GroupExpr>();
    g->kind = Kind::Discrete;
    return g;
}

GroupExprPtr GroupExpr::product(FamilySpec f) {
    auto g = std::make_shared<GroupExpr>();
    g->kind = Kind::Product;
    g->family = std::move(f);
    return g;
}

GroupExprPtr GroupExpr::ldp(FamilySpec f) {
    auto g = std::make_shared<GroupExpr>();
    g->kind = Kind::LocalDirectProduct;
    g->family = std::move(f);
    return g;
}

GroupExprPtr GroupExpr::zwreath(GroupExprPtr inner) {
    auto g = std::make_shared<GroupExpr>();
    g->kind = Kind::ZWreath;
    g->inner = std::move(inner);
    return g;
}

GroupExprPtr GroupExpr::unmarked(const GroupExprPtr& g) {
    auto copy = std::make_shared<GroupExpr>(*g);
    copy->marked = false;
    return copy;
}

GroupExprPtr tower(const Ordinal& alpha) {
    if (alpha.is_zero()) throw DomainError("no 0-balanced groups exist");
    if (alpha == Ordinal(1)) return GroupExpr::trivial();
    if (alpha.is_limit()) return GroupExpr::product(FamilySpec::tower_family(alpha));
    Ordinal beta = alpha.predecessor();
    if (beta.is_limit()) return GroupExpr::ldp(FamilySpec::tower_family(beta));
    return GroupExpr::zwreath(tower(beta));
}

namespace {

void collect_violations(const GroupExpr& g, bool needs_mark, std::vector<std::string>& out) {
    auto note = [&](const std::string& v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    if (needs_mark && !g.marked) note("missing marked subgroup");
    switch (g.kind) {
        case GroupExpr::Kind::Trivial:
        case GroupExpr::Kind::Discrete: break;
        case GroupExpr::Kind::Product:
        case GroupExpr::Kind::LocalDirectProduct: {
            bool members_need_mark = g.kind == GroupExpr::Kind::LocalDirectProduct;
            if (g.family.kind == FamilySpec::Kind::Tower) {
                if (!g.family.bound.is_limit()) note("tower family bound must be a limit ordinal");
            } else if (g.family.members.empty()) {
                note("empty family");
            } else {
                for (const auto& m : g.family.members) {
                    if (!m) {
                        note("null family member");
                    } else {
                        collect_violations(*m, members_need_mark, out);
                    }
                }
            }
            break;
        }
        case GroupExpr::Kind::ZWreath:
            if (!g.inner) {
                note("missing wreath base");
            } else {
                collect_violations(*g.inner, true, out);
            }
            break;
    }
}

RankProfile eval_valid(const GroupExpr& g) {
    RankProfile p;
    switch (g.kind) {
        case GroupExpr::Kind::Trivial:
            p = {Ordinal(1), Ordinal(0)};
            break;
        case GroupExpr::Kind::Discrete:
            p = {Ordinal(2), Ordinal(1)};
            break;
        case GroupExpr::Kind::Product:
        case GroupExpr::Kind::LocalDirectProduct: {
            Ordinal rank_sup, pair_sup;
            bool all_marked = true;
            if (g.family.kind == FamilySpec::Kind::Tower) {
                // Below a limit bound the member ranks and the successor-stage
                // pair ranks are both cofinal in the bound.
                rank_sup = g.family.bound;
                pair_sup = g.family.bound;
            } else {
                for (const auto& m : g.family.members) {
                    auto mp = eval_valid(*m);
                    rank_sup = std::max(rank_sup, mp.rank);
                    if (mp.marked_pair_rank) {
                        pair_sup = std::max(pair_sup, *mp.marked_pair_rank);
                    } else {
                        all_marked = false;
                    }
                }
            }
            if (g.kind == GroupExpr::Kind::Product) {
                p.rank = rank_sup;
                if (all_marked) p.marked_pair_rank = pair_sup;
            } else {
                p.rank = std::max(rank_sup, add(pair_sup, Ordinal(1)));
                p.marked_pair_rank = pair_sup;
            }
            break;
        }
        case GroupExpr::Kind::ZWreath: {
            auto ip = eval_valid(*g.inner);
            p.rank = ip.rank.is_successor() ? add(ip.rank, Ordinal(1)) : ip.rank;
            p.marked_pair_rank = add(*ip.marked_pair_rank, Ordinal(1));
            break;
        }
    }
    if (!g.marked) p.marked_pair_rank.reset();
    return p;
}

}  // namespace

std::vector<std::string> validate(const GroupExpr& g) {
    std::vector<std::string> out;
    collect_violations(g, false, out);
    return out;
}

RankProfile eval_rank(const GroupExpr& g) {
    auto violations = validate(g);
    if (!violations.empty()) throw DomainError("invalid group expression: " + violations.front());
    return eval_valid(g);
}

Classification classify(const GroupExpr& g) {
    auto p = eval_rank(g);
    return Classification{p.rank <= Ordinal(2), true};
}

}  // namespace rankforge
