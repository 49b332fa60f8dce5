#include "rankforge/fusion.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace rankforge {

void validate_top(const Ordinal& mu) {
    if (!analyze(mu).indecomposable) throw DomainError("top ordinal must be a power of omega");
}

void validate_node(const Ordinal& mu, const TNode& s) {
    if (!(s.height < mu)) throw DomainError("node height must be below the top ordinal");
    for (const auto& [pos, v] : s.values.support) {
        if (!pos.path.empty() || !pos.has_ordinal_key()) throw DomainError("node positions must be ordinals");
        const Ordinal& k = pos.ordinal_key();
        if (k < s.height) throw DomainError("node support lies below its height");
        if (!(k < mu)) throw DomainError("node support must lie below the top ordinal");
        if (v == 0) throw DomainError("zero value stored in node support");
    }
}

namespace {

std::optional<Ordinal> greatest_disagreement_from(const ZElement& x, const ZElement& y, const Ordinal& from) {
    std::set<Position> keys;
    for (const auto& kv : x.support) keys.insert(kv.first);
    for (const auto& kv : y.support) keys.insert(kv.first);
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
        const Ordinal& k = it->ordinal_key();
        if (k < from) break;
        if (x.at(*it) != y.at(*it)) return k;
    }
    return std::nullopt;
}

}  // namespace

TNode meet(const TNode& s, const TNode& t) {
    Ordinal m = std::max(s.height, t.height);
    auto p = greatest_disagreement_from(s.values, t.values, m);
    Ordinal delta = p ? std::max(m, add(*p, Ordinal(1))) : m;
    return restrict_node(s.values, delta);
}

bool initial_segment(const TNode& s, const TNode& t) {
    return s.height >= t.height && restrict_node(t.values, s.height).values == s.values;
}

bool comparable(const TNode& s, const TNode& t) { return initial_segment(s, t) || initial_segment(t, s); }

TNode as_node(const ZElement& a) { return TNode{Ordinal{}, a}; }

namespace {

std::vector<TNode> dedupe(std::vector<TNode> v) {
    std::vector<TNode> out;
    for (auto& x : v) {
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
    }
    return out;
}

bool covered_by_any(const std::vector<TNode>& nodes, const ZElement& a) {
    return std::any_of(nodes.begin(), nodes.end(), [&](const TNode& s) { return covers(s, a); });
}

}  // namespace

bool in_F(const FPair& p, HeightSum sum) {
    auto f0 = dedupe(p.F0);
    auto f1 = dedupe(p.F1);
    std::vector<TNode> all = f0;
    all.insert(all.end(), f1.begin(), f1.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (const auto& [pos, v] : all[i].values.support) {
            if (!pos.has_ordinal_key() || pos.ordinal_key() < all[i].height || v == 0) return false;
        }
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (comparable(all[i], all[j])) return false;
        }
    }
    for (const auto& s : f0) {
        for (const auto& t : f1) {
            if (!(sum(s.height, t.height) < meet(s, t).height)) return false;
        }
    }
    return true;
}

SymAutomorphism nhat(const TNode& r, std::int64_t n, const Ordinal& gamma, const Ordinal& delta_combined) {
    if (!(gamma < r.height) || !(delta_combined < r.height)) {
        throw DomainError("shift positions must lie below the height of the scope node");
    }
    SymAutomorphism phi;
    if (n == 0) return phi;
    ConditionalShift m;
    m.targets.emplace_back(gamma);
    if (delta_combined != gamma) m.targets.emplace_back(delta_combined);
    m.amount = -n;
    m.scope = r;
    phi.moves.push_back(std::move(m));
    return phi;
}

Extension extend_requirement(const Ordinal& mu, const FPair& p, const TNode& s, const TNode& r, int side,
                             const Ordinal& beta, const std::vector<ZElement>& C) {
    validate_top(mu);
    if (side != 0 && side != 1) throw DomainError("side must be 0 or 1");
    for (const auto& x : p.F0) validate_node(mu, x);
    for (const auto& x : p.F1) validate_node(mu, x);
    validate_node(mu, s);
    validate_node(mu, r);
    if (!in_F(p)) throw DomainError("pair violates the antichain-pair conditions");
    const auto& same = side == 0 ? p.F0 : p.F1;
    const auto& other = side == 0 ? p.F1 : p.F0;
    if (std::find(same.begin(), same.end(), s) == same.end()) throw DomainError("s is not on the extended side");
    if (!(beta < s.height)) throw DomainError("height of s must exceed beta");
    if (std::find(same.begin(), same.end(), r) != same.end()) throw DomainError("r is already on the extended side");
    if (comparable(r, s)) throw DomainError("r and s must be incomparable");
    const Ordinal& rho = r.height;
    if (meet(r, s).height != add(rho, Ordinal(1))) throw DomainError("meet of r and s must sit one level above r");
    if (!(beta < rho)) throw DomainError("beta must lie below the height of r");
    for (const auto& c : C) {
        if (!covers(r, c)) throw DomainError("element of C is not covered by r");
    }

    Ordinal gamma = beta, delta;
    std::vector<const TNode*> above_same, above_other;
    for (int which = 0; which < 2; ++which) {
        for (const auto& q : which == 0 ? same : other) {
            if (q == r) continue;
            if (initial_segment(q, r)) throw DomainError("r is covered by an existing node");
            if (!initial_segment(r, q)) continue;
            gamma = std::max(gamma, q.height);
            if (which == 0) {
                above_same.push_back(&q);
            } else {
                above_other.push_back(&q);
                delta = std::max(delta, q.height);
            }
        }
    }
    Ordinal delta_combined = nat_add(beta, delta);
    if (!(gamma < rho)) throw DomainError("internal consistency: no admissible clearing position");
    if (!(delta_combined < rho)) throw DomainError("internal consistency: combined shift position reaches ht(r)");

    Extension ext;
    ext.pair = p;
    ext.gamma = gamma;
    ext.delta_combined = delta_combined;
    if (C.empty()) return ext;

    // Shifting by n moves every image away from each extension's value at
    // the clearing position, and from each other-side extension's value at
    // the combined position.
    const Position gpos(gamma), dpos(delta_combined);
    std::int64_t spread = 0;
    for (const auto& c : C) {
        for (const auto* q : above_same) spread = std::max(spread, std::abs(c.at(gpos) - q->values.at(gpos)));
        for (const auto* q : above_other) {
            spread = std::max(spread, std::abs(c.at(gpos) - q->values.at(gpos)));
            spread = std::max(spread, std::abs(c.at(dpos) - q->values.at(dpos)));
        }
    }
    ext.n = spread + 1;
    auto phi = nhat(r, ext.n, gamma, delta_combined);
    auto& target = side == 0 ? ext.pair.F0 : ext.pair.F1;
    for (const auto& c : C) {
        TNode x = restrict_node(apply(phi, c), beta);
        if (std::find(target.begin(), target.end(), x) == target.end()) target.push_back(std::move(x));
    }
    if (!in_F(ext.pair)) throw DomainError("internal consistency: extended pair leaves the antichain-pair class");
    return ext;
}

std::int64_t fuse_value(const FPair& p, const SideRule& default_rule, const ValueMap& x0, const ValueMap& x1,
                        const ZElement& a) {
    bool on0 = covered_by_any(p.F0, a);
    bool on1 = covered_by_any(p.F1, a);
    if (on0 && on1) throw DomainError("element covered by both sides of the pair");
    if (on0) return x0(a);
    if (on1) return x1(a);
    return default_rule(a) == 0 ? x0(a) : x1(a);
}

SymAutomorphism glue_system(const std::vector<std::pair<TNode, SymAutomorphism>>& system) {
    for (std::size_t i = 0; i < system.size(); ++i) {
        for (std::size_t j = i + 1; j < system.size(); ++j) {
            if (comparable(system[i].first, system[j].first)) throw DomainError("system nodes must form an antichain");
        }
    }
    SymAutomorphism out;
    for (const auto& [r, local] : system) {
        for (auto m : local.moves) {
            for (const auto& t : m.targets) {
                if (!t.has_ordinal_key() || !(t.ordinal_key() < r.height)) {
                    throw DomainError("local move leaves the scope of its node");
                }
            }
            if (m.anchor && !(m.threshold.has_ordinal_key() && m.threshold.ordinal_key() < r.height)) {
                throw DomainError("local move reads coordinates outside its node");
            }
            if (!m.scope) {
                m.scope = r;
            } else if (!initial_segment(r, *m.scope)) {
                throw DomainError("local move scope is not inside its node");
            }
            out.moves.push_back(std::move(m));
        }
    }
    return out;
}

namespace {

bool covered_high(const std::vector<TNode>& J, const ZElement& b, const Ordinal& beta) {
    return std::any_of(J.begin(), J.end(), [&](const TNode& t) { return t.height >= beta && covers(t, b); });
}

}  // namespace

std::optional<SymAutomorphism> star_check(const Ordinal& mu, const std::vector<TNode>& J, const Ordinal& alpha,
                                          const std::vector<ZElement>& A, const std::vector<ZElement>& B,
                                          const Ordinal& beta, std::uint64_t search_bound) {
    validate_top(mu);
    if (!(beta < alpha)) throw DomainError("beta must be below alpha");
    for (const auto& t : J) validate_node(mu, t);
    for (std::size_t i = 0; i < J.size(); ++i) {
        for (std::size_t j = i + 1; j < J.size(); ++j) {
            if (comparable(J[i], J[j])) throw DomainError("J must be an antichain");
        }
    }
    std::vector<TNode> S;
    for (const auto& a : A) {
        validate_node(mu, as_node(a));
        bool found = false;
        for (const auto& s : J) {
            if (s.height >= alpha && covers(s, a)) {
                found = true;
                if (std::find(S.begin(), S.end(), s) == S.end()) S.push_back(s);
            }
        }
        if (!found) throw DomainError("element of A is not covered at height alpha");
    }
    for (const auto& b : B) validate_node(mu, as_node(b));

    std::vector<const ZElement*> pending;
    for (const auto& b : B) {
        if (!covered_high(J, b, beta)) pending.push_back(&b);
    }
    if (pending.empty()) return SymAutomorphism{};

    // Height strictly above every position mentioned anywhere; used when no
    // node of J covers A.
    Ordinal ceiling;
    auto raise = [&](const Ordinal& o) { ceiling = std::max(ceiling, add(o, Ordinal(1))); };
    for (const auto& t : J) {
        raise(t.height);
        for (const auto& kv : t.values.support) raise(kv.first.ordinal_key());
    }
    for (const auto* b : pending) {
        for (const auto& kv : b->support) raise(kv.first.ordinal_key());
    }
    raise(beta);

    // One block per pending element: the immediate extension of its closest
    // meet with S, keeping only the ⊑-least blocks so they form an antichain.
    std::vector<TNode> blocks;
    for (const auto* b : pending) {
        TNode block;
        if (S.empty()) {
            block = restrict_node(*b, ceiling);
        } else {
            std::optional<Ordinal> lowest;
            for (const auto& s : S) {
                Ordinal h = meet(s, as_node(*b)).height;
                if (!lowest || h < *lowest) lowest = h;
            }
            block = restrict_node(*b, lowest->predecessor());
        }
        blocks.push_back(std::move(block));
    }
    std::vector<TNode> roots;
    for (const auto& x : blocks) {
        bool dominated = std::any_of(blocks.begin(), blocks.end(),
                                     [&](const TNode& y) { return !(y == x) && initial_segment(y, x); });
        if (!dominated && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
    }

    std::vector<std::pair<TNode, SymAutomorphism>> system;
    for (const auto& r : roots) {
        std::vector<const ZElement*> local;
        for (const auto& b : B) {
            if (covers(r, b)) local.push_back(&b);
        }
        std::set<Ordinal> cand{beta};
        for (const auto& t : J) {
            cand.insert(t.height);
            cand.insert(nat_add(beta, t.height));
            cand.insert(std::max(beta, t.height));
        }
        std::vector<Ordinal> positions;
        for (const auto& c : cand) {
            if (c < r.height) positions.push_back(c);
        }
        std::optional<SymAutomorphism> found;
        const auto bound = static_cast<std::int64_t>(search_bound);
        for (std::size_t gi = 0; gi < positions.size() && !found; ++gi) {
            for (std::size_t di = gi; di < positions.size() && !found; ++di) {
                for (std::int64_t n = 1; n <= bound && !found; ++n) {
                    for (std::int64_t sign : {1, -1}) {
                        auto phi = nhat(r, sign * n, positions[gi], positions[di]);
                        bool ok = std::all_of(local.begin(), local.end(),
                                              [&](const ZElement* b) { return covered_high(J, apply(phi, *b), beta); });
                        if (ok) {
                            found = phi;
                            break;
                        }
                    }
                }
            }
        }
        if (!found) return std::nullopt;
        system.emplace_back(r, *found);
    }
    auto g = glue_system(system);
    for (const auto& a : A) {
        if (!(apply(g, a) == a)) return std::nullopt;
    }
    for (const auto& b : B) {
        if (!covered_high(J, apply(g, b), beta)) return std::nullopt;
    }
    return g;
}

}  // namespace rankforge
