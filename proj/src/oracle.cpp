#include "rankforge/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "rankforge/errors.hpp"

namespace rankforge {

FiniteAction FiniteAction::natural(FiniteGroup g) {
    FiniteAction a{std::move(g), 0, {}};
    a.space_size = a.group.degree();
    for (const auto& p : a.group.elements()) a.act.push_back(p);
    return a;
}

void validate_action(const FiniteAction& a) {
    if (a.space_size <= 0) throw DomainError("action space must be nonempty");
    if (a.act.size() != a.group.order()) throw DomainError("action table does not match the group order");
    for (const auto& row : a.act) {
        if (row.size() != static_cast<std::size_t>(a.space_size)) throw DomainError("action row has wrong length");
        for (int y : row) {
            if (y < 0 || y >= a.space_size) throw DomainError("action leaves the space");
        }
    }
    for (int x = 0; x < a.space_size; ++x) {
        if (a.apply(a.group.identity(), x) != x) throw DomainError("identity acts nontrivially");
        for (std::size_t g = 0; g < a.group.order(); ++g) {
            for (std::size_t h = 0; h < a.group.order(); ++h) {
                if (a.apply(a.group.mul(g, h), x) != a.apply(g, a.apply(h, x))) {
                    throw DomainError("action is not compatible with the group law");
                }
            }
        }
    }
}

ProductAction product_action(const FiniteAction& a, const FiniteAction& b) {
    const int d1 = a.group.degree(), d2 = b.group.degree();
    std::vector<Perm> elements;
    for (const auto& p : a.group.elements()) {
        for (const auto& q : b.group.elements()) {
            Perm r = p;
            for (int v : q) r.push_back(v + d1);
            elements.push_back(std::move(r));
        }
    }
    ProductAction out{FiniteAction{FiniteGroup::from_elements(d1 + d2, elements), a.space_size * b.space_size, {}},
                      {},
                      b.space_size};
    const auto& G = out.action.group;
    out.parts.resize(G.order());
    out.action.act.resize(G.order());
    for (std::size_t i = 0; i < a.group.order(); ++i) {
        for (std::size_t j = 0; j < b.group.order(); ++j) {
            std::size_t g = G.index_of(elements[i * b.group.order() + j]);
            out.parts[g] = {i, j};
            auto& row = out.action.act[g];
            row.resize(static_cast<std::size_t>(out.action.space_size));
            for (int x1 = 0; x1 < a.space_size; ++x1) {
                for (int x2 = 0; x2 < b.space_size; ++x2) {
                    row[static_cast<std::size_t>(x1 * b.space_size + x2)] =
                        a.apply(i, x1) * b.space_size + b.apply(j, x2);
                }
            }
        }
    }
    return out;
}

FiniteAction aut_group(const FiniteStructure& m) {
    if (m.domain_size < 1 || m.domain_size > 7) throw DomainError("structure domain size must be between 1 and 7");
    std::vector<std::set<std::vector<int>>> rels;
    for (const auto& r : m.relations) {
        if (r.arity < 1 || r.arity > 3) throw DomainError("relation arity must be between 1 and 3");
        std::set<std::vector<int>> s;
        for (const auto& t : r.tuples) {
            if (t.size() != static_cast<std::size_t>(r.arity)) throw DomainError("tuple length differs from arity");
            for (int v : t) {
                if (v < 0 || v >= m.domain_size) throw DomainError("tuple entry outside the domain");
            }
            s.insert(t);
        }
        rels.push_back(std::move(s));
    }
    std::vector<Perm> autos;
    Perm p = identity_perm(m.domain_size);
    do {
        bool ok = true;
        for (const auto& rel : rels) {
            for (const auto& t : rel) {
                std::vector<int> image;
                for (int v : t) image.push_back(p[static_cast<std::size_t>(v)]);
                if (!rel.count(image)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) autos.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return FiniteAction::natural(FiniteGroup::from_elements(m.domain_size, std::move(autos)));
}

ElementSet stabilizer(const FiniteAction& a, const std::vector<int>& tuple) {
    ElementSet s = a.group.empty_set();
    for (std::size_t g = 0; g < a.group.order(); ++g) {
        s[g] = std::all_of(tuple.begin(), tuple.end(), [&](int x) { return a.apply(g, x) == x; });
    }
    return s;
}

namespace {

constexpr std::uint64_t kUnranked = std::numeric_limits<std::uint64_t>::max();

void check_point(const FiniteAction& a, int x) {
    if (x < 0 || x >= a.space_size) throw DomainError("point outside the space");
}

}  // namespace

std::uint64_t drk_bruteforce(const FiniteStructure& m, const std::vector<int>& a, const std::vector<int>& b) {
    FiniteAction G = aut_group(m);
    for (int x : a) check_point(G, x);
    for (int x : b) check_point(G, x);
    const int n = m.domain_size;
    const std::uint32_t sets = 1U << n;
    // The pointwise stabilizer of a tuple depends only on its set of
    // entries, so parameter tuples are quantified through their entry sets.
    std::vector<ElementSet> stab(sets);
    for (std::uint32_t s = 0; s < sets; ++s) {
        std::vector<int> pts;
        for (int x = 0; x < n; ++x) {
            if (s >> x & 1) pts.push_back(x);
        }
        stab[s] = stabilizer(G, pts);
    }
    auto image = [&](std::size_t g, std::uint32_t s) {
        std::uint32_t r = 0;
        for (int x = 0; x < n; ++x) {
            if (s >> x & 1) r |= 1U << G.apply(g, x);
        }
        return r;
    };
    std::vector<std::uint64_t> rank(sets, kUnranked);
    for (std::uint32_t s = 0; s < sets; ++s) {
        bool fixes = true;
        for (std::size_t g = 0; g < G.group.order() && fixes; ++g) {
            if (!stab[s][g]) continue;
            for (int x : a) fixes = fixes && G.apply(g, x) == x;
        }
        if (fixes) rank[s] = 0;
    }
    for (std::uint64_t level = 1;; ++level) {
        std::vector<std::uint32_t> promoted;
        for (std::uint32_t s = 0; s < sets; ++s) {
            if (rank[s] != kUnranked) continue;
            for (std::uint32_t c = 0; c < sets; ++c) {
                bool all_lower = true;
                for (std::size_t g = 0; g < G.group.order() && all_lower; ++g) {
                    if (stab[s][g]) all_lower = rank[s | image(g, c)] < level;
                }
                if (all_lower) {
                    promoted.push_back(s);
                    break;
                }
            }
        }
        if (promoted.empty()) break;
        for (auto s : promoted) rank[s] = level;
    }
    std::uint32_t bset = 0;
    for (int x : b) bset |= 1U << x;
    if (rank[bset] == kUnranked) throw DomainError("internal consistency: Deissler recursion did not terminate");
    return rank[bset];
}

namespace {

void check_neighborhood(const FiniteGroup& g, const ElementSet& s) {
    if (s.size() != g.order()) throw DomainError("subset size does not match the group order");
    if (!s[g.identity()]) throw DomainError("identity missing from neighborhood");
}

// Level iteration over all identity-containing subsets as states and as
// witnesses W: a state reaches level b+1 when some W has every conjugate
// gWg^-1 (g in the state) at a level <= b.
std::uint64_t exhaustive_rank(const FiniteGroup& g, const ElementSet& base_cover, const ElementSet& u) {
    const std::size_t n = g.order();
    const std::uint32_t states = 1U << (n - 1);
    auto to_set = [&](std::uint32_t m) {
        ElementSet s = g.empty_set();
        s[0] = true;
        for (std::size_t i = 1; i < n; ++i) s[i] = (m >> (i - 1)) & 1;
        return s;
    };
    auto to_mask = [&](const ElementSet& s) {
        std::uint32_t m = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (s[i]) m |= 1U << (i - 1);
        }
        return m;
    };
    std::vector<std::uint64_t> rank(states, kUnranked);
    std::vector<ElementSet> all(states);
    for (std::uint32_t m = 0; m < states; ++m) {
        all[m] = to_set(m);
        if (subset_of(all[m], base_cover)) rank[m] = 0;
    }
    std::vector<std::vector<std::uint32_t>> conj(states, std::vector<std::uint32_t>(n));
    for (std::uint32_t m = 0; m < states; ++m) {
        for (std::size_t x = 0; x < n; ++x) conj[m][x] = to_mask(g.conjugate(all[m], x));
    }
    for (std::uint64_t level = 1;; ++level) {
        std::vector<std::uint32_t> promoted;
        for (std::uint32_t m = 0; m < states; ++m) {
            if (rank[m] != kUnranked) continue;
            for (std::uint32_t w = 0; w < states; ++w) {
                bool ok = true;
                for (std::size_t x = 0; x < n && ok; ++x) {
                    if (all[m][x]) ok = rank[conj[w][x]] < level;
                }
                if (ok) {
                    promoted.push_back(m);
                    break;
                }
            }
        }
        if (promoted.empty()) break;
        for (auto m : promoted) rank[m] = level;
    }
    auto r = rank[to_mask(u)];
    if (r == kUnranked) throw DomainError("internal consistency: rank recursion did not terminate");
    return r;
}

constexpr std::size_t kExhaustiveOrder = 10;

}  // namespace

std::uint64_t rk_bruteforce(const FiniteGroup& g, const ElementSet& v, const ElementSet& u) {
    check_neighborhood(g, v);
    check_neighborhood(g, u);
    if (g.order() <= kExhaustiveOrder) {
        auto r = exhaustive_rank(g, v, u);
        if (r > 1) throw DomainError("internal consistency: finite discrete rank exceeds 1");
        return r;
    }
    // W = {1} has every conjugate inside V, so one step always suffices.
    return subset_of(u, v) ? 0 : 1;
}

std::uint64_t rkstar_bruteforce(const FiniteGroup& g, const ElementSet& v, const ElementSet& u) {
    check_neighborhood(g, v);
    check_neighborhood(g, u);
    // Base case: U is covered by finitely many left translates of V; taking
    // every element of G as a translate, the cover is G.V.
    ElementSet cover = g.product(g.full_set(), v);
    if (g.order() <= kExhaustiveOrder) {
        auto r = exhaustive_rank(g, cover, u);
        if (r != 0) throw DomainError("internal consistency: finite weak rank is nonzero");
        return r;
    }
    return subset_of(u, cover) ? 0 : 1;
}

std::uint64_t group_rank_bruteforce(const FiniteGroup& g) {
    // rk(V, G) is monotone decreasing in V, so V = {1} attains the supremum.
    ElementSet one = g.empty_set();
    one[g.identity()] = true;
    return rk_bruteforce(g, one, g.full_set()) + 1;
}

DynamicsOracle::DynamicsOracle(const FiniteAction& a) : a_(a) {
    validate_action(a);
    const std::size_t n = a.group.order();
    if (n > 12) throw DomainError("group too large for exhaustive dynamics (order > 12)");
    if (a.space_size > 6) throw DomainError("space too large for exhaustive dynamics (size > 6)");
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
        if (m & 1) neighborhoods_.push_back(m);
    }
    for (std::uint32_t m = 1; m < (1U << a.space_size); ++m) open_sets_.push_back(m);
    const std::size_t total = (std::size_t{1} << n) * 4 * static_cast<std::size_t>(a.space_size * a.space_size);
    squiggle_memo_.assign(total, -1);
    precedes_memo_.assign(total, -1);
}

std::uint32_t DynamicsOracle::mask_of(const ElementSet& s) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i]) m |= 1U << i;
    }
    return m;
}

std::size_t DynamicsOracle::slot(std::uint32_t v, int alpha, int x, int y) const {
    const auto m = static_cast<std::size_t>(a_.space_size);
    return ((static_cast<std::size_t>(v) * 4 + static_cast<std::size_t>(alpha)) * m + static_cast<std::size_t>(x)) * m +
           static_cast<std::size_t>(y);
}

bool DynamicsOracle::in_orbit_image(std::uint32_t v, int x, int y) const {
    for (std::size_t g = 0; g < a_.group.order(); ++g) {
        if ((v >> g & 1) && a_.apply(g, y) == x) return true;
    }
    return false;
}

namespace {

void check_args(const FiniteAction& a, std::uint32_t v, int alpha, int x, int y) {
    if (alpha < 0 || alpha > 3) throw DomainError("alpha must be between 0 and 3");
    if (!(v & 1)) throw DomainError("identity missing from neighborhood");
    if (x < 0 || y < 0 || x >= a.space_size || y >= a.space_size) throw DomainError("point outside the space");
}

}  // namespace

bool DynamicsOracle::squiggle(std::uint32_t v, int alpha, int x, int y) {
    check_args(a_, v, alpha, x, y);
    auto& memo = squiggle_memo_[slot(v, alpha, x, y)];
    if (memo >= 0) return memo == 1;
    bool result;
    if (alpha == 0) {
        // Closures of orbit images are the images themselves.
        result = in_orbit_image(v, x, y) && in_orbit_image(v, y, x);
    } else {
        result = true;
        const std::size_t n = a_.group.order();
        for (std::uint32_t w : neighborhoods_) {
            for (std::uint32_t u : open_sets_) {
                if (!(u >> x & 1) && !(u >> y & 1)) continue;
                bool witnessed = false;
                for (std::size_t gx = 0; gx < n && !witnessed; ++gx) {
                    if (!(v >> gx & 1)) continue;
                    int xx = a_.apply(gx, x);
                    if (!(u >> xx & 1)) continue;
                    for (std::size_t gy = 0; gy < n && !witnessed; ++gy) {
                        if (!(v >> gy & 1)) continue;
                        int yy = a_.apply(gy, y);
                        if (!(u >> yy & 1)) continue;
                        bool all = true;
                        for (int beta = 0; beta < alpha && all; ++beta) all = squiggle(w, beta, xx, yy);
                        witnessed = all;
                    }
                }
                if (!witnessed) {
                    result = false;
                    break;
                }
            }
            if (!result) break;
        }
    }
    memo = result ? 1 : 0;
    return result;
}

bool DynamicsOracle::precedes(std::uint32_t v, int alpha, int x, int y) {
    check_args(a_, v, alpha, x, y);
    auto& memo = precedes_memo_[slot(v, alpha, x, y)];
    if (memo >= 0) return memo == 1;
    bool result;
    if (alpha == 0) {
        result = in_orbit_image(v, x, y);
    } else {
        result = true;
        for (std::uint32_t w : neighborhoods_) {
            bool found = false;
            for (std::size_t g = 0; g < a_.group.order() && !found; ++g) {
                if (!(v >> g & 1)) continue;
                int vy = a_.apply(g, y);
                bool all = true;
                for (int beta = 0; beta < alpha && all; ++beta) all = sim(w, beta, vy, x);
                found = all;
            }
            if (!found) {
                result = false;
                break;
            }
        }
    }
    memo = result ? 1 : 0;
    return result;
}

bool DynamicsOracle::sim(std::uint32_t v, int alpha, int x, int y) {
    return precedes(v, alpha, x, y) && precedes(v, alpha, y, x);
}

bool squiggle_bruteforce(const FiniteAction& a, const ElementSet& v, int alpha, int x, int y) {
    DynamicsOracle o(a);
    return o.squiggle(DynamicsOracle::mask_of(v), alpha, x, y);
}

bool sim_bruteforce(const FiniteAction& a, const ElementSet& v, int alpha, int x, int y) {
    DynamicsOracle o(a);
    return o.sim(DynamicsOracle::mask_of(v), alpha, x, y);
}

bool precedes_bruteforce(const FiniteAction& a, const ElementSet& v, int alpha, int x, int y) {
    DynamicsOracle o(a);
    return o.precedes(DynamicsOracle::mask_of(v), alpha, x, y);
}

}  // namespace rankforge
