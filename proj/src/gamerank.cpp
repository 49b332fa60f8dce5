#include "rankforge/gamerank.hpp"

#include <algorithm>
#include <unordered_map>

namespace rankforge {

void validate_game(const OpenGame& g) {
    if (g.alphabet == 0) throw DomainError("game alphabet must be nonempty");
    if (g.horizon == 0 || g.horizon % 2 != 0) throw DomainError("game horizon must be even and positive");
    if (g.horizon > 60) throw DomainError("game horizon exceeds 60");
    for (const auto& w : g.wins) {
        if (w.size() % 2 != 0) throw DomainError("winning prefix of odd length");
        if (w.size() > g.horizon) throw DomainError("winning prefix longer than the horizon");
        for (Move m : w) {
            if (m >= g.alphabet) throw DomainError("winning prefix uses a move outside the alphabet");
        }
    }
}

std::string format_rank(const GameRank& r) { return r.is_infinite() ? "inf" : std::to_string(*r.value); }

namespace {

// Backward induction over the position tree. Memo tables are keyed by
// (length, base-k code) so each call owns its state.
class Solver {
public:
    explicit Solver(const OpenGame& g) : g_(g) {
        validate_game(g);
        // Comparison games probe positions two moves past the horizon.
        long double size = 1;
        for (std::uint32_t i = 0; i < g.horizon + 2; ++i) size *= g.alphabet;
        if (size > static_cast<long double>(1ULL << 56)) throw DomainError("game position space too large");
        for (const auto& w : g.wins) win_keys_.insert(key(w));
    }

    bool covered(GamePosition& p) {
        auto k = key(p);
        if (auto it = covered_.find(k); it != covered_.end()) return it->second;
        bool r = prefix_won(p);
        if (!r && p.size() < g_.horizon) {
            r = true;
            for (Move x = 0; x < g_.alphabet && r; ++x) {
                p.push_back(x);
                r = covered(p);
                p.pop_back();
            }
        }
        covered_.emplace(k, r);
        return r;
    }

    GameRank rank(GamePosition& p) {
        auto k = key(p);
        if (auto it = rank_.find(k); it != rank_.end()) return it->second;
        GameRank r = GameRank::infinity();
        if (covered(p)) {
            r = GameRank::finite(0);
        } else if (p.size() < g_.horizon) {
            if (auto best = best_move(p)) r = GameRank::finite(*best->second.value + 1);
        }
        rank_.emplace(k, r);
        return r;
    }

    // The I-move minimizing the worst II-reply rank, with that rank; nullopt
    // when every I-move admits a reply of infinite rank.
    std::optional<std::pair<Move, GameRank>> best_move(GamePosition& p) {
        std::optional<std::pair<Move, GameRank>> best;
        for (Move x = 0; x < g_.alphabet; ++x) {
            p.push_back(x);
            GameRank worst = GameRank::finite(0);
            for (Move y = 0; y < g_.alphabet && !worst.is_infinite(); ++y) {
                p.push_back(y);
                GameRank c = rank(p);
                p.pop_back();
                if (c.is_infinite() || *c.value > *worst.value) worst = c;
            }
            p.pop_back();
            if (!worst.is_infinite() && (!best || *worst.value < *best->second.value)) best = {x, worst};
        }
        return best;
    }

    bool prefix_won(const GamePosition& p) const {
        std::uint64_t code = 0;
        for (std::size_t len = 0; len <= p.size(); ++len) {
            if (len % 2 == 0 && win_keys_.count(pack(len, code))) return true;
            if (len < p.size()) code = code * g_.alphabet + p[len];
        }
        return false;
    }

private:
    const OpenGame& g_;
    std::unordered_map<std::uint64_t, bool> covered_;
    std::unordered_map<std::uint64_t, GameRank> rank_;
    std::set<std::uint64_t> win_keys_;

    static std::uint64_t pack(std::size_t len, std::uint64_t code) { return (code << 7) | len; }

    std::uint64_t key(const GamePosition& p) const {
        std::uint64_t code = 0;
        for (Move m : p) code = code * g_.alphabet + m;
        return pack(p.size(), code);
    }
};

void check_position(const OpenGame& g, const GamePosition& pos) {
    if (pos.size() % 2 != 0) throw DomainError("game rank is defined at even-length positions");
    if (pos.size() > g.horizon) throw DomainError("position beyond the horizon");
    for (Move m : pos) {
        if (m >= g.alphabet) throw DomainError("position uses a move outside the alphabet");
    }
}

}  // namespace

GameRank grk(const OpenGame& g, const GamePosition& pos) {
    Solver s(g);
    check_position(g, pos);
    GamePosition p = pos;
    return s.rank(p);
}

GameRank grk(const OpenGame& g) { return grk(g, {}); }

Player winner(const OpenGame& g) { return grk(g).is_infinite() ? Player::II : Player::I; }

Strategy extract_strategy(const OpenGame& g) {
    Solver s(g);
    GamePosition root;
    if (s.rank(root).is_infinite()) throw DomainError("Player I has no winning strategy");
    Strategy strat;
    std::vector<GamePosition> stack{root};
    while (!stack.empty()) {
        GamePosition p = std::move(stack.back());
        stack.pop_back();
        if (p.size() >= g.horizon) continue;
        auto best = s.best_move(p);
        if (!best) throw DomainError("internal error: rank-decreasing move missing");
        strat.emplace(p, best->first);
        for (Move y = 0; y < g.alphabet; ++y) {
            GamePosition q = p;
            q.push_back(best->first);
            q.push_back(y);
            stack.push_back(std::move(q));
        }
    }
    return strat;
}

bool strategy_wins(const OpenGame& g, const Strategy& strat) {
    Solver s(g);
    std::vector<GamePosition> stack{GamePosition{}};
    while (!stack.empty()) {
        GamePosition p = std::move(stack.back());
        stack.pop_back();
        if (s.prefix_won(p)) continue;
        if (p.size() >= g.horizon) return false;
        auto it = strat.find(p);
        if (it == strat.end()) return false;
        for (Move y = 0; y < g.alphabet; ++y) {
            GamePosition q = p;
            q.push_back(it->second);
            q.push_back(y);
            stack.push_back(std::move(q));
        }
    }
    return true;
}

namespace {

// Extra symbols of a padded game duplicate its last symbol, which leaves
// every rank unchanged.
OpenGame pad_alphabet(const OpenGame& g, std::uint32_t k) {
    if (g.alphabet == k) return g;
    OpenGame out{k, g.horizon, {}};
    for (const auto& w : g.wins) {
        std::vector<GamePosition> variants{GamePosition{}};
        for (Move m : w) {
            std::vector<GamePosition> next;
            for (const auto& v : variants) {
                auto v2 = v;
                v2.push_back(m);
                next.push_back(v2);
                if (m + 1 == g.alphabet) {
                    for (Move extra = g.alphabet; extra < k; ++extra) {
                        auto v3 = v;
                        v3.push_back(extra);
                        next.push_back(v3);
                    }
                }
            }
            variants = std::move(next);
        }
        out.wins.insert(variants.begin(), variants.end());
    }
    return out;
}

constexpr std::size_t kNever = static_cast<std::size_t>(-1);

OpenGame comparison_game(const OpenGame& a_in, const OpenGame& b_in, bool strict) {
    validate_game(a_in);
    validate_game(b_in);
    const std::uint32_t k = std::max(a_in.alphabet, b_in.alphabet);
    OpenGame a = pad_alphabet(a_in, k);
    OpenGame b = pad_alphabet(b_in, k);
    // Raising a horizon adds no winning prefixes, so both games keep their ranks.
    a.horizon = b.horizon = std::max(a.horizon, b.horizon);
    const std::uint32_t horizon = a.horizon + 2;
    Solver sa(a), sb(b);

    OpenGame out{k * k, horizon, {}};
    GamePosition run(horizon, 0);
    for (;;) {
        // Interleaved move m encodes the pair (a-move, b-move) as a*k + b.
        // The A-run is a_0 a_1 ...; the B-run is b_1 b_2 ... (b_0 is dropped).
        GamePosition arun, brun;
        std::size_t n_a = kNever, n_b = kNever;
        if (sa.covered(arun)) n_a = 0;
        if (sb.covered(brun)) n_b = 0;
        for (std::size_t i = 0; i < horizon; ++i) {
            arun.push_back(run[i] / k);
            if (n_a == kNever && sa.covered(arun)) n_a = arun.size();
            if (i > 0) {
                brun.push_back(run[i] % k);
                if (n_b == kNever && sb.covered(brun)) n_b = brun.size();
            }
        }
        // Only cylinders of length < horizon are observed for the B-run.
        bool won = strict ? (n_a != kNever && n_a < n_b) : (n_b == kNever || n_a <= n_b);
        if (won) out.wins.insert(run);

        std::size_t i = horizon;
        while (i > 0 && run[i - 1] + 1 == out.alphabet) run[--i] = 0;
        if (i == 0) break;
        ++run[i - 1];
    }
    return out;
}

}  // namespace

OpenGame le_game(const OpenGame& a, const OpenGame& b) { return comparison_game(a, b, false); }

OpenGame lt_game(const OpenGame& a, const OpenGame& b) { return comparison_game(a, b, true); }

CliGame cli_game(const FiniteGroup& group, const ElementSet& v, std::uint32_t horizon) {
    if (v.size() != group.order()) throw DomainError("subset size does not match the group order");
    if (!v[group.identity()]) throw DomainError("V must contain the identity");
    if (!group.is_symmetric(v)) throw DomainError("V must be symmetric");
    if (horizon == 0 || horizon % 2 != 0) throw DomainError("game horizon must be even and positive");

    // Inverse-closed classes {x, x^-1} of non-identity elements, by least member.
    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool> seen(group.order(), false);
    for (std::size_t x = 1; x < group.order(); ++x) {
        if (seen[x]) continue;
        std::vector<std::size_t> cls{x};
        seen[x] = true;
        if (!seen[group.inv(x)]) {
            cls.push_back(group.inv(x));
            seen[group.inv(x)] = true;
        }
        classes.push_back(cls);
    }
    if (classes.size() > 12) throw DomainError("symmetric basis too large for exhaustive play");

    CliGame out;
    for (std::uint64_t mask = 0; mask < (1ULL << classes.size()); ++mask) {
        ElementSet s = group.empty_set();
        s[group.identity()] = true;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (mask >> c & 1) {
                for (auto x : classes[c]) s[x] = true;
            }
        }
        out.basis.push_back(std::move(s));
    }
    const auto k = static_cast<std::uint32_t>(out.basis.size());
    out.game.alphabet = k;
    out.game.horizon = horizon;

    auto legal = [&](const ElementSet& prev, const ElementSet& u, const ElementSet& w) {
        ElementSet allowed = group.product(prev, u);
        for (std::size_t g = 0; g < group.order(); ++g) {
            if (allowed[g] && group.conjugate(u, g) == w) return true;
        }
        return false;
    };

    struct Frame {
        GamePosition pos;
        ElementSet prev;
    };
    std::vector<Frame> stack{{GamePosition{}, group.full_set()}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        for (Move u = 0; u < k; ++u) {
            for (Move w = 0; w < k; ++w) {
                GamePosition q = f.pos;
                q.push_back(u);
                q.push_back(w);
                const auto& wset = out.basis[w];
                if (!legal(f.prev, out.basis[u], wset) || subset_of(wset, v)) {
                    out.game.wins.insert(std::move(q));
                } else if (q.size() < horizon) {
                    stack.push_back({std::move(q), wset});
                }
            }
        }
    }
    return out;
}

std::vector<std::uint64_t> cb_node_ranks(const FiniteTree& tree) {
    const std::size_t n = tree.parent.size();
    if (n == 0) throw DomainError("tree must have a root");
    std::size_t roots = 0;
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t i = 0; i < n; ++i) {
        int p = tree.parent[i];
        if (p == -1) {
            ++roots;
        } else if (p < 0 || static_cast<std::size_t>(p) >= n || static_cast<std::size_t>(p) == i) {
            throw DomainError("invalid parent index");
        } else {
            children[static_cast<std::size_t>(p)].push_back(i);
        }
    }
    if (roots != 1) throw DomainError("tree must have exactly one root");
    // Post-order from the root; a node unreachable from it lies on a cycle.
    std::vector<std::uint64_t> rank(n, 0);
    std::vector<std::size_t> order;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        if (tree.parent[i] == -1) stack.push_back(i);
    }
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (auto c : children[x]) stack.push_back(c);
    }
    if (order.size() != n) throw DomainError("parent relation contains a cycle");
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        for (auto c : children[*it]) rank[*it] = std::max(rank[*it], rank[c] + 1);
    }
    return rank;
}

Ordinal cb_rank(const FiniteTree& tree) {
    auto ranks = cb_node_ranks(tree);
    return Ordinal(*std::max_element(ranks.begin(), ranks.end()) + 1);
}

}  // namespace rankforge
