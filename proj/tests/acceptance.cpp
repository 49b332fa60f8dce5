// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fusion_gen.hpp"
#include "game_oracle.hpp"
#include "hausdorff_oracle.hpp"
#include "oracle_gen.hpp"
#include "rankforge/cli.hpp"
#include "rankforge/fusion.hpp"
#include "rankforge/gamerank.hpp"
#include "rankforge/grouprank.hpp"
#include "rankforge/oracle.hpp"
#include "rankforge/ordinal.hpp"
#include "rankforge/zline.hpp"
#include "support.hpp"

using namespace rankforge;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

// Collects the first failure of a criterion; later ones are counted only.
struct Check {
    std::string first;
    std::size_t failures = 0;
    std::size_t checks = 0;

    void expect(bool ok, const std::function<std::string()>& what) {
        ++checks;
        if (ok) return;
        if (failures++ == 0) first = what();
    }
};

int failed_criteria = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        ++c.failures;
        c.first = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    bool slow = limit_seconds > 0 && secs > limit_seconds;
    bool ok = c.failures == 0 && !slow;
    line << (ok ? "PASS" : "FAIL") << " " << id << " " << name << ": " << c.checks << " checks, " << c.failures
         << " failures, " << std::fixed;
    line.precision(3);
    line << secs << "s";
    if (limit_seconds > 0) line << " (limit " << limit_seconds << "s)";
    if (c.failures > 0) line << "; first: " << c.first;
    if (slow) line << "; over time limit";
    std::cout << line.str() << std::endl;
    if (!ok) ++failed_criteria;
}

std::string show(const Ordinal& a) { return format_ordinal(a); }

// Drops the terms of x whose exponent is not below lambda, leaving x < w^lambda.
Ordinal below_power(const Ordinal& x, const Ordinal& lambda) {
    std::vector<OrdinalTerm> kept;
    for (const auto& t : x.terms()) {
        if (t.exponent < lambda) kept.push_back(t);
    }
    return Ordinal::from_terms(std::move(kept));
}

std::vector<Position> pool_w2() {
    std::vector<Position> p;
    for (const char* s : {"0", "1", "2", "3", "w", "w+1", "w+2", "w*2", "w*2+5", "w*7+1"}) p.emplace_back(O(s));
    return p;
}

std::string show(const ZElement& a) {
    std::string s = "{";
    for (const auto& [p, v] : a.support) s += format_position(p) + ":" + std::to_string(v) + " ";
    return s + "}";
}

}  // namespace

int main() {
    criterion(1, "tower fidelity", 1.0, [](Check& c) {
        for (const char* s : {"1", "2", "3", "5", "w", "w+1", "w*2", "w^2", "w^2+w+3", "w^w", "w^w+w^2*2+1"}) {
            auto r = eval_rank(*tower(O(s))).rank;
            c.expect(r == O(s), [&] { return std::string("rank(tower ") + s + ") = " + show(r); });
        }
    });

    criterion(2, "lamplighter rank", 0, [](Check& c) {
        auto r = eval_rank(*GroupExpr::zwreath(GroupExpr::discrete())).rank;
        c.expect(r == Ordinal(3), [&] { return "rank " + show(r); });
    });

    criterion(3, "comparison-game lemma", 300.0, [](Check& c) {
        // Win sets over alphabet 2, horizon 2: any subset of the empty
        // prefix and the four length-2 sequences.
        std::vector<OpenGame> sets;
        for (unsigned mask = 0; mask < 32; ++mask) {
            OpenGame g{2, 2, {}};
            for (unsigned i = 0; i < 4; ++i) {
                if (mask >> i & 1) g.wins.insert({i / 2, i % 2});
            }
            if (mask & 16) g.wins.insert({});
            sets.push_back(g);
        }
        auto check_pair = [&](const OpenGame& a, const OpenGame& b) {
            auto ra = rftest::to_rank(rftest::MinimaxOracle(a).rank({}));
            auto rb = rftest::to_rank(rftest::MinimaxOracle(b).rank({}));
            bool le = winner(le_game(a, b)) == Player::I;
            bool lt = winner(lt_game(a, b)) == Player::I;
            auto desc = [&] { return "grk " + format_rank(ra) + " vs " + format_rank(rb); };
            c.expect(le == rftest::rank_le(ra, rb), desc);
            c.expect(lt == rftest::rank_lt(ra, rb), desc);
        };
        auto family = rftest::length_two_family();
        for (const auto& a : family) {
            for (const auto& b : family) check_pair(a, b);
        }
        rftest::Rng rng(303);
        for (int i = 0; i < 10000; ++i) check_pair(sets[rftest::uniform(rng, 0, 31)], sets[rftest::uniform(rng, 0, 31)]);
    });

    criterion(4, "CLI game rank equals rk on groups of order <= 8", 120.0, [](Check& c) {
        rftest::Rng rng(404);
        for (const auto& ng : rftest::small_groups()) {
            auto g = FiniteGroup::generate(ng.degree, ng.generators);
            auto basis = cli_game(g, g.full_set()).basis;
            // Every finite rank here is at most 1, which horizon 2 already
            // resolves; smaller bases are also played to horizon 4.
            const std::uint32_t horizon = basis.size() <= 16 ? 4 : 2;
            for (int i = 0; i < 50; ++i) {
                const auto& v = basis[rftest::uniform(rng, 0, basis.size() - 1)];
                auto expected = GameRank::finite(rk_bruteforce(g, v, g.full_set()));
                auto got = grk(cli_game(g, v, horizon).game);
                c.expect(got == expected, [&] {
                    return std::string(ng.name) + ": grk " + format_rank(got) + ", rk " + format_rank(expected);
                });
            }
        }
    });

    criterion(5, "Deissler rank equals stabilizer rank", 0, [](Check& c) {
        rftest::Rng rng(505);
        for (int i = 0; i < 500; ++i) {
            auto m = rftest::random_structure(rng, 5);
            auto a = rftest::random_tuple(rng, m.domain_size, 3);
            auto b = rftest::random_tuple(rng, m.domain_size, 3);
            auto act = aut_group(m);
            auto d = drk_bruteforce(m, a, b);
            auto r = rk_bruteforce(act.group, stabilizer(act, a), stabilizer(act, b));
            c.expect(d == r, [&] { return "drk " + std::to_string(d) + ", rk " + std::to_string(r); });
        }
    });

    criterion(6, "natural sum algebra below w^(w^3)", 0, [](Check& c) {
        rftest::Rng rng(606);
        for (int i = 0; i < 10000; ++i) {
            auto a = rftest::random_below_w_w3(rng);
            auto b = rftest::random_below_w_w3(rng);
            auto d = rftest::random_below_w_w3(rng);
            auto desc = [&] { return show(a) + ", " + show(b) + ", " + show(d); };
            c.expect(nat_add(a, b) == nat_add(b, a), desc);
            c.expect(nat_add(nat_add(a, b), d) == nat_add(a, nat_add(b, d)), desc);
            if (a < b) c.expect(nat_add(a, d) < nat_add(b, d) && nat_add(d, a) < nat_add(d, b), desc);
            auto lambda = rftest::random_cnf(rng, 3, 3, [&] { return Ordinal(rftest::uniform(rng, 0, 2)); });
            auto cap = omega_pow(lambda);
            auto x = below_power(a, lambda), y = below_power(b, lambda);
            c.expect(add(x, y) < cap && nat_add(x, y) < cap, [&] { return "closure under w^" + show(lambda) + ": " + desc(); });
        }
        c.expect(add(1, Ordinal::omega()) == Ordinal::omega(), [] { return std::string("1+w != w"); });
        c.expect(add(Ordinal::omega(), 1) != Ordinal::omega(), [] { return std::string("w+1 == w"); });
        c.expect(nat_add(1, Ordinal::omega()) == add(Ordinal::omega(), 1), [] { return std::string("1 (+) w != w+1"); });
    });

    criterion(7, "Hausdorff derivatives", 0, [](Check& c) {
        for (int n = 1; n <= 4; ++n) {
            rftest::TruncatedDerivatives d(n, n <= 3 ? 2 : 1);
            auto r = hausdorff_rank(IndexOrder::well_order(Ordinal(static_cast<std::uint64_t>(n))));
            c.expect(r == Ordinal(static_cast<std::uint64_t>(d.fixpoint())),
                     [&] { return "Z[" + std::to_string(n) + "]: rank " + show(r); });
        }
        const Ordinal top = O("w^2+3");
        const auto order = IndexOrder::well_order(top);
        c.expect(hausdorff_rank(order) == top, [] { return std::string("rank of Z[w^2+3]"); });
        std::vector<Ordinal> pool;
        for (const char* s : {"0", "1", "2", "5", "w", "w+1", "w*2", "w*3+4", "w^2", "w^2+1", "w^2+2"}) pool.push_back(O(s));
        std::vector<rftest::TruncatedDerivatives> oracles;
        for (int n = 1; n <= 3; ++n) oracles.emplace_back(n, 2);
        rftest::Rng rng(707);
        for (int trial = 0; trial < 1000; ++trial) {
            // Truncation check on a random support.
            const int n = static_cast<int>(rftest::uniform(rng, 1, 3));
            std::vector<Ordinal> P = pool;
            std::shuffle(P.begin(), P.end(), rng);
            P.resize(static_cast<std::size_t>(n));
            std::sort(P.begin(), P.end());
            std::vector<int> va(static_cast<std::size_t>(n)), vb(static_cast<std::size_t>(n));
            ZElement a, b;
            for (std::size_t i = 0; i < P.size(); ++i) {
                va[i] = static_cast<int>(rftest::uniform_signed(rng, -2, 2));
                vb[i] = rftest::uniform(rng, 0, 2) ? va[i] : static_cast<int>(rftest::uniform_signed(rng, -2, 2));
                a.set(Position(P[i]), va[i]);
                b.set(Position(P[i]), vb[i]);
            }
            const auto& beta = pool[rftest::uniform(rng, 0, pool.size() - 1)];
            int k = static_cast<int>(std::count_if(P.begin(), P.end(), [&](const Ordinal& p) { return p < beta; }));
            c.expect(h_rel(order, a, b, beta) == oracles[static_cast<std::size_t>(n - 1)].related(k, va, vb),
                     [&] { return show(a) + " vs " + show(b) + " at " + show(beta); });

            // Equivalence and monotonicity on random elements.
            std::vector<Position> ppool(pool.begin(), pool.end());
            auto x = rftest::random_element(rng, ppool, 3, 2);
            auto y = rftest::random_element(rng, ppool, 3, 2);
            auto z = rftest::random_element(rng, ppool, 3, 2);
            const auto& b1 = pool[rftest::uniform(rng, 0, pool.size() - 1)];
            const auto& b2 = pool[rftest::uniform(rng, 0, pool.size() - 1)];
            const Ordinal lo = std::min(b1, b2), hi = std::max(b1, b2);
            auto desc = [&] { return show(x) + ", " + show(y) + ", " + show(z) + " at " + show(lo); };
            c.expect(h_rel(order, x, x, lo), desc);
            c.expect(h_rel(order, x, y, lo) == h_rel(order, y, x, lo), desc);
            if (h_rel(order, x, y, lo) && h_rel(order, y, z, lo)) c.expect(h_rel(order, x, z, lo), desc);
            if (h_rel(order, x, y, lo)) c.expect(h_rel(order, x, y, hi), desc);
        }
    });

    criterion(8, "automorphism synthesis in Z[w^2]", 0, [](Check& c) {
        rftest::Rng rng(808);
        const auto pool = pool_w2();
        int built = 0;
        while (built < 1000) {
            std::vector<ZElement> ctx;
            for (auto n = rftest::uniform(rng, 0, 2); n > 0; --n) ctx.push_back(rftest::random_element(rng, pool, 3, 2));
            auto a = rftest::random_element(rng, pool, 3, 2);
            auto b = a;
            for (auto n = rftest::uniform(rng, 1, 2); n > 0; --n) {
                b.set(pool[rftest::uniform(rng, 0, pool.size() - 1)], rftest::uniform_signed(rng, -2, 2));
            }
            auto ta = ctx, tb = ctx;
            ta.push_back(a);
            tb.push_back(b);
            if (!qf_equal(qf_type(ta), qf_type(tb))) continue;
            ++built;
            auto phi = synth_automorphism(ctx, a, b);
            c.expect(apply(phi, a) == b, [&] { return show(a) + " not sent to " + show(b); });
            for (const auto& x : ctx) c.expect(apply(phi, x) == x, [&] { return "context moved: " + show(x); });
            for (int probe = 0; probe < 100; ++probe) {
                auto x = rftest::random_element(rng, pool, 4, 3);
                auto y = rftest::random_element(rng, pool, 4, 3);
                auto px = apply(phi, x), py = apply(phi, y);
                auto desc = [&] { return "probe " + show(x) + ", " + show(y); };
                c.expect(compare_backlex(px, py) == compare_backlex(x, y), desc);
                if (!(x == y)) c.expect(e_rel(px, py) == e_rel(x, y), desc);
            }
        }
    });

    criterion(9, "density witnesses in Z[w*]", 0, [](Check& c) {
        rftest::Rng rng(909);
        std::vector<Position> pool;
        for (std::int64_t k = -9; k <= 0; ++k) pool.push_back(Position::integer(k));
        const auto star = IndexOrder::omega_star();
        int built = 0;
        while (built < 1000) {
            auto a = rftest::random_element(rng, pool, 3, 3);
            auto b = rftest::random_element(rng, pool, 3, 3);
            if (compare_backlex(a, b) != Cmp::LT) continue;
            ++built;
            auto w = density_witness(star, a, b);
            c.expect(compare_backlex(a, w) == Cmp::LT && compare_backlex(w, b) == Cmp::LT,
                     [&] { return show(a) + " < " + show(w) + " < " + show(b) + " fails"; });
        }
    });

    criterion(10, "extension step stays in the antichain-pair class", 0, [](Check& c) {
        rftest::Rng rng(1010);
        for (int i = 0; i < 1000; ++i) {
            auto mu = i % 2 == 0 ? Ordinal::omega() : O("w^2");
            auto in = rftest::random_extension(rng, mu);
            auto ext = extend_requirement(mu, in.pair, in.s, in.r, in.side, in.beta, in.C);
            c.expect(in_F(ext.pair), [&] { return "extended pair leaves F, mu = " + show(mu); });
            const auto& grown = in.side == 0 ? ext.pair.F0 : ext.pair.F1;
            auto phi = nhat(in.r, ext.n, ext.gamma, ext.delta_combined);
            for (const auto& x : in.C) {
                auto image = apply(phi, x);
                bool covered = std::any_of(grown.begin(), grown.end(),
                                           [&](const TNode& t) { return t.height >= in.beta && covers(t, image); });
                c.expect(covered, [&] { return "image " + show(image) + " uncovered at height " + show(in.beta); });
            }
        }
    });

    criterion(11, "dynamical relations on small actions", 0, [](Check& c) {
        rftest::Rng rng(1111);
        const auto groups = rftest::groups_up_to(6);
        for (const auto& g : groups) {
            const auto full = DynamicsOracle::mask_of(g.full_set());
            const int rank = static_cast<int>(group_rank_bruteforce(g));
            for (int rep = 0; rep < 4; ++rep) {
                auto act = rftest::random_action(rng, g, 5);
                DynamicsOracle o(act);
                const auto m = static_cast<std::uint64_t>(act.space_size - 1);
                for (int i = 0; i < 100; ++i) {
                    auto v = rftest::random_neighborhood(rng, g, false);
                    auto vm = DynamicsOracle::mask_of(v);
                    auto bigger = v;
                    for (std::size_t e = 0; e < g.order(); ++e) bigger[e] = bigger[e] || rftest::uniform(rng, 0, 1);
                    const int alpha = static_cast<int>(rftest::uniform(rng, 0, 2));
                    const int x = static_cast<int>(rftest::uniform(rng, 0, m));
                    const int y = static_cast<int>(rftest::uniform(rng, 0, m));
                    const std::size_t h = rftest::uniform(rng, 0, g.order() - 1);
                    auto desc = [&] { return "alpha " + std::to_string(alpha) + " x " + std::to_string(x) + " y " + std::to_string(y); };
                    bool s = o.squiggle(vm, alpha, x, y);
                    c.expect(s == o.squiggle(vm, alpha, y, x), desc);
                    if (s) {
                        for (int beta = 0; beta < alpha; ++beta) c.expect(o.squiggle(vm, beta, x, y), desc);
                        c.expect(o.squiggle(DynamicsOracle::mask_of(bigger), alpha, x, y), desc);
                    }
                    c.expect(s == o.squiggle(DynamicsOracle::mask_of(g.conjugate(v, h)), alpha, act.apply(h, x),
                                             act.apply(h, y)),
                             desc);
                }
                for (int x = 0; x < act.space_size; ++x) {
                    for (int y = 0; y < act.space_size; ++y) {
                        bool below = true;
                        for (int beta = 0; beta < rank && below; ++beta) below = o.squiggle(full, beta, x, y);
                        if (below) c.expect(o.sim(full, 1, x, y), [&] { return std::string("sim at level one"); });
                    }
                }
            }
        }
        for (int i = 0; i < 200; ++i) {
            const auto& g1 = groups[rftest::uniform(rng, 0, groups.size() - 1)];
            const auto& g2 = groups[rftest::uniform(rng, 0, groups.size() - 1)];
            if (g1.order() * g2.order() > 6) continue;
            auto a1 = rftest::random_action(rng, g1, 3);
            auto a2 = rftest::random_action(rng, g2, 2);
            if (a1.space_size * a2.space_size > 5) continue;
            auto prod = product_action(a1, a2);
            DynamicsOracle o1(a1), o2(a2), op(prod.action);
            for (int j = 0; j < 20; ++j) {
                auto v1 = rftest::random_neighborhood(rng, g1, false);
                auto v2 = rftest::random_neighborhood(rng, g2, false);
                auto v = prod.action.group.empty_set();
                for (std::size_t e = 0; e < v.size(); ++e) v[e] = v1[prod.parts[e].first] && v2[prod.parts[e].second];
                const int alpha = static_cast<int>(rftest::uniform(rng, 0, 2));
                const int x1 = static_cast<int>(rftest::uniform(rng, 0, static_cast<std::uint64_t>(a1.space_size - 1)));
                const int y1 = static_cast<int>(rftest::uniform(rng, 0, static_cast<std::uint64_t>(a1.space_size - 1)));
                const int x2 = static_cast<int>(rftest::uniform(rng, 0, static_cast<std::uint64_t>(a2.space_size - 1)));
                const int y2 = static_cast<int>(rftest::uniform(rng, 0, static_cast<std::uint64_t>(a2.space_size - 1)));
                if (o1.squiggle(DynamicsOracle::mask_of(v1), alpha, x1, y1) &&
                    o2.squiggle(DynamicsOracle::mask_of(v2), alpha, x2, y2)) {
                    c.expect(op.squiggle(DynamicsOracle::mask_of(v), alpha, x1 * prod.right_space + x2,
                                         y1 * prod.right_space + y2),
                             [&] { return std::string("product of related pairs is unrelated"); });
                }
            }
        }
    });

    criterion(12, "corpus verify is byte-identical across runs", 0, [](Check& c) {
        std::ostringstream out1, err1, out2, err2;
        int r1 = run_cli({"corpus", "verify"}, out1, err1);
        int r2 = run_cli({"corpus", "verify"}, out2, err2);
        c.expect(r1 == 0 && r2 == 0, [&] { return "exit " + std::to_string(r1) + "/" + std::to_string(r2) + ": " + err1.str(); });
        c.expect(out1.str() == out2.str() && err1.str() == err2.str(), [] { return std::string("outputs differ"); });
        c.expect(out1.str().find("OK ") != std::string::npos, [&] { return "report: " + out1.str(); });
    });

    std::cout << (failed_criteria == 0 ? "ALL PASS" : std::to_string(failed_criteria) + " criteria failed") << std::endl;
    return failed_criteria == 0 ? 0 : 1;
}
