#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "rankforge/cli.hpp"
#include "rankforge/codec.hpp"
#include "support.hpp"

using namespace rankforge;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string pointer_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const DecodeError& e) {
        return e.pointer();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("ordinal encoding") {
    CHECK(encode(O("w^2+3")) == Json::parse("[[[[[],2]],1],[[],3]]"));
    CHECK(encode(Ordinal{}) == Json::array());
    CHECK(decode_ordinal(Json::parse("[[[[[],2]],1],[[],3]]")) == O("w^2+3"));
    CHECK(decode_ordinal(Json("w^2+3")) == O("w^2+3"));
    CHECK(decode_ordinal(Json(7)) == Ordinal(7));
    rftest::Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        auto a = rftest::random_ordinal(rng, 3);
        CHECK(decode_ordinal(Json::parse(encode(a).dump())) == a);
    }
}

TEST_CASE("malformed ordinals report a JSON pointer") {
    CHECK(pointer_of([] { decode_ordinal(Json::parse("[[[],0]]")); }) == "/0/1");
    CHECK(pointer_of([] { decode_ordinal(Json::parse("[[[],1],[[[[],1]],1]]")); }) == "/1/0");
    CHECK(pointer_of([] { decode_ordinal(Json::parse("[[[[\"x\",1]],1]]")); }) == "/0/0/0/0");
    CHECK(pointer_of([] { decode_ordinal(Json::parse("{\"a\":1}")); }) == "");
    CHECK(pointer_of([] { decode_game(Json::parse("{\"alphabet\":2,\"horizon\":2,\"wins\":[[0,\"x\"]]}")); }) ==
          "/wins/0/1");
    CHECK_THROWS_AS(decode_ordinal(Json("w+")), DomainError);
}

TEST_CASE("zline values round-trip") {
    auto order = IndexOrder::sum(IndexOrder::well_order(O("w^2")), IndexOrder::omega_star());
    CHECK(decode_index_order(encode(order)) == order);
    for (const auto& o : {IndexOrder::well_order(5), IndexOrder::omega_star()}) CHECK(decode_index_order(encode(o)) == o);

    ZElement a;
    a.set(Position({0}, O("w+1")), 3);
    a.set(Position::integer(-4, {1}), -2);
    CHECK(decode_element(encode(a), &order) == a);
    CHECK(decode_element(encode(a)["support"], &order) == a);
    CHECK_THROWS_AS(decode_element(Json::parse("{\"support\":[[1,0]]}"), nullptr), DecodeError);

    ZElement b;
    b.set(O("2"), 1);
    b.set(O("w"), -1);
    TNode s{O("2"), b};
    Json pairs = Json::array({Json::array({encode(O("2")), 1}), Json::array({encode(O("w")), -1})});
    CHECK(encode(s) == Json{{"height", encode(O("2"))}, {"support", pairs}});
    CHECK(decode_node(encode(s)) == s);
    CHECK_THROWS_AS(decode_node(Json::parse("{\"height\":3,\"support\":[[1,1]]}")), DecodeError);

    ConditionalShift m;
    m.anchor = b;
    m.threshold = Position(O("1"));
    m.targets = {Position(O("0")), Position(O("1"))};
    m.amount = -3;
    m.scope = s;
    SymAutomorphism phi{{m, ConditionalShift{}}};
    CHECK(decode_automorphism(encode(phi), nullptr) == phi);

    ERel e{Position(O("w")), 2};
    CHECK(decode_erel(encode(e), nullptr) == e);
    auto a2 = a;
    a2.set(Position({0}, O("2")), 5);
    auto t = qf_type({a, a2, ZElement{}});
    CHECK(decode_type(encode(t), &order) == t);
}

TEST_CASE("group expressions round-trip") {
    for (const char* s : {"1", "3", "w", "w+1", "w^2+w+2"}) {
        auto g = tower(O(s));
        auto j = encode(*g);
        CHECK(encode(*decode_group_expr(j)) == j);
        CHECK(eval_rank(*decode_group_expr(j)).rank == O(s));
    }
    CHECK(encode(*tower(1)) == Json::parse("{\"t\":\"trivial\"}"));
    auto lamp = decode_group_expr(Json::parse("{\"t\":\"zwr\",\"inner\":{\"t\":\"discrete\"}}"));
    CHECK(eval_rank(*lamp).rank == Ordinal(3));
    auto bare = decode_group_expr(Json::parse("{\"t\":\"discrete\",\"marked\":false}"));
    CHECK_FALSE(bare->marked);
    CHECK(encode(*bare)["marked"] == false);
    CHECK(pointer_of([] { decode_group_expr(Json::parse("{\"t\":\"zwr\",\"inner\":{\"t\":\"x\"}}")); }) ==
          "/inner/t");

    RankProfile p{O("w+1"), O("w")};
    auto q = decode_rank_profile(encode(p));
    CHECK(q.rank == p.rank);
    CHECK(q.marked_pair_rank == p.marked_pair_rank);
    RankProfile none{Ordinal(1), std::nullopt};
    CHECK_FALSE(decode_rank_profile(encode(none)).marked_pair_rank);
}

TEST_CASE("game values round-trip") {
    OpenGame empty{2, 2, {}};
    CHECK(encode(empty) == Json::parse("{\"alphabet\":2,\"horizon\":2,\"wins\":[]}"));
    CHECK(decode_game(encode(empty)) == empty);
    OpenGame g{3, 4, {{0, 1}, {2, 2, 1, 0}}};
    CHECK(decode_game(encode(g)) == g);
    CHECK_THROWS_AS(decode_game(Json::parse("{\"alphabet\":2,\"horizon\":3,\"wins\":[]}")), DomainError);
    CHECK(encode(GameRank::infinity()) == Json("inf"));
    CHECK(decode_game_rank(encode(GameRank::finite(4))) == GameRank::finite(4));
    CHECK(decode_game_rank(Json("inf")).is_infinite());
    Strategy st{{{}, 1}, {{1, 0}, 2}};
    CHECK(encode(st) == Json::parse("[[[],1],[[1,0],2]]"));
    CHECK(decode_strategy(encode(st)) == st);
}

TEST_CASE("fusion and oracle values round-trip") {
    ZElement x;
    x.set(O("3"), 1);
    FPair p{{TNode{O("1"), x}}, {TNode{O("0"), {}}}};
    CHECK(decode_pair(encode(p)) == p);

    FiniteStructure m{3, {Relation{"E", 2, {{0, 1}, {1, 2}}}, Relation{"P", 1, {{2}}}}};
    auto m2 = decode_structure(encode(m));
    CHECK(encode(m2) == encode(m));
    CHECK(m2.domain_size == 3);
    CHECK_THROWS_AS(decode_structure(Json::parse("{\"n\":2,\"relations\":[{\"name\":\"E\",\"arity\":2,\"tuples\":[[0,5]]}]}")),
                    DomainError);

    auto g = decode_group(Json::parse("{\"degree\":3,\"generators\":[[1,2,0]]}"));
    CHECK(g.order() == 3);
    ElementSet v{true, false, true};
    CHECK(decode_element_set(encode(v), g) == v);
    CHECK(decode_tree(Json::parse("{\"parent\":[-1,0,0]}")).parent == std::vector<int>{-1, 0, 0});
}

TEST_CASE("cli examples") {
    auto r = cli({"ord", "natadd", "w+1", "w"});
    CHECK(r.code == 0);
    CHECK(r.out == "w*2+1\n");
    r = cli({"rank", "tower", "w+2", "--eval"});
    CHECK(r.code == 0);
    CHECK(r.out == "w+2\n");
    r = cli({"game", "solve", "{\"alphabet\":2,\"horizon\":2,\"wins\":[[0,0],[0,1]]}"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out) == Json::parse("{\"winner\":\"I\",\"grk\":1}"));
    r = cli({"--json", "rank", "eval", "{\"t\":\"zwr\",\"inner\":{\"t\":\"discrete\"}}"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["rank"] == encode(Ordinal(3)));
    r = cli({"ord", "cmp", "w", "w+1", "--json"});
    CHECK(r.out == "\"LT\"\n");
}

TEST_CASE("cli exit codes") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"ord"}).code == 2);
    CHECK(cli({"ord", "add", "w"}).code == 2);
    CHECK(cli({"ord", "add", "w+", "1"}).code == 1);
    CHECK(cli({"rank", "tower", "0"}).code == 1);
    auto r = cli({"game", "solve", "{\"alphabet\":2,\"horizon\":2,\"wins\":[[0]]}"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") == 0);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--seed", "5", "ord", "random"},
             {"--json", "rank", "tower", "w^2+w+3"},
             {"--json", "game", "strategy", "{\"alphabet\":3,\"horizon\":4,\"wins\":[[0,0],[0,1],[0,2,1,0],[0,2,1,1],[0,2,1,2]]}"}}) {
        auto a = cli(args), b = cli(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("every module operation is reachable from a subcommand") {
    const std::vector<std::string> operations{
        "ordinal.compare", "ordinal.add", "ordinal.mul", "ordinal.nat_add", "ordinal.omega_pow", "ordinal.analyze",
        "ordinal.parse", "zline.compare_backlex", "zline.e_rel", "zline.qf_type", "zline.synth_automorphism",
        "zline.apply", "zline.h_rel", "zline.hausdorff_rank", "zline.density_witness", "zline.drk_upper",
        "grouprank.tower", "grouprank.eval_rank", "grouprank.classify", "grouprank.validate", "gamerank.grk",
        "gamerank.winner", "gamerank.extract_strategy", "gamerank.le_game", "gamerank.lt_game", "gamerank.cli_game",
        "gamerank.cb_rank", "fusion.meet", "fusion.comparable", "fusion.covers", "fusion.in_F", "fusion.nhat",
        "fusion.extend_requirement", "fusion.fuse_value", "fusion.glue_system", "fusion.star_check",
        "oracle.aut_group", "oracle.drk_bruteforce", "oracle.rk_bruteforce", "oracle.rkstar_bruteforce",
        "oracle.squiggle_bruteforce", "oracle.sim_bruteforce", "cli.corpus_verify"};
    std::set<std::string> reachable;
    for (const auto& c : command_table()) reachable.insert(c.operations.begin(), c.operations.end());
    for (const auto& op : operations) CHECK_MESSAGE(reachable.count(op) == 1, op);

    const std::set<std::pair<std::string, std::string>> tree{
        {"ord", "cmp"},       {"ord", "add"},          {"ord", "mul"},        {"ord", "natadd"},
        {"ord", "pow"},       {"ord", "analyze"},      {"zorder", "cmp"},     {"zorder", "erel"},
        {"zorder", "qf"},     {"zorder", "auto"},      {"zorder", "hrel"},    {"zorder", "hrank"},
        {"zorder", "density"}, {"zorder", "drkbound"}, {"rank", "eval"},      {"rank", "tower"},
        {"rank", "classify"}, {"rank", "validate"},    {"game", "solve"},     {"game", "rank"},
        {"game", "strategy"}, {"game", "le"},          {"game", "lt"},        {"game", "cligame"},
        {"game", "cbrank"},   {"fusion", "meet"},      {"fusion", "infcheck"}, {"fusion", "extend"},
        {"fusion", "fuse"},   {"fusion", "glue"},      {"fusion", "star"},    {"oracle", "aut"},
        {"oracle", "drk"},    {"oracle", "rk"},        {"oracle", "rkstar"},  {"oracle", "squiggle"},
        {"oracle", "sim"}};
    std::set<std::pair<std::string, std::string>> present;
    for (const auto& c : command_table()) present.insert({c.group, c.name});
    for (const auto& leaf : tree) CHECK_MESSAGE(present.count(leaf) == 1, (leaf.first + " " + leaf.second));
}

TEST_CASE("corpus drift is reported by case name") {
    namespace fs = std::filesystem;
    const fs::path shipped = corpus_dir();
    const fs::path copy = fs::temp_directory_path() / "rankforge_corpus_drift";
    fs::remove_all(copy);
    fs::copy(shipped, copy, fs::copy_options::recursive);
    ::setenv("RANKFORGE_CORPUS", copy.c_str(), 1);

    auto clean = cli({"corpus", "verify"});
    CHECK(clean.code == 0);
    CHECK(clean.out.find("OK ") != std::string::npos);

    std::ofstream(copy / "expected" / "ord_natadd.out", std::ios::trunc) << "exit 0\nw*2\n";
    auto drift = cli({"corpus", "verify"});
    CHECK(drift.code == 1);
    CHECK(drift.out.find("FAIL ord_natadd: line 2: expected 'w*2' got 'w*2+1'") != std::string::npos);
    CHECK(drift.err == "1 corpus case(s) drifted\n");

    fs::remove(copy / "manifest.json");
    auto missing = cli({"corpus", "verify"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("missing corpus file") != std::string::npos);

    ::unsetenv("RANKFORGE_CORPUS");
    fs::remove_all(copy);
}
