#include "rankforge/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rankforge/codec.hpp"

#ifndef RANKFORGE_DEFAULT_CORPUS
#define RANKFORGE_DEFAULT_CORPUS "corpus"
#endif

namespace rankforge {

namespace {

struct Options {
    bool json = false;
    std::uint64_t seed = 0;
    std::uint64_t bound = 0;
    bool bound_set = false;
    std::string file;
    bool eval = false;
    std::vector<std::string> positional;
};

// A rendered result: `data` is printed under --json, `text` otherwise
// (falling back to the compact JSON dump when no text rendering exists).
struct Result {
    Json data;
    std::string text;
};

using Handler = std::function<Result(const Options&)>;

struct Command {
    CommandInfo info;
    std::size_t arity;  // positional arguments expected
    Handler run;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string text_of(const ZElement& a) {
    std::string out = "[";
    bool first = true;
    for (const auto& [p, v] : a.support) {
        if (!first) out += ", ";
        first = false;
        out += format_position(p) + ":" + std::to_string(v);
    }
    return out + "]";
}

std::string text_of(const TNode& s) { return "ht " + format_ordinal(s.height) + " " + text_of(s.values); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

Result ordinal_result(const Ordinal& a) { return {encode(a), format_ordinal(a)}; }
Result bool_result(bool b) { return {Json(b), yes_no(b)}; }

// The single JSON document of a non-ordinal command: --file, or the
// positional argument read as a file path when such a file exists and as
// inline JSON otherwise.
Json document(const Options& o) {
    std::string text;
    auto slurp = [&](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw DomainError("cannot read input file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    };
    if (!o.file.empty()) {
        slurp(o.file);
    } else if (o.positional.empty()) {
        throw UsageError("missing JSON input (inline document, file path, or --file)");
    } else {
        std::error_code ec;
        if (std::filesystem::is_regular_file(o.positional[0], ec)) {
            slurp(o.positional[0]);
        } else {
            text = o.positional[0];
        }
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DomainError(std::string("malformed JSON input: ") + e.what());
    }
}

Ordinal literal(const Options& o, std::size_t i) { return parse_ordinal(o.positional.at(i)); }

const Json& need(const Json& j, const char* key) {
    if (!j.is_object()) throw DecodeError("/", "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw DecodeError(std::string("/") + key, "missing field");
    return *it;
}

std::string ptr(const char* key) { return std::string("/") + key; }

std::optional<IndexOrder> order_of(const Json& j) {
    if (j.is_object() && j.contains("order")) return decode_index_order(j["order"], "/order");
    return std::nullopt;
}

const IndexOrder* opt(const std::optional<IndexOrder>& o) { return o ? &*o : nullptr; }

std::vector<ZElement> elements(const Json& j, const char* key, const IndexOrder* order) {
    const auto& a = need(j, key);
    if (!a.is_array()) throw DecodeError(ptr(key), "expected an array");
    std::vector<ZElement> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(decode_element(a[i], order, ptr(key) + "/" + std::to_string(i)));
    return out;
}

std::vector<TNode> nodes(const Json& j, const char* key) {
    const auto& a = need(j, key);
    if (!a.is_array()) throw DecodeError(ptr(key), "expected an array");
    std::vector<TNode> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(decode_node(a[i], ptr(key) + "/" + std::to_string(i)));
    return out;
}

ZElement element(const Json& j, const char* key, const IndexOrder* order) {
    return decode_element(need(j, key), order, ptr(key));
}

Ordinal ordinal(const Json& j, const char* key) { return decode_ordinal(need(j, key), ptr(key)); }

std::int64_t int_field(const Json& j, const char* key) {
    const auto& v = need(j, key);
    if (!v.is_number_integer()) throw DecodeError(ptr(key), "expected an integer");
    return v.get<std::int64_t>();
}

// Value map given as [[element, value], ...]; absent elements read 0.
ValueMap value_map(const Json& j, const char* key) {
    std::map<std::string, std::int64_t> table;
    if (j.contains(key)) {
        const auto& a = j[key];
        if (!a.is_array()) throw DecodeError(ptr(key), "expected an array");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto p = ptr(key) + "/" + std::to_string(i);
            if (!a[i].is_array() || a[i].size() != 2 || !a[i][1].is_number_integer()) {
                throw DecodeError(p, "expected an [element, value] pair");
            }
            table[encode(decode_element(a[i][0], nullptr, p + "/0")).dump()] = a[i][1].get<std::int64_t>();
        }
    }
    return [table](const ZElement& x) {
        auto it = table.find(encode(x).dump());
        return it == table.end() ? std::int64_t{0} : it->second;
    };
}

struct GroupInput {
    FiniteGroup group;
    Json doc;
};

GroupInput group_input(const Options& o) {
    Json j = document(o);
    return {decode_group(j), j};
}

ElementSet subset(const GroupInput& g, const char* key, bool default_full) {
    if (!g.doc.contains(key)) {
        if (default_full) return g.group.full_set();
        throw DecodeError(ptr(key), "missing field");
    }
    return decode_element_set(g.doc[key], g.group, ptr(key));
}

int natural_field(const Json& j, const char* key) {
    auto v = int_field(j, key);
    if (v < 0 || v > 1000000) throw DecodeError(ptr(key), "expected a small natural number");
    return static_cast<int>(v);
}

// A game document is either a bare game or {"game": ..., "position": [...]}.
std::pair<OpenGame, GamePosition> game_input(const Options& o) {
    Json j = document(o);
    if (!j.contains("game")) return {decode_game(j), {}};
    OpenGame g = decode_game(j["game"], "/game");
    GamePosition pos;
    if (j.contains("position")) {
        const auto& p = j["position"];
        if (!p.is_array()) throw DecodeError("/position", "expected an array");
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!p[i].is_number_unsigned()) throw DecodeError("/position/" + std::to_string(i), "expected a move");
            pos.push_back(p[i].get<Move>());
        }
    }
    return {g, pos};
}

std::pair<OpenGame, OpenGame> game_pair(const Options& o) {
    Json j = document(o);
    return {decode_game(need(j, "A"), "/A"), decode_game(need(j, "B"), "/B")};
}

Result composed_game(const OpenGame& g) {
    const char* w = winner(g) == Player::I ? "I" : "II";
    return {Json{{"game", encode(g)}, {"winner", w}}, std::string("winner ") + w};
}

Ordinal random_ordinal(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> len(0, 3), coef(1, 5);
    if (depth == 0) return Ordinal(static_cast<std::uint64_t>(len(rng)));
    std::vector<Ordinal> exps;
    for (int i = len(rng); i > 0; --i) exps.push_back(random_ordinal(rng, depth - 1));
    std::sort(exps.begin(), exps.end(), std::greater<>());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    std::vector<OrdinalTerm> terms;
    for (auto& e : exps) terms.push_back(OrdinalTerm{std::move(e), static_cast<std::uint64_t>(coef(rng))});
    return Ordinal::from_terms(std::move(terms));
}

int corpus_run(bool record, std::ostream& out, std::ostream& err);

const std::vector<Command>& commands() {
    static const std::vector<Command> table = {
        // ordinal literals
        {{"ord", "cmp", {"ordinal.compare", "ordinal.parse"}}, 2,
         [](const Options& o) {
             auto c = compare(literal(o, 0), literal(o, 1));
             return Result{Json(to_string(c)), to_string(c)};
         }},
        {{"ord", "add", {"ordinal.add", "ordinal.format"}}, 2,
         [](const Options& o) { return ordinal_result(add(literal(o, 0), literal(o, 1))); }},
        {{"ord", "mul", {"ordinal.mul"}}, 2,
         [](const Options& o) { return ordinal_result(mul(literal(o, 0), literal(o, 1))); }},
        {{"ord", "natadd", {"ordinal.nat_add"}}, 2,
         [](const Options& o) { return ordinal_result(nat_add(literal(o, 0), literal(o, 1))); }},
        {{"ord", "pow", {"ordinal.omega_pow"}}, 1,
         [](const Options& o) { return ordinal_result(omega_pow(literal(o, 0))); }},
        {{"ord", "analyze", {"ordinal.analyze"}}, 1,
         [](const Options& o) {
             auto a = analyze(literal(o, 0));
             Json j{{"kind", to_string(a.kind)}, {"cnf_length", a.cnf_length}, {"indecomposable", a.indecomposable}};
             return Result{j, std::string(to_string(a.kind)) + " cnf_length=" + std::to_string(a.cnf_length) +
                                  " indecomposable=" + yes_no(a.indecomposable)};
         }},
        {{"ord", "random", {}}, 0,
         [](const Options& o) {
             std::mt19937_64 rng(o.seed);
             int depth = o.bound_set ? static_cast<int>(std::min<std::uint64_t>(o.bound, 4)) : 2;
             return ordinal_result(random_ordinal(rng, depth));
         }},

        // ordered Z-lines
        {{"zorder", "cmp", {"zline.compare_backlex"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto order = order_of(j);
             auto c = compare_backlex(element(j, "a", opt(order)), element(j, "b", opt(order)));
             return Result{Json(to_string(c)), to_string(c)};
         }},
        {{"zorder", "erel", {"zline.e_rel"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto order = order_of(j);
             auto e = e_rel(element(j, "a", opt(order)), element(j, "b", opt(order)));
             return Result{encode(e), "(" + format_position(e.position) + ", " + std::to_string(e.shift) + ")"};
         }},
        {{"zorder", "qf", {"zline.qf_type", "zline.qf_equal"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto order = order_of(j);
             if (j.contains("tuple")) return Result{encode(qf_type(elements(j, "tuple", opt(order)))), ""};
             bool eq = qf_equal(qf_type(elements(j, "left", opt(order))), qf_type(elements(j, "right", opt(order))));
             return bool_result(eq);
         }},
        {{"zorder", "auto", {"zline.synth_automorphism"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto order = order_of(j);
             auto phi = synth_automorphism(elements(j, "context", opt(order)), element(j, "a", opt(order)),
                                           element(j, "b", opt(order)));
             return Result{encode(phi), ""};
         }},
        {{"zorder", "apply", {"zline.apply"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto order = order_of(j);
             auto phi = decode_automorphism(need(j, "phi"), opt(order), "/phi");
             if (j.contains("inverse") && j["inverse"].get<bool>()) phi = inverse(phi);
             auto y = apply(phi, element(j, "x", opt(order)));
             return Result{encode(y), text_of(y)};
         }},
        {{"zorder", "hrel", {"zline.h_rel"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto order = decode_index_order(need(j, "order"), "/order");
             return bool_result(h_rel(order, element(j, "a", &order), element(j, "b", &order), ordinal(j, "beta")));
         }},
        {{"zorder", "hrank", {"zline.hausdorff_rank"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             return ordinal_result(hausdorff_rank(decode_index_order(need(j, "order"), "/order")));
         }},
        {{"zorder", "density", {"zline.density_witness"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto order = decode_index_order(need(j, "order"), "/order");
             auto c = density_witness(order, element(j, "a", &order), element(j, "b", &order));
             return Result{encode(c), text_of(c)};
         }},
        {{"zorder", "drkbound", {"zline.drk_upper"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto order = decode_index_order(need(j, "order"), "/order");
             return ordinal_result(drk_upper(order, element(j, "a", &order), element(j, "b", &order)));
         }},

        // group expressions
        {{"rank", "eval", {"grouprank.eval_rank"}}, 1,
         [](const Options& o) {
             auto r = eval_rank(*decode_group_expr(document(o)));
             std::string text = "rank " + format_ordinal(r.rank);
             if (r.marked_pair_rank) text += " marked_pair_rank " + format_ordinal(*r.marked_pair_rank);
             return Result{encode(r), text};
         }},
        {{"rank", "tower", {"grouprank.tower"}}, 1,
         [](const Options& o) {
             auto g = tower(literal(o, 0));
             if (o.eval) return ordinal_result(eval_rank(*g).rank);
             return Result{encode(*g), ""};
         }},
        {{"rank", "classify", {"grouprank.classify"}}, 1,
         [](const Options& o) {
             auto c = classify(*decode_group_expr(document(o)));
             return Result{Json{{"cli", c.cli}, {"tsi", c.tsi}}, "tsi=" + yes_no(c.tsi) + " cli=" + yes_no(c.cli)};
         }},
        {{"rank", "validate", {"grouprank.validate"}}, 1,
         [](const Options& o) {
             auto v = validate(*decode_group_expr(document(o)));
             std::string text = v.empty() ? "ok" : "";
             for (std::size_t i = 0; i < v.size(); ++i) text += (i ? "\n" : "") + v[i];
             return Result{Json(v), text};
         }},

        // games
        {{"game", "solve", {"gamerank.winner", "gamerank.grk"}}, 1,
         [](const Options& o) {
             auto [g, pos] = game_input(o);
             (void)pos;
             const char* w = winner(g) == Player::I ? "I" : "II";
             return Result{Json{{"grk", encode(grk(g))}, {"winner", w}}, ""};
         }},
        {{"game", "rank", {"gamerank.grk"}}, 1,
         [](const Options& o) {
             auto [g, pos] = game_input(o);
             auto r = grk(g, pos);
             return Result{encode(r), format_rank(r)};
         }},
        {{"game", "strategy", {"gamerank.extract_strategy"}}, 1,
         [](const Options& o) {
             auto [g, pos] = game_input(o);
             (void)pos;
             return Result{encode(extract_strategy(g)), ""};
         }},
        {{"game", "le", {"gamerank.le_game"}}, 1,
         [](const Options& o) {
             auto [a, b] = game_pair(o);
             return composed_game(le_game(a, b));
         }},
        {{"game", "lt", {"gamerank.lt_game"}}, 1,
         [](const Options& o) {
             auto [a, b] = game_pair(o);
             return composed_game(lt_game(a, b));
         }},
        {{"game", "cligame", {"gamerank.cli_game"}}, 1,
         [](const Options& o) {
             auto g = group_input(o);
             auto horizon = o.bound_set ? static_cast<std::uint32_t>(o.bound) : 2U;
             auto c = cli_game(g.group, subset(g, "V", false), horizon);
             Json basis = Json::array();
             for (const auto& b : c.basis) basis.push_back(encode(b));
             auto r = grk(c.game);
             return Result{Json{{"alphabet", c.game.alphabet}, {"basis", basis}, {"grk", encode(r)}},
                           "grk " + format_rank(r)};
         }},
        {{"game", "cbrank", {"gamerank.cb_rank"}}, 1,
         [](const Options& o) { return ordinal_result(cb_rank(decode_tree(document(o)))); }},

        // fusion
        {{"fusion", "meet", {"fusion.meet", "fusion.comparable"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto s = decode_node(need(j, "s"), "/s"), t = decode_node(need(j, "t"), "/t");
             auto m = meet(s, t);
             return Result{Json{{"meet", encode(m)}, {"comparable", comparable(s, t)}},
                           text_of(m) + (comparable(s, t) ? " comparable" : " incomparable")};
         }},
        {{"fusion", "covers", {"fusion.covers"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             return bool_result(covers(decode_node(need(j, "s"), "/s"), element(j, "a", nullptr)));
         }},
        {{"fusion", "infcheck", {"fusion.in_F"}}, 1,
         [](const Options& o) { return bool_result(in_F(decode_pair(document(o)))); }},
        {{"fusion", "nhat", {"fusion.nhat"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto phi = nhat(decode_node(need(j, "r"), "/r"), int_field(j, "n"), ordinal(j, "gamma"), ordinal(j, "delta"));
             return Result{encode(phi), ""};
         }},
        {{"fusion", "extend", {"fusion.extend_requirement"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto e = extend_requirement(ordinal(j, "mu"), decode_pair(need(j, "pair"), "/pair"),
                                         decode_node(need(j, "s"), "/s"), decode_node(need(j, "r"), "/r"),
                                         natural_field(j, "side"), ordinal(j, "beta"), elements(j, "C", nullptr));
             Json witness{{"n", e.n}, {"gamma", encode(e.gamma)}, {"delta", encode(e.delta_combined)}};
             return Result{Json{{"pair", encode(e.pair)}, {"witness", witness}}, ""};
         }},
        {{"fusion", "fuse", {"fusion.fuse_value"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             int side = j.contains("default") ? natural_field(j, "default") : 0;
             auto v = fuse_value(decode_pair(need(j, "pair"), "/pair"), [side](const ZElement&) { return side; },
                                 value_map(j, "x0"), value_map(j, "x1"), element(j, "a", nullptr));
             return Result{Json(v), std::to_string(v)};
         }},
        {{"fusion", "glue", {"fusion.glue_system"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             const auto& sys = need(j, "system");
             if (!sys.is_array()) throw DecodeError("/system", "expected an array");
             std::vector<std::pair<TNode, SymAutomorphism>> system;
             for (std::size_t i = 0; i < sys.size(); ++i) {
                 const auto p = "/system/" + std::to_string(i);
                 if (!sys[i].is_object() || !sys[i].contains("node") || !sys[i].contains("phi")) {
                     throw DecodeError(p, "expected {\"node\", \"phi\"}");
                 }
                 system.emplace_back(decode_node(sys[i]["node"], p + "/node"),
                                     decode_automorphism(sys[i]["phi"], nullptr, p + "/phi"));
             }
             return Result{encode(glue_system(system)), ""};
         }},
        {{"fusion", "star", {"fusion.star_check"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto w = star_check(ordinal(j, "mu"), nodes(j, "J"), ordinal(j, "alpha"), elements(j, "A", nullptr),
                                 elements(j, "B", nullptr), ordinal(j, "beta"), o.bound_set ? o.bound : 4);
             if (!w) return Result{Json{{"found", false}}, "NOT_FOUND"};
             return Result{Json{{"found", true}, {"witness", encode(*w)}}, ""};
         }},

        // brute-force oracles
        {{"oracle", "aut", {"oracle.aut_group"}}, 1,
         [](const Options& o) {
             auto a = aut_group(decode_structure(document(o)));
             return Result{Json{{"elements", a.group.elements()}, {"order", a.group.order()}},
                           "order " + std::to_string(a.group.order())};
         }},
        {{"oracle", "drk", {"oracle.drk_bruteforce"}}, 1,
         [](const Options& o) {
             Json j = document(o);
             auto tuple = [&](const char* key) {
                 const auto& t = need(j, key);
                 std::vector<int> out;
                 for (std::size_t i = 0; i < t.size(); ++i) {
                     if (!t[i].is_number_unsigned()) throw DecodeError(ptr(key) + "/" + std::to_string(i), "expected a point");
                     out.push_back(t[i].get<int>());
                 }
                 return out;
             };
             auto r = drk_bruteforce(decode_structure(need(j, "structure"), "/structure"), tuple("a"), tuple("b"));
             return Result{Json(r), std::to_string(r)};
         }},
        {{"oracle", "rk", {"oracle.rk_bruteforce", "oracle.group_rank_bruteforce"}}, 1,
         [](const Options& o) {
             auto g = group_input(o);
             if (!g.doc.contains("V")) {
                 auto r = group_rank_bruteforce(g.group);
                 return Result{Json(r), std::to_string(r)};
             }
             auto r = rk_bruteforce(g.group, subset(g, "V", false), subset(g, "U", true));
             return Result{Json(r), std::to_string(r)};
         }},
        {{"oracle", "rkstar", {"oracle.rkstar_bruteforce"}}, 1,
         [](const Options& o) {
             auto g = group_input(o);
             auto r = rkstar_bruteforce(g.group, subset(g, "V", false), subset(g, "U", true));
             return Result{Json(r), std::to_string(r)};
         }},
        {{"oracle", "squiggle", {"oracle.squiggle_bruteforce"}}, 1,
         [](const Options& o) {
             auto g = group_input(o);
             auto a = FiniteAction::natural(g.group);
             return bool_result(squiggle_bruteforce(a, subset(g, "V", false), natural_field(g.doc, "alpha"),
                                                    natural_field(g.doc, "x"), natural_field(g.doc, "y")));
         }},
        {{"oracle", "sim", {"oracle.sim_bruteforce"}}, 1,
         [](const Options& o) {
             auto g = group_input(o);
             auto a = FiniteAction::natural(g.group);
             return bool_result(sim_bruteforce(a, subset(g, "V", false), natural_field(g.doc, "alpha"),
                                               natural_field(g.doc, "x"), natural_field(g.doc, "y")));
         }},
    };
    return table;
}

void print(const Result& r, const Options& o, std::ostream& out) {
    if (o.json || r.text.empty()) {
        out << r.data.dump() << "\n";
    } else {
        out << r.text << "\n";
    }
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DomainError("missing corpus file '" + p.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs every manifest case and compares "exit <code>", stdout and stderr with the
// committed expectation. With `record`, rewrites the expectations instead.
int corpus_run(bool record, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    const fs::path dir = corpus_dir();
    Json manifest;
    try {
        manifest = Json::parse(read_file(dir / "manifest.json"));
    } catch (const Json::parse_error& e) {
        throw DomainError(std::string("malformed corpus manifest: ") + e.what());
    }
    if (!manifest.is_array()) throw DecodeError("/", "corpus manifest must be an array");
    int failures = 0;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const auto& c = manifest[i];
        const auto p = "/" + std::to_string(i);
        if (!c.is_object() || !c.contains("name") || !c.contains("args")) throw DecodeError(p, "expected {\"name\", \"args\"}");
        const auto name = c["name"].get<std::string>();
        std::vector<std::string> args;
        for (const auto& a : c["args"]) {
            auto s = a.get<std::string>();
            // "@file" names an input file inside the corpus directory.
            if (!s.empty() && s[0] == '@') s = (dir / s.substr(1)).string();
            args.push_back(s);
        }
        std::ostringstream o, e;
        int code = run_cli(args, o, e);
        std::string actual = "exit " + std::to_string(code) + "\n" + o.str();
        if (!e.str().empty()) actual += "--- stderr\n" + e.str();
        const fs::path expected_path = dir / "expected" / (name + ".out");
        if (record) {
            fs::create_directories(expected_path.parent_path());
            std::ofstream(expected_path, std::ios::binary) << actual;
            out << "RECORD " << name << "\n";
            continue;
        }
        std::string expected = read_file(expected_path);
        if (expected == actual) {
            out << "PASS " << name << "\n";
            continue;
        }
        ++failures;
        std::istringstream ex(expected), ac(actual);
        std::string le, la;
        std::size_t line = 0;
        while (true) {
            ++line;
            bool ge = static_cast<bool>(std::getline(ex, le)), ga = static_cast<bool>(std::getline(ac, la));
            if (!ge && !ga) break;
            if (!ge) le = "<eof>";
            if (!ga) la = "<eof>";
            if (le != la) break;
        }
        out << "FAIL " << name << ": line " << line << ": expected '" << le << "' got '" << la << "'\n";
    }
    out << (failures ? "DRIFT " : "OK ") << manifest.size() - static_cast<std::size_t>(failures) << "/"
        << manifest.size() << "\n";
    if (failures) err << failures << " corpus case(s) drifted\n";
    return failures ? 1 : 0;
}

}  // namespace

std::string corpus_dir() {
    if (const char* env = std::getenv("RANKFORGE_CORPUS"); env && *env) return env;
    return RANKFORGE_DEFAULT_CORPUS;
}

const std::vector<CommandInfo>& command_table() {
    static const std::vector<CommandInfo> infos = [] {
        std::vector<CommandInfo> v;
        for (const auto& c : commands()) v.push_back(c.info);
        v.push_back({"corpus", "verify", {"cli.corpus_verify"}});
        v.push_back({"corpus", "record", {}});
        return v;
    }();
    return infos;
}

namespace {

std::string group_description(const std::string& group) {
    static const std::map<std::string, std::string> text{
        {"ord", "ordinal arithmetic on Cantor normal forms"},
        {"zorder", "finitely supported integer maps on a well-order"},
        {"rank", "group constructions and their symbolic ranks"},
        {"game", "bounded open games and their ranks"},
        {"fusion", "nodes, antichain pairs and the fusion map"},
        {"oracle", "brute-force ranks and relations on finite data"},
        {"corpus", "replay or record the example corpus"},
    };
    auto it = text.find(group);
    return it == text.end() ? std::string{} : it->second;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rankforge: ordinal ranks of groups, games and orders"};
    app.require_subcommand(1);
    Options opts;
    app.add_flag("--json", opts.json, "print JSON instead of text");
    app.add_option("--seed", opts.seed, "seed for randomized subcommands");
    auto* bound = app.add_option("--bound", opts.bound, "search bound or horizon");
    app.add_option("--file", opts.file, "read the JSON input from a file");

    std::map<std::string, CLI::App*> groups;
    std::vector<std::pair<CLI::App*, const Command*>> leaves;
    for (const auto& c : commands()) {
        auto*& g = groups[c.info.group];
        if (!g) {
            g = app.add_subcommand(c.info.group, group_description(c.info.group));
            g->require_subcommand(1);
        }
        auto* leaf = g->add_subcommand(c.info.name);
        leaf->fallthrough();
        if (c.arity > 0) leaf->add_option("args", opts.positional)->expected(0, static_cast<int>(c.arity));
        if (c.info.name == "tower") leaf->add_flag("--eval", opts.eval, "print the rank of the tower");
        leaves.emplace_back(leaf, &c);
    }
    auto* corpus = app.add_subcommand("corpus", group_description("corpus"));
    corpus->require_subcommand(1);
    auto* verify = corpus->add_subcommand("verify");
    auto* rec = corpus->add_subcommand("record");
    verify->fallthrough();
    rec->fallthrough();
    // Global flags may appear after the subcommand path.
    app.fallthrough();
    for (auto& [name, g] : groups) g->fallthrough();
    corpus->fallthrough();

    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a == "--seed" || a == "--bound" || a == "--file") {
            ++i;
            continue;
        }
        if (a.empty() || a[0] == '-') continue;
        if (!groups.count(a) && a != "corpus") {
            err << "usage error: unknown subcommand '" << a << "'\n" << app.help();
            return 2;
        }
        break;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }
    opts.bound_set = bound->count() > 0;

    try {
        if (verify->parsed()) return corpus_run(false, out, err);
        if (rec->parsed()) return corpus_run(true, out, err);
        for (const auto& [leaf, c] : leaves) {
            if (!leaf->parsed()) continue;
            bool needs_literals = c->info.group == "ord" || c->info.name == "tower";
            if (needs_literals && opts.positional.size() != c->arity) {
                err << "usage error: expected " << c->arity << " argument(s)\n" << leaf->help();
                return 2;
            }
            print(c->run(opts), opts, out);
            return 0;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no command\n" << app.help();
    return 2;
}

}  // namespace rankforge
