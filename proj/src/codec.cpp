#include "rankforge/codec.hpp"

#include <algorithm>
#include <limits>

namespace rankforge {

namespace {

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) { throw DecodeError(ptr, msg); }

const Json& field(const Json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) fail(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(at(ptr, key), "missing field");
    return *it;
}

const Json& array(const Json& j, const std::string& ptr) {
    if (!j.is_array()) fail(ptr, "expected an array");
    return j;
}

std::int64_t integer(const Json& j, const std::string& ptr) {
    if (j.is_number_unsigned()) {
        auto v = j.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) fail(ptr, "integer out of range");
        return static_cast<std::int64_t>(v);
    }
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<std::int64_t>();
}

std::uint64_t natural(const Json& j, const std::string& ptr) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        fail(ptr, "expected a natural number");
    }
    return j.get<std::uint64_t>();
}

// The leaf of `order` reached by following `path`, or null when the path
// does not address a leaf.
const IndexOrder* leaf_at(const IndexOrder& order, const std::vector<std::uint8_t>& path) {
    const IndexOrder* cur = &order;
    for (auto step : path) {
        if (cur->kind() != IndexOrder::Kind::Sum) return nullptr;
        cur = step == 0 ? &cur->left() : &cur->right();
    }
    return cur->kind() == IndexOrder::Kind::Sum ? nullptr : cur;
}

}  // namespace

Json encode(const Ordinal& a) {
    Json out = Json::array();
    for (const auto& t : a.terms()) out.push_back(Json::array({encode(t.exponent), t.coefficient}));
    return out;
}

Ordinal decode_ordinal(const Json& j, const std::string& ptr) {
    if (j.is_string()) {
        try {
            return parse_ordinal(j.get<std::string>());
        } catch (const DomainError& e) {
            fail(ptr, e.what());
        }
    }
    if (j.is_number()) return Ordinal(natural(j, ptr));
    array(j, ptr);
    std::vector<OrdinalTerm> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = at(ptr, i);
        const auto& t = j[i];
        if (!t.is_array() || t.size() != 2) fail(p, "expected an [exponent, coefficient] pair");
        terms.push_back(OrdinalTerm{decode_ordinal(t[0], at(p, 0)), natural(t[1], at(p, 1))});
        if (terms.back().coefficient == 0) fail(at(p, 1), "coefficient must be positive");
        if (i > 0 && !(terms.back().exponent < terms[i - 1].exponent)) {
            fail(at(p, 0), "exponents must be strictly decreasing");
        }
    }
    try {
        return Ordinal::from_terms(std::move(terms));
    } catch (const DomainError& e) {
        fail(ptr, e.what());
    }
}

Json encode(const IndexOrder& o) {
    switch (o.kind()) {
        case IndexOrder::Kind::WellOrder:
            return Json{{"kind", "well_order"}, {"bound", encode(o.bound())}};
        case IndexOrder::Kind::OmegaStar:
            return Json{{"kind", "omega_star"}};
        case IndexOrder::Kind::Sum:
            return Json{{"kind", "sum"}, {"left", encode(o.left())}, {"right", encode(o.right())}};
    }
    return {};
}

IndexOrder decode_index_order(const Json& j, const std::string& ptr) {
    const auto& kind = field(j, "kind", ptr);
    if (!kind.is_string()) fail(at(ptr, "kind"), "expected a string");
    const auto k = kind.get<std::string>();
    if (k == "well_order") return IndexOrder::well_order(decode_ordinal(field(j, "bound", ptr), at(ptr, "bound")));
    if (k == "omega_star") return IndexOrder::omega_star();
    if (k == "sum") {
        return IndexOrder::sum(decode_index_order(field(j, "left", ptr), at(ptr, "left")),
                               decode_index_order(field(j, "right", ptr), at(ptr, "right")));
    }
    fail(at(ptr, "kind"), "unknown index order kind '" + k + "'");
}

Json encode(const Position& p) {
    Json key = p.has_ordinal_key() ? encode(p.ordinal_key()) : Json(std::get<std::int64_t>(p.key));
    if (p.path.empty()) return key;
    Json path = Json::array();
    for (auto s : p.path) path.push_back(s);
    return Json{{"path", path}, {"key", key}};
}

Position decode_position(const Json& j, const IndexOrder* order, const std::string& ptr) {
    std::vector<std::uint8_t> path;
    const Json* key = &j;
    std::string key_ptr = ptr;
    if (j.is_object()) {
        const auto& pj = array(field(j, "path", ptr), at(ptr, "path"));
        for (std::size_t i = 0; i < pj.size(); ++i) {
            auto s = natural(pj[i], at(at(ptr, "path"), i));
            if (s > 1) fail(at(at(ptr, "path"), i), "path steps are 0 or 1");
            path.push_back(static_cast<std::uint8_t>(s));
        }
        key = &field(j, "key", ptr);
        key_ptr = at(ptr, "key");
    }
    const IndexOrder* leaf = order ? leaf_at(*order, path) : nullptr;
    if (order && !leaf) fail(ptr, "path does not address a leaf of the index order");
    Position out;
    if (leaf && leaf->kind() == IndexOrder::Kind::OmegaStar) {
        out = Position(path, integer(*key, key_ptr));
    } else {
        out = Position(path, decode_ordinal(*key, key_ptr));
    }
    if (order && !order->contains(out)) fail(ptr, "position lies outside the index order");
    return out;
}

Json encode(const ZElement& a) {
    Json out = Json::array();
    for (const auto& [p, v] : a.support) out.push_back(Json::array({encode(p), v}));
    return Json{{"support", out}};
}

ZElement decode_element(const Json& jin, const IndexOrder* order, const std::string& pin) {
    // A bare pair list is accepted as shorthand for {"support": [...]}.
    const bool bare = jin.is_array();
    const Json& j = bare ? jin : field(jin, "support", pin);
    const std::string ptr = bare ? pin : at(pin, "support");
    array(j, ptr);
    ZElement out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = at(ptr, i);
        if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected a [position, value] pair");
        auto pos = decode_position(j[i][0], order, at(p, 0));
        if (out.support.count(pos)) fail(p, "duplicate position");
        auto v = integer(j[i][1], at(p, 1));
        if (v == 0) fail(at(p, 1), "support values must be nonzero");
        out.set(pos, v);
    }
    return out;
}

Json encode(const TNode& s) {
    return Json{{"height", encode(s.height)}, {"support", encode(s.values)["support"]}};
}

TNode decode_node(const Json& j, const std::string& ptr) {
    TNode s{decode_ordinal(field(j, "height", ptr), at(ptr, "height")),
            decode_element(field(j, "support", ptr), nullptr, at(ptr, "support"))};
    for (const auto& [p, v] : s.values.support) {
        if (!p.path.empty() || p.ordinal_key() < s.height) fail(at(ptr, "support"), "node value below its height");
    }
    return s;
}

Json encode(const ConditionalShift& m) {
    Json targets = Json::array();
    for (const auto& t : m.targets) targets.push_back(encode(t));
    Json out{{"threshold", encode(m.threshold)}, {"targets", targets}, {"amount", m.amount}};
    if (m.anchor) out["anchor"] = encode(*m.anchor);
    if (m.scope) out["scope"] = encode(*m.scope);
    return out;
}

ConditionalShift decode_shift(const Json& j, const IndexOrder* order, const std::string& ptr) {
    ConditionalShift m;
    m.threshold = decode_position(field(j, "threshold", ptr), order, at(ptr, "threshold"));
    const auto& tj = array(field(j, "targets", ptr), at(ptr, "targets"));
    for (std::size_t i = 0; i < tj.size(); ++i) m.targets.push_back(decode_position(tj[i], order, at(at(ptr, "targets"), i)));
    m.amount = integer(field(j, "amount", ptr), at(ptr, "amount"));
    if (j.contains("anchor")) m.anchor = decode_element(j["anchor"], order, at(ptr, "anchor"));
    if (j.contains("scope")) m.scope = decode_node(j["scope"], at(ptr, "scope"));
    return m;
}

Json encode(const SymAutomorphism& phi) {
    Json moves = Json::array();
    for (const auto& m : phi.moves) moves.push_back(encode(m));
    return Json{{"moves", moves}};
}

SymAutomorphism decode_automorphism(const Json& j, const IndexOrder* order, const std::string& ptr) {
    const auto& mj = array(field(j, "moves", ptr), at(ptr, "moves"));
    SymAutomorphism phi;
    for (std::size_t i = 0; i < mj.size(); ++i) phi.moves.push_back(decode_shift(mj[i], order, at(at(ptr, "moves"), i)));
    return phi;
}

Json encode(const ERel& e) { return Json{{"position", encode(e.position)}, {"shift", e.shift}}; }

ERel decode_erel(const Json& j, const IndexOrder* order, const std::string& ptr) {
    return ERel{decode_position(field(j, "position", ptr), order, at(ptr, "position")),
                integer(field(j, "shift", ptr), at(ptr, "shift"))};
}

Json encode(const TypeRecord& t) {
    Json entries = Json::array();
    for (const auto& e : t.entries) {
        entries.push_back(Json{{"order", to_string(e.order)}, {"relation", e.relation ? encode(*e.relation) : Json()}});
    }
    return Json{{"length", t.length}, {"entries", entries}};
}

TypeRecord decode_type(const Json& j, const IndexOrder* order, const std::string& ptr) {
    TypeRecord t;
    t.length = natural(field(j, "length", ptr), at(ptr, "length"));
    const auto& ej = array(field(j, "entries", ptr), at(ptr, "entries"));
    if (ej.size() != t.length * (t.length == 0 ? 0 : t.length - 1) / 2) fail(at(ptr, "entries"), "wrong number of entries");
    for (std::size_t i = 0; i < ej.size(); ++i) {
        const auto p = at(at(ptr, "entries"), i);
        TypeRecord::Entry e;
        const auto& oj = field(ej[i], "order", p);
        const std::string o = oj.is_string() ? oj.get<std::string>() : "";
        if (o == "LT") e.order = Cmp::LT;
        else if (o == "EQ") e.order = Cmp::EQ;
        else if (o == "GT") e.order = Cmp::GT;
        else fail(at(p, "order"), "expected LT, EQ or GT");
        const auto& rj = field(ej[i], "relation", p);
        if (!rj.is_null()) e.relation = decode_erel(rj, order, at(p, "relation"));
        t.entries.push_back(std::move(e));
    }
    return t;
}

namespace {

const char* kind_tag(GroupExpr::Kind k) {
    switch (k) {
        case GroupExpr::Kind::Trivial: return "trivial";
        case GroupExpr::Kind::Discrete: return "discrete";
        case GroupExpr::Kind::Product: return "product";
        case GroupExpr::Kind::LocalDirectProduct: return "ldp";
        case GroupExpr::Kind::ZWreath: return "zwr";
    }
    return "";
}

Json encode_family(const FamilySpec& f) {
    if (f.kind == FamilySpec::Kind::Tower) return Json{{"t", "tower"}, {"bound", encode(f.bound)}};
    Json members = Json::array();
    for (const auto& m : f.members) members.push_back(encode(*m));
    return Json{{"t", "explicit"}, {"members", members}};
}

std::string tag(const Json& j, const std::string& ptr) {
    const auto& t = field(j, "t", ptr);
    if (!t.is_string()) fail(at(ptr, "t"), "expected a string tag");
    return t.get<std::string>();
}

FamilySpec decode_family(const Json& j, const std::string& ptr) {
    const auto t = tag(j, ptr);
    if (t == "tower") return FamilySpec::tower_family(decode_ordinal(field(j, "bound", ptr), at(ptr, "bound")));
    if (t != "explicit") fail(at(ptr, "t"), "unknown family tag '" + t + "'");
    const auto& mj = array(field(j, "members", ptr), at(ptr, "members"));
    std::vector<GroupExprPtr> members;
    for (std::size_t i = 0; i < mj.size(); ++i) members.push_back(decode_group_expr(mj[i], at(at(ptr, "members"), i)));
    return FamilySpec::explicit_family(std::move(members));
}

}  // namespace

Json encode(const GroupExpr& g) {
    Json out{{"t", kind_tag(g.kind)}};
    if (g.kind == GroupExpr::Kind::Product || g.kind == GroupExpr::Kind::LocalDirectProduct) {
        out["family"] = encode_family(g.family);
    }
    if (g.kind == GroupExpr::Kind::ZWreath) out["inner"] = encode(*g.inner);
    if (!g.marked) out["marked"] = false;
    return out;
}

GroupExprPtr decode_group_expr(const Json& j, const std::string& ptr) {
    const auto t = tag(j, ptr);
    GroupExprPtr g;
    if (t == "trivial") g = GroupExpr::trivial();
    else if (t == "discrete") g = GroupExpr::discrete();
    else if (t == "product") g = GroupExpr::product(decode_family(field(j, "family", ptr), at(ptr, "family")));
    else if (t == "ldp") g = GroupExpr::ldp(decode_family(field(j, "family", ptr), at(ptr, "family")));
    else if (t == "zwr") g = GroupExpr::zwreath(decode_group_expr(field(j, "inner", ptr), at(ptr, "inner")));
    else fail(at(ptr, "t"), "unknown group tag '" + t + "'");
    if (j.contains("marked")) {
        if (!j["marked"].is_boolean()) fail(at(ptr, "marked"), "expected a boolean");
        if (!j["marked"].get<bool>()) g = GroupExpr::unmarked(g);
    }
    return g;
}

Json encode(const RankProfile& r) {
    return Json{{"rank", encode(r.rank)}, {"marked_pair_rank", r.marked_pair_rank ? encode(*r.marked_pair_rank) : Json()}};
}

RankProfile decode_rank_profile(const Json& j, const std::string& ptr) {
    RankProfile r{decode_ordinal(field(j, "rank", ptr), at(ptr, "rank")), std::nullopt};
    const auto& m = field(j, "marked_pair_rank", ptr);
    if (!m.is_null()) r.marked_pair_rank = decode_ordinal(m, at(ptr, "marked_pair_rank"));
    return r;
}

Json encode(const OpenGame& g) {
    Json wins = Json::array();
    for (const auto& w : g.wins) wins.push_back(w);
    return Json{{"alphabet", g.alphabet}, {"horizon", g.horizon}, {"wins", wins}};
}

OpenGame decode_game(const Json& j, const std::string& ptr) {
    OpenGame g;
    auto a = natural(field(j, "alphabet", ptr), at(ptr, "alphabet"));
    auto h = natural(field(j, "horizon", ptr), at(ptr, "horizon"));
    if (a == 0 || a > std::numeric_limits<std::uint32_t>::max()) fail(at(ptr, "alphabet"), "alphabet out of range");
    if (h > 60) fail(at(ptr, "horizon"), "horizon out of range");
    g.alphabet = static_cast<std::uint32_t>(a);
    g.horizon = static_cast<std::uint32_t>(h);
    const auto& wj = array(field(j, "wins", ptr), at(ptr, "wins"));
    for (std::size_t i = 0; i < wj.size(); ++i) {
        const auto p = at(at(ptr, "wins"), i);
        array(wj[i], p);
        GamePosition w;
        for (std::size_t k = 0; k < wj[i].size(); ++k) {
            auto m = natural(wj[i][k], at(p, k));
            if (m >= g.alphabet) fail(at(p, k), "move outside the alphabet");
            w.push_back(static_cast<Move>(m));
        }
        g.wins.insert(std::move(w));
    }
    try {
        validate_game(g);
    } catch (const DomainError& e) {
        fail(ptr, e.what());
    }
    return g;
}

Json encode(const GameRank& r) { return r.is_infinite() ? Json("inf") : Json(*r.value); }

Json encode(const Strategy& s) {
    Json out = Json::array();
    for (const auto& [pos, m] : s) out.push_back(Json::array({pos, m}));
    return out;
}

GameRank decode_game_rank(const Json& j, const std::string& ptr) {
    if (j.is_string() && j.get<std::string>() == "inf") return GameRank::infinity();
    return GameRank::finite(natural(j, ptr));
}

Strategy decode_strategy(const Json& j, const std::string& ptr) {
    array(j, ptr);
    Strategy s;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = at(ptr, i);
        if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected a [position, move] pair");
        const auto& pj = array(j[i][0], at(p, 0));
        GamePosition pos;
        for (std::size_t k = 0; k < pj.size(); ++k) {
            auto m = natural(pj[k], at(at(p, 0), k));
            if (m > std::numeric_limits<Move>::max()) fail(at(at(p, 0), k), "move out of range");
            pos.push_back(static_cast<Move>(m));
        }
        auto m = natural(j[i][1], at(p, 1));
        if (m > std::numeric_limits<Move>::max()) fail(at(p, 1), "move out of range");
        if (!s.emplace(std::move(pos), static_cast<Move>(m)).second) fail(p, "duplicate position");
    }
    return s;
}

Json encode(const FPair& p) {
    Json f0 = Json::array(), f1 = Json::array();
    for (const auto& s : p.F0) f0.push_back(encode(s));
    for (const auto& s : p.F1) f1.push_back(encode(s));
    return Json{{"F0", f0}, {"F1", f1}};
}

FPair decode_pair(const Json& j, const std::string& ptr) {
    FPair p;
    for (const char* side : {"F0", "F1"}) {
        const auto sp = at(ptr, side);
        const auto& sj = array(field(j, side, ptr), sp);
        auto& dst = std::string(side) == "F0" ? p.F0 : p.F1;
        for (std::size_t i = 0; i < sj.size(); ++i) dst.push_back(decode_node(sj[i], at(sp, i)));
    }
    return p;
}

Json encode(const FiniteStructure& m) {
    Json rels = Json::array();
    for (const auto& r : m.relations) rels.push_back(Json{{"name", r.name}, {"arity", r.arity}, {"tuples", r.tuples}});
    return Json{{"n", m.domain_size}, {"relations", rels}};
}

FiniteStructure decode_structure(const Json& j, const std::string& ptr) {
    FiniteStructure m;
    auto n = natural(field(j, "n", ptr), at(ptr, "n"));
    if (n < 1 || n > 7) fail(at(ptr, "n"), "domain size must be between 1 and 7");
    m.domain_size = static_cast<int>(n);
    const auto rp = at(ptr, "relations");
    const auto& rj = array(field(j, "relations", ptr), rp);
    for (std::size_t i = 0; i < rj.size(); ++i) {
        const auto p = at(rp, i);
        Relation r;
        const auto& nj = field(rj[i], "name", p);
        if (!nj.is_string()) fail(at(p, "name"), "expected a string");
        r.name = nj.get<std::string>();
        auto ar = natural(field(rj[i], "arity", p), at(p, "arity"));
        if (ar < 1 || ar > 3) fail(at(p, "arity"), "arity must be between 1 and 3");
        r.arity = static_cast<int>(ar);
        const auto tp = at(p, "tuples");
        const auto& tj = array(field(rj[i], "tuples", p), tp);
        for (std::size_t k = 0; k < tj.size(); ++k) {
            const auto& t = array(tj[k], at(tp, k));
            if (t.size() != ar) fail(at(tp, k), "tuple length differs from arity");
            std::vector<int> tuple;
            for (std::size_t c = 0; c < t.size(); ++c) {
                auto v = natural(t[c], at(at(tp, k), c));
                if (v >= n) fail(at(at(tp, k), c), "entry outside the domain");
                tuple.push_back(static_cast<int>(v));
            }
            r.tuples.push_back(std::move(tuple));
        }
        m.relations.push_back(std::move(r));
    }
    return m;
}

FiniteGroup decode_group(const Json& j, const std::string& ptr) {
    auto d = natural(field(j, "degree", ptr), at(ptr, "degree"));
    if (d < 1 || d > 12) fail(at(ptr, "degree"), "degree must be between 1 and 12");
    const auto gp = at(ptr, "generators");
    const auto& gj = array(field(j, "generators", ptr), gp);
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < gj.size(); ++i) {
        const auto& pj = array(gj[i], at(gp, i));
        if (pj.size() != d) fail(at(gp, i), "generator length differs from degree");
        Perm p;
        for (std::size_t k = 0; k < d; ++k) {
            auto v = natural(pj[k], at(at(gp, i), k));
            if (v >= d) fail(at(at(gp, i), k), "image outside the domain");
            p.push_back(static_cast<int>(v));
        }
        auto sorted = p;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != identity_perm(static_cast<int>(d))) fail(at(gp, i), "not a permutation");
        gens.push_back(std::move(p));
    }
    try {
        return FiniteGroup::generate(static_cast<int>(d), gens);
    } catch (const DomainError& e) {
        fail(gp, e.what());
    }
}

Json encode(const ElementSet& s) {
    Json out = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i]) out.push_back(i);
    }
    return out;
}

ElementSet decode_element_set(const Json& j, const FiniteGroup& g, const std::string& ptr) {
    array(j, ptr);
    ElementSet s = g.empty_set();
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto v = natural(j[i], at(ptr, i));
        if (v >= g.order()) fail(at(ptr, i), "element index outside the group");
        s[v] = true;
    }
    return s;
}

FiniteTree decode_tree(const Json& j, const std::string& ptr) {
    const auto pp = at(ptr, "parent");
    const auto& pj = array(field(j, "parent", ptr), pp);
    FiniteTree t;
    int roots = 0;
    for (std::size_t i = 0; i < pj.size(); ++i) {
        auto v = integer(pj[i], at(pp, i));
        if (v < -1 || v >= static_cast<std::int64_t>(pj.size()) || v == static_cast<std::int64_t>(i)) {
            fail(at(pp, i), "parent index out of range");
        }
        roots += v == -1;
        t.parent.push_back(static_cast<int>(v));
    }
    if (roots != 1) fail(pp, "tree must have exactly one root");
    return t;
}

}  // namespace rankforge
