#include "rankforge/zline.hpp"

#include <algorithm>
#include <set>

namespace rankforge {

const Ordinal& Position::ordinal_key() const {
    if (!has_ordinal_key()) throw DomainError("position " + format_position(*this) + " has no ordinal key");
    return std::get<Ordinal>(key);
}

std::strong_ordering operator<=>(const Position& a, const Position& b) {
    // Valid positions of one order never have one path a strict prefix of the
    // other, so the first differing branch decides.
    for (std::size_t i = 0; i < a.path.size() && i < b.path.size(); ++i) {
        if (auto c = a.path[i] <=> b.path[i]; c != 0) return c;
    }
    if (auto c = a.path.size() <=> b.path.size(); c != 0) return c;
    if (a.key.index() != b.key.index()) return a.key.index() <=> b.key.index();
    if (a.has_ordinal_key()) return std::get<Ordinal>(a.key) <=> std::get<Ordinal>(b.key);
    return std::get<std::int64_t>(a.key) <=> std::get<std::int64_t>(b.key);
}

std::string format_position(const Position& p) {
    std::string out;
    for (auto step : p.path) out += step == 0 ? "L." : "R.";
    if (p.has_ordinal_key()) {
        out += format_ordinal(std::get<Ordinal>(p.key));
    } else {
        out += std::to_string(std::get<std::int64_t>(p.key));
    }
    return out;
}

IndexOrder IndexOrder::well_order(Ordinal bound) {
    IndexOrder o;
    o.kind_ = Kind::WellOrder;
    o.bound_ = std::move(bound);
    return o;
}

IndexOrder IndexOrder::omega_star() {
    IndexOrder o;
    o.kind_ = Kind::OmegaStar;
    return o;
}

IndexOrder IndexOrder::sum(IndexOrder left, IndexOrder right) {
    IndexOrder o;
    o.kind_ = Kind::Sum;
    o.left_ = std::make_shared<const IndexOrder>(std::move(left));
    o.right_ = std::make_shared<const IndexOrder>(std::move(right));
    return o;
}

bool operator==(const IndexOrder& a, const IndexOrder& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case IndexOrder::Kind::WellOrder: return a.bound_ == b.bound_;
        case IndexOrder::Kind::OmegaStar: return true;
        case IndexOrder::Kind::Sum: return *a.left_ == *b.left_ && *a.right_ == *b.right_;
    }
    return false;
}

bool IndexOrder::contains(const Position& p) const {
    const IndexOrder* node = this;
    for (auto step : p.path) {
        if (node->kind_ != Kind::Sum || step > 1) return false;
        node = step == 0 ? node->left_.get() : node->right_.get();
    }
    switch (node->kind_) {
        case Kind::WellOrder: return p.has_ordinal_key() && std::get<Ordinal>(p.key) < node->bound_;
        case Kind::OmegaStar: return !p.has_ordinal_key() && std::get<std::int64_t>(p.key) <= 0;
        case Kind::Sum: return false;
    }
    return false;
}

bool IndexOrder::is_well_ordered() const {
    switch (kind_) {
        case Kind::WellOrder: return true;
        case Kind::OmegaStar: return false;
        case Kind::Sum: return left_->is_well_ordered() && right_->is_well_ordered();
    }
    return false;
}

Ordinal IndexOrder::order_type() const {
    switch (kind_) {
        case Kind::WellOrder: return bound_;
        case Kind::OmegaStar: throw DomainError("derivative characterization requires a well-order");
        case Kind::Sum: return add(left_->order_type(), right_->order_type());
    }
    return {};
}

Ordinal IndexOrder::ordinal_index(const Position& p) const {
    if (!is_well_ordered()) throw DomainError("derivative characterization requires a well-order");
    if (!contains(p)) throw DomainError("position " + format_position(p) + " is not in the index order");
    Ordinal offset;
    const IndexOrder* node = this;
    for (auto step : p.path) {
        if (step == 1) offset = add(offset, node->left_->order_type());
        node = step == 0 ? node->left_.get() : node->right_.get();
    }
    return add(offset, std::get<Ordinal>(p.key));
}

std::optional<Position> IndexOrder::greatest_or_any(std::vector<std::uint8_t> prefix) const {
    switch (kind_) {
        case Kind::WellOrder:
            if (bound_.is_zero()) return std::nullopt;
            if (bound_.is_successor()) return Position(std::move(prefix), bound_.predecessor());
            return Position(std::move(prefix), Ordinal{});
        case Kind::OmegaStar: return Position(std::move(prefix), std::int64_t{0});
        case Kind::Sum: {
            auto rp = prefix;
            rp.push_back(1);
            if (auto r = right_->greatest_or_any(rp)) return r;
            prefix.push_back(0);
            return left_->greatest_or_any(prefix);
        }
    }
    return std::nullopt;
}

std::optional<Position> IndexOrder::position_below(const Position& p) const {
    if (!contains(p)) throw DomainError("position " + format_position(p) + " is not in the index order");
    std::vector<const IndexOrder*> chain{this};
    for (auto step : p.path) chain.push_back(step == 0 ? chain.back()->left_.get() : chain.back()->right_.get());
    const IndexOrder* leaf = chain.back();
    if (leaf->kind_ == Kind::OmegaStar) return Position(p.path, std::get<std::int64_t>(p.key) - 1);
    const Ordinal& k = std::get<Ordinal>(p.key);
    if (!k.is_zero()) return Position(p.path, k.is_successor() ? k.predecessor() : Ordinal{});
    for (std::size_t depth = p.path.size(); depth-- > 0;) {
        if (p.path[depth] != 1) continue;
        std::vector<std::uint8_t> prefix(p.path.begin(), p.path.begin() + static_cast<std::ptrdiff_t>(depth));
        prefix.push_back(0);
        if (auto r = chain[depth]->left_->greatest_or_any(prefix)) return r;
    }
    return std::nullopt;
}

std::int64_t ZElement::at(const Position& p) const {
    auto it = support.find(p);
    return it == support.end() ? 0 : it->second;
}

void ZElement::set(const Position& p, std::int64_t v) {
    if (v == 0) {
        support.erase(p);
    } else {
        support[p] = v;
    }
}

void ZElement::add_at(const Position& p, std::int64_t delta) { set(p, at(p) + delta); }

void validate_element(const IndexOrder& order, const ZElement& a) {
    for (const auto& [pos, v] : a.support) {
        if (v == 0) throw DomainError("zero value stored at " + format_position(pos));
        if (!order.contains(pos)) throw DomainError("position " + format_position(pos) + " is not in the index order");
    }
}

bool covers(const TNode& s, const ZElement& a) {
    auto restricted = restrict_node(a, s.height);
    return restricted.values == s.values;
}

TNode restrict_node(const ZElement& a, const Ordinal& height) {
    TNode t;
    t.height = height;
    for (const auto& [pos, v] : a.support) {
        if (pos.ordinal_key() >= height) t.values.support.emplace(pos, v);
    }
    return t;
}

namespace {

// Greatest position where a and b differ, if any.
std::optional<Position> greatest_difference(const ZElement& a, const ZElement& b) {
    auto ia = a.support.rbegin();
    auto ib = b.support.rbegin();
    while (ia != a.support.rend() || ib != b.support.rend()) {
        if (ib == b.support.rend() || (ia != a.support.rend() && ia->first > ib->first)) return ia->first;
        if (ia == a.support.rend() || ib->first > ia->first) return ib->first;
        if (ia->second != ib->second) return ia->first;
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

std::set<Position> differing_positions(const ZElement& a, const ZElement& b) {
    std::set<Position> out;
    for (const auto& [p, v] : a.support) {
        if (b.at(p) != v) out.insert(p);
    }
    for (const auto& [p, v] : b.support) {
        if (a.at(p) != v) out.insert(p);
    }
    return out;
}

bool agrees_strictly_above(const ZElement& x, const ZElement& anchor, const Position& threshold) {
    auto d = greatest_difference(x, anchor);
    return !d || *d <= threshold;
}

}  // namespace

Cmp compare_backlex(const ZElement& a, const ZElement& b) {
    auto d = greatest_difference(a, b);
    if (!d) return Cmp::EQ;
    return a.at(*d) < b.at(*d) ? Cmp::LT : Cmp::GT;
}

ERel e_rel(const ZElement& a, const ZElement& b) {
    auto d = greatest_difference(a, b);
    if (!d) throw DomainError("relation undefined on equal elements");
    return ERel{*d, b.at(*d) - a.at(*d)};
}

bool e_holds(const ZElement& a, const ZElement& b, const Position& l, std::int64_t z) {
    return agrees_strictly_above(a, b, l) && b.at(l) == a.at(l) + z;
}

TypeRecord qf_type(const std::vector<ZElement>& tuple) {
    if (tuple.empty()) throw DomainError("quantifier-free type of an empty tuple");
    TypeRecord r;
    r.length = tuple.size();
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
            TypeRecord::Entry e;
            e.order = compare_backlex(tuple[i], tuple[j]);
            if (e.order != Cmp::EQ) e.relation = e_rel(tuple[i], tuple[j]);
            r.entries.push_back(std::move(e));
        }
    }
    return r;
}

bool qf_equal(const TypeRecord& t1, const TypeRecord& t2) {
    if (t1.length != t2.length) throw DomainError("quantifier-free types of tuples with different lengths");
    return t1 == t2;
}

ZElement apply(const ConditionalShift& move, const ZElement& x) {
    if (move.scope && !covers(*move.scope, x)) return x;
    if (move.anchor && !agrees_strictly_above(x, *move.anchor, move.threshold)) return x;
    ZElement y = x;
    for (const auto& t : move.targets) y.add_at(t, move.amount);
    return y;
}

ZElement apply(const SymAutomorphism& phi, const ZElement& x) {
    ZElement y = x;
    for (const auto& m : phi.moves) y = apply(m, y);
    return y;
}

SymAutomorphism inverse(const SymAutomorphism& phi) {
    SymAutomorphism inv;
    for (auto it = phi.moves.rbegin(); it != phi.moves.rend(); ++it) {
        for (const auto& t : it->targets) {
            // The guard of a move must not read the coordinates it shifts.
            if (it->anchor && t > it->threshold) throw DomainError("move shifts a coordinate its anchor condition reads");
            if (it->scope && t.ordinal_key() >= it->scope->height) {
                throw DomainError("move shifts a coordinate its scope condition reads");
            }
        }
        ConditionalShift m = *it;
        m.amount = -m.amount;
        inv.moves.push_back(std::move(m));
    }
    return inv;
}

SymAutomorphism synth_automorphism(const std::vector<ZElement>& context, const ZElement& a, const ZElement& b) {
    auto ta = context;
    ta.push_back(a);
    auto tb = context;
    tb.push_back(b);
    if (!qf_equal(qf_type(ta), qf_type(tb))) throw DomainError("tuples have different quantifier-free types");

    SymAutomorphism phi;
    ZElement current = a;
    for (;;) {
        auto diff = differing_positions(current, b);
        if (diff.empty()) break;
        const Position& lstar = *diff.begin();
        ConditionalShift move;
        move.anchor = current;
        move.threshold = lstar;
        move.targets = {lstar};
        move.amount = b.at(lstar) - current.at(lstar);
        current = apply(move, current);
        phi.moves.push_back(std::move(move));
    }
    return phi;
}

namespace {

void require_well_ordered(const IndexOrder& ambient) {
    if (!ambient.is_well_ordered()) throw DomainError("derivative characterization requires a well-order");
}

}  // namespace

bool h_rel(const IndexOrder& ambient, const ZElement& a, const ZElement& b, const Ordinal& beta) {
    require_well_ordered(ambient);
    if (beta > ambient.order_type()) throw DomainError("derivative index exceeds the order type of the ambient order");
    validate_element(ambient, a);
    validate_element(ambient, b);
    auto d = greatest_difference(a, b);
    return !d || ambient.ordinal_index(*d) < beta;
}

Ordinal hausdorff_rank(const IndexOrder& ambient) {
    require_well_ordered(ambient);
    return ambient.order_type();
}

ZElement density_witness(const IndexOrder& ambient, const ZElement& a, const ZElement& b) {
    validate_element(ambient, a);
    validate_element(ambient, b);
    if (compare_backlex(a, b) != Cmp::LT) throw DomainError("density witness requires a strictly below b");
    Position lowest = a.support.empty() ? b.support.begin()->first : a.support.begin()->first;
    if (!b.support.empty()) lowest = std::min(lowest, b.support.begin()->first);
    auto below = ambient.position_below(lowest);
    if (!below) throw DomainError("ambient order has a minimum here");
    ZElement c = a;
    c.set(*below, 1);
    return c;
}

Ordinal drk_upper(const IndexOrder& ambient, const ZElement& a, const ZElement& b) {
    require_well_ordered(ambient);
    validate_element(ambient, a);
    validate_element(ambient, b);
    auto d = greatest_difference(a, b);
    if (!d) return Ordinal{};
    Ordinal p = ambient.ordinal_index(*d);
    // Least beta with 1 + beta = p + 1.
    return p.is_finite() ? p : add(p, Ordinal(1));
}

}  // namespace rankforge
