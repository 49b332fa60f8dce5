#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rankforge/ordinal.hpp"

namespace rankforge {

// A position in an index order: the branch taken at each Sum node (0 = left,
// 1 = right) and the key inside the addressed leaf. WellOrder leaves use
// ordinal keys; OmegaStar leaves use non-positive integers.
struct Position {
    std::vector<std::uint8_t> path;
    std::variant<Ordinal, std::int64_t> key;

    Position() : key(Ordinal{}) {}
    Position(Ordinal k) : key(std::move(k)) {}  // NOLINT(google-explicit-constructor)
    Position(std::vector<std::uint8_t> p, std::variant<Ordinal, std::int64_t> k)
        : path(std::move(p)), key(std::move(k)) {}

    static Position integer(std::int64_t k, std::vector<std::uint8_t> path = {}) { return Position(std::move(path), k); }

    bool has_ordinal_key() const { return std::holds_alternative<Ordinal>(key); }
    const Ordinal& ordinal_key() const;

    friend std::strong_ordering operator<=>(const Position& a, const Position& b);
    friend bool operator==(const Position& a, const Position& b) = default;
};

std::string format_position(const Position& p);

class IndexOrder {
public:
    enum class Kind { WellOrder, OmegaStar, Sum };

    static IndexOrder well_order(Ordinal bound);
    static IndexOrder omega_star();
    static IndexOrder sum(IndexOrder left, IndexOrder right);

    Kind kind() const { return kind_; }
    const Ordinal& bound() const { return bound_; }
    const IndexOrder& left() const { return *left_; }
    const IndexOrder& right() const { return *right_; }

    bool contains(const Position& p) const;
    bool is_well_ordered() const;
    // Order type of a well-ordered index order; throws DomainError otherwise.
    Ordinal order_type() const;
    // Rank of a position in a well-ordered index order, i.e. the order type
    // of the positions strictly below it.
    Ordinal ordinal_index(const Position& p) const;
    // Some position strictly below p, preferring the greatest one when it exists.
    std::optional<Position> position_below(const Position& p) const;

    friend bool operator==(const IndexOrder& a, const IndexOrder& b);

private:
    Kind kind_ = Kind::WellOrder;
    Ordinal bound_;
    std::shared_ptr<const IndexOrder> left_, right_;

    std::optional<Position> greatest_or_any(std::vector<std::uint8_t> prefix) const;
};

// A finitely supported integer map on positions. Zero values are never
// stored, so structural equality is equality of maps.
struct ZElement {
    std::map<Position, std::int64_t> support;

    std::int64_t at(const Position& p) const;
    void set(const Position& p, std::int64_t v);
    void add_at(const Position& p, std::int64_t delta);

    friend bool operator==(const ZElement&, const ZElement&) = default;
};

// Throws DomainError unless every support position lies in the order.
void validate_element(const IndexOrder& order, const ZElement& a);

// Node of the piecewise tree over a well-order: a height and values on
// positions at or above it. Keys are ordinal positions with an empty path.
struct TNode {
    Ordinal height;
    ZElement values;

    friend bool operator==(const TNode&, const TNode&) = default;
};

// True iff the height-0 reading of a restricts to s on [ht(s), top).
bool covers(const TNode& s, const ZElement& a);
TNode restrict_node(const ZElement& a, const Ordinal& height);

struct ConditionalShift {
    // When present, the move applies only to elements agreeing with the
    // anchor at every position strictly above the threshold.
    std::optional<ZElement> anchor;
    Position threshold;
    std::vector<Position> targets;
    std::int64_t amount = 0;
    // When present, the move applies only to elements covered by this node.
    std::optional<TNode> scope;

    friend bool operator==(const ConditionalShift&, const ConditionalShift&) = default;
};

struct SymAutomorphism {
    std::vector<ConditionalShift> moves;

    friend bool operator==(const SymAutomorphism&, const SymAutomorphism&) = default;
};

Cmp compare_backlex(const ZElement& a, const ZElement& b);

struct ERel {
    Position position;
    std::int64_t shift = 0;
    friend bool operator==(const ERel&, const ERel&) = default;
};

ERel e_rel(const ZElement& a, const ZElement& b);
// E_{(l,z)}(a,b): agreement strictly above l and b(l) = a(l) + z.
bool e_holds(const ZElement& a, const ZElement& b, const Position& l, std::int64_t z);

struct TypeRecord {
    struct Entry {
        Cmp order = Cmp::EQ;
        std::optional<ERel> relation;  // absent iff the two entries are equal
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    std::size_t length = 0;
    // Row-major over index pairs i < j.
    std::vector<Entry> entries;
    friend bool operator==(const TypeRecord&, const TypeRecord&) = default;
};

TypeRecord qf_type(const std::vector<ZElement>& tuple);
bool qf_equal(const TypeRecord& t1, const TypeRecord& t2);

ZElement apply(const SymAutomorphism& phi, const ZElement& x);
ZElement apply(const ConditionalShift& move, const ZElement& x);
SymAutomorphism inverse(const SymAutomorphism& phi);
SymAutomorphism synth_automorphism(const std::vector<ZElement>& context, const ZElement& a, const ZElement& b);

bool h_rel(const IndexOrder& ambient, const ZElement& a, const ZElement& b, const Ordinal& beta);
Ordinal hausdorff_rank(const IndexOrder& ambient);
ZElement density_witness(const IndexOrder& ambient, const ZElement& a, const ZElement& b);
Ordinal drk_upper(const IndexOrder& ambient, const ZElement& a, const ZElement& b);

}  // namespace rankforge
