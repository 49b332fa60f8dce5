#pragma once

#include <string>

#include <json.hpp>

#include "rankforge/errors.hpp"
#include "rankforge/fusion.hpp"
#include "rankforge/gamerank.hpp"
#include "rankforge/grouprank.hpp"
#include "rankforge/oracle.hpp"
#include "rankforge/ordinal.hpp"
#include "rankforge/zline.hpp"

namespace rankforge {

using Json = nlohmann::json;

// Schema violation; what() reads "<json pointer>: <message>", with the empty
// root pointer shown as <root>.
class DecodeError : public DomainError {
public:
    DecodeError(const std::string& pointer, const std::string& message)
        : DomainError((pointer.empty() ? std::string("<root>") : pointer) + ": " + message), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

// Ordinals encode as a list of [exponent, coefficient] pairs with exponents
// encoded recursively, so zero is []. Decoding also accepts a natural number
// or an ordinal literal string such as "w^2+3".
Json encode(const Ordinal& a);
Ordinal decode_ordinal(const Json& j, const std::string& ptr = "");

Json encode(const IndexOrder& o);
IndexOrder decode_index_order(const Json& j, const std::string& ptr = "");

// A position with an empty path encodes as its bare key; otherwise as
// {"path": [...], "key": ...}. Decoding an integer key needs the order to know
// which leaf kind the path lands on.
Json encode(const Position& p);
Position decode_position(const Json& j, const IndexOrder* order, const std::string& ptr = "");

// {"support": [[position, value], ...]} in increasing position order; a bare
// pair list is accepted on input.
Json encode(const ZElement& a);
ZElement decode_element(const Json& j, const IndexOrder* order, const std::string& ptr = "");

Json encode(const TNode& s);
TNode decode_node(const Json& j, const std::string& ptr = "");

Json encode(const ConditionalShift& m);
ConditionalShift decode_shift(const Json& j, const IndexOrder* order, const std::string& ptr = "");
Json encode(const SymAutomorphism& phi);
SymAutomorphism decode_automorphism(const Json& j, const IndexOrder* order, const std::string& ptr = "");

Json encode(const ERel& e);
ERel decode_erel(const Json& j, const IndexOrder* order, const std::string& ptr = "");
Json encode(const TypeRecord& t);
TypeRecord decode_type(const Json& j, const IndexOrder* order, const std::string& ptr = "");

Json encode(const GroupExpr& g);
GroupExprPtr decode_group_expr(const Json& j, const std::string& ptr = "");
Json encode(const RankProfile& r);
RankProfile decode_rank_profile(const Json& j, const std::string& ptr = "");

Json encode(const OpenGame& g);
OpenGame decode_game(const Json& j, const std::string& ptr = "");
// A natural number, or the string "inf".
Json encode(const GameRank& r);
GameRank decode_game_rank(const Json& j, const std::string& ptr = "");
// List of [position, move] pairs.
Json encode(const Strategy& s);
Strategy decode_strategy(const Json& j, const std::string& ptr = "");

Json encode(const FPair& p);
FPair decode_pair(const Json& j, const std::string& ptr = "");

Json encode(const FiniteStructure& m);
FiniteStructure decode_structure(const Json& j, const std::string& ptr = "");

// {"degree": d, "generators": [[...], ...]}; elements are then numbered in
// lexicographic order of image lists.
FiniteGroup decode_group(const Json& j, const std::string& ptr = "");
// List of element indices.
Json encode(const ElementSet& s);
ElementSet decode_element_set(const Json& j, const FiniteGroup& g, const std::string& ptr = "");

FiniteTree decode_tree(const Json& j, const std::string& ptr = "");

}  // namespace rankforge
