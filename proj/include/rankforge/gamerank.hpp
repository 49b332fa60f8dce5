#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rankforge/ordinal.hpp"
#include "rankforge/perm_group.hpp"

namespace rankforge {

using Move = std::uint32_t;
using GamePosition = std::vector<Move>;

// Open game with bounded horizon. The payoff set is the union of the
// cylinders over `wins`; no winning prefix is longer than the horizon.
struct OpenGame {
    std::uint32_t alphabet = 1;
    std::uint32_t horizon = 2;
    std::set<GamePosition> wins;

    friend bool operator==(const OpenGame&, const OpenGame&) = default;
};

// Throws DomainError unless the horizon is even and positive and every
// winning prefix is an even-length sequence over the alphabet within it.
void validate_game(const OpenGame& g);

// A natural number, or infinity when Player II wins from the position.
struct GameRank {
    std::optional<std::uint64_t> value;

    static GameRank infinity() { return {}; }
    static GameRank finite(std::uint64_t v) { return GameRank{v}; }
    bool is_infinite() const { return !value.has_value(); }

    friend bool operator==(const GameRank&, const GameRank&) = default;
};

std::string format_rank(const GameRank& r);

enum class Player { I, II };

using Strategy = std::map<GamePosition, Move>;

GameRank grk(const OpenGame& g, const GamePosition& pos);
GameRank grk(const OpenGame& g);
Player winner(const OpenGame& g);
Strategy extract_strategy(const OpenGame& g);
// True iff every run that follows s to the horizon has a winning prefix.
bool strategy_wins(const OpenGame& g, const Strategy& s);

OpenGame le_game(const OpenGame& a, const OpenGame& b);
OpenGame lt_game(const OpenGame& a, const OpenGame& b);

struct CliGame {
    OpenGame game;
    // basis[m] is the symmetric identity-containing subset played as move m.
    std::vector<ElementSet> basis;
};

CliGame cli_game(const FiniteGroup& group, const ElementSet& v, std::uint32_t horizon = 2);

// Finite rooted tree given by parent indices; the root has parent -1.
struct FiniteTree {
    std::vector<int> parent;
};

Ordinal cb_rank(const FiniteTree& tree);
std::vector<std::uint64_t> cb_node_ranks(const FiniteTree& tree);

}  // namespace rankforge
