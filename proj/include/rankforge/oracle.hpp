#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rankforge/perm_group.hpp"

namespace rankforge {

struct Relation {
    std::string name;
    int arity = 1;
    std::vector<std::vector<int>> tuples;
};

struct FiniteStructure {
    int domain_size = 1;
    std::vector<Relation> relations;
};

// A finite group acting on {0..space_size-1}; act[g][x] is g.x.
struct FiniteAction {
    FiniteGroup group;
    int space_size = 0;
    std::vector<std::vector<int>> act;

    static FiniteAction natural(FiniteGroup g);
    int apply(std::size_t g, int x) const { return act[g][static_cast<std::size_t>(x)]; }
};

// Throws DomainError unless identity and compatibility hold on every point.
void validate_action(const FiniteAction& a);

struct ProductAction {
    FiniteAction action;
    // parts[g] = (g1, g2) for each element g of the product group.
    std::vector<std::pair<std::size_t, std::size_t>> parts;
    int right_space = 0;  // point (x1, x2) is x1 * right_space + x2
};

ProductAction product_action(const FiniteAction& a, const FiniteAction& b);

FiniteAction aut_group(const FiniteStructure& m);
ElementSet stabilizer(const FiniteAction& a, const std::vector<int>& tuple);

std::uint64_t drk_bruteforce(const FiniteStructure& m, const std::vector<int>& a, const std::vector<int>& b);
std::uint64_t rk_bruteforce(const FiniteGroup& g, const ElementSet& v, const ElementSet& u);
std::uint64_t rkstar_bruteforce(const FiniteGroup& g, const ElementSet& v, const ElementSet& u);
// sup over identity neighborhoods V of rk(V, G) + 1.
std::uint64_t group_rank_bruteforce(const FiniteGroup& g);

// Memoized evaluator of the back-and-forth relations on one action. The
// memo lives in the object, so one instance must not be shared across
// threads.
class DynamicsOracle {
public:
    explicit DynamicsOracle(const FiniteAction& a);

    bool squiggle(std::uint32_t v, int alpha, int x, int y);
    bool sim(std::uint32_t v, int alpha, int x, int y);
    bool precedes(std::uint32_t v, int alpha, int x, int y);

    static std::uint32_t mask_of(const ElementSet& s);

private:
    const FiniteAction& a_;
    std::vector<std::uint32_t> neighborhoods_;  // every subset containing the identity
    std::vector<std::uint32_t> open_sets_;      // every nonempty subset of the space
    std::vector<std::int8_t> squiggle_memo_, precedes_memo_;

    std::size_t slot(std::uint32_t v, int alpha, int x, int y) const;
    bool in_orbit_image(std::uint32_t v, int x, int y) const;  // x in V.y
};

bool squiggle_bruteforce(const FiniteAction& a, const ElementSet& v, int alpha, int x, int y);
bool sim_bruteforce(const FiniteAction& a, const ElementSet& v, int alpha, int x, int y);
bool precedes_bruteforce(const FiniteAction& a, const ElementSet& v, int alpha, int x, int y);

}  // namespace rankforge
