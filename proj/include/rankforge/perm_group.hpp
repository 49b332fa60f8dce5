#pragma once

#include <cstddef>
#include <vector>

namespace rankforge {

// A permutation of {0..n-1} as its image list.
using Perm = std::vector<int>;

// Subset of a finite group, indexed by element number.
using ElementSet = std::vector<bool>;

Perm compose(const Perm& g, const Perm& h);  // (g*h)(x) = g(h(x))
Perm invert(const Perm& g);
Perm identity_perm(int degree);

// A finite permutation group with its elements listed in lexicographic order
// of image lists, so the identity is always element 0.
class FiniteGroup {
public:
    static FiniteGroup generate(int degree, const std::vector<Perm>& generators, std::size_t max_order = 64);
    // Throws DomainError unless the list is closed under composition.
    static FiniteGroup from_elements(int degree, std::vector<Perm> elements);

    int degree() const { return degree_; }
    std::size_t order() const { return elements_.size(); }
    const Perm& element(std::size_t i) const { return elements_[i]; }
    const std::vector<Perm>& elements() const { return elements_; }
    std::size_t identity() const { return 0; }
    std::size_t mul(std::size_t g, std::size_t h) const { return table_[g * elements_.size() + h]; }
    std::size_t inv(std::size_t g) const { return inverse_[g]; }
    std::size_t index_of(const Perm& p) const;  // throws DomainError when absent

    ElementSet empty_set() const { return ElementSet(order(), false); }
    ElementSet full_set() const { return ElementSet(order(), true); }
    ElementSet conjugate(const ElementSet& s, std::size_t g) const;  // g s g^-1
    ElementSet product(const ElementSet& a, const ElementSet& b) const;
    ElementSet inverse_set(const ElementSet& s) const;
    bool is_symmetric(const ElementSet& s) const { return inverse_set(s) == s; }

private:
    int degree_ = 0;
    std::vector<Perm> elements_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;

    void build_tables();
};

bool subset_of(const ElementSet& a, const ElementSet& b);

}  // namespace rankforge
