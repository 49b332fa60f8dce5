#include "rankforge/perm_group.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rankforge/errors.hpp"

namespace rankforge {

Perm compose(const Perm& g, const Perm& h) {
    Perm r(h.size());
    for (std::size_t x = 0; x < h.size(); ++x) r[x] = g[static_cast<std::size_t>(h[x])];
    return r;
}

Perm invert(const Perm& g) {
    Perm r(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) r[static_cast<std::size_t>(g[x])] = static_cast<int>(x);
    return r;
}

Perm identity_perm(int degree) {
    Perm r(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) r[static_cast<std::size_t>(i)] = i;
    return r;
}

namespace {

void check_perm(int degree, const Perm& p) {
    if (p.size() != static_cast<std::size_t>(degree)) throw DomainError("permutation has wrong degree");
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= degree || seen[static_cast<std::size_t>(v)]) throw DomainError("not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

}  // namespace

FiniteGroup FiniteGroup::generate(int degree, const std::vector<Perm>& generators, std::size_t max_order) {
    if (degree < 0) throw DomainError("negative degree");
    for (const auto& g : generators) check_perm(degree, g);
    std::set<Perm> seen{identity_perm(degree)};
    std::vector<Perm> frontier{identity_perm(degree)};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& p : frontier) {
            for (const auto& g : generators) {
                Perm q = compose(g, p);
                if (seen.insert(q).second) {
                    if (seen.size() > max_order) {
                        throw DomainError("group order exceeds the bound " + std::to_string(max_order));
                    }
                    next.push_back(std::move(q));
                }
            }
        }
        frontier = std::move(next);
    }
    FiniteGroup G;
    G.degree_ = degree;
    G.elements_.assign(seen.begin(), seen.end());
    G.build_tables();
    return G;
}

FiniteGroup FiniteGroup::from_elements(int degree, std::vector<Perm> elements) {
    for (const auto& g : elements) check_perm(degree, g);
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements.front() != identity_perm(degree)) {
        throw DomainError("permutation list does not contain the identity");
    }
    FiniteGroup G;
    G.degree_ = degree;
    G.elements_ = std::move(elements);
    G.build_tables();
    return G;
}

void FiniteGroup::build_tables() {
    const std::size_t n = elements_.size();
    table_.assign(n * n, 0);
    inverse_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) table_[i * n + j] = index_of(compose(elements_[i], elements_[j]));
        inverse_[i] = index_of(invert(elements_[i]));
    }
}

std::size_t FiniteGroup::index_of(const Perm& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) throw DomainError("permutation list is not closed under composition");
    return static_cast<std::size_t>(it - elements_.begin());
}

ElementSet FiniteGroup::conjugate(const ElementSet& s, std::size_t g) const {
    ElementSet r = empty_set();
    for (std::size_t x = 0; x < order(); ++x) {
        if (s[x]) r[mul(mul(g, x), inv(g))] = true;
    }
    return r;
}

ElementSet FiniteGroup::product(const ElementSet& a, const ElementSet& b) const {
    ElementSet r = empty_set();
    for (std::size_t x = 0; x < order(); ++x) {
        if (!a[x]) continue;
        for (std::size_t y = 0; y < order(); ++y) {
            if (b[y]) r[mul(x, y)] = true;
        }
    }
    return r;
}

ElementSet FiniteGroup::inverse_set(const ElementSet& s) const {
    ElementSet r = empty_set();
    for (std::size_t x = 0; x < order(); ++x) {
        if (s[x]) r[inv(x)] = true;
    }
    return r;
}

bool subset_of(const ElementSet& a, const ElementSet& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && !b[i]) return false;
    }
    return true;
}

}  // namespace rankforge
