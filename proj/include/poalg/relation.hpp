#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "poalg/poset.hpp"

namespace poalg {

/// A morphism m -> n of Rel: a set of index pairs (i, j) with i < m and j < n.
class Relation {
public:
    using Pair = std::pair<std::size_t, std::size_t>;

    Relation() = default;
    Relation(std::size_t m, std::size_t n) : m_(m), n_(n) {}
    Relation(std::size_t m, std::size_t n, std::initializer_list<Pair> pairs) : Relation(m, n) {
        for (auto p : pairs) insert(p.first, p.second);
    }

    std::size_t dom() const { return m_; }
    std::size_t cod() const { return n_; }
    const std::set<Pair>& pairs() const { return pairs_; }
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }

    bool contains(std::size_t i, std::size_t j) const { return pairs_.contains({i, j}); }

    void insert(std::size_t i, std::size_t j) {
        if (i >= m_ || j >= n_) {
            throw std::out_of_range("relation pair (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") outside " + std::to_string(m_) + "x" + std::to_string(n_));
        }
        pairs_.emplace(i, j);
    }

    /// Outputs related to input i, increasing.
    std::vector<std::size_t> image(std::size_t i) const {
        std::vector<std::size_t> out;
        for (auto [a, b] : pairs_) {
            if (a == i) out.push_back(b);
        }
        return out;
    }

    /// Inputs related to output j, increasing.
    std::vector<std::size_t> preimage(std::size_t j) const {
        std::vector<std::size_t> out;
        for (auto [a, b] : pairs_) {
            if (b == j) out.push_back(a);
        }
        return out;
    }

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::set<Pair> pairs_;
};

inline Relation rel_id(std::size_t n) {
    Relation r(n, n);
    for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
    return r;
}

/// Existential join: (i,k) iff some j has (i,j) in r and (j,k) in s.
inline Relation rel_compose(const Relation& r, const Relation& s) {
    if (r.cod() != s.dom()) {
        throw ArityMismatch("cannot compose relations " + std::to_string(r.dom()) + "->" +
                            std::to_string(r.cod()) + " and " + std::to_string(s.dom()) + "->" +
                            std::to_string(s.cod()));
    }
    Relation out(r.dom(), s.cod());
    for (auto [i, j] : r.pairs()) {
        for (auto [j2, k] : s.pairs()) {
            if (j == j2) out.insert(i, k);
        }
    }
    return out;
}

inline Relation rel_tensor(const Relation& r, const Relation& s) {
    Relation out(r.dom() + s.dom(), r.cod() + s.cod());
    for (auto [i, j] : r.pairs()) out.insert(i, j);
    for (auto [i, j] : s.pairs()) out.insert(r.dom() + i, r.cod() + j);
    return out;
}

inline Relation transpose(const Relation& r) {
    Relation out(r.cod(), r.dom());
    for (auto [i, j] : r.pairs()) out.insert(j, i);
    return out;
}

/// The relation of a permutation given as i -> perm[i].
inline Relation rel_permutation(std::span<const std::size_t> perm) {
    Relation out(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out.insert(i, perm[i]);
    return out;
}

/// The m*n relations m -> n in bitmask order (bit i*n+j encodes (i,j)).
inline std::vector<Relation> all_relations(std::size_t m, std::size_t n) {
    const std::size_t cells = m * n;
    std::vector<Relation> out;
    out.reserve(std::size_t{1} << cells);
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
        Relation r(m, n);
        for (std::size_t c = 0; c < cells; ++c) {
            if ((mask >> c) & 1U) r.insert(c / n, c % n);
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Embeds a relation as a morphism without internal events: s(i) < t(j) iff (i,j) in r.
inline PosetMorphism rel_to_poset(const Relation& r) {
    std::vector<EventPair> pairs;
    for (auto [i, j] : r.pairs()) pairs.emplace_back(i, r.dom() + j);
    return PosetMorphism::from_layout(r.dom(), r.cod(), 0, pairs);
}

/// Inverse of rel_to_poset on its image; absent when f has internal events.
inline std::optional<Relation> poset_to_rel(const PosetMorphism& f) {
    if (f.internal_count() != 0) return std::nullopt;
    Relation r(f.dom(), f.cod());
    for (auto [a, b] : f.poset().pairs()) {
        if (a >= f.dom() || b < f.dom()) return std::nullopt;
        r.insert(a, b - f.dom());
    }
    return r;
}

}  // namespace poalg
