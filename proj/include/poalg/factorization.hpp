#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poalg/poset.hpp"
#include "poalg/relation.hpp"

namespace poalg {

class InvalidLinearization : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DependentBlocks : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Enumeration of a morphism's internal events: position i holds internal event order[i].
struct Linearization {
    std::vector<std::size_t> order;

    std::size_t size() const { return order.size(); }
    std::size_t operator[](std::size_t i) const { return order[i]; }

    static Linearization identity(std::size_t k) {
        Linearization x;
        x.order.resize(k);
        std::iota(x.order.begin(), x.order.end(), 0);
        return x;
    }

    friend bool operator==(const Linearization&, const Linearization&) = default;
};

/// The swap of i and i+1 acting on [n].
struct Transposition {
    std::size_t n;
    std::size_t i;

    Transposition(std::size_t size, std::size_t index) : n(size), i(index) {
        if (i + 1 >= n) throw std::out_of_range("transposition index out of range");
    }

    std::size_t operator()(std::size_t j) const {
        if (j == i) return i + 1;
        if (j == i + 1) return i;
        return j;
    }

    Relation relation() const {
        Relation r(n, n);
        for (std::size_t j = 0; j < n; ++j) r.insert(j, (*this)(j));
        return r;
    }
};

/// x o tau: positions i and i+1 exchanged.
inline Linearization operator*(const Linearization& x, const Transposition& tau) {
    Linearization out = x;
    std::swap(out.order[tau.i], out.order[tau.i + 1]);
    return out;
}

inline bool is_linearization(const PosetMorphism& f, const Linearization& x) {
    const std::size_t k = f.internal_count();
    if (x.size() != k) return false;
    std::vector<bool> seen(k, false);
    for (std::size_t e : x.order) {
        if (e >= k || seen[e]) return false;
        seen[e] = true;
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (f.less(f.internal(x[j]), f.internal(x[i]))) return false;
        }
    }
    return true;
}

/// All linear extensions of the internal order, smallest available event first at each step.
inline std::vector<Linearization> linearizations(const PosetMorphism& f) {
    const std::size_t k = f.internal_count();
    std::vector<Mask> preds(k, 0);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            if (f.less(f.internal(a), f.internal(b))) preds[b] |= detail::bit(a);
        }
    }
    std::vector<Linearization> out;
    Linearization cur;
    auto rec = [&](auto&& self, Mask placed) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t e = 0; e < k; ++e) {
            if ((placed >> e) & 1U) continue;
            if ((preds[e] & ~placed) != 0) continue;
            cur.order.push_back(e);
            self(self, placed | detail::bit(e));
            cur.order.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Returns i when x2 = x1 o tau_i with the two swapped events independent.
inline std::optional<std::size_t> lin_adjacent(const PosetMorphism& f, const Linearization& x1,
                                               const Linearization& x2) {
    if (x1.size() != x2.size()) return std::nullopt;
    for (std::size_t i = 0; i + 1 < x1.size(); ++i) {
        if (x1[i] == x2[i]) continue;
        if (x1[i] != x2[i + 1] || x1[i + 1] != x2[i]) return std::nullopt;
        for (std::size_t j = i + 2; j < x1.size(); ++j) {
            if (x1[j] != x2[j]) return std::nullopt;
        }
        if (!f.independent(f.internal(x1[i]), f.internal(x1[i + 1]))) return std::nullopt;
        return i;
    }
    return std::nullopt;
}

/// Adjacent independent swaps turning x1 into x2 (bubble sort; one swap per inversion).
inline std::vector<std::size_t> lin_connect(const PosetMorphism& f, const Linearization& x1,
                                            const Linearization& x2) {
    if (!is_linearization(f, x1) || !is_linearization(f, x2)) {
        throw InvalidLinearization("lin_connect needs two linearizations of the same morphism");
    }
    std::vector<std::size_t> path;
    Linearization cur = x1;
    for (std::size_t p = 0; p < cur.size(); ++p) {
        std::size_t q = p;
        while (cur[q] != x2[p]) ++q;
        for (; q > p; --q) {
            if (!f.independent(f.internal(cur[q - 1]), f.internal(cur[q]))) {
                throw std::logic_error("swap of dependent events");
            }
            std::swap(cur.order[q - 1], cur.order[q]);
            path.push_back(q - 1);
        }
    }
    return path;
}

/// The block n -> n+1 with one internal event x: s(i) < t(i), s(i) < x for i in I, x < t(n).
inline PosetMorphism x_block(std::size_t n, const std::set<std::size_t>& inputs) {
    const std::size_t x = n + n + 1;
    std::vector<EventPair> pairs;
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, n + i);
    for (std::size_t i : inputs) {
        if (i >= n) throw std::out_of_range("x_block input outside [n]");
        pairs.emplace_back(i, x);
    }
    pairs.emplace_back(x, n + n);
    return PosetMorphism::from_layout(n, n + 1, 1, pairs);
}

/// Data R o X^{m+k-1}_{I_{k-1}} o ... o X^m_{I_0}.
struct Factorization {
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t n = 0;
    std::vector<std::set<std::size_t>> blocks;  // blocks[j] = I_j, a subset of [m+j]
    Relation closing;                           // R : m+k -> n

    void validate() const {
        if (blocks.size() != k) throw std::invalid_argument("factorization needs exactly k blocks");
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i : blocks[j]) {
                if (i >= m + j) throw std::out_of_range("block I_" + std::to_string(j) + " leaves [m+j]");
            }
        }
        if (closing.dom() != m + k || closing.cod() != n) {
            throw ArityMismatch("closing relation must be (m+k) -> n");
        }
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

struct Composite {
    PosetMorphism morphism;
    Linearization induced;
};

/// Least order with x(i)<x(j) for m+i in I_j, s(i)<x(j) for i in I_j, x(i)<t(j) for (m+i,j) in R,
/// and s(i)<t(j) for (i,j) in R. The induced linearization is the identity on block indices.
inline Composite fact_compose(const Factorization& F) {
    F.validate();
    const std::size_t m = F.m;
    const std::size_t n = F.n;
    auto x = [&](std::size_t i) { return m + n + i; };
    std::vector<EventPair> pairs;
    for (std::size_t j = 0; j < F.k; ++j) {
        for (std::size_t i : F.blocks[j]) pairs.emplace_back(i < m ? i : x(i - m), x(j));
    }
    for (auto [i, j] : F.closing.pairs()) pairs.emplace_back(i < m ? i : x(i - m), m + j);
    return {PosetMorphism::from_layout(m, n, F.k, pairs), Linearization::identity(F.k)};
}

/// The factorization read off a morphism along a linearization of its internal events.
inline Factorization factorize(const PosetMorphism& f, const Linearization& x) {
    if (!is_linearization(f, x)) throw InvalidLinearization("not a linearization of the internal events");
    Factorization F;
    F.m = f.dom();
    F.k = f.internal_count();
    F.n = f.cod();
    F.blocks.resize(F.k);
    for (std::size_t j = 0; j < F.k; ++j) {
        const std::size_t xj = f.internal(x[j]);
        for (std::size_t i = 0; i < F.m; ++i) {
            if (f.less(f.src(i), xj)) F.blocks[j].insert(i);
        }
        for (std::size_t i = 0; i < j; ++i) {
            if (f.less(f.internal(x[i]), xj)) F.blocks[j].insert(F.m + i);
        }
    }
    F.closing = Relation(F.m + F.k, F.n);
    for (std::size_t j = 0; j < F.n; ++j) {
        for (std::size_t i = 0; i < F.m; ++i) {
            if (f.less(f.src(i), f.tgt(j))) F.closing.insert(i, j);
        }
        for (std::size_t i = 0; i < F.k; ++i) {
            if (f.less(f.internal(x[i]), f.tgt(j))) F.closing.insert(F.m + i, j);
        }
    }
    return F;
}

/// Both closure conditions: inputs of a block feeding I_j are in I_j, and likewise for R.
inline bool is_transitive(const Factorization& F) {
    for (std::size_t b = 0; b < F.k; ++b) {
        for (std::size_t i : F.blocks[b]) {
            for (std::size_t c = b + 1; c < F.k; ++c) {
                if (F.blocks[c].contains(F.m + b) && !F.blocks[c].contains(i)) return false;
            }
            for (std::size_t j = 0; j < F.n; ++j) {
                if (F.closing.contains(F.m + b, j) && !F.closing.contains(i, j)) return false;
            }
        }
    }
    return true;
}

/// Adds transitivity edges until both closure conditions hold.
inline Factorization transitive_closure_fact(Factorization F) {
    F.validate();
    // Blocks only feed later blocks, so one ascending pass closes the I's.
    for (std::size_t c = 0; c < F.k; ++c) {
        for (std::size_t b = c; b-- > 0;) {
            if (F.blocks[c].contains(F.m + b)) F.blocks[c].insert(F.blocks[b].begin(), F.blocks[b].end());
        }
    }
    for (std::size_t b = F.k; b-- > 0;) {
        for (std::size_t j = 0; j < F.n; ++j) {
            if (!F.closing.contains(F.m + b, j)) continue;
            for (std::size_t i : F.blocks[b]) F.closing.insert(i, j);
        }
    }
    return F;
}

/// Exchanges the independent blocks i and i+1; the closing relation is precomposed with tau_{m+i}.
inline Factorization switch_blocks(const Factorization& F, std::size_t i) {
    F.validate();
    if (i + 1 >= F.k) throw std::out_of_range("switch position outside [k-1]");
    if (F.blocks[i + 1].contains(F.m + i)) {
        throw DependentBlocks("block " + std::to_string(i + 1) + " depends on block " + std::to_string(i));
    }
    const Transposition tau(F.m + F.k, F.m + i);
    Factorization out = F;
    out.blocks[i] = F.blocks[i + 1];
    out.blocks[i + 1] = F.blocks[i];
    for (std::size_t j = i + 2; j < F.k; ++j) {
        out.blocks[j].clear();
        for (std::size_t e : F.blocks[j]) out.blocks[j].insert(tau(e));
    }
    out.closing = rel_compose(tau.relation(), F.closing);
    return out;
}

}  // namespace poalg
