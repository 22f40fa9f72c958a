#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace poalg {

/// One row of a strict order: bit b of row a is set iff a < b.
using Mask = std::uint64_t;

/// Hard cap on the number of events a single poset may carry.
inline constexpr std::size_t max_poset_events = 64;

using EventPair = std::pair<std::size_t, std::size_t>;

class CycleDetected : public std::runtime_error {
public:
    CycleDetected(std::size_t a, std::size_t b)
        : std::runtime_error("order is cyclic: " + std::to_string(a) + " < " + std::to_string(b) +
                             " < " + std::to_string(a)),
          first(a), second(b) {}

    std::size_t first;
    std::size_t second;
};

class ArityMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidMorphism : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Mask bit(std::size_t i) { return Mask{1} << i; }

inline void check_size(std::size_t n) {
    if (n > max_poset_events) {
        throw std::length_error("poset with " + std::to_string(n) + " events exceeds the " +
                                std::to_string(max_poset_events) + "-event limit");
    }
}

inline Mask low_bits(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

template <typename F>
void for_each_bit(Mask m, F&& f) {
    while (m != 0) {
        f(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
}

/// Warshall closure over bit rows; returns the first event found on a cycle.
inline std::optional<std::size_t> close_rows(std::vector<Mask>& rows) {
    const std::size_t n = rows.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Mask through = rows[k];
        const Mask kb = bit(k);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i] & kb) rows[i] |= through;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i] & bit(i)) return i;
    }
    return std::nullopt;
}

}  // namespace detail

/// A finite strict order on events 0..size()-1.
class Poset {
public:
    Poset() = default;
    explicit Poset(std::size_t size) : above_(size, 0) { detail::check_size(size); }

    std::size_t size() const { return above_.size(); }

    bool less(std::size_t a, std::size_t b) const { return (above_[a] >> b) & 1U; }
    bool leq(std::size_t a, std::size_t b) const { return a == b || less(a, b); }
    bool independent(std::size_t a, std::size_t b) const { return !leq(a, b) && !leq(b, a); }

    /// Events strictly above `a`.
    Mask above(std::size_t a) const { return above_[a]; }

    /// Events strictly below `b`.
    Mask below(std::size_t b) const {
        Mask out = 0;
        for (std::size_t a = 0; a < size(); ++a) {
            if (less(a, b)) out |= detail::bit(a);
        }
        return out;
    }

    bool is_minimal(std::size_t a) const { return below(a) == 0; }
    bool is_maximal(std::size_t a) const { return above_[a] == 0; }

    /// Strict pairs in lexicographic order.
    std::vector<EventPair> pairs() const {
        std::vector<EventPair> out;
        for (std::size_t a = 0; a < size(); ++a) {
            detail::for_each_bit(above_[a], [&](std::size_t b) { out.emplace_back(a, b); });
        }
        return out;
    }

    /// Covering pairs (transitive reduction) in lexicographic order.
    std::vector<EventPair> hasse() const {
        std::vector<EventPair> out;
        for (std::size_t a = 0; a < size(); ++a) {
            Mask covers = above_[a];
            detail::for_each_bit(above_[a], [&](std::size_t b) { covers &= ~above_[b]; });
            detail::for_each_bit(covers, [&](std::size_t b) { out.emplace_back(a, b); });
        }
        return out;
    }

    bool is_strict_order() const {
        for (std::size_t a = 0; a < size(); ++a) {
            if (less(a, a)) return false;
            bool transitive = true;
            detail::for_each_bit(above_[a], [&](std::size_t b) {
                if ((above_[b] & ~above_[a]) != 0) transitive = false;
            });
            if (!transitive) return false;
        }
        return true;
    }

    /// Restriction to the listed events, renumbered in the given order.
    Poset restrict(std::span<const std::size_t> keep) const {
        Poset out(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            for (std::size_t j = 0; j < keep.size(); ++j) {
                if (less(keep[i], keep[j])) out.above_[i] |= detail::bit(j);
            }
        }
        return out;
    }

    friend bool operator==(const Poset&, const Poset&) = default;

private:
    friend Poset closure(std::span<const EventPair>, std::size_t);
    friend Poset from_rows(std::vector<Mask>);

    std::vector<Mask> above_;
};

/// Transitive closure of the generating pairs; throws CycleDetected on an antisymmetry violation.
inline Poset closure(std::span<const EventPair> pairs, std::size_t size) {
    Poset out(size);
    for (auto [a, b] : pairs) {
        if (a >= size || b >= size) throw std::out_of_range("order pair references unknown event");
        if (a == b) throw CycleDetected(a, a);
        out.above_[a] |= detail::bit(b);
    }
    if (auto bad = detail::close_rows(out.above_)) {
        std::size_t a = *bad;
        std::size_t b = a;
        detail::for_each_bit(out.above_[a], [&](std::size_t c) {
            if (b == a && c != a && out.less(c, a)) b = c;
        });
        throw CycleDetected(a, b);
    }
    return out;
}

inline Poset from_rows(std::vector<Mask> rows) {
    detail::check_size(rows.size());
    Poset out;
    out.above_ = std::move(rows);
    return out;
}

/// A morphism m -> n of the category of finite posets with pinned interfaces.
///
/// Values are kept in a normal layout: events [0,m) are the source images in order,
/// [m,m+n) the target images, and the remaining k events are internal. Source and
/// target images never share an event; an event that is both minimal and maximal and
/// hit by both injections is stored as the pair s(i) < t(j), which is its image under
/// the quotient (see `identity`).
class PosetMorphism {
public:
    PosetMorphism() = default;

    /// Builds from the normal layout and a generating set of strict pairs.
    static PosetMorphism from_layout(std::size_t m, std::size_t n, std::size_t k,
                                     std::span<const EventPair> pairs) {
        return PosetMorphism(m, n, k, closure(pairs, m + n + k));
    }

    static PosetMorphism from_poset(std::size_t m, std::size_t n, Poset order) {
        if (order.size() < m + n) throw InvalidMorphism("poset smaller than its interface");
        const std::size_t k = order.size() - m - n;
        return PosetMorphism(m, n, k, std::move(order));
    }

    /// Builds from an arbitrary event numbering with explicit source and target injections.
    static PosetMorphism from_injections(std::size_t events, std::span<const EventPair> pairs,
                                         std::span<const std::size_t> src,
                                         std::span<const std::size_t> tgt) {
        Poset order = closure(pairs, events);
        std::vector<int> role(events, 0);  // 1 source, 2 target, 3 both
        for (std::size_t e : src) {
            if (e >= events) throw InvalidMorphism("source image out of range");
            if (role[e] & 1) throw InvalidMorphism("source map is not injective");
            role[e] |= 1;
        }
        for (std::size_t e : tgt) {
            if (e >= events) throw InvalidMorphism("target image out of range");
            if (role[e] & 2) throw InvalidMorphism("target map is not injective");
            role[e] |= 2;
        }
        const std::size_t m = src.size();
        const std::size_t n = tgt.size();
        std::vector<std::size_t> internals;
        for (std::size_t e = 0; e < events; ++e) {
            if (role[e] == 0) internals.push_back(e);
        }
        const std::size_t k = internals.size();
        // Layout index for each side of every original event.
        std::vector<std::size_t> as_src(events, SIZE_MAX), as_tgt(events, SIZE_MAX);
        for (std::size_t i = 0; i < m; ++i) as_src[src[i]] = i;
        for (std::size_t j = 0; j < n; ++j) as_tgt[tgt[j]] = m + j;
        for (std::size_t l = 0; l < k; ++l) as_src[internals[l]] = as_tgt[internals[l]] = m + n + l;

        for (std::size_t e = 0; e < events; ++e) {
            if (role[e] == 3 && (!order.is_minimal(e) || !order.is_maximal(e))) {
                throw InvalidMorphism("shared source/target event must be isolated");
            }
            if (role[e] == 1 && !order.is_minimal(e)) throw InvalidMorphism("source image is not minimal");
            if (role[e] == 2 && !order.is_maximal(e)) throw InvalidMorphism("target image is not maximal");
        }
        // Lower ends are sources or internals, upper ends targets or internals.
        std::vector<EventPair> out;
        for (auto [a, b] : order.pairs()) out.emplace_back(as_src[a], as_tgt[b]);
        for (std::size_t e = 0; e < events; ++e) {
            if (role[e] == 3) out.emplace_back(as_src[e], as_tgt[e]);
        }
        return from_layout(m, n, k, out);
    }

    std::size_t dom() const { return m_; }
    std::size_t cod() const { return n_; }
    std::size_t internal_count() const { return k_; }
    std::size_t event_count() const { return order_.size(); }

    std::size_t src(std::size_t i) const { return i; }
    std::size_t tgt(std::size_t j) const { return m_ + j; }
    std::size_t internal(std::size_t l) const { return m_ + n_ + l; }
    bool is_internal(std::size_t e) const { return e >= m_ + n_; }

    bool less(std::size_t a, std::size_t b) const { return order_.less(a, b); }
    bool independent(std::size_t a, std::size_t b) const { return order_.independent(a, b); }
    const Poset& poset() const { return order_; }

    /// Order restricted to the internal events, indexed 0..k-1.
    Poset internal_poset() const {
        std::vector<std::size_t> keep(k_);
        std::iota(keep.begin(), keep.end(), m_ + n_);
        return order_.restrict(keep);
    }

    /// Relabels internal events: new internal l is old internal perm[l].
    PosetMorphism permute_internal(std::span<const std::size_t> perm) const {
        if (perm.size() != k_) throw std::invalid_argument("permutation size mismatch");
        std::vector<std::size_t> keep(event_count());
        std::iota(keep.begin(), keep.begin() + static_cast<std::ptrdiff_t>(m_ + n_), 0);
        for (std::size_t l = 0; l < k_; ++l) keep[m_ + n_ + l] = m_ + n_ + perm[l];
        return PosetMorphism(m_, n_, k_, order_.restrict(keep));
    }

    /// Re-checks every structural invariant; throws InvalidMorphism on violation.
    void validate() const {
        if (!order_.is_strict_order()) throw InvalidMorphism("order is not a strict partial order");
        for (std::size_t i = 0; i < m_; ++i) {
            if (!order_.is_minimal(src(i))) throw InvalidMorphism("source image is not minimal");
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (!order_.is_maximal(tgt(j))) throw InvalidMorphism("target image is not maximal");
        }
    }

    friend bool operator==(const PosetMorphism&, const PosetMorphism&) = default;

private:
    PosetMorphism(std::size_t m, std::size_t n, std::size_t k, Poset order)
        : m_(m), n_(n), k_(k), order_(std::move(order)) {
        validate();
    }

    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    Poset order_;
};

/// The identity n -> n: each logical event is hit by both interfaces, stored split as s(i) < t(i).
inline PosetMorphism identity(std::size_t n) {
    std::vector<std::size_t> ports(n);
    std::iota(ports.begin(), ports.end(), 0);
    return PosetMorphism::from_injections(n, {}, ports, ports);
}

/// Glues f's targets to g's sources, closes, and erases the interface.
inline PosetMorphism compose(const PosetMorphism& f, const PosetMorphism& g) {
    if (f.cod() != g.dom()) {
        throw ArityMismatch("cannot compose " + std::to_string(f.dom()) + "->" + std::to_string(f.cod()) +
                            " with " + std::to_string(g.dom()) + "->" + std::to_string(g.cod()));
    }
    const std::size_t m = f.dom();
    const std::size_t n = f.cod();
    const std::size_t p = g.cod();
    const std::size_t fe = f.event_count();
    // Amalgamated numbering: f's events keep their index; g's sources become f's targets.
    auto glue = [&](std::size_t ge) { return ge < n ? m + ge : fe + ge - n; };
    const std::size_t total = fe + g.event_count() - n;
    detail::check_size(total);

    std::vector<Mask> rows(total, 0);
    for (auto [a, b] : f.poset().pairs()) rows[a] |= detail::bit(b);
    for (auto [a, b] : g.poset().pairs()) rows[glue(a)] |= detail::bit(glue(b));
    if (auto bad = detail::close_rows(rows)) throw CycleDetected(*bad, *bad);

    std::vector<std::size_t> keep;
    keep.reserve(total - n);
    for (std::size_t i = 0; i < m; ++i) keep.push_back(f.src(i));
    for (std::size_t j = 0; j < p; ++j) keep.push_back(glue(g.tgt(j)));
    for (std::size_t l = 0; l < f.internal_count(); ++l) keep.push_back(f.internal(l));
    for (std::size_t l = 0; l < g.internal_count(); ++l) keep.push_back(glue(g.internal(l)));
    PosetMorphism out = PosetMorphism::from_poset(m, p, from_rows(std::move(rows)).restrict(keep));
#ifndef NDEBUG
    if (!out.poset().is_strict_order()) throw std::logic_error("composite lost transitivity");
#endif
    return out;
}

/// Disjoint union; g's interfaces are shifted past f's.
inline PosetMorphism tensor(const PosetMorphism& f, const PosetMorphism& g) {
    const std::size_t m = f.dom() + g.dom();
    const std::size_t n = f.cod() + g.cod();
    const std::size_t fk = f.internal_count();
    auto place_f = [&](std::size_t e) {
        if (e < f.dom()) return e;
        if (e < f.dom() + f.cod()) return m + (e - f.dom());
        return m + n + (e - f.dom() - f.cod());
    };
    auto place_g = [&](std::size_t e) {
        if (e < g.dom()) return f.dom() + e;
        if (e < g.dom() + g.cod()) return m + f.cod() + (e - g.dom());
        return m + n + fk + (e - g.dom() - g.cod());
    };
    std::vector<EventPair> pairs;
    for (auto [a, b] : f.poset().pairs()) pairs.emplace_back(place_f(a), place_f(b));
    for (auto [a, b] : g.poset().pairs()) pairs.emplace_back(place_g(a), place_g(b));
    return PosetMorphism::from_layout(m, n, fk + g.internal_count(), pairs);
}

/// The block swap m+n -> n+m: source i < m lands on target n+i, source m+j on target j.
inline PosetMorphism symmetry(std::size_t m, std::size_t n) {
    std::vector<EventPair> pairs;
    const std::size_t w = m + n;
    for (std::size_t i = 0; i < m; ++i) pairs.emplace_back(i, w + n + i);
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(m + j, w + j);
    return PosetMorphism::from_layout(w, w, 0, pairs);
}

/// Reverses the order and swaps the interfaces.
inline PosetMorphism dual(const PosetMorphism& f) {
    const std::size_t m = f.dom();
    const std::size_t n = f.cod();
    auto place = [&](std::size_t e) {
        if (e < m) return n + e;
        if (e < m + n) return e - m;
        return e;
    };
    std::vector<EventPair> pairs;
    for (auto [a, b] : f.poset().pairs()) pairs.emplace_back(place(b), place(a));
    return PosetMorphism::from_layout(n, m, f.internal_count(), pairs);
}

/// Isomorphism between two morphisms' event sets; externals are mapped to themselves.
struct IsoWitness {
    std::vector<std::size_t> map;
};

namespace detail {

struct Fingerprint {
    std::size_t in_degree;
    std::size_t out_degree;
    Mask externals_below;
    Mask externals_above;
    friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

inline std::vector<Fingerprint> internal_fingerprints(const PosetMorphism& f) {
    const Mask external = low_bits(f.dom() + f.cod());
    std::vector<Fingerprint> out;
    out.reserve(f.internal_count());
    for (std::size_t l = 0; l < f.internal_count(); ++l) {
        const std::size_t e = f.internal(l);
        const Mask below = f.poset().below(e);
        const Mask above = f.poset().above(e);
        out.push_back({static_cast<std::size_t>(std::popcount(below)),
                       static_cast<std::size_t>(std::popcount(above)), below & external, above & external});
    }
    return out;
}

}  // namespace detail

/// Searches for an order isomorphism commuting with both interfaces.
inline std::optional<IsoWitness> iso_eq(const PosetMorphism& f, const PosetMorphism& g) {
    if (f.dom() != g.dom() || f.cod() != g.cod() || f.internal_count() != g.internal_count()) {
        return std::nullopt;
    }
    const std::size_t ext = f.dom() + f.cod();
    const std::size_t k = f.internal_count();
    const Mask ext_mask = detail::low_bits(ext);
    for (std::size_t a = 0; a < ext; ++a) {
        if ((f.poset().above(a) & ext_mask) != (g.poset().above(a) & ext_mask)) return std::nullopt;
    }
    const auto ff = detail::internal_fingerprints(f);
    const auto gf = detail::internal_fingerprints(g);
    {
        auto fs = ff;
        auto gs = gf;
        std::sort(fs.begin(), fs.end());
        std::sort(gs.begin(), gs.end());
        if (fs != gs) return std::nullopt;
    }

    std::vector<std::size_t> assign(k, SIZE_MAX);
    std::vector<bool> used(k, false);
    auto consistent = [&](std::size_t l, std::size_t c) {
        for (std::size_t q = 0; q < l; ++q) {
            const std::size_t d = assign[q];
            if (f.less(f.internal(q), f.internal(l)) != g.less(g.internal(d), g.internal(c))) return false;
            if (f.less(f.internal(l), f.internal(q)) != g.less(g.internal(c), g.internal(d))) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, std::size_t l) -> bool {
        if (l == k) return true;
        for (std::size_t c = 0; c < k; ++c) {
            if (used[c] || ff[l] != gf[c] || !consistent(l, c)) continue;
            used[c] = true;
            assign[l] = c;
            if (self(self, l + 1)) return true;
            used[c] = false;
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;

    IsoWitness w;
    w.map.resize(ext + k);
    std::iota(w.map.begin(), w.map.begin() + static_cast<std::ptrdiff_t>(ext), 0);
    for (std::size_t l = 0; l < k; ++l) w.map[ext + l] = ext + assign[l];
    return w;
}

inline bool isomorphic(const PosetMorphism& f, const PosetMorphism& g) { return iso_eq(f, g).has_value(); }

}  // namespace poalg
