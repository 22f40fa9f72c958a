#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "poalg/canon.hpp"
#include "poalg/poset.hpp"
#include "poalg/slices.hpp"

namespace poalg {

inline constexpr std::size_t max_enum_events = 8;

struct EnumSpec {
    std::size_t max_events = 0;
    std::size_t min_dom = 0;
    std::size_t max_dom = 0;
    std::size_t min_cod = 0;
    std::size_t max_cod = 0;
    std::optional<std::size_t> max_internal;

    void validate() const {
        if (max_events > max_enum_events) {
            throw std::length_error("enumeration capped at " + std::to_string(max_enum_events) + " events");
        }
        if (min_dom > max_dom || min_cod > max_cod) throw std::invalid_argument("empty arity range");
    }
};

namespace detail {

/// Masks over [0,size) that are down-closed in the given `below` rows.
inline std::vector<Mask> down_sets(const std::vector<Mask>& below, std::size_t size) {
    std::vector<Mask> out;
    for (Mask s = 0; s < (Mask{1} << size); ++s) {
        bool closed = true;
        for_each_bit(s, [&](std::size_t e) { closed = closed && (below[e] & ~s) == 0; });
        if (closed) out.push_back(s);
    }
    return out;
}

/// Every poset on m sources, then k internals, then n targets in which each new event
/// gets a down-closed set of strict predecessors.  `below[e]` is the strict down-set of e.
template <typename Emit>
void grow(std::size_t m, std::size_t n, std::size_t k, std::vector<Mask>& below, Emit& emit) {
    const std::size_t placed = below.size();
    if (placed == m + k + n) {
        emit(below);
        return;
    }
    if (placed < m) {
        below.push_back(0);
        grow(m, n, k, below, emit);
        below.pop_back();
        return;
    }
    // Targets only see sources and internals, so compute down-sets over those.
    const std::size_t visible = std::min(placed, m + k);
    for (Mask d : down_sets(below, visible)) {
        below.push_back(d);
        grow(m, n, k, below, emit);
        below.pop_back();
    }
}

}  // namespace detail

/// One representative per isomorphism class, ordered by (dom, cod, internals, key).
inline std::vector<PosetMorphism> enumerate_morphisms(const EnumSpec& spec) {
    spec.validate();
    std::vector<PosetMorphism> out;
    for (std::size_t m = spec.min_dom; m <= spec.max_dom; ++m) {
        for (std::size_t n = spec.min_cod; n <= spec.max_cod; ++n) {
            for (std::size_t k = 0; m + n + k <= spec.max_events; ++k) {
                if (spec.max_internal && k > *spec.max_internal) break;
                std::map<CanonicalKey, PosetMorphism> classes;
                std::vector<Mask> below;
                auto emit = [&](const std::vector<Mask>& rows) {
                    // Growth order is sources, internals, targets; the layout wants targets before internals.
                    auto layout = [&](std::size_t e) { return e < m ? e : e < m + k ? e + n : e - k; };
                    std::vector<EventPair> pairs;
                    for (std::size_t b = 0; b < rows.size(); ++b) {
                        detail::for_each_bit(rows[b], [&](std::size_t a) { pairs.emplace_back(layout(a), layout(b)); });
                    }
                    PosetMorphism f = PosetMorphism::from_layout(m, n, k, pairs);
                    classes.try_emplace(canonical_key(f), canonical_form(f));
                };
                detail::grow(m, n, k, below, emit);
                for (auto& [key, f] : classes) out.push_back(std::move(f));
            }
        }
    }
    return out;
}

struct TermEnumSpec {
    std::size_t max_generators = 0;
    std::size_t max_width = 3;
    std::optional<std::size_t> dom;
    std::optional<std::size_t> cod;
};

/// One interchange normal form per class of slice lists, all boundaries at most max_width wide.
inline std::vector<Diagram> enumerate_diagrams(const TermEnumSpec& spec) {
    std::vector<Diagram> out;
    std::set<std::string> seen;
    std::vector<Diagram> level;
    for (std::size_t w = 0; w <= spec.max_width; ++w) {
        if (spec.dom && *spec.dom != w) continue;
        level.push_back(Diagram{w, {}});
        seen.insert(diagram_key(level.back()));
    }
    for (std::size_t g = 0;; ++g) {
        for (const auto& d : level) {
            if (!spec.cod || *spec.cod == d.cod()) out.push_back(d);
        }
        if (g == spec.max_generators) break;
        std::vector<Diagram> next;
        for (const auto& d : level) {
            const std::size_t w = d.cod();
            for (const auto& gi : signature) {
                if (gi.dom > w || w - gi.dom + gi.cod > spec.max_width) continue;
                for (std::size_t left = 0; left + gi.dom <= w; ++left) {
                    Diagram e = d;
                    e.slices.push_back(Slice{left, gi.gen, w - gi.dom - left});
                    e = canonical_diagram(e);
                    if (seen.insert(diagram_key(e)).second) next.push_back(std::move(e));
                }
            }
        }
        level = std::move(next);
    }
    return out;
}

inline std::vector<Term> enumerate_terms(const TermEnumSpec& spec) {
    std::vector<Term> out;
    for (const auto& d : enumerate_diagrams(spec)) out.push_back(to_term(d));
    return out;
}

}  // namespace poalg
