#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "poalg/term.hpp"

namespace poalg {

/// id_left * generator * id_right.
struct Slice {
    std::size_t left = 0;
    Gen gen = Gen::eta;
    std::size_t right = 0;

    std::size_t dom() const { return left + info(gen).dom + right; }
    std::size_t cod() const { return left + info(gen).cod + right; }

    friend auto operator<=>(const Slice&, const Slice&) = default;
};

/// A term flattened into one generator per layer (a slice list together with its input width).
struct Diagram {
    std::size_t width = 0;
    std::vector<Slice> slices;

    std::size_t dom() const { return width; }
    std::size_t cod() const { return slices.empty() ? width : slices.back().cod(); }

    friend bool operator==(const Diagram&, const Diagram&) = default;
};

namespace detail {

inline void append_slices(const Term& t, std::size_t left, std::size_t right, std::vector<Slice>& out) {
    switch (t.kind()) {
        case Term::Kind::gen: out.push_back({left, t.generator(), right}); return;
        case Term::Kind::id: return;
        case Term::Kind::seq:
            append_slices(t.left(), left, right, out);
            append_slices(t.right(), left, right, out);
            return;
        case Term::Kind::par:
            // (a * b) = (a * id) ; (id * b)
            append_slices(t.left(), left, right + t.right().dom(), out);
            append_slices(t.right(), left + t.left().cod(), right, out);
            return;
    }
}

}  // namespace detail

/// Sequential decomposition into whiskered generators; identities give the empty list.
inline std::vector<Slice> slices(const Term& t) {
    std::vector<Slice> out;
    detail::append_slices(t, 0, 0, out);
    return out;
}

inline Diagram to_diagram(const Term& t) { return Diagram{t.dom(), slices(t)}; }

inline Term slice_term(const Slice& s) { return whisker(s.left, Term::gen(s.gen), s.right); }

/// Recomposes a slice list as a left-nested sequential composite.
inline Term to_term(const Diagram& d) {
    if (d.slices.empty()) return Term::id(d.width);
    Term out = slice_term(d.slices.front());
    for (std::size_t i = 1; i < d.slices.size(); ++i) out = Term::seq(out, slice_term(d.slices[i]));
    return out;
}

/// Throws ArityMismatch when consecutive slices do not fit.
inline void check_diagram(const Diagram& d) {
    std::size_t w = d.width;
    for (const auto& s : d.slices) {
        if (s.dom() != w) throw ArityMismatch("slice does not fit the current boundary");
        w = s.cod();
    }
}

/// Exchanges slices i and i+1 when they touch disjoint wires (interchange law).
/// An eps followed by an eta at the same position can be exchanged two ways; `right`
/// selects the placement with the moved eta right of the eps instead of left of it.
inline bool try_swap(std::vector<Slice>& s, std::size_t i, bool right = false) {
    const Slice a = s[i];
    const Slice b = s[i + 1];
    const auto& ai = info(a.gen);
    const auto& bi = info(b.gen);
    const std::size_t below = a.dom();
    const bool fits_left = b.left + bi.dom <= a.left;
    const bool fits_right = b.left >= a.left + ai.cod;
    if (fits_left && !(right && fits_right)) {
        // b reads only wires left of a's outputs.
        s[i] = Slice{b.left, b.gen, below - b.left - bi.dom};
        s[i + 1] = Slice{a.left - bi.dom + bi.cod, a.gen, a.right};
        return true;
    }
    if (fits_right) {
        const std::size_t bl = b.left - ai.cod + ai.dom;
        s[i] = Slice{bl, b.gen, b.right};
        const std::size_t mid = below - bi.dom + bi.cod;
        s[i + 1] = Slice{a.left, a.gen, mid - a.left - ai.dom};
        return true;
    }
    return false;
}

/// True when try_swap(s, i) has two distinct outcomes.
inline bool ambiguous_swap(const std::vector<Slice>& s, std::size_t i) {
    const Slice& a = s[i];
    const Slice& b = s[i + 1];
    return info(a.gen).cod == 0 && info(b.gen).dom == 0 && a.left == b.left;
}

/// Moves slice `from` backward to position `to` by adjacent interchanges; leaves `s` unchanged on failure.
inline bool bubble_back(std::vector<Slice>& s, std::size_t from, std::size_t to) {
    std::vector<Slice> work = s;
    for (std::size_t p = from; p > to; --p) {
        if (!try_swap(work, p - 1)) return false;
    }
    s = std::move(work);
    return true;
}

/// Compact byte key of a slice list.
inline std::string slices_key(std::size_t width, const std::vector<Slice>& slices) {
    std::string key;
    key.reserve(1 + 3 * slices.size());
    key.push_back(static_cast<char>(width));
    for (const auto& s : slices) {
        key.push_back(static_cast<char>(s.left));
        key.push_back(static_cast<char>(s.gen));
        key.push_back(static_cast<char>(s.right));
    }
    return key;
}

namespace detail {

/// Every result of moving slice `p` back to `to`, over both placements at ambiguous steps.
inline void bubble_variants(std::vector<Slice> s, std::size_t p, std::size_t to, std::vector<std::vector<Slice>>& out) {
    if (p == to) {
        out.push_back(std::move(s));
        return;
    }
    if (ambiguous_swap(s, p - 1)) {
        std::vector<Slice> alt = s;
        try_swap(alt, p - 1, true);
        bubble_variants(std::move(alt), p - 1, to, out);
    }
    if (!try_swap(s, p - 1)) return;
    bubble_variants(std::move(s), p - 1, to, out);
}

}  // namespace detail

/// Fast interchange normal form: repeatedly brings the least slice that can reach the next position there.
/// It is idempotent and stays inside the class of `d`, so equal results imply monoidal equality.
/// Diagrams whose eps/eta pieces can be re-placed may still reach different results; see canonical_diagram.
inline Diagram normalize(const Diagram& d) {
    std::vector<Slice> s = d.slices;
    std::vector<std::vector<Slice>> trials;
    // A pass never increases s lexicographically, so repeating it reaches a fixed point.
    for (std::vector<Slice> before; before != s;) {
        before = s;
        for (std::size_t pos = 0; pos < s.size(); ++pos) {
            trials.clear();
            for (std::size_t j = pos; j < s.size(); ++j) detail::bubble_variants(s, j, pos, trials);
            s = *std::min_element(trials.begin(), trials.end());
        }
    }
    return Diagram{d.width, std::move(s)};
}

/// Every slice list in the interchange class of `d`, both placements included at ambiguous swaps.
inline std::vector<std::vector<Slice>> interchange_class(const Diagram& d) {
    std::unordered_set<std::string> seen{slices_key(d.width, d.slices)};
    std::vector<std::vector<Slice>> out{d.slices};
    for (std::size_t next = 0; next < out.size(); ++next) {
        for (std::size_t i = 0; i + 1 < out[next].size(); ++i) {
            for (bool right : {false, true}) {
                if (right && !ambiguous_swap(out[next], i)) continue;
                std::vector<Slice> e = out[next];
                if (!try_swap(e, i, right)) break;
                if (seen.insert(slices_key(d.width, e)).second) out.push_back(std::move(e));
            }
        }
    }
    return out;
}

/// Exact normal form: the least slice list of the interchange class.  Cost grows with the class size.
inline Diagram canonical_diagram(const Diagram& d) {
    const auto all = interchange_class(normalize(d));
    return Diagram{d.width, *std::min_element(all.begin(), all.end())};
}

inline Diagram normalize(const Term& t) { return normalize(to_diagram(t)); }

/// Compact byte key of a diagram, used for hashing in searches.
inline std::string diagram_key(const Diagram& d) { return slices_key(d.width, d.slices); }

/// Structural equality modulo the strict monoidal axioms.
inline bool monoidal_equal(const Term& a, const Term& b) {
    if (a.arity() != b.arity()) return false;
    const Diagram da = normalize(a);
    const Diagram db = normalize(b);
    return da == db || canonical_diagram(da) == canonical_diagram(db);
}

}  // namespace poalg
