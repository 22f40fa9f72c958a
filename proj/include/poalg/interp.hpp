#pragma once

#include <array>

#include "poalg/relation.hpp"
#include "poalg/slices.hpp"
#include "poalg/term.hpp"

namespace poalg {

/// Interpretation of each generator as a morphism of the poset category.
class GeneratorTable {
public:
    GeneratorTable() {
        using P = std::vector<EventPair>;
        // Layout: sources, then targets, then internals.
        set(Gen::eta, PosetMorphism::from_layout(0, 1, 0, P{}));
        set(Gen::mu, PosetMorphism::from_layout(2, 1, 0, P{{0, 2}, {1, 2}}));
        set(Gen::eps, PosetMorphism::from_layout(1, 0, 0, P{}));
        set(Gen::delta, PosetMorphism::from_layout(1, 2, 0, P{{0, 1}, {0, 2}}));
        set(Gen::sigma, PosetMorphism::from_layout(1, 1, 1, P{{0, 2}, {2, 1}}));
        set(Gen::gamma, PosetMorphism::from_layout(2, 2, 0, P{{0, 3}, {1, 2}}));
    }

    const PosetMorphism& operator[](Gen g) const { return table_[static_cast<std::size_t>(g)]; }

private:
    void set(Gen g, PosetMorphism f) {
        if (f.dom() != info(g).dom || f.cod() != info(g).cod) throw std::logic_error("generator arity");
        table_[static_cast<std::size_t>(g)] = std::move(f);
    }

    std::array<PosetMorphism, signature.size()> table_;
};

inline const GeneratorTable& generator_table() {
    static const GeneratorTable table;
    return table;
}

/// The monoidal functor from terms to posets, by structural recursion.
inline PosetMorphism interp(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::gen: return generator_table()[t.generator()];
        case Term::Kind::id: return identity(t.width());
        case Term::Kind::seq: return compose(interp(t.left()), interp(t.right()));
        case Term::Kind::par: return tensor(interp(t.left()), interp(t.right()));
    }
    throw std::logic_error("unreachable");
}

inline PosetMorphism interp(const Slice& s) {
    return tensor(tensor(identity(s.left), generator_table()[s.gen]), identity(s.right));
}

inline PosetMorphism interp(const Diagram& d) {
    PosetMorphism out = identity(d.width);
    for (const auto& s : d.slices) out = compose(out, interp(s));
    return out;
}

/// Equality of the presented category, decided in the poset model.
inline bool tp_equal(const Term& a, const Term& b) {
    if (a.arity() != b.arity()) {
        throw ArityMismatch("terms are not parallel: " + std::to_string(a.dom()) + "->" + std::to_string(a.cod()) +
                            " vs " + std::to_string(b.dom()) + "->" + std::to_string(b.cod()));
    }
    return isomorphic(interp(a), interp(b));
}

/// True iff sigma does not occur; such terms interpret as relations.
inline bool is_relation_term(const Term& t) { return !t.contains(Gen::sigma); }

}  // namespace poalg
