#pragma once

#include <set>
#include <vector>

#include "poalg/canon.hpp"
#include "poalg/factorization.hpp"
#include "poalg/relation.hpp"
#include "poalg/slices.hpp"
#include "poalg/term.hpp"

namespace poalg {

/// H^n = id_n * eta : n -> n+1
inline Term h_term(std::size_t n) { return whisker(n, Term::gen(Gen::eta), 0); }

/// S^n = id_n * sigma : n+1 -> n+1
inline Term s_term(std::size_t n) { return whisker(n, Term::gen(Gen::sigma), 0); }

/// G^n_i = id_i * gamma * id_{n-i} : n+2 -> n+2; G^n = G^n_n.
inline Term g_term(std::size_t n, std::size_t i) {
    if (i > n) throw std::out_of_range("G^n_i needs i <= n");
    return whisker(i, Term::gen(Gen::gamma), n - i);
}
inline Term g_term(std::size_t n) { return g_term(n, n); }

/// W^n_i : n+1 -> n+1 joins a copy of wire i into the last wire.
inline Term w_term(std::size_t n, std::size_t i) {
    if (i >= n) throw std::out_of_range("W^n_i needs i < n");
    const Term copy = whisker(i, Term::gen(Gen::delta), n - i);
    const Term route = whisker(i + 1, gamma_block(1, n - i - 1), 1);
    const Term merge = whisker(n, Term::gen(Gen::mu), 0);
    return seq_all({copy, route, merge});
}

/// W^n_I, applying W^n_{i_0} first for i_0 < i_1 < ...; W^n_{} = id_{n+1}.
inline Term w_term(std::size_t n, const std::set<std::size_t>& inputs) {
    Term out = Term::id(n + 1);
    bool first = true;
    for (std::size_t i : inputs) {
        out = first ? w_term(n, i) : Term::seq(out, w_term(n, i));
        first = false;
    }
    return out;
}

/// X^n_I = S^n o W^n_I o H^n : n -> n+1
inline Term x_term(std::size_t n, const std::set<std::size_t>& inputs) {
    if (inputs.empty()) return Term::seq(h_term(n), s_term(n));
    return seq_all({h_term(n), w_term(n, inputs), s_term(n)});
}

namespace detail {

/// Fan of one wire into d wires: eps, id1, or delta ; (id1 * fan(d-1)).
inline Term fan_out(std::size_t d) {
    if (d == 0) return Term::gen(Gen::eps);
    if (d == 1) return Term::id(1);
    return Term::seq(Term::gen(Gen::delta), whisker(1, fan_out(d - 1), 0));
}

inline Term fan_in(std::size_t d) {
    if (d == 0) return Term::gen(Gen::eta);
    if (d == 1) return Term::id(1);
    return Term::seq(whisker(1, fan_in(d - 1), 0), Term::gen(Gen::mu));
}

/// Adjacent gamma layers realizing wire p -> perm[p], one crossing per inversion.
inline std::vector<Term> routing_layers(std::vector<std::size_t> perm) {
    const std::size_t w = perm.size();
    std::vector<Term> layers;
    // Bubble sort on destination labels; each exchange is one gamma between wires q, q+1.
    for (std::size_t pass = 0; pass < w; ++pass) {
        for (std::size_t q = 0; q + 1 < w; ++q) {
            if (perm[q] > perm[q + 1]) {
                std::swap(perm[q], perm[q + 1]);
                layers.push_back(whisker(q, Term::gen(Gen::gamma), w - q - 2));
            }
        }
    }
    return layers;
}

}  // namespace detail

/// A sigma-free term for a relation: delta-fans per input, a gamma routing layer, mu-fans per output.
inline Term rel_to_term(const Relation& r) {
    std::vector<Term> fans;
    for (std::size_t i = 0; i < r.dom(); ++i) fans.push_back(detail::fan_out(r.image(i).size()));
    std::vector<Term> cofans;
    for (std::size_t j = 0; j < r.cod(); ++j) cofans.push_back(detail::fan_in(r.preimage(j).size()));

    // Middle wires are the pairs of r, input-major after the fans and output-major before the cofans.
    std::vector<std::pair<std::size_t, std::size_t>> input_major(r.pairs().begin(), r.pairs().end());
    auto output_major = input_major;
    std::sort(output_major.begin(), output_major.end(),
              [](auto a, auto b) { return std::pair(a.second, a.first) < std::pair(b.second, b.first); });
    std::vector<std::size_t> perm(input_major.size());
    for (std::size_t p = 0; p < input_major.size(); ++p) {
        perm[p] = static_cast<std::size_t>(
            std::find(output_major.begin(), output_major.end(), input_major[p]) - output_major.begin());
    }

    Term out = par_all(fans);
    for (const Term& layer : detail::routing_layers(perm)) out = Term::seq(out, layer);
    out = Term::seq(out, par_all(cofans));
    return to_term(normalize(to_diagram(out)));
}

/// X^m_{I_0} ; X^{m+1}_{I_1} ; ... ; R as a term.
inline Term fact_to_term(const Factorization& F) {
    F.validate();
    Term out = Term::id(F.m);
    for (std::size_t j = 0; j < F.k; ++j) {
        const Term block = x_term(F.m + j, F.blocks[j]);
        out = j == 0 ? block : Term::seq(out, block);
    }
    const Term closing = rel_to_term(F.closing);
    return F.k == 0 ? closing : Term::seq(out, closing);
}

/// The factorization of f along the least linearization of its canonically numbered form.
inline Factorization canonical_factorization(const PosetMorphism& f) {
    const PosetMorphism c = canonical_form(f);
    return factorize(c, linearizations(c).front());
}

/// A term whose interpretation is f, flattened to slice normal form; isomorphic inputs give identical terms.
inline Term canonical_term(const PosetMorphism& f) {
    return to_term(normalize(to_diagram(fact_to_term(canonical_factorization(f)))));
}

}  // namespace poalg
