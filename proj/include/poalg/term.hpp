#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poalg/poset.hpp"

namespace poalg {

/// Morphism generators of the poalgebra signature. The single object generator is 1.
enum class Gen : std::uint8_t { eta, mu, eps, delta, sigma, gamma };

struct GenInfo {
    Gen gen;
    std::string_view name;
    std::size_t dom;
    std::size_t cod;
};

inline constexpr std::array<GenInfo, 6> signature{{
    {Gen::eta, "eta", 0, 1},
    {Gen::mu, "mu", 2, 1},
    {Gen::eps, "eps", 1, 0},
    {Gen::delta, "delta", 1, 2},
    {Gen::sigma, "sigma", 1, 1},
    {Gen::gamma, "gamma", 2, 2},
}};

inline constexpr const GenInfo& info(Gen g) { return signature[static_cast<std::size_t>(g)]; }

inline std::optional<Gen> gen_from_name(std::string_view name) {
    for (const auto& gi : signature) {
        if (gi.name == name) return gi.gen;
    }
    return std::nullopt;
}

struct Arity {
    std::size_t dom = 0;
    std::size_t cod = 0;
    friend bool operator==(const Arity&, const Arity&) = default;
};

/// A morphism of the free monoidal category on the signature, as an immutable expression tree.
///
/// `seq(a, b)` is diagrammatic composition: a first, then b.
class Term {
public:
    enum class Kind : std::uint8_t { gen, id, seq, par };

    Term() : Term(id(0)) {}

    static Term gen(Gen g) {
        const auto& gi = info(g);
        return Term(std::make_shared<const Node>(Node{Kind::gen, g, 0, {}, {}, {gi.dom, gi.cod}, 1}));
    }

    static Term id(std::size_t n) {
        return Term(std::make_shared<const Node>(Node{Kind::id, Gen::eta, n, {}, {}, {n, n}, 0}));
    }

    static Term seq(const Term& first, const Term& then) {
        if (first.cod() != then.dom()) {
            throw ArityMismatch("sequential composite of " + std::to_string(first.dom()) + "->" +
                                std::to_string(first.cod()) + " and " + std::to_string(then.dom()) + "->" +
                                std::to_string(then.cod()) + ": " + std::to_string(first.cod()) +
                                " != " + std::to_string(then.dom()));
        }
        return Term(std::make_shared<const Node>(Node{Kind::seq, Gen::eta, 0, first.node_, then.node_,
                                                      {first.dom(), then.cod()},
                                                      first.generator_count() + then.generator_count()}));
    }

    static Term par(const Term& left, const Term& right) {
        return Term(std::make_shared<const Node>(Node{Kind::par, Gen::eta, 0, left.node_, right.node_,
                                                      {left.dom() + right.dom(), left.cod() + right.cod()},
                                                      left.generator_count() + right.generator_count()}));
    }

    Kind kind() const { return node_->kind; }
    Gen generator() const { return node_->gen; }
    std::size_t width() const { return node_->width; }
    Term left() const { return Term(node_->left); }
    Term right() const { return Term(node_->right); }

    Arity arity() const { return node_->arity; }
    std::size_t dom() const { return node_->arity.dom; }
    std::size_t cod() const { return node_->arity.cod; }
    std::size_t generator_count() const { return node_->generators; }

    bool contains(Gen g) const {
        switch (kind()) {
            case Kind::gen: return generator() == g;
            case Kind::id: return false;
            default: return left().contains(g) || right().contains(g);
        }
    }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.node_ == b.node_) return true;
        if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
        switch (a.kind()) {
            case Kind::gen: return a.generator() == b.generator();
            case Kind::id: return a.width() == b.width();
            default: return a.left() == b.left() && a.right() == b.right();
        }
    }

private:
    struct Node {
        Kind kind;
        Gen gen;
        std::size_t width;
        std::shared_ptr<const Node> left;
        std::shared_ptr<const Node> right;
        Arity arity;
        std::size_t generators;
    };

    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

inline Arity arity(const Term& t) { return t.arity(); }

/// Left-nested sequential composite of a non-empty list.
inline Term seq_all(std::initializer_list<Term> terms) {
    auto it = terms.begin();
    Term out = *it++;
    for (; it != terms.end(); ++it) out = Term::seq(out, *it);
    return out;
}

/// Left-nested tensor of a list; the empty list is id0.
inline Term par_all(std::span<const Term> terms) {
    if (terms.empty()) return Term::id(0);
    Term out = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) out = Term::par(out, terms[i]);
    return out;
}

/// id_a * t * id_b with the unit paddings left out.
inline Term whisker(std::size_t a, const Term& t, std::size_t b) {
    Term out = t;
    if (a > 0) out = Term::par(Term::id(a), out);
    if (b > 0) out = Term::par(out, Term::id(b));
    return out;
}

/// The symmetry m+n -> n+m built from gamma by the inductive clauses
///   gamma_{0,n} = id_n,  gamma_{1,0} = id_1,
///   gamma_{1,n+1} = (id_1 * gamma_{1,n}) o (gamma * id_n),
///   gamma_{m+1,n} = (gamma_{m,n} * id_1) o (id_m * gamma_{1,n}).
inline Term gamma_block(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) return Term::id(m + n);
    if (m == 1) {
        if (n == 1) return Term::gen(Gen::gamma);
        return Term::seq(whisker(0, Term::gen(Gen::gamma), n - 1), whisker(1, gamma_block(1, n - 1), 0));
    }
    return Term::seq(whisker(m - 1, gamma_block(1, n), 0), whisker(0, gamma_block(m - 1, n), 1));
}

namespace detail {

inline void print_seq(const Term& t, std::string& out);

inline void print_atom(const Term& t, std::string& out) {
    switch (t.kind()) {
        case Term::Kind::gen: out += info(t.generator()).name; return;
        case Term::Kind::id: out += "id" + std::to_string(t.width()); return;
        default:
            out += '(';
            print_seq(t, out);
            out += ')';
    }
}

inline void print_par(const Term& t, std::string& out) {
    if (t.kind() != Term::Kind::par) {
        print_atom(t, out);
        return;
    }
    print_par(t.left(), out);
    out += " * ";
    print_atom(t.right(), out);
}

inline void print_seq(const Term& t, std::string& out) {
    if (t.kind() != Term::Kind::seq) {
        print_par(t, out);
        return;
    }
    print_seq(t.left(), out);
    out += " ; ";
    print_par(t.right(), out);
}

}  // namespace detail

/// Renders a term in the DSL with the fewest parentheses that re-parse to the same tree.
inline std::string print(const Term& t) {
    std::string out;
    detail::print_seq(t, out);
    return out;
}

}  // namespace poalg
