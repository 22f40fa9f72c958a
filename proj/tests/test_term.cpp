#include <gtest/gtest.h>

#include <set>
#include <random>

#include "poalg/enumerate.hpp"
#include "poalg/interp.hpp"
#include "poalg/parse.hpp"
#include "poalg/slices.hpp"

using namespace poalg;

namespace {

// Random well-typed term tree with exactly `gens` generators, all boundaries at most max_width.
std::optional<Term> random_tree(std::mt19937_64& rng, std::size_t gens, std::size_t width, std::size_t max_width) {
    if (gens == 0) return Term::id(width);
    if (gens == 1) {
        std::vector<Term> options;
        for (const auto& gi : signature) {
            if (gi.dom > width || width - gi.dom + gi.cod > max_width) continue;
            for (std::size_t a = 0; a + gi.dom <= width; ++a) options.push_back(whisker(a, Term::gen(gi.gen), width - gi.dom - a));
        }
        if (options.empty()) return std::nullopt;
        return options[rng() % options.size()];
    }
    const std::size_t split = 1 + rng() % (gens - 1);
    if (rng() % 2 == 0) {
        auto first = random_tree(rng, split, width, max_width);
        if (!first) return std::nullopt;
        auto then = random_tree(rng, gens - split, first->cod(), max_width);
        if (!then) return std::nullopt;
        return Term::seq(*first, *then);
    }
    const std::size_t lw = rng() % (width + 1);
    auto l = random_tree(rng, split, lw, max_width);
    if (!l) return std::nullopt;
    if (l->cod() > max_width) return std::nullopt;
    auto r = random_tree(rng, gens - split, width - lw, max_width - l->cod());
    if (!r) return std::nullopt;
    return Term::par(*l, *r);
}

// Every interchange of two adjacent slices, written out from wire intervals.
std::vector<std::pair<Slice, Slice>> exchanges(const Slice& a, const Slice& b) {
    const auto& ai = info(a.gen);
    const auto& bi = info(b.gen);
    std::vector<std::pair<Slice, Slice>> out;
    if (b.left + bi.dom <= a.left) {
        const std::size_t right = a.dom() - b.left - bi.dom;
        out.emplace_back(Slice{b.left, b.gen, right}, Slice{a.left + bi.cod - bi.dom, a.gen, a.right});
    }
    if (b.left >= a.left + ai.cod) {
        const Slice nb{b.left + ai.dom - ai.cod, b.gen, b.right};
        out.emplace_back(nb, Slice{a.left, a.gen, nb.cod() - a.left - ai.dom});
    }
    return out;
}

// The whole interchange class of a slice list, by breadth-first search.
std::set<std::vector<Slice>> orbit(const std::vector<Slice>& start) {
    std::set<std::vector<Slice>> seen{start};
    std::vector<std::vector<Slice>> queue{start};
    while (!queue.empty()) {
        const auto cur = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            for (const auto& [x, y] : exchanges(cur[i], cur[i + 1])) {
                auto next = cur;
                next[i] = x;
                next[i + 1] = y;
                if (seen.insert(next).second) queue.push_back(next);
            }
        }
    }
    return seen;
}

// Number of interchange classes of diagrams with at most two slices, boundaries <= max_width.
std::size_t oracle_two_slice_classes(std::size_t max_width) {
    auto slices_on = [&](std::size_t w) {
        std::vector<Slice> out;
        for (const auto& gi : signature) {
            if (gi.dom > w || w - gi.dom + gi.cod > max_width) continue;
            for (std::size_t a = 0; a + gi.dom <= w; ++a) out.push_back({a, gi.gen, w - gi.dom - a});
        }
        return out;
    };
    std::set<std::pair<std::size_t, std::vector<Slice>>> classes;
    for (std::size_t w = 0; w <= max_width; ++w) {
        classes.insert({w, {}});
        for (const Slice& s : slices_on(w)) {
            classes.insert({w, {s}});
            for (const Slice& t : slices_on(s.cod())) classes.insert({w, *orbit({s, t}).begin()});
        }
    }
    return classes.size();
}

}  // namespace

TEST(Term, Arities) {
    EXPECT_EQ(Term::gen(Gen::mu).arity(), (Arity{2, 1}));
    EXPECT_EQ(Term::par(Term::gen(Gen::mu), Term::gen(Gen::eta)).arity(), (Arity{2, 2}));
    EXPECT_EQ(Term::id(0).arity(), (Arity{0, 0}));
    EXPECT_EQ(Term::seq(Term::gen(Gen::delta), Term::gen(Gen::gamma)).generator_count(), 2U);
    EXPECT_THROW(Term::seq(Term::gen(Gen::mu), Term::gen(Gen::mu)), ArityMismatch);
}

TEST(Term, GammaBlockTypes) {
    for (std::size_t m = 0; m <= 4; ++m) {
        for (std::size_t n = 0; n <= 4; ++n) {
            const Term g = gamma_block(m, n);
            EXPECT_EQ(g.dom(), m + n);
            EXPECT_EQ(g.cod(), m + n);
            EXPECT_EQ(g.generator_count(), m * n);
        }
    }
}

TEST(Parse, Arities) {
    EXPECT_EQ(parse("mu ; delta").arity(), (Arity{2, 2}));
    EXPECT_EQ(parse("(eta * id1) ; mu").arity(), (Arity{1, 1}));
    EXPECT_EQ(parse("  id0 ").arity(), (Arity{0, 0}));
    EXPECT_EQ(parse("id 3").arity(), (Arity{3, 3}));
}

TEST(Parse, MatchesBuiltTerm) {
    const Term built = Term::seq(Term::par(Term::gen(Gen::eta), Term::id(1)), Term::gen(Gen::mu));
    EXPECT_EQ(parse("(eta*id1);mu"), built);
    // Both operators associate to the left.
    EXPECT_EQ(parse("eta * eta * eta"), Term::par(Term::par(Term::gen(Gen::eta), Term::gen(Gen::eta)), Term::gen(Gen::eta)));
    EXPECT_EQ(parse("sigma ; sigma ; sigma"),
              Term::seq(Term::seq(Term::gen(Gen::sigma), Term::gen(Gen::sigma)), Term::gen(Gen::sigma)));
    // Tensor binds tighter than sequencing.
    EXPECT_EQ(parse("eta * id1 ; mu"), built);
}

TEST(Parse, ArityErrorHasPosition) {
    try {
        parse("mu ; mu");
        FAIL() << "expected an arity error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 4U);
        EXPECT_NE(std::string(e.what()).find("1 != 2"), std::string::npos);
    }
}

TEST(Parse, SyntaxErrors) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("mu ;"), ParseError);
    EXPECT_THROW(parse("(mu"), ParseError);
    EXPECT_THROW(parse("id"), ParseError);
    EXPECT_THROW(parse("nu"), ParseError);
    EXPECT_THROW(parse("mu)"), ParseError);
}

TEST(Print, RoundTrips) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
        auto t = random_tree(rng, 1 + rng() % 6, rng() % 4, 4);
        if (!t) continue;
        ASSERT_EQ(parse(print(*t)), *t) << print(*t);
    }
    EXPECT_EQ(print(parse("(eta * id1) ; mu")), "eta * id1 ; mu");
    EXPECT_EQ(print(parse("mu * (eta ; delta)")), "mu * (eta ; delta)");
}

TEST(Slices, Examples) {
    EXPECT_TRUE(slices(Term::id(3)).empty());
    const auto a = slices(Term::par(Term::gen(Gen::mu), Term::gen(Gen::eta)));
    EXPECT_EQ(a, (std::vector<Slice>{{0, Gen::mu, 0}, {1, Gen::eta, 0}}));
    const auto b = slices(parse("(id1 * eta) ; mu"));
    EXPECT_EQ(b, (std::vector<Slice>{{1, Gen::eta, 0}, {0, Gen::mu, 0}}));
}

TEST(Slices, RecompositionInterpretsEqually) {
    std::mt19937_64 rng(23);
    std::size_t checked = 0;
    for (int i = 0; i < 3000; ++i) {
        auto t = random_tree(rng, rng() % 6, rng() % 4, 4);
        if (!t) continue;
        const Diagram d = to_diagram(*t);
        check_diagram(d);
        const PosetMorphism f = interp(*t);
        ASSERT_TRUE(isomorphic(interp(to_term(d)), f)) << print(*t);
        ASSERT_TRUE(isomorphic(interp(d), f));
        ASSERT_TRUE(isomorphic(interp(normalize(d)), f));
        ++checked;
    }
    EXPECT_GT(checked, 1000U);
}

TEST(Normalize, StaysInClassAndIsIdempotent) {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
        auto t = random_tree(rng, 2 + rng() % 5, rng() % 4, 4);
        if (!t) continue;
        const Diagram d = to_diagram(*t);
        const Diagram n = normalize(d);
        ASSERT_EQ(normalize(n), n);
        ASSERT_TRUE(orbit(d.slices).contains(n.slices)) << print(*t);
    }
}

TEST(CanonicalDiagram, ConstantOnInterchangeClasses) {
    std::mt19937_64 rng(31);
    std::size_t checked = 0;
    for (int i = 0; i < 400; ++i) {
        auto t = random_tree(rng, 2 + rng() % 4, rng() % 4, 4);
        if (!t) continue;
        const Diagram d = to_diagram(*t);
        const auto cls = orbit(d.slices);
        const Diagram c = canonical_diagram(d);
        ASSERT_EQ(c.slices, *cls.begin()) << print(*t);
        // Spot-check a few other representatives.
        std::size_t step = 0;
        for (const auto& s : cls) {
            if (step++ % 7 != 0) continue;
            ASSERT_EQ(canonical_diagram(Diagram{d.width, s}), c) << print(*t);
            ++checked;
        }
    }
    EXPECT_GT(checked, 400U);
}

TEST(Normalize, UnitCounitPlacements) {
    // eps then eta on one wire, and both orders of the pair side by side, are one class.
    const Diagram n = canonical_diagram(to_diagram(parse("eps ; eta")));
    EXPECT_EQ(canonical_diagram(to_diagram(parse("eta * eps"))), n);
    EXPECT_EQ(canonical_diagram(to_diagram(parse("eps * eta"))), n);
    EXPECT_TRUE(monoidal_equal(parse("(eps ; eta) * eta"), parse("eta * eta * eps")));
}

TEST(Normalize, MonoidalEquality) {
    EXPECT_TRUE(monoidal_equal(parse("(mu * id1) ; (id1 * eta * id1)"), parse("mu * eta * id1")));
    EXPECT_TRUE(monoidal_equal(parse("id2 ; gamma ; id2"), parse("gamma")));
    EXPECT_TRUE(monoidal_equal(parse("(eta * id1) * eta"), parse("eta * (id1 * eta)")));
    EXPECT_FALSE(monoidal_equal(parse("gamma ; gamma"), parse("id2")));
}

TEST(EnumerateTerms, SmallCounts) {
    TermEnumSpec spec;
    spec.max_width = 3;
    spec.max_generators = 0;
    const auto ids = enumerate_terms(spec);
    EXPECT_EQ(ids.size(), 4U);
    for (const auto& t : ids) EXPECT_EQ(t.generator_count(), 0U);

    // One generator in every padding that keeps both boundaries within width 3.
    spec.max_generators = 1;
    std::size_t expected = 4;
    for (const auto& gi : signature) {
        for (std::size_t w = gi.dom; w <= 3; ++w) {
            if (w - gi.dom + gi.cod <= 3) expected += w - gi.dom + 1;
        }
    }
    EXPECT_EQ(enumerate_terms(spec).size(), expected);

    spec.max_generators = 2;
    EXPECT_EQ(enumerate_terms(spec).size(), oracle_two_slice_classes(3));
}

TEST(EnumerateTerms, ArityFilter) {
    TermEnumSpec spec;
    spec.max_generators = 2;
    spec.dom = 1;
    spec.cod = 1;
    for (const auto& t : enumerate_terms(spec)) EXPECT_EQ(t.arity(), (Arity{1, 1}));
}
