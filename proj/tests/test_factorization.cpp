#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "examples.hpp"
#include "poalg/combinators.hpp"
#include "poalg/enumerate.hpp"
#include "poalg/interp.hpp"
#include "poalg/parse.hpp"

using namespace poalg;

namespace {

std::size_t brute_force_linearization_count(const PosetMorphism& f) {
    Linearization x = Linearization::identity(f.internal_count());
    std::size_t count = 0;
    do {
        count += is_linearization(f, x);
    } while (std::next_permutation(x.order.begin(), x.order.end()));
    return count;
}

Factorization random_factorization(std::mt19937_64& rng, std::size_t m, std::size_t k, std::size_t n) {
    Factorization F;
    F.m = m;
    F.k = k;
    F.n = n;
    F.blocks.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < m + j; ++i) {
            if (rng() % 2) F.blocks[j].insert(i);
        }
    }
    F.closing = Relation(m + k, n);
    for (std::size_t i = 0; i < m + k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rng() % 2) F.closing.insert(i, j);
        }
    }
    return F;
}

// The composite written as R o X o ... o X with morphism-level composition.
PosetMorphism iterated_composite(const Factorization& F) {
    PosetMorphism acc = identity(F.m);
    for (std::size_t j = 0; j < F.k; ++j) acc = compose(acc, x_block(F.m + j, F.blocks[j]));
    return compose(acc, rel_to_poset(F.closing));
}

}  // namespace

TEST(Linearizations, Counts) {
    EXPECT_EQ(linearizations(identity(2)).size(), 1U);
    EXPECT_TRUE(linearizations(identity(2)).front().order.empty());
    const PosetMorphism antichain = PosetMorphism::from_layout(0, 0, 3, std::vector<EventPair>{});
    EXPECT_EQ(linearizations(antichain).size(), 6U);
    const PosetMorphism f = fixtures::example_one_two();
    const auto xs = linearizations(f);
    EXPECT_EQ(xs.size(), 3U);
    EXPECT_EQ(xs.size(), brute_force_linearization_count(f));
    for (const auto& x : xs) EXPECT_TRUE(is_linearization(f, x));
    EXPECT_EQ(xs.front(), Linearization::identity(4));
}

TEST(Linearizations, MatchBruteForce) {
    EnumSpec spec;
    spec.max_events = 5;
    for (const auto& f : enumerate_morphisms(spec)) {
        EXPECT_EQ(linearizations(f).size(), brute_force_linearization_count(f));
    }
}

TEST(Linearizations, Adjacency) {
    const PosetMorphism f = fixtures::example_one_two();
    const Linearization abcd{{0, 1, 2, 3}};
    const Linearization acbd{{0, 2, 1, 3}};
    const Linearization abdc{{0, 1, 3, 2}};
    EXPECT_EQ(lin_adjacent(f, abcd, acbd), 1U);
    EXPECT_EQ(abcd * Transposition(4, 1), acbd);
    EXPECT_FALSE(lin_adjacent(f, abcd, abcd));
    // Swapping a and b is not allowed: a < b.
    EXPECT_FALSE(lin_adjacent(f, abcd, Linearization{{1, 0, 2, 3}}));
    EXPECT_EQ(lin_adjacent(f, acbd, abdc), std::nullopt);

    const PosetMorphism antichain = PosetMorphism::from_layout(0, 0, 4, std::vector<EventPair>{});
    EXPECT_FALSE(lin_adjacent(antichain, abcd, Linearization{{3, 2, 1, 0}}));
}

TEST(Linearizations, Connect) {
    const PosetMorphism antichain = PosetMorphism::from_layout(0, 0, 3, std::vector<EventPair>{});
    const Linearization x1 = Linearization::identity(3);
    const Linearization x2{{2, 1, 0}};
    const auto path = lin_connect(antichain, x1, x2);
    EXPECT_EQ(path.size(), 3U);
    Linearization cur = x1;
    for (std::size_t i : path) {
        const Linearization next = cur * Transposition(3, i);
        ASSERT_EQ(lin_adjacent(antichain, cur, next), i);
        cur = next;
    }
    EXPECT_EQ(cur, x2);
    EXPECT_THROW(lin_connect(fixtures::example_one_two(), x1, x2), InvalidLinearization);
}

TEST(Linearizations, ConnectEveryPair) {
    EnumSpec spec;
    spec.max_events = 5;
    for (const auto& f : enumerate_morphisms(spec)) {
        const auto xs = linearizations(f);
        for (const auto& a : xs) {
            for (const auto& b : xs) {
                Linearization cur = a;
                for (std::size_t i : lin_connect(f, a, b)) {
                    const Linearization next = cur * Transposition(cur.size(), i);
                    ASSERT_EQ(lin_adjacent(f, cur, next), i);
                    cur = next;
                }
                ASSERT_EQ(cur, b);
            }
        }
    }
}

TEST(XBlock, Shape) {
    const PosetMorphism x = x_block(3, {0, 2});
    EXPECT_EQ(x.dom(), 3U);
    EXPECT_EQ(x.cod(), 4U);
    EXPECT_EQ(x.event_count(), 8U);
    EXPECT_EQ(x.poset().hasse().size(), 6U);
    EXPECT_TRUE(x.less(x.src(0), x.internal(0)));
    EXPECT_FALSE(x.less(x.src(1), x.internal(0)));
    EXPECT_TRUE(x.less(x.internal(0), x.tgt(3)));

    const PosetMorphism x0 = x_block(0, {});
    EXPECT_EQ(x0.dom(), 0U);
    EXPECT_EQ(x0.cod(), 1U);
    EXPECT_EQ(x0.internal_count(), 1U);
    for (std::size_t n = 0; n <= 4; ++n) EXPECT_TRUE(isomorphic(x_block(n, {}), tensor(identity(n), x0)));
    EXPECT_THROW(x_block(2, {2}), std::out_of_range);
}

TEST(XBlock, TermInterpretsAsBlock) {
    for (std::size_t n = 0; n <= 3; ++n) {
        for (Mask s = 0; s < (Mask{1} << n); ++s) {
            std::set<std::size_t> inputs;
            for (std::size_t i = 0; i < n; ++i) {
                if ((s >> i) & 1U) inputs.insert(i);
            }
            EXPECT_TRUE(isomorphic(interp(x_term(n, inputs)), x_block(n, inputs)));
        }
    }
}

TEST(FactCompose, Examples) {
    Factorization empty;
    empty.m = 2;
    empty.n = 1;
    empty.closing = Relation(2, 1, {{1, 0}});
    EXPECT_EQ(fact_compose(empty).morphism, rel_to_poset(empty.closing));

    const Composite c = fact_compose(fixtures::example_one_two_factorization());
    EXPECT_EQ(c.morphism, fixtures::example_one_two());
    EXPECT_EQ(c.induced, Linearization::identity(4));

    Factorization single;
    single.m = 3;
    single.k = 1;
    single.n = 4;
    single.blocks = {{0, 2}};
    single.closing = rel_id(4);
    EXPECT_TRUE(isomorphic(fact_compose(single).morphism, x_block(3, {0, 2})));
}

TEST(FactCompose, MatchesIteratedComposition) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 300; ++t) {
        const Factorization F = transitive_closure_fact(random_factorization(rng, rng() % 3, rng() % 4, rng() % 3));
        ASSERT_TRUE(isomorphic(fact_compose(F).morphism, iterated_composite(F)));
        ASSERT_TRUE(isomorphic(interp(fact_to_term(F)), fact_compose(F).morphism));
    }
}

TEST(Factorize, ExampleAlongBothOrders) {
    const PosetMorphism f = fixtures::example_one_two();
    EXPECT_EQ(factorize(f, Linearization::identity(4)), fixtures::example_one_two_factorization());
    EXPECT_EQ(factorize(f, Linearization{{0, 2, 1, 3}}), fixtures::example_one_two_switched());
    EXPECT_THROW(factorize(f, Linearization{{1, 0, 2, 3}}), InvalidLinearization);
}

TEST(Factorize, Transitivity) {
    Factorization F;
    F.m = 0;
    F.k = 2;
    F.n = 1;
    F.blocks = {{}, {0}};
    F.closing = Relation(2, 1, {{1, 0}});
    EXPECT_FALSE(is_transitive(F));
    const Factorization G = transitive_closure_fact(F);
    EXPECT_TRUE(is_transitive(G));
    EXPECT_TRUE(G.closing.contains(0, 0));
    EXPECT_EQ(fact_compose(F).morphism, fact_compose(G).morphism);

    std::mt19937_64 rng(43);
    for (int t = 0; t < 200; ++t) {
        const Factorization H = random_factorization(rng, rng() % 3, rng() % 4, rng() % 3);
        const Factorization C = transitive_closure_fact(H);
        ASSERT_TRUE(is_transitive(C));
        ASSERT_EQ(fact_compose(H).morphism, fact_compose(C).morphism);
        ASSERT_EQ(transitive_closure_fact(C), C);
        const PosetMorphism f = fact_compose(C).morphism;
        ASSERT_EQ(factorize(f, Linearization::identity(C.k)), C);
    }
}

TEST(Switch, Example) {
    const Factorization F = fixtures::example_one_two_factorization();
    EXPECT_EQ(switch_blocks(F, 1), fixtures::example_one_two_switched());
    EXPECT_EQ(switch_blocks(switch_blocks(F, 1), 1), F);
    EXPECT_THROW(switch_blocks(F, 0), DependentBlocks);
    EXPECT_THROW(switch_blocks(F, 3), std::out_of_range);
}

TEST(Switch, CommutesWithFactorize) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 300; ++t) {
        const Factorization F = transitive_closure_fact(random_factorization(rng, rng() % 3, 2 + rng() % 3, rng() % 3));
        const std::size_t i = rng() % (F.k - 1);
        if (F.blocks[i + 1].contains(F.m + i)) continue;
        const Factorization S = switch_blocks(F, i);
        const PosetMorphism f = fact_compose(F).morphism;
        const Linearization x = Linearization::identity(F.k) * Transposition(F.k, i);
        ASSERT_EQ(S, factorize(f, x));
        ASSERT_TRUE(isomorphic(fact_compose(S).morphism, f));
    }
}

TEST(RelToTerm, Exhaustive) {
    for (std::size_t m = 0; m <= 2; ++m) {
        for (std::size_t n = 0; n <= 2; ++n) {
            for (const auto& r : all_relations(m, n)) {
                const Term t = rel_to_term(r);
                ASSERT_EQ(t.arity(), (Arity{m, n}));
                ASSERT_TRUE(is_relation_term(t));
                ASSERT_EQ(poset_to_rel(interp(t)), r);
            }
        }
    }
    const Term t = rel_to_term(fixtures::example_relation());
    EXPECT_EQ(poset_to_rel(interp(t)), fixtures::example_relation());
}

TEST(CanonicalTerm, RoundTripsAndIsDeterministic) {
    const PosetMorphism f = fixtures::example_two_three();
    const Term t = canonical_term(f);
    EXPECT_TRUE(isomorphic(interp(t), f));
    EXPECT_TRUE(tp_equal(canonical_term(interp(parse("sigma"))), parse("sigma")));

    const PosetMorphism g = fixtures::example_one_two();
    const Term tg = canonical_term(g);
    const std::vector<std::size_t> perm{3, 1, 0, 2};
    EXPECT_EQ(canonical_term(g.permute_internal(perm)), tg);
    EXPECT_TRUE(isomorphic(interp(tg), g));

    EnumSpec spec;
    spec.max_events = 5;
    for (const auto& h : enumerate_morphisms(spec)) ASSERT_TRUE(isomorphic(interp(canonical_term(h)), h));
}

TEST(Combinators, Types) {
    for (std::size_t n = 0; n <= 3; ++n) {
        EXPECT_EQ(h_term(n).arity(), (Arity{n, n + 1}));
        EXPECT_EQ(s_term(n).arity(), (Arity{n + 1, n + 1}));
        EXPECT_EQ(g_term(n).arity(), (Arity{n + 2, n + 2}));
        EXPECT_EQ(x_term(n, {}).arity(), (Arity{n, n + 1}));
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(w_term(n, i).arity(), (Arity{n + 1, n + 1}));
    }
    EXPECT_THROW(g_term(1, 2), std::out_of_range);
    EXPECT_THROW(w_term(2, 2), std::out_of_range);
    // W^n_i copies wire i into the last wire.
    EXPECT_EQ(poset_to_rel(interp(w_term(2, 0))), Relation(3, 3, {{0, 0}, {0, 2}, {1, 1}, {2, 2}}));
}
