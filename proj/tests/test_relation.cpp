#include <gtest/gtest.h>

#include <set>

#include "examples.hpp"
#include "poalg/canon.hpp"
#include "poalg/relation.hpp"

using namespace poalg;

namespace {

// Boolean matrix product over row bitmasks.
Relation oracle_compose(const Relation& r, const Relation& s) {
    std::vector<unsigned> rows(r.dom(), 0), srows(s.dom(), 0);
    for (auto [i, j] : r.pairs()) rows[i] |= 1U << j;
    for (auto [j, k] : s.pairs()) srows[j] |= 1U << k;
    Relation out(r.dom(), s.cod());
    for (std::size_t i = 0; i < r.dom(); ++i) {
        unsigned acc = 0;
        for (std::size_t j = 0; j < r.cod(); ++j) {
            if ((rows[i] >> j) & 1U) acc |= srows[j];
        }
        for (std::size_t k = 0; k < s.cod(); ++k) {
            if ((acc >> k) & 1U) out.insert(i, k);
        }
    }
    return out;
}

}  // namespace

TEST(Relation, RejectsOutOfRange) {
    Relation r(2, 1);
    EXPECT_THROW(r.insert(2, 0), std::out_of_range);
    EXPECT_THROW(r.insert(0, 1), std::out_of_range);
}

TEST(Relation, ComposeSmall) {
    const Relation r(1, 2, {{0, 1}});
    const Relation s(2, 1, {{1, 0}});
    EXPECT_EQ(rel_compose(r, s), Relation(1, 1, {{0, 0}}));
    EXPECT_EQ(rel_compose(Relation(1, 2), s), Relation(1, 1));
    EXPECT_THROW(rel_compose(r, r), ArityMismatch);
}

TEST(Relation, ComposeMatchesMatrixProduct) {
    for (std::size_t m = 0; m <= 2; ++m) {
        for (std::size_t n = 0; n <= 3; ++n) {
            for (std::size_t p = 0; p <= 2; ++p) {
                for (const auto& r : all_relations(m, n)) {
                    for (const auto& s : all_relations(n, p)) ASSERT_EQ(rel_compose(r, s), oracle_compose(r, s));
                }
            }
        }
    }
}

TEST(Relation, IdentityIsNeutral) {
    for (std::size_t n = 0; n <= 3; ++n) {
        for (const auto& r : all_relations(2, n)) {
            EXPECT_EQ(rel_compose(rel_id(2), r), r);
            EXPECT_EQ(rel_compose(r, rel_id(n)), r);
        }
    }
}

TEST(Relation, AllRelationsCount) {
    EXPECT_EQ(all_relations(0, 3).size(), 1U);
    EXPECT_EQ(all_relations(2, 2).size(), 16U);
    EXPECT_EQ(all_relations(3, 3).size(), 512U);
}

TEST(Relation, TransposeAndPermutation) {
    const Relation r = fixtures::example_relation();
    EXPECT_EQ(transpose(transpose(r)), r);
    EXPECT_TRUE(transpose(r).contains(0, 2));
    const std::vector<std::size_t> perm{2, 0, 1};
    const Relation p = rel_permutation(perm);
    EXPECT_EQ(rel_compose(p, transpose(p)), rel_id(3));
}

TEST(Embedding, ExampleRelation) {
    const PosetMorphism f = rel_to_poset(fixtures::example_relation());
    EXPECT_EQ(f.dom(), 4U);
    EXPECT_EQ(f.cod(), 3U);
    EXPECT_EQ(f.event_count(), 7U);
    EXPECT_EQ(f.poset().hasse().size(), 4U);
    EXPECT_TRUE(f.less(f.src(0), f.tgt(2)));
    EXPECT_TRUE(f.less(f.src(2), f.tgt(0)));
    EXPECT_FALSE(f.less(f.src(1), f.tgt(0)));
}

TEST(Embedding, RoundTrip) {
    for (std::size_t m = 0; m <= 3; ++m) {
        for (std::size_t n = 0; n <= 3; ++n) {
            for (const auto& r : all_relations(m, n)) ASSERT_EQ(poset_to_rel(rel_to_poset(r)), r);
        }
    }
    EXPECT_EQ(poset_to_rel(identity(2)), rel_id(2));
    EXPECT_FALSE(poset_to_rel(fixtures::example_two_three()));
}

TEST(Embedding, RejectsInterfaceComparabilities) {
    // Two sources below one internal event are not a relation; neither is s0 < i0 < t0.
    const PosetMorphism f = PosetMorphism::from_layout(1, 1, 1, std::vector<EventPair>{{0, 2}, {2, 1}});
    EXPECT_FALSE(poset_to_rel(f));
}

TEST(Embedding, Functorial) {
    for (std::size_t m = 0; m <= 3; ++m) {
        for (std::size_t n = 0; n <= 2; ++n) {
            for (std::size_t p = 0; p <= 3; ++p) {
                for (const auto& r : all_relations(m, n)) {
                    for (const auto& s : all_relations(n, p)) {
                        ASSERT_TRUE(
                            isomorphic(rel_to_poset(rel_compose(r, s)), compose(rel_to_poset(r), rel_to_poset(s))));
                    }
                }
            }
        }
    }
}

TEST(Embedding, PreservesTensor) {
    for (const auto& r : all_relations(2, 1)) {
        for (const auto& s : all_relations(1, 2)) {
            EXPECT_EQ(rel_to_poset(rel_tensor(r, s)), tensor(rel_to_poset(r), rel_to_poset(s)));
        }
    }
}

TEST(Embedding, Injective) {
    for (std::size_t m = 0; m <= 3; ++m) {
        for (std::size_t n = 0; n <= 3; ++n) {
            std::set<CanonicalKey> keys;
            const auto rels = all_relations(m, n);
            for (const auto& r : rels) keys.insert(canonical_key(rel_to_poset(r)));
            EXPECT_EQ(keys.size(), rels.size());
        }
    }
}
