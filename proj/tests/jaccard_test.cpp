#include <gtest/gtest.h>

#include <random>

#include "powergraph/jaccard.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace pg = powergraph;
using pg::testing::k22;

namespace {

pg::Bitset set_of(std::size_t n, std::initializer_list<int> vs) {
    pg::Bitset b(n);
    for (int v : vs) b.set(static_cast<std::size_t>(v));
    return b;
}

}  // namespace

TEST(JaccardSimilarity, Examples) {
    const auto g = k22();
    const auto s = pg::jaccard_similarity(g, set_of(4, {0}), set_of(4, {1}));
    EXPECT_EQ(s.numerator, 2u);
    EXPECT_EQ(s.denominator, 2u);
    EXPECT_DOUBLE_EQ(s.value(), 1.0);

    const pg::DirectedGraph disjoint(4, {{0, 2}, {1, 3}});
    EXPECT_DOUBLE_EQ(pg::jaccard_similarity(disjoint, set_of(4, {0}), set_of(4, {1})).value(), 0.0);
    EXPECT_DOUBLE_EQ(pg::jaccard_similarity(pg::DirectedGraph(2, {}), set_of(2, {0}), set_of(2, {1})).value(), 0.0);
}

TEST(JaccardSimilarity, GroupsAreRemovedFromNeighbourSets) {
    // 0 -> 1 and 0 -> 2, 1 -> 2: grouping {0} with {1} leaves only 2 as an out-neighbour
    const pg::DirectedGraph g(3, {{0, 1}, {0, 2}, {1, 2}});
    const auto s = pg::jaccard_similarity(g, set_of(3, {0}), set_of(3, {1}));
    EXPECT_EQ(s.numerator, 1u);
    EXPECT_EQ(s.denominator, 1u);
}

TEST(JaccardSimilarity, RejectsOverlapAndEmpty) {
    EXPECT_THROW(pg::jaccard_similarity(k22(), set_of(4, {0, 1}), set_of(4, {1})), pg::GraphError);
    EXPECT_THROW(pg::jaccard_similarity(k22(), set_of(4, {}), set_of(4, {1})), pg::GraphError);
}

TEST(CandidateHierarchy, EdgelessGraphHasNone) {
    EXPECT_TRUE(pg::build_candidate_hierarchy(pg::DirectedGraph(5, {})).empty());
}

TEST(CandidateHierarchy, CompleteBipartite) {
    const auto c = pg::build_candidate_hierarchy(k22());
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].leaves, set_of(4, {0, 1}));
    EXPECT_EQ(c[1].leaves, set_of(4, {2, 3}));
}

TEST(CandidateHierarchy, FormsALaminarFamily) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = pg::testing::random_graph(5 + trial % 10, 0.35, rng);
        const auto c = pg::build_candidate_hierarchy(g);
        for (std::size_t i = 0; i < c.size(); ++i) {
            ASSERT_GE(c[i].leaves.count(), 2u);
            ASSERT_TRUE(c[i].similarity.positive());
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                const auto& a = c[i].leaves;
                const auto& b = c[j].leaves;
                ASSERT_TRUE(!a.intersects(b) || a.is_subset_of(b) || b.is_subset_of(a));
            }
        }
    }
}

TEST(JaccardDecompose, SmallCases) {
    const auto flat = pg::jaccard_decompose(pg::DirectedGraph(4, {}));
    EXPECT_EQ(flat.nontrivial_count(), 0u);
    const auto c = pg::jaccard_decompose(k22());
    EXPECT_EQ(c.nontrivial_count(), 2u);
    EXPECT_EQ(pg::representative_edges(c).size(), 1u);
}

TEST(JaccardDecompose, ValidAndLossless) {
    for (const auto& g : pg::testing::bollobas_corpus(30, 5, 30, 11)) {
        const auto c = pg::jaccard_decompose(g);
        ASSERT_NO_THROW(c.validate());
        const auto r = pg::representative_edges(c);
        ASSERT_EQ(pg::expand(c, r), g.edges());
        ASSERT_LE(r.size(), g.edge_count());
        // every kept module pays for itself
        for (pg::ModuleId id : c.nontrivial_ids()) {
            auto without = c;
            without.dissolve(id);
            ASSERT_GE(pg::representative_edges(without).size(), r.size());
        }
    }
}
