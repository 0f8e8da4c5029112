#include <gtest/gtest.h>

#include <algorithm>

#include "powergraph/generator.hpp"

namespace pg = powergraph;

TEST(TargetEdgeCount, Values) {
    EXPECT_EQ(pg::target_edge_count(0), 0u);
    EXPECT_EQ(pg::target_edge_count(10), 47u);
    EXPECT_EQ(pg::target_edge_count(100), 1500u);
}

TEST(BollobasGenerate, ExactSizeAndSimple) {
    for (std::size_t n : {4u, 5u, 8u, 10u, 20u, 50u}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto g = pg::bollobas_generate(n, seed);
            ASSERT_EQ(g.vertex_count(), n);
            ASSERT_EQ(g.edge_count(), pg::target_edge_count(n));
            // DirectedGraph itself rejects self-loops and duplicates
        }
    }
}

TEST(BollobasGenerate, SameSeedSameGraph) {
    EXPECT_EQ(pg::bollobas_generate(30, 7), pg::bollobas_generate(30, 7));
    EXPECT_FALSE(pg::bollobas_generate(30, 7) == pg::bollobas_generate(30, 8));
}

TEST(BollobasGenerate, FrozenOutput) {
    // pins the process and the random stream so accidental changes show up
    const std::vector<pg::Edge> expected{
        {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {2, 0}, {2, 1}, {2, 3}, {2, 4}, {2, 5}, {2, 8}, {3, 1},
        {3, 2}, {3, 4}, {3, 6}, {4, 0}, {4, 1}, {4, 2}, {4, 3}, {4, 5}, {4, 8}, {5, 0}, {5, 1}, {5, 2},
        {5, 3}, {5, 4}, {5, 8}, {6, 0}, {6, 1}, {6, 2}, {6, 3}, {6, 4}, {6, 5}, {7, 0}, {7, 1}, {7, 2},
        {7, 3}, {7, 4}, {7, 5}, {7, 8}, {8, 5}, {9, 0}, {9, 1}, {9, 2}, {9, 3}, {9, 4}, {9, 5}};
    EXPECT_EQ(pg::bollobas_generate(10, 1).edges(), expected);
}

TEST(BollobasGenerate, InDegreesAreHeavyTailed) {
    int heavy = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = pg::bollobas_generate(100, seed);
        std::vector<std::size_t> in;
        for (pg::VertexId v = 0; v < 100; ++v) in.push_back(g.in_neighbors(v).count());
        std::sort(in.begin(), in.end());
        const double median = (in[49] + in[50]) / 2.0;
        if (static_cast<double>(in.back()) >= 5 * median) ++heavy;
    }
    EXPECT_GE(heavy, 18);
}

TEST(BollobasGenerate, RejectsInvalidSpecs) {
    auto spec = pg::GenSpec::with_defaults(10, 1);
    spec.alpha = 0.5;
    EXPECT_THROW(pg::bollobas_generate(spec), pg::GraphError);
    spec = pg::GenSpec::with_defaults(10, 1);
    spec.target_edges = 91;
    EXPECT_THROW(pg::bollobas_generate(spec), pg::GraphError);
    spec.target_edges = 90;
    EXPECT_EQ(pg::bollobas_generate(spec).edge_count(), 90u);
    EXPECT_THROW(pg::bollobas_generate(3, 0), pg::GraphError);  // 8 edges do not fit on 3 vertices
    EXPECT_EQ(pg::bollobas_generate(0, 0).vertex_count(), 0u);
}
