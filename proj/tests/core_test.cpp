#include <gtest/gtest.h>

#include <random>

#include "powergraph/configuration.hpp"
#include "powergraph/representative_edges.hpp"
#include "support/oracles.hpp"

namespace pg = powergraph;
using pg::testing::k22;

TEST(DirectedGraph, RejectsSelfLoopsDuplicatesAndRange) {
    EXPECT_THROW(pg::DirectedGraph(3, {{1, 1}}), pg::GraphError);
    EXPECT_THROW(pg::DirectedGraph(3, {{0, 1}, {0, 1}}), pg::GraphError);
    EXPECT_THROW(pg::DirectedGraph(3, {{0, 3}}), pg::GraphError);
    const pg::DirectedGraph g(3, {{2, 0}, {0, 1}});
    EXPECT_EQ(g.edges().front(), (pg::Edge{0, 1}));
    EXPECT_TRUE(g.has_edge(2, 0));
    EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(FlatConfiguration, EmptyGraphHasNoModules) {
    const auto c = pg::flat_configuration(pg::DirectedGraph(0, {}));
    EXPECT_TRUE(c.module_ids().empty());
    EXPECT_TRUE(c.top_level().empty());
    EXPECT_EQ(pg::signature(c), "");
}

TEST(FlatConfiguration, TrivialModulesAllTopLevel) {
    const auto c = pg::flat_configuration(pg::DirectedGraph(4, {}));
    EXPECT_EQ(c.module_ids().size(), 4u);
    EXPECT_EQ(c.top_level().size(), 4u);
    EXPECT_EQ(c.nontrivial_count(), 0u);
    EXPECT_NO_THROW(c.validate());
}

TEST(FlatConfiguration, RepresentativeEdgesAreTheFlatEdges) {
    std::mt19937_64 rng(7);
    const auto g = pg::testing::random_graph(10, 0.4, rng);
    const auto c = pg::flat_configuration(g);
    const auto r = pg::representative_edges(c);
    EXPECT_EQ(r.size(), g.edge_count());
    for (const auto& e : g.edges()) EXPECT_TRUE(r.contains({e.from, e.to}));
    EXPECT_EQ(pg::boundary_crossings(c, r), 0u);
}

TEST(AddModule, SingleGrouping) {
    auto c = pg::flat_configuration(pg::DirectedGraph(4, {}));
    const auto c2 = pg::add_module(c, std::vector<pg::ModuleId>{2, 3});
    ASSERT_EQ(c2.nontrivial_count(), 1u);
    const auto id = c2.nontrivial_ids().front();
    EXPECT_EQ(pg::testing::leaves_of(c2, id), (std::vector<pg::VertexId>{2, 3}));
    EXPECT_EQ(c2.top_level().size(), 3u);
    EXPECT_EQ(c.nontrivial_count(), 0u);  // input untouched
}

TEST(AddModule, OrderIndependentSignature) {
    auto a = pg::flat_configuration(k22());
    a.add({0, 1});
    a.add({2, 3});
    auto b = pg::flat_configuration(k22());
    b.add({2, 3});
    b.add({0, 1});
    EXPECT_EQ(pg::signature(a), pg::signature(b));
    EXPECT_EQ(pg::signature(a), "((0)(1))((2)(3))");
}

TEST(AddModule, RejectsNonTopLevelAndDegenerate) {
    auto c = pg::flat_configuration(k22());
    c.add({0, 1});
    EXPECT_THROW(c.add({0, 2}), pg::HierarchyError);
    EXPECT_THROW(c.add({2}), pg::DegenerateModuleError);
    EXPECT_THROW(c.add({2, 2}), pg::DegenerateModuleError);
}

TEST(AddModule, FullVertexSetIsPermitted) {
    auto c = pg::flat_configuration(k22());
    EXPECT_NO_THROW(c.add({0, 1, 2, 3}));
    EXPECT_EQ(c.top_level().size(), 1u);
}

TEST(Configuration, InsertBelowExistingModule) {
    auto c = pg::flat_configuration(pg::DirectedGraph(5, {}));
    pg::Bitset outer(5), inner(5), crossing(5);
    for (int v : {0, 1, 2, 3}) outer.set(v);
    for (int v : {1, 2}) inner.set(v);
    for (int v : {3, 4}) crossing.set(v);
    const auto o = c.insert(outer);
    const auto i = c.insert(inner);
    EXPECT_EQ(c.module(i).parent, o);
    EXPECT_EQ(c.module(o).children.size(), 3u);
    EXPECT_THROW(c.insert(crossing), pg::HierarchyError);
    EXPECT_THROW(c.insert(inner), pg::DegenerateModuleError);
    EXPECT_NO_THROW(c.validate());
    c.dissolve(o);
    EXPECT_TRUE(c.is_top_level(i));
    EXPECT_NO_THROW(c.validate());
    EXPECT_THROW(c.dissolve(0), pg::HierarchyError);
}

TEST(Signature, FlatThreeVertices) {
    EXPECT_EQ(pg::signature(pg::flat_configuration(pg::DirectedGraph(3, {}))), "(0)(1)(2)");
}

TEST(Signature, NestingIndependentOfConstructionOrder) {
    auto a = pg::flat_configuration(pg::DirectedGraph(4, {}));
    const auto m01 = a.add({0, 1});
    a.add({m01, 2});
    auto b = pg::flat_configuration(pg::DirectedGraph(4, {}));
    pg::Bitset s(4);
    s.set(0), s.set(1), s.set(2);
    b.insert(s);
    pg::Bitset t(4);
    t.set(0), t.set(1);
    b.insert(t);
    EXPECT_EQ(pg::signature(a), pg::signature(b));
    EXPECT_EQ(pg::signature(a), "(((0)(1))(2))(3)");
}

TEST(Signature, EqualityMatchesStructuralEquality) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> n_dist(2, 8), step_dist(0, 5);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = n_dist(rng);
        const pg::DirectedGraph g(n, {});
        const auto a = pg::testing::random_configuration(g, step_dist(rng), rng);
        const auto b = pg::testing::random_configuration(g, step_dist(rng), rng);
        const bool same_structure = pg::testing::module_family(a) == pg::testing::module_family(b);
        ASSERT_EQ(pg::signature(a) == pg::signature(b), same_structure) << pg::signature(a) << " vs " << pg::signature(b);
    }
}

TEST(RepresentativeEdges, CompleteBipartiteCollapses) {
    auto c = pg::flat_configuration(k22());
    const auto a = c.add({0, 1});
    const auto b = c.add({2, 3});
    const auto r = pg::representative_edges(c);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r.edges.front(), (pg::ModuleEdge{a, b}));
    EXPECT_EQ(pg::expand(c, r), k22().edges());
}

TEST(RepresentativeEdges, CliqueModuleGetsSelfEdge) {
    const pg::DirectedGraph g(3, {{0, 1}, {1, 0}, {2, 0}, {2, 1}});
    auto c = pg::flat_configuration(g);
    const auto m = c.add({0, 1});
    const auto r = pg::representative_edges(c);
    EXPECT_TRUE(r.contains({m, m}));
    EXPECT_TRUE(r.contains({2, m}));
    EXPECT_EQ(r.size(), 2u);
    EXPECT_EQ(pg::expand(c, r), g.edges());
}

TEST(RepresentativeEdges, MatchesBruteForceOnRandomGraphs) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> density(0.2, 0.9);
    std::uniform_int_distribution<std::size_t> steps(0, 4);
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = pg::testing::random_graph(6, density(rng), rng);
        const auto c = pg::testing::random_configuration(g, steps(rng), rng);
        const auto r = pg::representative_edges(c);
        ASSERT_EQ(r, pg::testing::brute_representative_edges(c)) << pg::signature(c);
        ASSERT_EQ(pg::expand(c, r), g.edges());
        ASSERT_FALSE(pg::check_representative_edges(c, r).has_value());
    }
}

TEST(RepresentativeEdges, AddingAModuleNeverIncreasesEdgeCount) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> n_dist(3, 8);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto g = pg::testing::random_graph(n_dist(rng), density(rng), rng);
        auto c = pg::testing::random_configuration(g, 2, rng);
        auto top = c.top_level();
        if (top.size() < 2) continue;
        std::shuffle(top.begin(), top.end(), rng);
        std::uniform_int_distribution<std::size_t> k_dist(2, top.size());
        const std::size_t before = pg::representative_edges(c).size();
        c.add(std::span<const pg::ModuleId>(top.data(), k_dist(rng)));
        ASSERT_NO_THROW(c.validate());
        ASSERT_LE(pg::representative_edges(c).size(), before);
    }
}

TEST(Expand, EdgeFromVertexToModule) {
    const pg::DirectedGraph g(6, {{5, 0}, {5, 2}, {5, 4}});
    auto c = pg::flat_configuration(g);
    const auto b = c.add({0, 2, 4});
    const pg::RepresentativeEdgeSet r{{{5, b}}};
    EXPECT_EQ(pg::expand(c, r), (std::vector<pg::Edge>{{5, 0}, {5, 2}, {5, 4}}));
    EXPECT_TRUE(pg::expand(c, pg::RepresentativeEdgeSet{}).empty());
}

TEST(BoundaryCrossings, EdgeIntoNestedModule) {
    const pg::DirectedGraph g(6, {{5, 0}, {5, 2}, {5, 4}});
    auto c = pg::flat_configuration(g);
    const auto inner = c.add({0, 2});
    const auto outer = c.add({inner, 4});
    EXPECT_EQ(pg::boundary_crossings(c, pg::RepresentativeEdgeSet{{{5, outer}}}), 0u);
    EXPECT_EQ(pg::boundary_crossings(c, pg::RepresentativeEdgeSet{{{5, inner}}}), 1u);
    EXPECT_EQ(pg::boundary_crossings(c, pg::RepresentativeEdgeSet{{{5, 0}}}), 2u);
}

TEST(BoundaryCrossings, MatchesDirectDoubleLoop) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = pg::testing::random_graph(7, 0.5, rng);
        const auto c = pg::testing::random_configuration(g, 4, rng);
        const auto r = pg::representative_edges(c);
        ASSERT_EQ(pg::boundary_crossings(c, r), pg::testing::brute_crossings(c, r));
    }
}

TEST(CheckRepresentativeEdges, DetectsDominatedAndMissingEdges) {
    auto c = pg::flat_configuration(k22());
    const auto a = c.add({0, 1});
    const auto b = c.add({2, 3});
    EXPECT_TRUE(pg::check_representative_edges(c, pg::RepresentativeEdgeSet{{{0, 2}, {a, b}}}).has_value());
    EXPECT_TRUE(pg::check_representative_edges(c, pg::RepresentativeEdgeSet{{{0, b}}}).has_value());
    EXPECT_TRUE(pg::check_representative_edges(c, pg::RepresentativeEdgeSet{{{2, 0}}}).has_value());
    EXPECT_FALSE(pg::check_representative_edges(c, pg::RepresentativeEdgeSet{{{a, b}}}).has_value());
}
