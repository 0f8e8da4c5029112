#include <gtest/gtest.h>

#include <random>

#include "powergraph/oracle.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace pg = powergraph;
using pg::testing::k22;

namespace {

std::size_t edges_of(const pg::Configuration& c) { return pg::representative_edges(c).size(); }

// Disjoint bicliques: sources [from, from + a) point at sinks [to, to + b).
void add_biclique(std::vector<pg::Edge>& edges, pg::VertexId from, std::size_t a, pg::VertexId to, std::size_t b) {
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            edges.push_back({static_cast<pg::VertexId>(from + i), static_cast<pg::VertexId>(to + j)});
}

// Enumerates the module side B first, taking as many common in-neighbours
// as |B| allows.
std::size_t module_first_savings(const pg::DirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::size_t best = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        pg::Bitset sources = g.all_vertices();
        std::size_t b = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (mask >> v & 1) {
                sources &= g.in_neighbors(static_cast<pg::VertexId>(v));
                ++b;
            }
        const std::size_t a = std::min(sources.count(), b);
        if (a > 0) best = std::max(best, a * b - a);
    }
    return best;
}

bool has_clique(std::size_t n, const std::vector<std::pair<pg::VertexId, pg::VertexId>>& edges, std::size_t k) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto [u, v] : edges) adj[u][v] = adj[v][u] = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
        bool ok = true;
        for (std::size_t u = 0; u < n && ok; ++u)
            for (std::size_t v = u + 1; v < n && ok; ++v)
                if ((mask >> u & 1) && (mask >> v & 1) && !adj[u][v]) ok = false;
        if (ok) return true;
    }
    return false;
}

}  // namespace

TEST(ExhaustiveSearch, SmallCases) {
    EXPECT_EQ(edges_of(pg::exhaustive_search(k22())), 1u);
    EXPECT_EQ(pg::exhaustive_search(pg::DirectedGraph(1, {})).nontrivial_count(), 0u);
    EXPECT_EQ(pg::exhaustive_search(pg::DirectedGraph(5, {})).nontrivial_count(), 0u);
}

TEST(ExhaustiveSearch, RejectsLargeGraphs) {
    EXPECT_THROW(pg::exhaustive_search(pg::DirectedGraph(9, {})), pg::SizeLimitError);
    EXPECT_NO_THROW(pg::exhaustive_search(pg::DirectedGraph(9, {}), {.max_vertices = 9}));
}

TEST(ExhaustiveSearch, NeverWorseThanRandomConfigurations) {
    std::mt19937_64 rng(31);
    for (const auto& g : pg::testing::bollobas_corpus(10, 5, 7, 7)) {
        const auto best = edges_of(pg::exhaustive_search(g));
        for (int s = 0; s < 200; ++s)
            ASSERT_LE(best, edges_of(pg::testing::random_configuration(g, 1 + s % 4, rng)));
    }
}

TEST(ExhaustiveSearch, BinaryRestrictionReachesTheSameOptimum) {
    for (const auto& g : pg::testing::bollobas_corpus(8, 5, 6, 60)) {
        const auto all = edges_of(pg::exhaustive_search(g));
        const auto binary = edges_of(pg::exhaustive_search(g, {.binary_only = true}));
        ASSERT_EQ(all, binary);
    }
}

TEST(BestSingleModule, CompleteBipartite) {
    const auto r = pg::best_single_module(k22());
    EXPECT_EQ(r.savings, 2u);
    EXPECT_EQ(r.sources, (std::vector<pg::VertexId>{0, 1}));
    EXPECT_EQ(r.module, (std::vector<pg::VertexId>{2, 3}));
}

TEST(BestSingleModule, WideStarBeatsSmallBiclique) {
    // 3 -> 4 biclique (savings 9) next to 1 -> 11 star (savings 10)
    std::vector<pg::Edge> edges;
    add_biclique(edges, 0, 3, 3, 4);
    add_biclique(edges, 7, 1, 8, 11);
    const auto r = pg::best_single_module(pg::DirectedGraph(19, edges));
    EXPECT_EQ(r.savings, 10u);
    EXPECT_EQ(r.sources.size(), 1u);
    EXPECT_EQ(r.module.size(), 11u);
}

TEST(BestSingleModule, BalancedBicliqueBeatsStar) {
    // 1 -> 9 star (savings 8) next to 3 -> 6 biclique (savings 15)
    std::vector<pg::Edge> edges;
    add_biclique(edges, 0, 1, 1, 9);
    add_biclique(edges, 10, 3, 13, 6);
    const auto r = pg::best_single_module(pg::DirectedGraph(19, edges));
    EXPECT_EQ(r.savings, 15u);
    EXPECT_EQ(r.sources.size(), 3u);
    EXPECT_EQ(r.module.size(), 6u);
}

TEST(BestSingleModule, AgreesWithModuleFirstEnumeration) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = pg::testing::random_graph(4 + trial % 8, 0.3 + 0.05 * (trial % 10), rng);
        const auto r = pg::best_single_module(g);
        ASSERT_EQ(r.savings, module_first_savings(g));
        ASSERT_LE(r.sources.size(), r.module.size());
        for (auto a : r.sources)
            for (auto b : r.module) ASSERT_TRUE(g.has_edge(a, b));
    }
}

TEST(BestSingleModule, RejectsTooManySources) {
    std::vector<pg::Edge> edges;
    for (pg::VertexId v = 0; v < 21; ++v) edges.push_back({v, 21});
    EXPECT_THROW(pg::best_single_module(pg::DirectedGraph(22, edges)), pg::SizeLimitError);
}

TEST(CliqueReduction, CompleteSourceGraph) {
    std::vector<std::pair<pg::VertexId, pg::VertexId>> k10;
    for (pg::VertexId u = 0; u < 10; ++u)
        for (pg::VertexId v = u + 1; v < 10; ++v) k10.emplace_back(u, v);
    const auto g = pg::clique_reduction(10, k10, 5);
    EXPECT_EQ(g.vertex_count(), 10u + 45u + 10u);
    for (pg::VertexId v = 0; v < 10; ++v)
        for (pg::VertexId w = 55; w < 65; ++w) EXPECT_TRUE(g.has_edge(v, w));
    // edge (0,1) has id 10: only vertices 2..9 point at it
    EXPECT_FALSE(g.has_edge(0, 10));
    EXPECT_FALSE(g.has_edge(1, 10));
    EXPECT_TRUE(g.has_edge(2, 10));
    EXPECT_GE(pg::best_single_module(g).savings, 95u);
}

TEST(CliqueReduction, BipartiteSourceGraphFallsShort) {
    std::vector<std::pair<pg::VertexId, pg::VertexId>> bip;
    for (pg::VertexId u = 0; u < 5; ++u)
        for (pg::VertexId v = 5; v < 10; ++v) bip.emplace_back(u, v);
    EXPECT_LT(pg::best_single_module(pg::clique_reduction(10, bip, 5)).savings, 95u);
}

TEST(CliqueReduction, RandomSourcesFollowTheDichotomy) {
    std::mt19937_64 rng(41);
    std::bernoulli_distribution coin(0.7);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<std::pair<pg::VertexId, pg::VertexId>> edges;
        for (pg::VertexId u = 0; u < 10; ++u)
            for (pg::VertexId v = u + 1; v < 10; ++v)
                if (coin(rng)) edges.emplace_back(u, v);
        const bool clique = has_clique(10, edges, 5);
        const auto savings = pg::best_single_module(pg::clique_reduction(10, edges, 5)).savings;
        ASSERT_EQ(savings >= 95, clique) << "trial " << trial << " savings " << savings;
    }
}

TEST(CliqueReduction, RejectsBadParameters) {
    EXPECT_THROW(pg::clique_reduction(8, {}, 4), pg::GraphError);
    EXPECT_THROW(pg::clique_reduction(11, {}, 5), pg::GraphError);
    EXPECT_THROW(pg::clique_reduction(10, {{1, 1}}, 5), pg::GraphError);
}
