#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "powergraph/configuration.hpp"
#include "powergraph/errors.hpp"
#include "powergraph/representative_edges.hpp"

namespace powergraph {

/// Exact non-negative fraction; 0/0 reads as 0.
struct Similarity {
    std::size_t numerator = 0;
    std::size_t denominator = 0;

    double value() const { return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator); }
    bool positive() const { return numerator > 0; }

    friend bool operator<(const Similarity& a, const Similarity& b) {
        // a.n / a.d < b.n / b.d, treating zero denominators as zero
        const std::uint64_t ad = a.denominator == 0 ? 1 : a.denominator;
        const std::uint64_t bd = b.denominator == 0 ? 1 : b.denominator;
        const std::uint64_t an = a.denominator == 0 ? 0 : a.numerator;
        const std::uint64_t bn = b.denominator == 0 ? 0 : b.numerator;
        return an * bd < bn * ad;
    }
};

struct CandidateModule {
    Bitset leaves;
    Similarity similarity;  // between the two groups when they were joined
    VertexId first_min_leaf = 0;
    VertexId second_min_leaf = 0;
};

/// Summed in/out Jaccard index of two disjoint vertex groups. Neighbour sets
/// are unions over members, with both groups removed.
inline Similarity jaccard_similarity(const DirectedGraph& g, const Bitset& a, const Bitset& b) {
    if (a.none() || b.none()) throw GraphError("jaccard groups must be non-empty");
    if (a.intersects(b)) throw GraphError("jaccard groups must be disjoint");
    const Bitset both = a | b;
    auto gather = [&](const Bitset& group, bool out) {
        Bitset n(g.vertex_count());
        group.for_each([&](std::size_t v) {
            n |= out ? g.out_neighbors(static_cast<VertexId>(v)) : g.in_neighbors(static_cast<VertexId>(v));
        });
        n -= both;
        return n;
    };
    const Bitset out_a = gather(a, true), out_b = gather(b, true);
    const Bitset in_a = gather(a, false), in_b = gather(b, false);
    return {out_a.intersection_count(out_b) + in_a.intersection_count(in_b),
            (out_a | out_b).count() + (in_a | in_b).count()};
}

/// Agglomerative clustering: join the most similar pair of clusters until no
/// pair has positive similarity. Returns every cluster created, in order.
inline std::vector<CandidateModule> build_candidate_hierarchy(const DirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Bitset> clusters;  // kept in min-leaf order
    for (std::size_t v = 0; v < n; ++v) {
        Bitset b(n);
        b.set(v);
        clusters.push_back(std::move(b));
    }
    // sim[i][j] for i < j, indexed by position in `clusters`
    std::vector<std::vector<Similarity>> sim(n, std::vector<Similarity>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sim[i][j] = jaccard_similarity(g, clusters[i], clusters[j]);

    std::vector<CandidateModule> out;
    while (clusters.size() > 1) {
        std::size_t bi = 0, bj = 0;
        Similarity best;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j)
                if (sim[i][j].positive() && (!best.positive() || best < sim[i][j])) {
                    best = sim[i][j];
                    bi = i;
                    bj = j;
                }
        if (!best.positive()) break;

        const auto first = static_cast<VertexId>(clusters[bi].find_first());
        const auto second = static_cast<VertexId>(clusters[bj].find_first());
        Bitset joined = clusters[bi] | clusters[bj];
        out.push_back({joined, best, first, second});

        // The joined cluster keeps position bi (its min leaf is the first's).
        clusters[bi] = std::move(joined);
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        sim.erase(sim.begin() + static_cast<std::ptrdiff_t>(bj));
        for (auto& row : sim) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
        for (std::size_t k = 0; k < clusters.size(); ++k) {
            if (k == bi) continue;
            const Similarity s = jaccard_similarity(g, clusters[std::min(k, bi)], clusters[std::max(k, bi)]);
            sim[std::min(k, bi)][std::max(k, bi)] = s;
        }
    }
    return out;
}

/// Starting flat, repeatedly instantiates the candidate (compatible with those
/// already placed) that removes the most representative edges.
inline Configuration jaccard_decompose(const DirectedGraph& g) {
    Configuration c = flat_configuration(g);
    auto candidates = build_candidate_hierarchy(g);
    std::vector<bool> used(candidates.size(), false);
    std::size_t edges = g.edge_count();
    while (true) {
        std::size_t best = candidates.size();
        std::size_t best_edges = edges;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            Configuration trial = c;
            try {
                trial.insert(candidates[i].leaves);
            } catch (const HierarchyError&) {
                continue;
            } catch (const DegenerateModuleError&) {
                continue;
            }
            const std::size_t e = representative_edges(trial).size();
            const bool tie_wins = best < candidates.size() && e == best_edges &&
                                  std::pair(candidates[i].first_min_leaf, candidates[i].second_min_leaf) <
                                      std::pair(candidates[best].first_min_leaf, candidates[best].second_min_leaf);
            if (e < best_edges || tie_wins) {
                best = i;
                best_edges = e;
            }
        }
        if (best == candidates.size()) break;
        c.insert(candidates[best].leaves);
        used[best] = true;
        edges = best_edges;
    }
    return c;
}

}  // namespace powergraph
