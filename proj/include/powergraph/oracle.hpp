#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "powergraph/errors.hpp"
#include "powergraph/optimal_search.hpp"

namespace powergraph {

struct ExhaustiveOptions {
    std::size_t max_vertices = 8;
    /// Restrict additions to pairs of top-level modules.
    bool binary_only = false;
};

namespace detail {

class ExhaustiveWalk {
public:
    explicit ExhaustiveWalk(bool binary_only) : binary_only_(binary_only) {}

    void visit(const Configuration& c, std::size_t edges) {
        if (!seen_.insert(signature(c)).second) return;
        if (!best_ || edges < best_edges_) {
            best_ = c;
            best_edges_ = edges;
        }
        const auto& top = c.top_level();
        const std::size_t t = top.size();
        if (t < 2) return;
        std::vector<ModuleId> members;
        for (std::size_t mask = 1; mask < (std::size_t{1} << t); ++mask) {
            const int size = __builtin_popcountll(mask);
            if (size < 2 || (binary_only_ && size != 2)) continue;
            members.clear();
            for (std::size_t i = 0; i < t; ++i)
                if (mask >> i & 1) members.push_back(top[i]);
            Configuration child = c;
            child.add(members);
            const std::size_t child_edges = representative_edges(child).size();
            if (child_edges < edges) visit(child, child_edges);
        }
    }

    Configuration best() && { return std::move(*best_); }

private:
    bool binary_only_;
    std::unordered_set<std::string> seen_;
    std::optional<Configuration> best_;
    std::size_t best_edges_ = 0;
};

}  // namespace detail

/// Minimum-edge configuration by depth-first traversal over every improving
/// module addition, with no bound. Structurally identical configurations are
/// expanded once.
inline Configuration exhaustive_search(const DirectedGraph& g, const ExhaustiveOptions& options = {}) {
    if (g.vertex_count() > options.max_vertices)
        throw SizeLimitError("exhaustive search is limited to " + std::to_string(options.max_vertices) +
                             " vertices, got " + std::to_string(g.vertex_count()));
    const Configuration flat = flat_configuration(g);
    detail::ExhaustiveWalk walk(options.binary_only);
    walk.visit(flat, g.edge_count());
    return remove_redundant_modules(std::move(walk).best());
}

/// A biclique A -> B read as the module B with one edge from each vertex of A.
struct SingleModuleResult {
    std::vector<VertexId> sources;  // A
    std::vector<VertexId> module;   // B
    std::size_t savings = 0;        // |A||B| - |A|
};

namespace detail {

inline std::vector<VertexId> to_vertices(const Bitset& b) {
    std::vector<VertexId> out;
    b.for_each([&](std::size_t v) { out.push_back(static_cast<VertexId>(v)); });
    return out;
}

class SingleModuleSearch {
public:
    explicit SingleModuleSearch(const DirectedGraph& g) : g_(g) {
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (g.out_neighbors(v).any()) candidates_.push_back(v);
    }

    SingleModuleResult run() {
        Bitset a(g_.vertex_count());
        extend(0, a, 0, g_.all_vertices());
        return best_;
    }

private:
    // A grows in increasing vertex order; b is the common out-neighbourhood of a.
    void extend(std::size_t next, Bitset& a, std::size_t a_size, const Bitset& b) {
        const std::size_t b_size = b.count();
        if (a_size > 0 && a_size <= b_size) {
            const std::size_t savings = a_size * b_size - a_size;
            if (savings > best_.savings) best_ = {to_vertices(a), to_vertices(b), savings};
        }
        // any extension keeps |A'| <= |B'| <= |B|, so savings stay below |B|(|B|-1)
        if (b_size * (b_size - (b_size > 0 ? 1 : 0)) <= best_.savings) return;
        for (std::size_t i = next; i < candidates_.size(); ++i) {
            const VertexId v = candidates_[i];
            const Bitset nb = b & g_.out_neighbors(v);
            if (nb.count() < a_size + 1) continue;
            a.set(v);
            extend(i + 1, a, a_size + 1, nb);
            a.reset(v);
        }
    }

    const DirectedGraph& g_;
    std::vector<VertexId> candidates_;
    SingleModuleResult best_;
};

}  // namespace detail

/// Maximises |A||B| - |A| over bicliques A -> B with |A| <= |B|, enumerating
/// source sets A and taking B as their common out-neighbourhood.
inline SingleModuleResult best_single_module(const DirectedGraph& g, std::size_t max_sources = 20) {
    std::size_t sources = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.out_neighbors(v).any()) ++sources;
    if (sources > max_sources)
        throw SizeLimitError("single-module search is limited to " + std::to_string(max_sources) +
                             " source vertices, got " + std::to_string(sources));
    return detail::SingleModuleSearch(g).run();
}

/// Bipartite instance built from an undirected graph on 2k vertices: ids
/// 0..|V|-1 are the vertices, then one id per edge in sorted order, then
/// C(k,2) extra sinks. Vertex v points at every edge it is not incident to and
/// at every extra sink.
inline DirectedGraph clique_reduction(std::size_t vertex_count,
                                      const std::vector<std::pair<VertexId, VertexId>>& undirected_edges,
                                      std::size_t k) {
    if (k < 5) throw GraphError("clique reduction needs k >= 5");
    if (vertex_count != 2 * k) throw GraphError("clique reduction needs exactly 2k vertices");
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (auto [u, v] : undirected_edges) {
        if (u >= vertex_count || v >= vertex_count) throw GraphError("edge endpoint out of range");
        if (u == v) throw GraphError("self-loop in undirected graph");
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const std::size_t extra = k * (k - 1) / 2;
    const std::size_t total = vertex_count + edges.size() + extra;
    std::vector<Edge> out;
    for (VertexId v = 0; v < vertex_count; ++v) {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].first != v && edges[i].second != v)
                out.push_back({v, static_cast<VertexId>(vertex_count + i)});
        for (std::size_t w = 0; w < extra; ++w) out.push_back({v, static_cast<VertexId>(vertex_count + edges.size() + w)});
    }
    return DirectedGraph(total, std::move(out));
}

}  // namespace powergraph
