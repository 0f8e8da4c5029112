#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "powergraph/bitset.hpp"
#include "powergraph/errors.hpp"

namespace powergraph {

using VertexId = std::uint32_t;

struct Edge {
    VertexId from = 0;
    VertexId to = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple directed graph over dense vertex ids 0..n-1.
///
/// Immutable after construction. Out- and in-neighbourhoods are kept as
/// bitsets so that common-neighbourhood queries reduce to word operations.
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Throws GraphError on an out-of-range id, a self-loop or a duplicate edge.
    DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges)
        : n_(vertex_count), edges_(std::move(edges)), out_(n_, Bitset(n_)), in_(n_, Bitset(n_)) {
        for (const Edge& e : edges_) {
            if (e.from >= n_ || e.to >= n_)
                throw GraphError("edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                                 ") references a vertex outside [0, " + std::to_string(n_) + ")");
            if (e.from == e.to) throw GraphError("self-loop on vertex " + std::to_string(e.from));
            if (out_[e.from].test(e.to))
                throw GraphError("duplicate edge (" + std::to_string(e.from) + ", " +
                                 std::to_string(e.to) + ")");
            out_[e.from].set(e.to);
            in_[e.to].set(e.from);
        }
        std::sort(edges_.begin(), edges_.end());
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Edges in lexicographic order.
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(VertexId u, VertexId v) const { return u < n_ && out_[u].test(v); }

    const Bitset& out_neighbors(VertexId u) const { return out_[u]; }
    const Bitset& in_neighbors(VertexId u) const { return in_[u]; }

    Bitset all_vertices() const {
        Bitset all(n_);
        for (std::size_t v = 0; v < n_; ++v) all.set(v);
        return all;
    }

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Bitset> out_;
    std::vector<Bitset> in_;
};

}  // namespace powergraph
