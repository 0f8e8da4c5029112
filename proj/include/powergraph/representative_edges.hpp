#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "powergraph/configuration.hpp"

namespace powergraph {

/// A module-level edge standing for every flat edge from `from`'s leaves to
/// `to`'s leaves. When from == to it stands for the directed clique on the
/// module's leaves (diagonal excluded).
struct ModuleEdge {
    ModuleId from = 0;
    ModuleId to = 0;

    friend auto operator<=>(const ModuleEdge&, const ModuleEdge&) = default;
};

struct RepresentativeEdgeSet {
    std::vector<ModuleEdge> edges;  // sorted

    std::size_t size() const { return edges.size(); }
    bool empty() const { return edges.empty(); }
    auto begin() const { return edges.begin(); }
    auto end() const { return edges.end(); }
    bool contains(ModuleEdge e) const { return std::binary_search(edges.begin(), edges.end(), e); }

    friend bool operator==(const RepresentativeEdgeSet&, const RepresentativeEdgeSet&) = default;
};

/// Intersection of the out-neighbourhoods of every leaf of `id`.
inline Bitset common_out_neighbors(const Configuration& c, ModuleId id) {
    const Module& m = c.module(id);
    Bitset common = c.graph().all_vertices();
    m.leaves.for_each([&](std::size_t u) { common &= c.graph().out_neighbors(static_cast<VertexId>(u)); });
    return common;
}

inline Bitset common_in_neighbors(const Configuration& c, ModuleId id) {
    const Module& m = c.module(id);
    Bitset common = c.graph().all_vertices();
    m.leaves.for_each([&](std::size_t u) { common &= c.graph().in_neighbors(static_cast<VertexId>(u)); });
    return common;
}

/// Whether the leaves of `id` (at least two) are pairwise connected in both directions.
inline bool is_clique(const Configuration& c, ModuleId id) {
    const Module& m = c.module(id);
    if (m.leaf_count < 2) return false;
    bool ok = true;
    m.leaves.for_each([&](std::size_t u) {
        if (!ok) return;
        Bitset others = m.leaves;
        others.reset(u);
        ok = others.is_subset_of(c.graph().out_neighbors(static_cast<VertexId>(u)));
    });
    return ok;
}

/// A possible edge: every flat pair it would represent is in E, and the
/// endpoints are identical (clique) or disjoint.
inline bool is_possible_edge(const Configuration& c, ModuleId a, ModuleId b) {
    if (a == b) return is_clique(c, a);
    const Module& ma = c.module(a);
    const Module& mb = c.module(b);
    if (ma.leaves.intersects(mb.leaves)) return false;
    return mb.leaves.is_subset_of(common_out_neighbors(c, a));
}

namespace detail {

/// Per-module caches used while enumerating representative edges.
struct EdgeTables {
    std::vector<Bitset> common_out;  // by module id
    std::vector<char> clique;

    explicit EdgeTables(const Configuration& c) : common_out(c.id_bound()), clique(c.id_bound(), 0) {
        for (ModuleId top : c.top_level()) fill(c, top);
    }

    void fill(const Configuration& c, ModuleId id) {
        const Module& m = c.module(id);
        if (m.trivial()) {
            common_out[id] = c.graph().out_neighbors(static_cast<VertexId>(id));
            return;
        }
        for (ModuleId child : m.children) fill(c, child);
        Bitset common = common_out[m.children.front()];
        for (ModuleId child : m.children) common &= common_out[child];
        common_out[id] = std::move(common);
        clique[id] = is_clique(c, id) ? 1 : 0;
    }

    bool possible(const Configuration& c, ModuleId a, ModuleId b) const {
        if (a == b) return clique[a] != 0;
        const Module& mb = c.module(b);
        return !c.module(a).leaves.intersects(mb.leaves) && mb.leaves.is_subset_of(common_out[a]);
    }
};

inline void collect_targets(const Configuration& c, const EdgeTables& t, ModuleId a, ModuleId b,
                            std::vector<ModuleEdge>& out) {
    const Module& ma = c.module(a);
    const Module& mb = c.module(b);
    if (a == b) {
        if (!t.clique[a]) return;
        const ModuleId parent = ma.parent;
        if (parent != no_module && t.clique[parent]) return;
        out.push_back({a, a});
        return;
    }
    if (ma.leaves.intersects(mb.leaves)) {
        // b is an ancestor of a (or a of b, which cannot be reached from a's side)
        if (!ma.leaves.is_subset_of(mb.leaves)) return;
        for (ModuleId child : mb.children) collect_targets(c, t, a, child, out);
        return;
    }
    if (!mb.leaves.intersects(t.common_out[a])) return;
    if (mb.leaves.is_subset_of(t.common_out[a])) {
        // (a, b) is possible. Dominators: (parent(a), b), or a clique on the
        // lowest common ancestor. (a, parent(b)) was ruled out by the descent.
        if (ma.parent != no_module && t.possible(c, ma.parent, b)) return;
        const ModuleId lca = c.lowest_common_ancestor(a, b);
        if (lca != no_module && t.clique[lca]) return;
        out.push_back({a, b});
        return;
    }
    for (ModuleId child : mb.children) collect_targets(c, t, a, child, out);
}

}  // namespace detail

/// The unique minimal representative edge set of a configuration: every
/// possible edge that no other possible edge dominates.
inline RepresentativeEdgeSet representative_edges(const Configuration& c) {
    detail::EdgeTables tables(c);
    RepresentativeEdgeSet r;
    for (ModuleId a : c.module_ids())
        for (ModuleId top : c.top_level()) detail::collect_targets(c, tables, a, top, r.edges);
    std::sort(r.edges.begin(), r.edges.end());
    return r;
}

/// Flat edges implied by `r`, sorted. Pairs covered more than once appear once.
inline std::vector<Edge> expand(const Configuration& c, const RepresentativeEdgeSet& r) {
    std::vector<Edge> out;
    for (const ModuleEdge& e : r) {
        const Module& a = c.module(e.from);
        const Module& b = c.module(e.to);
        a.leaves.for_each([&](std::size_t u) {
            b.leaves.for_each([&](std::size_t v) {
                if (u != v) out.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
            });
        });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Sum over edges of the number of non-trivial modules that strictly contain
/// exactly one endpoint.
inline std::size_t boundary_crossings(const Configuration& c, const RepresentativeEdgeSet& r) {
    std::size_t total = 0;
    for (const ModuleEdge& e : r) {
        if (e.from == e.to) continue;
        const ModuleId lca = c.lowest_common_ancestor(e.from, e.to);
        for (ModuleId x = c.module(e.from).parent; x != lca; x = c.module(x).parent) ++total;
        for (ModuleId x = c.module(e.to).parent; x != lca; x = c.module(x).parent) ++total;
    }
    return total;
}

/// Describes the first violated invariant of `r` against `c`, or nothing when
/// `r` is a lossless, minimal representative edge set.
inline std::optional<std::string> check_representative_edges(const Configuration& c,
                                                             const RepresentativeEdgeSet& r) {
    for (const ModuleEdge& e : r) {
        if (!c.exists(e.from) || !c.exists(e.to))
            return "edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) + ") references an unknown module";
        if (!is_possible_edge(c, e.from, e.to))
            return "edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                   ") is not a possible edge (missing flat edges or overlapping endpoints)";
    }
    for (const ModuleEdge& e1 : r)
        for (const ModuleEdge& e2 : r)
            if (!(e1 == e2) && c.contains(e2.from, e1.from) && c.contains(e2.to, e1.to))
                return "edge (" + std::to_string(e1.from) + ", " + std::to_string(e1.to) +
                       ") is dominated by (" + std::to_string(e2.from) + ", " + std::to_string(e2.to) + ")";
    if (expand(c, r) != c.graph().edges()) return "expansion does not equal the input edge set";
    return std::nullopt;
}

}  // namespace powergraph
