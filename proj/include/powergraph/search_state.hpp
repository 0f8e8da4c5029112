#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "powergraph/configuration.hpp"
#include "powergraph/representative_edges.hpp"

namespace powergraph {

/// An unordered pair of top-level modules and the edge count after merging them.
struct MergeCandidate {
    ModuleId first = no_module;  // smaller min leaf
    ModuleId second = no_module;
    std::size_t edges = 0;
};

/// Configuration plus its representative edges, indexed by module for fast
/// merge evaluation. N+(m) and N-(m) are bitsets over module ids.
///
/// Merges are applied incrementally. For top-level m and n, only edges
/// incident to m or n change: targets t outside m and n that both can reach
/// move to the new parent, and when m and n are mutually adjacent cliques
/// (trivial modules count as cliques) the parent absorbs everything between
/// and inside them as a single self-edge.
class SearchState {
public:
    SearchState() = default;

    explicit SearchState(Configuration c) : config_(std::move(c)) { rebuild(); }

    const Configuration& configuration() const { return config_; }
    std::size_t edge_count() const { return edge_count_; }

    const Bitset& out_neighbors(ModuleId id) const { return out_[id]; }
    const Bitset& in_neighbors(ModuleId id) const { return in_[id]; }

    bool has_edge(ModuleId a, ModuleId b) const { return a < out_.size() && out_[a].test(b); }

    RepresentativeEdgeSet edges() const {
        RepresentativeEdgeSet r;
        for (ModuleId a : config_.module_ids())
            out_[a].for_each([&](std::size_t b) { r.edges.push_back({a, static_cast<ModuleId>(b)}); });
        return r;
    }

    /// Representative edge count after merging top-level modules m and n.
    std::size_t nedges(ModuleId m, ModuleId n) const {
        require_top_level_pair(m, n);
        return nedges_unchecked(m, n);
    }

    /// Representative edge count after adding one module whose children are
    /// the given top-level modules (two or more).
    std::size_t nedges(std::span<const ModuleId> members) const {
        if (members.size() < 2) throw DegenerateModuleError("a module needs at least two children");
        Bitset leaves(config_.vertex_count());
        Bitset out = config_.graph().all_vertices();
        Bitset in = out;
        for (ModuleId x : members) {
            if (!config_.is_top_level(x)) throw HierarchyError("module members must be top-level modules");
            if (leaves.intersects(config_.module(x).leaves)) throw DegenerateModuleError("repeated module member");
            leaves |= config_.module(x).leaves;
            out &= common_out_neighbors(config_, x);
            in &= common_in_neighbors(config_, x);
        }
        return nedges_union(leaves, out, in, leaves_form_clique(leaves));
    }

    /// Edge count after adding a module with the given leaves, which must be
    /// a union of two or more top-level modules, given the common out- and
    /// in-neighbourhoods of those leaves and whether they form a clique.
    ///
    /// Only edges touching the new module change: edges from inside it to a
    /// module within the common out-neighbourhood (and the mirror image) are
    /// replaced by edges from the new module to the maximal such modules, and
    /// for a clique every edge inside collapses to one self-edge.
    std::size_t nedges_union(const Bitset& leaves, const Bitset& common_out, const Bitset& common_in, bool clique) const {
        std::size_t removed = 0;
        std::size_t internal = 0;
        for (ModuleId y : config_.module_ids()) {
            if (!config_.module(y).leaves.is_subset_of(leaves)) continue;
            out_[y].for_each([&](std::size_t z) {
                const Bitset& lz = config_.module(static_cast<ModuleId>(z)).leaves;
                if (lz.is_subset_of(leaves)) ++internal;
                else if (lz.is_subset_of(common_out)) ++removed;
            });
            in_[y].for_each([&](std::size_t z) {
                const Bitset& lz = config_.module(static_cast<ModuleId>(z)).leaves;
                if (!lz.is_subset_of(leaves) && lz.is_subset_of(common_in)) ++removed;
            });
        }
        const std::size_t added = maximal_inside(common_out, leaves) + maximal_inside(common_in, leaves);
        std::size_t result = edge_count_ - removed + added;
        if (clique) result -= internal - 1;
        return result;
    }

    /// Whether every ordered pair of distinct vertices in `leaves` is an edge.
    bool leaves_form_clique(const Bitset& leaves) const {
        if (leaves.count() < 2) return false;
        bool ok = true;
        leaves.for_each([&](std::size_t u) {
            if (!ok) return;
            Bitset others = leaves;
            others.reset(u);
            ok = others.is_subset_of(config_.graph().out_neighbors(static_cast<VertexId>(u)));
        });
        return ok;
    }

    /// All unordered pairs of top-level modules with their merged edge counts,
    /// ordered by (min leaf of first, min leaf of second).
    std::vector<MergeCandidate> evaluate_merges() const {
        const auto& top = config_.top_level();
        std::vector<MergeCandidate> out;
        out.reserve(top.size() * (top.size() - (top.empty() ? 0 : 1)) / 2);
        for (std::size_t i = 0; i < top.size(); ++i)
            for (std::size_t j = i + 1; j < top.size(); ++j)
                out.push_back({top[i], top[j], nedges_unchecked(top[i], top[j])});
        return out;
    }

    /// Merges m and n under a new parent, then dissolves any of the three
    /// modules left without an incident representative edge. Returns the new
    /// module's id, or no_module if it was itself dissolved.
    ModuleId merge(ModuleId m, ModuleId n) {
        require_top_level_pair(m, n);
        const ModuleId p = apply_merge(m, n);
        if (incident_count(p) == 0) {
            dissolve(p);
            return no_module;
        }
        for (ModuleId x : {m, n})
            if (!config_.is_trivial(x) && incident_count(x) == 0) dissolve(x);
        return p;
    }

    SearchState merged(ModuleId m, ModuleId n) const {
        SearchState copy = *this;
        copy.merge(m, n);
        return copy;
    }

    /// Adds the binary module {m, n} without dissolving anything.
    ModuleId add_binary(ModuleId m, ModuleId n) {
        require_top_level_pair(m, n);
        return apply_merge(m, n);
    }

    /// Removes a non-trivial module and recomputes the edge indexes.
    void dissolve_and_rebuild(ModuleId id) {
        config_.dissolve(id);
        rebuild();
    }

    std::size_t incident_count(ModuleId id) const {
        return out_[id].count() + in_[id].count() - (out_[id].test(id) ? 1 : 0);
    }

private:
    void require_top_level_pair(ModuleId m, ModuleId n) const {
        if (m == n) throw HierarchyError("cannot merge module " + std::to_string(m) + " with itself");
        if (!config_.is_top_level(m) || !config_.is_top_level(n))
            throw HierarchyError("merge arguments must be top-level modules");
    }

    // Number of maximal modules outside `exclude` whose leaves lie in `region`.
    std::size_t maximal_inside(const Bitset& region, const Bitset& exclude) const {
        if (region.none()) return 0;
        std::size_t count = 0;
        auto walk = [&](auto&& self, ModuleId id) -> void {
            const Module& m = config_.module(id);
            if (m.leaves.is_subset_of(exclude) || !m.leaves.intersects(region)) return;
            if (m.leaves.is_subset_of(region)) {
                ++count;
                return;
            }
            for (ModuleId child : m.children) self(self, child);
        };
        for (ModuleId id : config_.top_level()) walk(walk, id);
        return count;
    }

    bool forms_clique(ModuleId m, ModuleId n) const {
        return out_[m].test(n) && out_[n].test(m) && (config_.is_trivial(m) || out_[m].test(m)) &&
               (config_.is_trivial(n) || out_[n].test(n));
    }

    std::size_t nedges_unchecked(ModuleId m, ModuleId n) const {
        std::size_t shared = out_[m].intersection_count(out_[n]) + in_[m].intersection_count(in_[n]);
        // m and n themselves are never external targets of the merged module
        for (ModuleId x : {m, n}) {
            if (out_[m].test(x) && out_[n].test(x)) --shared;
            if (in_[m].test(x) && in_[n].test(x)) --shared;
        }
        std::size_t result = edge_count_ - shared;
        if (forms_clique(m, n)) {
            const std::size_t internal = 2 + (config_.is_trivial(m) ? 0 : 1) + (config_.is_trivial(n) ? 0 : 1);
            result -= internal - 1;
        }
        return result;
    }

    ModuleId apply_merge(ModuleId m, ModuleId n) {
        const bool clique = forms_clique(m, n);
        const Bitset out_m = common_out_neighbors(config_, m);
        const Bitset out_n = common_out_neighbors(config_, n);
        const Bitset in_m = common_in_neighbors(config_, m);
        const Bitset in_n = common_in_neighbors(config_, n);
        const Bitset leaves_m = config_.module(m).leaves;
        const Bitset leaves_n = config_.module(n).leaves;

        // t is reachable from a module x when t lies outside x and inside x's
        // common out-neighbourhood.
        auto external = [&](std::size_t t) { return t != m && t != n; };
        std::vector<ModuleId> targets;
        std::vector<ModuleId> sources;
        out_[m].for_each([&](std::size_t t) {
            const Bitset& lt = config_.module(static_cast<ModuleId>(t)).leaves;
            if (external(t) && !lt.intersects(leaves_n) && lt.is_subset_of(out_n)) targets.push_back(static_cast<ModuleId>(t));
        });
        out_[n].for_each([&](std::size_t t) {
            const Bitset& lt = config_.module(static_cast<ModuleId>(t)).leaves;
            if (external(t) && !out_[m].test(t) && !lt.intersects(leaves_m) && lt.is_subset_of(out_m))
                targets.push_back(static_cast<ModuleId>(t));
        });
        in_[m].for_each([&](std::size_t s) {
            const Bitset& ls = config_.module(static_cast<ModuleId>(s)).leaves;
            if (external(s) && !ls.intersects(leaves_n) && ls.is_subset_of(in_n)) sources.push_back(static_cast<ModuleId>(s));
        });
        in_[n].for_each([&](std::size_t s) {
            const Bitset& ls = config_.module(static_cast<ModuleId>(s)).leaves;
            if (external(s) && !in_[m].test(s) && !ls.intersects(leaves_m) && ls.is_subset_of(in_m))
                sources.push_back(static_cast<ModuleId>(s));
        });

        const ModuleId p = config_.add({m, n});
        ensure_capacity();
        for (ModuleId t : targets) {
            remove_edge(m, t);
            remove_edge(n, t);
            add_edge(p, t);
        }
        for (ModuleId s : sources) {
            remove_edge(s, m);
            remove_edge(s, n);
            add_edge(s, p);
        }
        if (clique) {
            remove_edge(m, m);
            remove_edge(n, n);
            remove_edge(m, n);
            remove_edge(n, m);
            add_edge(p, p);
        }
        return p;
    }

    void dissolve(ModuleId id) {
        config_.dissolve(id);
        out_[id].clear();
        in_[id].clear();
    }

    void add_edge(ModuleId a, ModuleId b) {
        if (out_[a].test(b)) return;
        out_[a].set(b);
        in_[b].set(a);
        ++edge_count_;
    }

    void remove_edge(ModuleId a, ModuleId b) {
        if (!out_[a].test(b)) return;
        out_[a].reset(b);
        in_[b].reset(a);
        --edge_count_;
    }

    void ensure_capacity() {
        const std::size_t bound = config_.id_bound();
        if (out_.size() < bound) {
            out_.resize(bound, Bitset(bound));
            in_.resize(bound, Bitset(bound));
        }
    }

    void rebuild() {
        const std::size_t bound = config_.id_bound();
        out_.assign(bound, Bitset(bound));
        in_.assign(bound, Bitset(bound));
        edge_count_ = 0;
        for (const ModuleEdge& e : representative_edges(config_)) add_edge(e.from, e.to);
    }

    Configuration config_;
    std::vector<Bitset> out_;
    std::vector<Bitset> in_;
    std::size_t edge_count_ = 0;
};

}  // namespace powergraph
