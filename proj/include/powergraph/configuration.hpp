#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "powergraph/bitset.hpp"
#include "powergraph/errors.hpp"
#include "powergraph/graph.hpp"

namespace powergraph {

using ModuleId = std::uint32_t;
inline constexpr ModuleId no_module = std::numeric_limits<ModuleId>::max();

struct Module {
    Bitset leaves;
    std::vector<ModuleId> children;  // ordered by min_leaf; empty for trivial modules
    ModuleId parent = no_module;
    VertexId min_leaf = 0;
    std::size_t leaf_count = 0;

    bool trivial() const { return children.empty(); }
};

/// A laminar module hierarchy over the vertices of a graph.
///
/// Trivial modules occupy ids 0..n-1 (module v is {v}). Non-trivial module ids
/// are allocated from n upwards; ids freed by dissolve() are reused, lowest
/// first. The graph is shared between copies, so copying a configuration only
/// copies the hierarchy.
class Configuration {
public:
    Configuration() : graph_(std::make_shared<const DirectedGraph>()) {}

    static Configuration flat(std::shared_ptr<const DirectedGraph> graph) {
        Configuration c;
        c.graph_ = std::move(graph);
        const std::size_t n = c.graph_->vertex_count();
        c.modules_.resize(n);
        c.alive_.assign(n, 1);
        for (std::size_t v = 0; v < n; ++v) {
            Module& m = c.modules_[v];
            m.leaves = Bitset(n);
            m.leaves.set(v);
            m.min_leaf = static_cast<VertexId>(v);
            m.leaf_count = 1;
            c.top_level_.push_back(static_cast<ModuleId>(v));
        }
        return c;
    }

    const DirectedGraph& graph() const { return *graph_; }
    const std::shared_ptr<const DirectedGraph>& graph_ptr() const { return graph_; }
    std::size_t vertex_count() const { return graph_->vertex_count(); }

    /// One past the largest id in use or previously allocated.
    std::size_t id_bound() const { return modules_.size(); }

    bool exists(ModuleId id) const { return id < alive_.size() && alive_[id]; }
    bool is_trivial(ModuleId id) const { return id < vertex_count(); }

    const Module& module(ModuleId id) const {
        if (!exists(id)) throw HierarchyError("unknown module id " + std::to_string(id));
        return modules_[id];
    }

    /// Top-level modules ordered by minimum leaf.
    const std::vector<ModuleId>& top_level() const { return top_level_; }

    bool is_top_level(ModuleId id) const { return exists(id) && modules_[id].parent == no_module; }

    std::size_t nontrivial_count() const {
        std::size_t count = 0;
        for (std::size_t id = vertex_count(); id < alive_.size(); ++id) count += alive_[id] ? 1 : 0;
        return count;
    }

    std::vector<ModuleId> module_ids() const {
        std::vector<ModuleId> ids;
        for (std::size_t id = 0; id < alive_.size(); ++id)
            if (alive_[id]) ids.push_back(static_cast<ModuleId>(id));
        return ids;
    }

    std::vector<ModuleId> nontrivial_ids() const {
        std::vector<ModuleId> ids;
        for (std::size_t id = vertex_count(); id < alive_.size(); ++id)
            if (alive_[id]) ids.push_back(static_cast<ModuleId>(id));
        return ids;
    }

    /// Groups top-level modules under a new parent and returns its id.
    /// The union of the members may be all of V; rejecting that is left to callers.
    ModuleId add(std::span<const ModuleId> members) {
        if (members.size() < 2)
            throw DegenerateModuleError("a module needs at least two children, got " +
                                        std::to_string(members.size()));
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (!is_top_level(members[i]))
                throw HierarchyError("module " + std::to_string(members[i]) + " is not top-level");
            for (std::size_t j = 0; j < i; ++j)
                if (members[j] == members[i])
                    throw DegenerateModuleError("module " + std::to_string(members[i]) +
                                                " listed twice");
        }
        const ModuleId id = allocate();
        Module& m = modules_[id];
        m.leaves = Bitset(vertex_count());
        m.children.assign(members.begin(), members.end());
        m.parent = no_module;
        for (ModuleId child : members) {
            modules_[child].parent = id;
            m.leaves |= modules_[child].leaves;
        }
        finish_module(id);
        std::erase_if(top_level_, [&](ModuleId t) { return modules_[t].parent == id; });
        insert_sorted(top_level_, id);
        return id;
    }

    ModuleId add(std::initializer_list<ModuleId> members) {
        return add(std::span<const ModuleId>(members.begin(), members.size()));
    }

    /// Inserts a module with the given leaf set anywhere in the hierarchy: its
    /// children are the maximal existing modules inside it, its parent the
    /// smallest module containing it. Throws HierarchyError if the leaf set
    /// crosses an existing module, DegenerateModuleError if it already exists
    /// or would have a single child.
    ModuleId insert(const Bitset& leaves) {
        if (!leaves.is_subset_of(graph_->all_vertices()) || leaves.none())
            throw HierarchyError("leaf set is empty or outside the vertex range");
        ModuleId parent = no_module;
        const std::vector<ModuleId>* level = &top_level_;
        // Descend to the smallest module containing `leaves`.
        for (bool descended = true; descended;) {
            descended = false;
            for (ModuleId t : *level) {
                const Module& tm = modules_[t];
                if (!tm.leaves.intersects(leaves)) continue;
                if (leaves.is_subset_of(tm.leaves) && !(tm.leaves == leaves)) {
                    if (tm.trivial()) break;
                    parent = t;
                    level = &modules_[t].children;
                    descended = true;
                }
                break;
            }
        }
        std::vector<ModuleId> members;
        Bitset covered(vertex_count());
        for (ModuleId t : *level) {
            const Module& tm = modules_[t];
            if (!tm.leaves.intersects(leaves)) continue;
            if (!tm.leaves.is_subset_of(leaves))
                throw HierarchyError("leaf set crosses module " + std::to_string(t));
            members.push_back(t);
            covered |= tm.leaves;
        }
        if (members.size() < 2)
            throw DegenerateModuleError("module already present or would have a single child");
        const ModuleId id = allocate();
        Module& m = modules_[id];
        m.leaves = covered;
        m.children = members;
        m.parent = parent;
        for (ModuleId child : members) modules_[child].parent = id;
        finish_module(id);
        auto& siblings = parent == no_module ? top_level_ : modules_[parent].children;
        std::erase_if(siblings, [&](ModuleId s) { return modules_[s].parent == id; });
        insert_sorted(siblings, id);
        return id;
    }

    /// Removes a non-trivial module, promoting its children to its parent.
    void dissolve(ModuleId id) {
        if (!exists(id)) throw HierarchyError("unknown module id " + std::to_string(id));
        if (is_trivial(id)) throw HierarchyError("trivial module " + std::to_string(id) + " cannot be dissolved");
        Module& m = modules_[id];
        const ModuleId parent = m.parent;
        auto& siblings = parent == no_module ? top_level_ : modules_[parent].children;
        std::erase(siblings, id);
        for (ModuleId child : m.children) {
            modules_[child].parent = parent;
            insert_sorted(siblings, child);
        }
        m = Module{};
        alive_[id] = 0;
        free_ids_.push_back(id);
        std::sort(free_ids_.begin(), free_ids_.end(), std::greater<>());
    }

    /// True when `outer`'s leaves contain `inner`'s (reflexive).
    bool contains(ModuleId outer, ModuleId inner) const {
        return modules_[inner].leaves.is_subset_of(modules_[outer].leaves);
    }

    /// Smallest module containing both; no_module when they lie in different
    /// top-level trees. Ancestor-or-self, so lca(a, a) == a.
    ModuleId lowest_common_ancestor(ModuleId a, ModuleId b) const {
        for (ModuleId x = a; x != no_module; x = modules_[x].parent)
            if (modules_[b].leaves.is_subset_of(modules_[x].leaves)) return x;
        return no_module;
    }

    /// Checks every structural invariant; throws HierarchyError on failure.
    void validate() const {
        const std::size_t n = vertex_count();
        if (modules_.size() < n) throw HierarchyError("missing trivial modules");
        for (std::size_t v = 0; v < n; ++v) {
            const Module& m = modules_[v];
            if (!alive_[v] || !m.trivial() || m.leaf_count != 1 || !m.leaves.test(v))
                throw HierarchyError("trivial module " + std::to_string(v) + " is malformed");
        }
        Bitset seen(n);
        for (ModuleId t : top_level_) {
            if (!exists(t) || modules_[t].parent != no_module)
                throw HierarchyError("top-level list is inconsistent");
            if (seen.intersects(modules_[t].leaves)) throw HierarchyError("top-level modules overlap");
            seen |= modules_[t].leaves;
        }
        if (!(seen == graph_->all_vertices())) throw HierarchyError("top-level modules do not cover V");
        for (std::size_t id = n; id < modules_.size(); ++id) {
            if (!alive_[id]) continue;
            const Module& m = modules_[id];
            if (m.children.size() < 2) throw HierarchyError("module " + std::to_string(id) + " has < 2 children");
            Bitset u(n);
            for (ModuleId c : m.children) {
                if (!exists(c) || modules_[c].parent != id)
                    throw HierarchyError("child link broken under module " + std::to_string(id));
                if (u.intersects(modules_[c].leaves))
                    throw HierarchyError("children of module " + std::to_string(id) + " overlap");
                u |= modules_[c].leaves;
            }
            if (!(u == m.leaves)) throw HierarchyError("module " + std::to_string(id) + " leaves != union of children");
            if (m.parent != no_module) {
                const auto& sib = modules_[m.parent].children;
                if (std::find(sib.begin(), sib.end(), id) == sib.end())
                    throw HierarchyError("parent link broken for module " + std::to_string(id));
            } else if (std::find(top_level_.begin(), top_level_.end(), id) == top_level_.end()) {
                throw HierarchyError("parentless module " + std::to_string(id) + " not top-level");
            }
        }
    }

private:
    ModuleId allocate() {
        if (!free_ids_.empty()) {
            const ModuleId id = free_ids_.back();
            free_ids_.pop_back();
            alive_[id] = 1;
            return id;
        }
        modules_.emplace_back();
        alive_.push_back(1);
        return static_cast<ModuleId>(modules_.size() - 1);
    }

    void finish_module(ModuleId id) {
        Module& m = modules_[id];
        m.leaf_count = m.leaves.count();
        m.min_leaf = static_cast<VertexId>(m.leaves.find_first());
        std::sort(m.children.begin(), m.children.end(),
                  [&](ModuleId a, ModuleId b) { return modules_[a].min_leaf < modules_[b].min_leaf; });
    }

    void insert_sorted(std::vector<ModuleId>& ids, ModuleId id) const {
        auto pos = std::lower_bound(ids.begin(), ids.end(), id, [&](ModuleId a, ModuleId b) {
            return modules_[a].min_leaf < modules_[b].min_leaf;
        });
        ids.insert(pos, id);
    }

    std::shared_ptr<const DirectedGraph> graph_;
    std::vector<Module> modules_;
    std::vector<char> alive_;
    std::vector<ModuleId> top_level_;
    std::vector<ModuleId> free_ids_;  // descending, so back() is the smallest
};

inline Configuration flat_configuration(const DirectedGraph& g) {
    return Configuration::flat(std::make_shared<const DirectedGraph>(g));
}

inline Configuration flat_configuration(std::shared_ptr<const DirectedGraph> g) {
    return Configuration::flat(std::move(g));
}

/// Functional form of Configuration::add.
inline Configuration add_module(Configuration c, std::span<const ModuleId> members) {
    c.add(members);
    return c;
}

namespace detail {

inline void append_signature(const Configuration& c, ModuleId id, std::string& out) {
    out.push_back('(');
    const Module& m = c.module(id);
    if (m.trivial()) {
        out += std::to_string(m.min_leaf);
    } else {
        for (ModuleId child : m.children) append_signature(c, child, out);
    }
    out.push_back(')');
}

}  // namespace detail

/// Canonical text for the subtree rooted at `id`: "(v)" for a trivial module,
/// otherwise the children's signatures in min-leaf order, wrapped in parentheses.
inline std::string module_signature(const Configuration& c, ModuleId id) {
    std::string out;
    detail::append_signature(c, id, out);
    return out;
}

/// Canonical text for the whole hierarchy; equal iff the module structure is equal.
/// The flat configuration on three vertices gives "(0)(1)(2)".
inline std::string signature(const Configuration& c) {
    std::string out;
    for (ModuleId t : c.top_level()) detail::append_signature(c, t, out);
    return out;
}

}  // namespace powergraph
