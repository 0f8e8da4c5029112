#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "powergraph/graph.hpp"

namespace powergraph {

/// Switches for the redundant and symmetry-breaking constraints. None of them
/// changes the optimum; they only prune the solver's search.
struct CpOptions {
    bool lex_order = true;           // real and dummy modules in decreasing lexicographic order
    bool same_neighbourhood = true;  // twins (equal in- and out-edges) share every module
    bool scalar_product = true;      // containment through |m ∩ n| = |m|
    bool potential_edge = true;      // every real module can carry some edge
};

/// MiniZinc source for the module-selection model. Modules 1..nv are the
/// singletons, nv+1..anm are real modules and anm+1..nv+ml are empty dummies.
/// The objective is the number of actual (non-dominated possible) edges.
inline std::string emit_cp(const DirectedGraph& g, std::size_t module_limit,
                           std::optional<std::size_t> upper_bound = std::nullopt, const CpOptions& options = {}) {
    const std::size_t n = g.vertex_count();
    std::string s;
    s += "% MiniZinc 2.6\n";
    s += "include \"globals.mzn\";\n\n";
    s += "int: nv = " + std::to_string(n) + ";\n";
    s += "int: ml = " + std::to_string(module_limit) + ";\n";
    s += "int: nm = nv + ml;\n";
    s += "int: ub = " + std::to_string(upper_bound.value_or(g.edge_count())) + ";\n";
    s += "set of int: V = 1..nv;\n";
    s += "set of int: M = 1..nm;\n";
    s += "array[V, V] of bool: edge = array2d(V, V, [";
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (u || v) s += ", ";
            if (v == 0 && u > 0) s += "\n  ";
            s += g.has_edge(static_cast<VertexId>(u), static_cast<VertexId>(v)) ? "true" : "false";
        }
    s += "]);\n\n";

    s += "var nv..nm: anm;\n";
    s += "array[V, M] of var bool: module;\n";
    s += "array[M, M] of var bool: mcontains;\n";
    s += "array[M, M] of var bool: disjoint;\n";
    s += "array[M, M] of var bool: possible;\n";
    s += "array[M, M] of var bool: actual;\n";
    s += "array[M] of var 0..nv: size = [sum(v in V)(bool2int(module[v, m])) | m in M];\n\n";

    s += "% module v is the trivial module {v}\n";
    s += "constraint forall(m in V, v in V)(module[v, m] <-> v = m);\n";
    s += "% modules anm+1..nm are dummy and empty; real modules have two or more vertices\n";
    s += "constraint forall(m in nv+1..nm)((m > anm -> size[m] = 0) /\\ (m <= anm -> size[m] >= 2));\n";
    s += "% real modules are distinct sets\n";
    s += "constraint forall(m, k in nv+1..nm where m < k)(k <= anm -> exists(v in V)(module[v, m] != module[v, k]));\n";
    s += "% mcontains[m, k] holds iff module m contains module k\n";
    s += "constraint forall(m, k in M)(mcontains[m, k] <-> forall(v in V)(module[v, k] -> module[v, m]));\n";
    s += "constraint forall(m, k in M)(disjoint[m, k] <-> forall(v in V)(not (module[v, m] /\\ module[v, k])));\n";
    s += "% modules form a hierarchy\n";
    s += "constraint forall(m, k in M where m < k)(mcontains[m, k] \\/ mcontains[k, m] \\/ disjoint[m, k]);\n\n";

    s += "% possible edge: complete between the modules, which are equal or disjoint\n";
    s += "constraint forall(m, k in M)(possible[m, k] <-> (m <= anm /\\ k <= anm /\\\n";
    s += "  (if m = k then m > nv else disjoint[m, k] endif) /\\\n";
    s += "  forall(u, v in V where u != v)(module[u, m] /\\ module[v, k] -> edge[u, v]) /\\\n";
    s += "  forall(u in V)(not (module[u, m] /\\ module[u, k]) \\/ m = k)));\n";
    s += "% (m2, k2) dominates (m, k) if m is contained in m2 and k in k2\n";
    s += "constraint forall(m, k in M)(actual[m, k] <-> (possible[m, k] /\\\n";
    s += "  not exists(m2, k2 in M where m2 != m \\/ k2 != k)(possible[m2, k2] /\\ mcontains[m2, m] /\\ mcontains[k2, k])));\n\n";

    if (options.lex_order) {
        s += "% redundant 1: real and dummy modules in decreasing lexicographic order\n";
        s += "constraint forall(m in nv+1..nm-1)(lex_greatereq([module[v, m] | v in V], [module[v, m + 1] | v in V]));\n";
    }
    if (options.same_neighbourhood) {
        s += "% redundant 2: vertices with the same in- and out-edges lie in the same modules\n";
        s += "constraint forall(u, w in V where u < w /\\ forall(x in V)(edge[u, x] = edge[w, x] /\\ edge[x, u] = edge[x, w]))(\n";
        s += "  forall(m in nv+1..nm)(module[u, m] = module[w, m]));\n";
    }
    if (options.scalar_product) {
        s += "% redundant 3: the scalar product sp[m, k] equals |m| iff m is contained in k\n";
        s += "array[M, M] of var 0..nv: sp = array2d(M, M, [sum(v in V)(bool2int(module[v, m] /\\ module[v, k])) | m, k in M]);\n";
        s += "constraint forall(m, k in M)(mcontains[k, m] <-> sp[m, k] = size[m]);\n";
    }
    if (options.potential_edge) {
        s += "% redundant 4: each real module has a vertex adjacent to all of it (either direction), or is a clique\n";
        s += "constraint forall(m in nv+1..nm)(m <= anm -> (\n";
        s += "  exists(w in V)(not module[w, m] /\\ forall(v in V)(module[v, m] -> edge[w, v])) \\/\n";
        s += "  exists(w in V)(not module[w, m] /\\ forall(v in V)(module[v, m] -> edge[v, w])) \\/\n";
        s += "  forall(u, v in V where u != v)(module[u, m] /\\ module[v, m] -> edge[u, v])));\n";
    }

    s += "\nvar 0..ub: edges = sum(m, k in M)(bool2int(actual[m, k]));\n";
    s += "solve minimize edges;\n";
    s += "output [\"edges = \", show(edges), \"\\nmodules = \", show(anm - nv), \"\\n\"] ++\n";
    s += "  [\"module \" ++ show(m) ++ \" = \" ++ show([v - 1 | v in V where fix(module[v, m])]) ++ \"\\n\" | m in nv+1..nm where fix(m <= anm)];\n";
    return s;
}

}  // namespace powergraph
