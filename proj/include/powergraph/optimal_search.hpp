#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "powergraph/beam_search.hpp"
#include "powergraph/search_state.hpp"

namespace powergraph {

/// Compared on edges alone, or lexicographically on all three with tie-breaking.
struct Objective {
    std::size_t edges = 0;
    std::size_t crossings = 0;
    std::size_t modules = 0;

    bool better_than(const Objective& other, bool tie_break) const {
        if (edges != other.edges) return edges < other.edges;
        if (!tie_break) return false;
        if (crossings != other.crossings) return crossings < other.crossings;
        return modules < other.modules;
    }
};

inline Objective objective_of(const Configuration& c, const RepresentativeEdgeSet& r) {
    return {r.size(), boundary_crossings(c, r), c.nontrivial_count()};
}

inline Objective objective_of(const Configuration& c) { return objective_of(c, representative_edges(c)); }

/// A binary merge that strictly reduces the edge count.
struct ScoredMerge {
    ModuleId first = no_module;
    ModuleId second = no_module;
    std::size_t reduction = 0;
};

/// Improving binary merges, largest reduction first; ties in min-leaf order.
inline std::vector<ScoredMerge> candidate_binary_merges(const SearchState& s) {
    std::vector<ScoredMerge> out;
    for (const MergeCandidate& mc : s.evaluate_merges())
        if (mc.edges < s.edge_count()) out.push_back({mc.first, mc.second, s.edge_count() - mc.edges});
    std::stable_sort(out.begin(), out.end(),
                     [](const ScoredMerge& a, const ScoredMerge& b) { return a.reduction > b.reduction; });
    return out;
}

/// Edge counts removed by each improving module that could be added to the
/// configuration: every union of two or more top-level modules. Sorted,
/// largest first.
///
/// Adding modules never lets a module remove more edges than it would on its
/// own, so these scores (unlike the binary-merge reductions alone) bound what
/// any sequence of additions can achieve.
///
/// Returns nothing when more than `max_unions` unions would need scoring.
inline std::optional<std::vector<std::size_t>> module_scores(const SearchState& s, std::size_t max_unions = 1 << 16) {
    const Configuration& c = s.configuration();
    const auto& top = c.top_level();
    const std::size_t t = top.size();
    std::vector<Bitset> out(t), in(t);
    for (std::size_t i = 0; i < t; ++i) {
        out[i] = common_out_neighbors(c, top[i]);
        in[i] = common_in_neighbors(c, top[i]);
    }
    std::vector<std::size_t> scores;
    std::size_t visited = 0;
    // Unions grow one member at a time in top-level order. Once a union has no
    // common neighbour on either side and is not a clique, neither it nor any
    // larger union can remove an edge.
    auto extend = [&](auto&& self, std::size_t next, std::size_t size, const Bitset& leaves, const Bitset& cout,
                      const Bitset& cin) -> void {
        for (std::size_t i = next; i < t && visited <= max_unions; ++i) {
            ++visited;
            const Bitset l = leaves | c.module(top[i]).leaves;
            const Bitset o = cout & out[i];
            const Bitset n = cin & in[i];
            const bool clique = s.leaves_form_clique(l);
            if (o.none() && n.none() && !clique) continue;
            if (size >= 1) {
                const std::size_t edges = s.nedges_union(l, o, n, clique);
                if (edges < s.edge_count()) scores.push_back(s.edge_count() - edges);
            }
            self(self, i + 1, size + 1, l, o, n);
        }
    };
    extend(extend, 0, 0, Bitset(c.vertex_count()), c.graph().all_vertices(), c.graph().all_vertices());
    if (visited > max_unions) return std::nullopt;
    std::sort(scores.begin(), scores.end(), std::greater<>());
    return scores;
}

/// Edge count minus the `slots` largest scores (sorted largest first),
/// floored at zero.
inline std::size_t lower_bound(std::size_t edges, const std::vector<std::size_t>& scores, std::size_t slots) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < scores.size() && i < slots; ++i) total += scores[i];
    return total >= edges ? 0 : edges - total;
}

/// n - 2, since a module holding every vertex has no outside neighbour. The
/// exception is a complete graph, where that module carries the one self-edge.
inline std::size_t default_module_limit(const DirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n < 2) return 0;
    return g.edge_count() == n * (n - 1) ? n - 1 : n - 2;
}

/// Lower bound on the edge count reachable from `s` while at most
/// `module_limit` non-trivial modules exist.
inline std::size_t lower_bound(const SearchState& s, std::size_t module_limit) {
    const std::size_t depth = s.configuration().nontrivial_count();
    const std::size_t slots = depth >= module_limit ? 0 : module_limit - depth;
    if (slots == 0) return s.edge_count();
    const auto scores = module_scores(s);
    return scores ? lower_bound(s.edge_count(), *scores, slots) : 0;
}

/// Dissolves modules whose removal keeps the edge count (and, with
/// tie-breaking, does not add crossings) until none is left. Afterwards every
/// remaining module is needed: removing it makes the objective strictly worse.
inline Configuration remove_redundant_modules(Configuration c, bool tie_break = false) {
    auto r = representative_edges(c);
    Objective current = objective_of(c, r);
    bool changed = true;
    while (changed) {
        changed = false;
        for (ModuleId id : c.nontrivial_ids()) {
            Configuration trial = c;
            trial.dissolve(id);
            auto tr = representative_edges(trial);
            if (tr.size() != current.edges) continue;
            const Objective t = objective_of(trial, tr);
            if (tie_break && t.crossings > current.crossings) continue;
            c = std::move(trial);
            current = t;
            changed = true;
        }
    }
    return c;
}

/// A branch-and-bound node: the state plus the signatures of binary modules
/// excluded from its subtree.
struct SearchNode {
    const SearchState& state;
    const std::vector<std::string>& forbidden;
    std::size_t depth;
};

struct SearchProgress {
    std::size_t nodes = 0;
    std::size_t pruned = 0;
    std::size_t incumbent_edges = 0;
    std::size_t depth = 0;
};

struct OptimalSearchOptions {
    bool tie_break = false;
    /// Starting incumbent. When absent, optimal_search() seeds with best-first search.
    std::optional<Configuration> incumbent_seed;
    bool seed_with_best_first = true;
    std::optional<std::size_t> module_limit;  // default |V| - 2
    bool use_bound = true;
    bool forbid_siblings = true;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::size_t progress_interval = 100000;
    std::function<void(const SearchProgress&)> on_progress;
    std::function<void(const SearchNode&, std::size_t bound)> on_node;
    std::function<void(const SearchNode&, std::size_t bound)> on_prune;
};

struct OptimalSearchResult {
    Configuration configuration;
    RepresentativeEdgeSet edges;
    Objective objective;
    bool complete = true;  // false when the deadline stopped the search
    std::size_t nodes = 0;
    std::size_t pruned = 0;
};

namespace detail {

class BranchAndBound {
public:
    BranchAndBound(const OptimalSearchOptions& options, std::size_t limit) : options_(options), limit_(limit) {}

    void seed(const Configuration& c) { offer(remove_redundant_modules(c, options_.tie_break)); }

    void run(const SearchState& root, std::vector<std::string> forbidden) {
        for (const std::string& sig : forbidden) push(sig);
        if (!best_) offer(remove_redundant_modules(root.configuration(), options_.tie_break));
        visit(root, root.configuration().nontrivial_count());
    }

    OptimalSearchResult result() && {
        OptimalSearchResult out{std::move(best_->configuration), std::move(best_->edges), best_->objective,
                                !aborted_, nodes_, pruned_};
        return out;
    }

private:
    struct Incumbent {
        Configuration configuration;
        RepresentativeEdgeSet edges;
        Objective objective;
    };

    void offer(Configuration c) {
        auto r = representative_edges(c);
        const Objective obj = objective_of(c, r);
        if (!best_ || obj.better_than(best_->objective, options_.tie_break))
            best_ = Incumbent{std::move(c), std::move(r), obj};
    }

    bool bound_can_improve(std::size_t bound) const {
        if (!best_) return true;
        return options_.tie_break ? bound <= best_->objective.edges : bound < best_->objective.edges;
    }

    void push(const std::string& sig) {
        ++forbidden_[sig];
        stack_.push_back(sig);
    }

    void pop() {
        auto it = forbidden_.find(stack_.back());
        if (--it->second == 0) forbidden_.erase(it);
        stack_.pop_back();
    }

    static std::string binary_signature(const Configuration& c, ModuleId a, ModuleId b) {
        return "(" + module_signature(c, a) + module_signature(c, b) + ")";
    }

    void visit(const SearchState& s, std::size_t depth) {
        if (aborted_) return;
        ++nodes_;
        if (options_.deadline && std::chrono::steady_clock::now() >= *options_.deadline) {
            aborted_ = true;
            return;
        }
        if (options_.on_progress && nodes_ % options_.progress_interval == 0)
            options_.on_progress({nodes_, pruned_, best_ ? best_->objective.edges : s.edge_count(), depth});

        if (!best_ || s.edge_count() < best_->objective.edges ||
            (options_.tie_break && s.edge_count() == best_->objective.edges))
            offer(remove_redundant_modules(s.configuration(), options_.tie_break));

        auto merges = candidate_binary_merges(s);
        if (options_.forbid_siblings && !forbidden_.empty()) {
            std::erase_if(merges, [&](const ScoredMerge& m) {
                return forbidden_.contains(binary_signature(s.configuration(), m.first, m.second));
            });
        }
        const std::size_t bound = lower_bound(s, limit_);

        if (options_.on_node) options_.on_node(SearchNode{s, stack_, depth}, bound);
        if (options_.use_bound && !bound_can_improve(bound)) {
            ++pruned_;
            if (options_.on_prune) options_.on_prune(SearchNode{s, stack_, depth}, bound);
            return;
        }
        if (depth >= limit_) return;

        std::size_t pushed = 0;
        for (const ScoredMerge& m : merges) {
            SearchState child = s;
            child.add_binary(m.first, m.second);
            visit(child, depth + 1);
            if (aborted_) break;
            if (options_.forbid_siblings) {
                push(binary_signature(s.configuration(), m.first, m.second));
                ++pushed;
            }
        }
        for (; pushed > 0; --pushed) pop();
    }

    const OptimalSearchOptions& options_;
    std::size_t limit_;
    std::optional<Incumbent> best_;
    std::unordered_map<std::string, std::size_t> forbidden_;
    std::vector<std::string> stack_;
    std::size_t nodes_ = 0;
    std::size_t pruned_ = 0;
    bool aborted_ = false;
};

}  // namespace detail

/// Searches the subtree rooted at `root`, with the binary modules named in
/// `forbidden` excluded. Only an explicit incumbent_seed is used as a seed,
/// since a greedy run may leave the subtree.
inline OptimalSearchResult optimal_search_from(const SearchState& root, std::vector<std::string> forbidden,
                                               const OptimalSearchOptions& options = {}) {
    const auto limit = options.module_limit.value_or(default_module_limit(root.configuration().graph()));
    detail::BranchAndBound bnb(options, limit);
    if (options.incumbent_seed) bnb.seed(*options.incumbent_seed);
    bnb.run(root, std::move(forbidden));
    return std::move(bnb).result();
}

/// Exact minimisation of the representative edge count (then crossings, with
/// tie_break) over configurations built from binary modules.
inline OptimalSearchResult optimal_search(const DirectedGraph& g, const OptimalSearchOptions& options = {}) {
    const SearchState root(flat_configuration(g));
    const auto limit = options.module_limit.value_or(default_module_limit(g));
    detail::BranchAndBound bnb(options, limit);
    if (options.incumbent_seed)
        bnb.seed(*options.incumbent_seed);
    else if (options.seed_with_best_first)
        bnb.seed(best_first_search(root).configuration());
    bnb.run(root, {});
    return std::move(bnb).result();
}

}  // namespace powergraph
