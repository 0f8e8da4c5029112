#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "powergraph/search_state.hpp"

namespace powergraph {

namespace detail {

// Fewest edges first; equal counts keep the (min leaf, min leaf) order that
// evaluate_merges() produces.
inline void sort_by_edges(std::vector<MergeCandidate>& merges) {
    std::stable_sort(merges.begin(), merges.end(),
                     [](const MergeCandidate& a, const MergeCandidate& b) { return a.edges < b.edges; });
}

}  // namespace detail

/// Greedy best-first merging, applied in place: repeatedly take the merge with
/// the fewest resulting edges while it still improves. This is beam search with
/// k = 1 without state copies or signature bookkeeping.
inline SearchState best_first_search(SearchState state) {
    while (true) {
        const auto merges = state.evaluate_merges();
        if (merges.empty()) break;
        const auto best = std::min_element(merges.begin(), merges.end(),
                                           [](const MergeCandidate& a, const MergeCandidate& b) { return a.edges < b.edges; });
        if (best->edges >= state.edge_count()) break;
        state.merge(best->first, best->second);
    }
    return state;
}

/// Beam search over merges of top-level modules, keeping the k best
/// configurations seen so far and never admitting a configuration whose
/// signature has been in the beam before.
inline SearchState beam_search_from(SearchState start, std::size_t k) {
    if (k == 0) throw std::invalid_argument("beam size must be at least 1");
    if (k == 1) return best_first_search(std::move(start));

    struct Entry {
        std::shared_ptr<const SearchState> state;
        std::uint64_t order;  // insertion sequence, for eviction ties
    };
    std::vector<Entry> beam;
    std::unordered_set<std::string> seen;
    std::uint64_t next_order = 0;

    seen.insert(signature(start.configuration()));
    beam.push_back({std::make_shared<const SearchState>(std::move(start)), next_order++});

    // Worst = most edges; the older entry among equals.
    auto worst = [&]() {
        return std::max_element(beam.begin(), beam.end(), [](const Entry& a, const Entry& b) {
            if (a.state->edge_count() != b.state->edge_count()) return a.state->edge_count() < b.state->edge_count();
            return a.order > b.order;
        });
    };

    struct Pick {
        std::shared_ptr<const SearchState> state;
        std::string sig;
        std::size_t edges;
    };

    bool improved = true;
    while (improved) {
        improved = false;
        const std::vector<Entry> current = beam;
        for (const Entry& entry : current) {
            auto merges = entry.state->evaluate_merges();
            detail::sort_by_edges(merges);

            std::vector<Pick> kbest;
            std::unordered_set<std::string> local;
            for (const MergeCandidate& mc : merges) {
                if (kbest.size() == k) break;
                auto next = std::make_shared<SearchState>(entry.state->merged(mc.first, mc.second));
                std::string sig = signature(next->configuration());
                if (seen.contains(sig) || local.contains(sig)) continue;
                local.insert(sig);
                kbest.push_back({std::move(next), std::move(sig), mc.edges});
            }

            for (Pick& pick : kbest) {
                if (beam.size() < k || worst()->state->edge_count() > pick.edges) {
                    if (!seen.insert(pick.sig).second) continue;  // admitted from another entry this round
                    beam.push_back({std::move(pick.state), next_order++});
                    improved = true;
                }
                if (beam.size() > k) beam.erase(worst());
            }
        }
    }

    const auto best = std::min_element(beam.begin(), beam.end(), [](const Entry& a, const Entry& b) {
        if (a.state->edge_count() != b.state->edge_count()) return a.state->edge_count() < b.state->edge_count();
        return a.order < b.order;
    });
    return *best->state;
}

inline Configuration beam_search(const DirectedGraph& g, std::size_t k) {
    return beam_search_from(SearchState(flat_configuration(g)), k).configuration();
}

}  // namespace powergraph
