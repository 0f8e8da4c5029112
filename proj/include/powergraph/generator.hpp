#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "powergraph/errors.hpp"
#include "powergraph/graph.hpp"

namespace powergraph {

/// round(1.5 * nv^1.5): 10 -> 47, 100 -> 1500.
inline std::size_t target_edge_count(std::size_t nv) {
    return static_cast<std::size_t>(std::llround(1.5 * std::pow(static_cast<double>(nv), 1.5)));
}

/// Parameters of the directed preferential-attachment process.
struct GenSpec {
    std::size_t nv = 0;
    std::uint64_t seed = 0;
    double alpha = 0.41;  // new vertex -> existing, target by in-degree
    double beta = 0.54;   // existing -> existing
    double gamma = 0.05;  // existing -> new vertex, source by out-degree
    double delta_in = 0.2;
    double delta_out = 0.0;
    std::size_t target_edges = 0;

    static GenSpec with_defaults(std::size_t nv, std::uint64_t seed) {
        GenSpec s;
        s.nv = nv;
        s.seed = seed;
        s.target_edges = target_edge_count(nv);
        return s;
    }

    void validate() const {
        if (alpha < 0 || beta < 0 || gamma < 0 || std::abs(alpha + beta + gamma - 1.0) > 1e-9)
            throw GraphError("alpha, beta and gamma must be non-negative and sum to 1");
        if (delta_in < 0 || delta_out < 0) throw GraphError("degree offsets must be non-negative");
        if (target_edges > nv * (nv > 0 ? nv - 1 : 0))
            throw GraphError("target of " + std::to_string(target_edges) + " edges is unreachable with " +
                             std::to_string(nv) + " vertices");
        if (nv >= 2 && target_edges + 1 < nv)
            throw GraphError("target of " + std::to_string(target_edges) + " edges is too small to attach " +
                             std::to_string(nv) + " vertices");
        if (nv >= 2 && alpha + gamma == 0) throw GraphError("alpha + gamma must be positive to add vertices");
    }
};

namespace detail {

class PreferentialAttachment {
public:
    explicit PreferentialAttachment(const GenSpec& spec) : spec_(spec), rng_(spec.seed) {}

    DirectedGraph run() {
        const std::size_t nv = spec_.nv;
        const std::size_t target = spec_.target_edges;
        if (nv < 2) return DirectedGraph(nv, {});

        in_.assign(1, 0);
        out_.assign(1, 0);
        in_.push_back(0);
        out_.push_back(0);
        add(0, 1);

        // Grow to nv vertices. Once the remaining vertex steps alone would
        // reach the target, only vertex-adding steps are taken.
        while (in_.size() < nv) {
            const std::size_t remaining = nv - in_.size();
            const bool forced = edges_.size() + remaining >= target;
            const double r = uniform() * (forced ? spec_.alpha + spec_.gamma : 1.0);
            if (r < spec_.alpha) {
                const VertexId w = pick_by_in_degree();
                const VertexId v = new_vertex();
                add(v, w);
            } else if (!forced && r < spec_.alpha + spec_.beta) {
                try_existing_edge();
            } else {
                const VertexId v = pick_by_out_degree();
                const VertexId w = new_vertex();
                add(v, w);
            }
        }
        while (edges_.size() < target) try_existing_edge();

        std::vector<Edge> list;
        list.reserve(edges_.size());
        for (std::uint64_t key : edges_) list.push_back({static_cast<VertexId>(key >> 32), static_cast<VertexId>(key)});
        return DirectedGraph(nv, std::move(list));
    }

private:
    // 53 random bits; std::uniform_real_distribution is not portable across libraries.
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    VertexId pick(const std::vector<std::size_t>& degree, double offset) {
        double total = 0;
        for (std::size_t d : degree) total += static_cast<double>(d) + offset;
        double x = uniform() * total;
        for (std::size_t v = 0; v < degree.size(); ++v) {
            x -= static_cast<double>(degree[v]) + offset;
            if (x < 0) return static_cast<VertexId>(v);
        }
        // rounding left x at zero: the last vertex with positive weight
        for (std::size_t v = degree.size(); v-- > 0;)
            if (static_cast<double>(degree[v]) + offset > 0) return static_cast<VertexId>(v);
        return 0;
    }

    VertexId pick_by_in_degree() { return pick(in_, spec_.delta_in); }
    VertexId pick_by_out_degree() { return pick(out_, spec_.delta_out); }

    VertexId new_vertex() {
        in_.push_back(0);
        out_.push_back(0);
        return static_cast<VertexId>(in_.size() - 1);
    }

    static std::uint64_t key(VertexId u, VertexId v) { return std::uint64_t{u} << 32 | v; }

    bool add(VertexId u, VertexId v) {
        if (u == v || !edges_.insert(key(u, v)).second) return false;
        ++out_[u];
        ++in_[v];
        return true;
    }

    // One step between existing vertices. Self-loops and duplicates are
    // redrawn; after a long run of rejections an absent edge is chosen
    // uniformly instead, since zero-weight vertices may make the
    // remaining edges unreachable by degree. Adds nothing if the current
    // graph is already complete.
    void try_existing_edge() {
        for (int attempt = 0; attempt < 1000; ++attempt)
            if (add(pick_by_out_degree(), pick_by_in_degree())) return;
        std::vector<std::uint64_t> absent;
        const auto n = static_cast<VertexId>(in_.size());
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = 0; v < n; ++v)
                if (u != v && !edges_.contains(key(u, v))) absent.push_back(key(u, v));
        if (absent.empty()) return;
        const std::uint64_t k = absent[static_cast<std::size_t>(uniform() * static_cast<double>(absent.size()))];
        add(static_cast<VertexId>(k >> 32), static_cast<VertexId>(k));
    }

    GenSpec spec_;
    std::mt19937_64 rng_;
    std::vector<std::size_t> in_;
    std::vector<std::size_t> out_;
    std::unordered_set<std::uint64_t> edges_;
};

}  // namespace detail

/// Directed scale-free graph with exactly spec.nv vertices and
/// spec.target_edges edges. Vertices are numbered in creation order. The
/// random source is std::mt19937_64 seeded with spec.seed.
inline DirectedGraph bollobas_generate(const GenSpec& spec) {
    spec.validate();
    return detail::PreferentialAttachment(spec).run();
}

inline DirectedGraph bollobas_generate(std::size_t nv, std::uint64_t seed) {
    return bollobas_generate(GenSpec::with_defaults(nv, seed));
}

}  // namespace powergraph
