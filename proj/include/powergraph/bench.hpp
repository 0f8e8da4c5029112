#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "powergraph/beam_search.hpp"
#include "powergraph/generator.hpp"
#include "powergraph/jaccard.hpp"
#include "powergraph/optimal_search.hpp"
#include "powergraph/oracle.hpp"

namespace powergraph {

enum class MethodKind { jaccard, beam, optimal, exhaustive };

struct Method {
    MethodKind kind = MethodKind::beam;
    std::size_t k = 1;  // beam width

    std::string name() const {
        switch (kind) {
            case MethodKind::jaccard: return "jaccard";
            case MethodKind::beam: return "beam_" + std::to_string(k);
            case MethodKind::optimal: return "optimal";
            case MethodKind::exhaustive: return "exhaustive";
        }
        return {};
    }
};

/// Accepts jaccard, optimal, exhaustive, beam (k = 1) and beam_<k>.
inline Method parse_method(const std::string& s) {
    if (s == "jaccard") return {MethodKind::jaccard, 0};
    if (s == "optimal") return {MethodKind::optimal, 0};
    if (s == "exhaustive") return {MethodKind::exhaustive, 0};
    if (s == "beam") return {MethodKind::beam, 1};
    if (s.rfind("beam_", 0) == 0) {
        const std::string digits = s.substr(5);
        if (!digits.empty() && digits.size() < 10 && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            const std::size_t k = std::stoul(digits);
            if (k > 0) return {MethodKind::beam, k};
        }
    }
    throw std::invalid_argument("unknown method '" + s + "' (expected jaccard, beam_<k>, optimal or exhaustive)");
}

struct SolveOptions {
    bool tie_break = false;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct Solution {
    Configuration configuration;
    RepresentativeEdgeSet edges;
    bool optimality_proven = false;
    bool time_limit_hit = false;
    double ms = 0.0;  // solve call only
};

inline Solution solve(const DirectedGraph& g, const Method& method, const SolveOptions& options = {}) {
    Solution s;
    const auto start = std::chrono::steady_clock::now();
    switch (method.kind) {
        case MethodKind::jaccard: s.configuration = jaccard_decompose(g); break;
        case MethodKind::beam: s.configuration = beam_search(g, method.k); break;
        case MethodKind::exhaustive:
            s.configuration = exhaustive_search(g);
            s.optimality_proven = true;
            break;
        case MethodKind::optimal: {
            OptimalSearchOptions o;
            o.tie_break = options.tie_break;
            o.deadline = options.deadline;
            OptimalSearchResult r = optimal_search(g, o);
            s.configuration = std::move(r.configuration);
            s.optimality_proven = r.complete;
            s.time_limit_hit = !r.complete;
            break;
        }
    }
    s.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    s.edges = representative_edges(s.configuration);
    return s;
}

struct BenchRecord {
    std::string method;
    std::size_t n = 0;
    std::size_t m_edges = 0;
    std::size_t r_edges = 0;
    std::size_t modules = 0;
    std::size_t crossings = 0;
    double ms = 0.0;
    std::uint64_t seed = 0;
};

struct BenchOptions {
    std::vector<std::size_t> sizes;
    std::size_t seeds = 1;  // seeds 1..seeds
    std::vector<Method> methods;
    std::size_t threads = 0;  // 0: POWERGRAPH_THREADS, else hardware concurrency
    std::size_t optimal_max_n = 12;
    std::size_t exhaustive_max_n = 8;
};

inline std::size_t default_thread_count() {
    if (const char* env = std::getenv("POWERGRAPH_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs every (size, seed, method) cell on a generated graph. Cells run
/// concurrently; records come back sorted by (method, n, seed).
inline std::vector<BenchRecord> run_benchmark(const BenchOptions& options) {
    for (const Method& m : options.methods)
        for (std::size_t n : options.sizes) {
            if (m.kind == MethodKind::optimal && n > options.optimal_max_n)
                throw SizeLimitError("optimal search is capped at n = " + std::to_string(options.optimal_max_n));
            if (m.kind == MethodKind::exhaustive && n > options.exhaustive_max_n)
                throw SizeLimitError("exhaustive search is capped at n = " + std::to_string(options.exhaustive_max_n));
        }

    struct Cell {
        std::size_t n;
        std::uint64_t seed;
        std::size_t method;
    };
    std::vector<Cell> cells;
    for (std::size_t n : options.sizes)
        for (std::uint64_t seed = 1; seed <= options.seeds; ++seed)
            for (std::size_t i = 0; i < options.methods.size(); ++i) cells.push_back({n, seed, i});

    std::vector<BenchRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                const Cell& c = cells[i];
                const Method& method = options.methods[c.method];
                const DirectedGraph g = bollobas_generate(c.n, c.seed);
                const Solution s = solve(g, method);
                records[i] = {method.name(), c.n, g.edge_count(), s.edges.size(), s.configuration.nontrivial_count(),
                              boundary_crossings(s.configuration, s.edges), s.ms, c.seed};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cells.size();
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads ? options.threads : default_thread_count(), cells.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tie(a.method, a.n, a.seed) < std::tie(b.method, b.n, b.seed);
    });
    return records;
}

inline std::string to_csv(const std::vector<BenchRecord>& records) {
    std::string out = "method,n,m_edges,r_edges,modules,crossings,ms,seed\n";
    char ms[32];
    for (const BenchRecord& r : records) {
        std::snprintf(ms, sizeof ms, "%.3f", r.ms);
        out += r.method + "," + std::to_string(r.n) + "," + std::to_string(r.m_edges) + "," + std::to_string(r.r_edges) +
               "," + std::to_string(r.modules) + "," + std::to_string(r.crossings) + "," + ms + "," +
               std::to_string(r.seed) + "\n";
    }
    return out;
}

}  // namespace powergraph
