#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "powergraph/graph.hpp"

namespace powergraph {

/// One linear term: coefficient times variable.
struct LinearTerm {
    std::int64_t coefficient = 0;
    std::string variable;
};

enum class RowSense { less_equal, greater_equal, equal };

/// A constraint row tagged with the number of the model family it belongs to.
struct LinearRow {
    int family = 0;
    std::string name;
    std::vector<LinearTerm> terms;
    RowSense sense = RowSense::less_equal;
    std::int64_t rhs = 0;

    // Accumulates into an existing term so that each variable appears once.
    void add(std::int64_t coefficient, std::string variable) {
        if (coefficient == 0) return;
        for (LinearTerm& t : terms) {
            if (t.variable == variable) {
                t.coefficient += coefficient;
                return;
            }
        }
        terms.push_back({coefficient, std::move(variable)});
    }
};

/// Edge-saving ILP over n vertices and `extra` non-trivial module slots.
/// Module ids 0..n-1 are pinned to the singletons; n..n+extra-1 are free.
/// The objective maximises saved edges, so the optimal representative edge
/// count is |E| minus the optimal objective.
struct IlpModel {
    std::size_t vertex_count = 0;
    std::size_t extra_modules = 0;
    std::vector<LinearTerm> objective;
    std::vector<LinearRow> rows;
    std::vector<std::string> binaries;
    std::vector<std::string> integers;
    std::int64_t integer_upper_bound = 0;

    std::size_t module_count() const { return vertex_count + extra_modules; }

    std::size_t rows_in_family(int family) const {
        std::size_t count = 0;
        for (const LinearRow& r : rows)
            if (r.family == family) ++count;
        return count;
    }

    std::string to_lp() const;
};

namespace detail {

inline std::string ilp_name(const char* base, std::initializer_list<std::size_t> ids) {
    std::string s = base;
    for (std::size_t id : ids) {
        s += '_';
        s += std::to_string(id);
    }
    return s;
}

inline void append_terms(std::string& out, const std::vector<LinearTerm>& terms) {
    constexpr std::size_t per_line = 8;
    if (terms.empty()) {
        out += " 0";
        return;
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0 && i % per_line == 0) out += "\n  ";
        const LinearTerm& t = terms[i];
        out += t.coefficient < 0 ? " - " : (i == 0 ? " " : " + ");
        const std::int64_t mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
        if (mag != 1) {
            out += std::to_string(mag);
            out += ' ';
        }
        out += t.variable;
    }
}

}  // namespace detail

inline std::string IlpModel::to_lp() const {
    std::string out;
    out += "\\ power graph edge-saving model: n = " + std::to_string(vertex_count) +
           ", extra modules = " + std::to_string(extra_modules) + "\n";
    out += "\\ optimal representative edge count = |E| - objective\n";
    out += "Maximize\n obj:";
    detail::append_terms(out, objective);
    out += "\nSubject To\n";
    for (const LinearRow& r : rows) {
        out += ' ';
        out += r.name;
        out += ':';
        detail::append_terms(out, r.terms);
        out += r.sense == RowSense::less_equal ? " <= " : r.sense == RowSense::greater_equal ? " >= " : " = ";
        out += std::to_string(r.rhs);
        out += '\n';
    }
    out += "Bounds\n";
    for (const std::string& v : integers) out += " 0 <= " + v + " <= " + std::to_string(integer_upper_bound) + "\n";
    out += "Generals\n";
    for (const std::string& v : integers) out += ' ' + v + '\n';
    out += "Binary\n";
    for (const std::string& v : binaries) out += ' ' + v + '\n';
    out += "End\n";
    return out;
}

/// Builds the edge-saving model. Constraint families are numbered 1..27.
///
/// Two index slips in the written model are corrected: family 1 bounds
/// ind[v,m1] (its quantified module), and families 4-5 use ind[v,m2] so that
/// mInd[v,m1,m2] means "v in m1 and v points to all of m2", which is what
/// bic[m1,m2] needs. Families 26-27 pin modules 0..n-1 to the singletons,
/// overlapping the first n indices of M.
inline IlpModel build_ilp(const DirectedGraph& g, std::size_t extra_modules) {
    using detail::ilp_name;
    IlpModel model;
    const std::size_t n = g.vertex_count();
    const std::size_t nm = n + extra_modules;
    const auto big = static_cast<std::int64_t>(n);
    model.vertex_count = n;
    model.extra_modules = extra_modules;
    model.integer_upper_bound = big * big;

    auto e = [&](std::size_t u, std::size_t v) -> std::int64_t {
        return g.has_edge(static_cast<VertexId>(u), static_cast<VertexId>(v)) ? 1 : 0;
    };
    auto mod = [](std::size_t v, std::size_t m) { return ilp_name("mod", {v, m}); };
    auto ind = [](std::size_t v, std::size_t m) { return ilp_name("ind", {v, m}); };
    auto bic = [](std::size_t a, std::size_t b) { return ilp_name("bic", {a, b}); };
    auto dis = [](std::size_t a, std::size_t b) { return ilp_name("dis", {a, b}); };
    auto sub = [](std::size_t a, std::size_t b) { return ilp_name("sub", {a, b}); };
    auto sav = [](std::size_t a, std::size_t b) { return ilp_name("sav", {a, b}); };
    auto smod = [](std::size_t a, std::size_t b) { return ilp_name("sMod", {a, b}); };
    auto mind = [](std::size_t v, std::size_t a, std::size_t b) { return ilp_name("mInd", {v, a, b}); };
    auto vmod = [](std::size_t v, std::size_t a, std::size_t b) { return ilp_name("vMod", {v, a, b}); };
    auto sver = [](std::size_t u, std::size_t v, std::size_t a, std::size_t b) {
        return ilp_name("sVer", {u, v, a, b});
    };

    auto row = [&](int family, std::string name, RowSense sense, std::int64_t rhs) -> LinearRow& {
        model.rows.push_back({family, "c" + std::to_string(family) + "_" + std::move(name), {}, sense, rhs});
        return model.rows.back();
    };
    auto tag = [](std::initializer_list<std::size_t> ids) { return ilp_name("", ids).substr(1); };

    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b)
            if (a != b) {
                model.objective.push_back({1, sav(a, b)});
                model.objective.push_back({-1, smod(a, b)});
            }

    // 1-2: ind[v,m] iff v has an edge to every vertex of m.
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t m = 0; m < nm; ++m) {
            LinearRow& lo = row(1, tag({v, m}), RowSense::greater_equal, -big);
            for (std::size_t u = 0; u < n; ++u) lo.add(e(v, u) - 1, mod(u, m));
            lo.add(-big, ind(v, m));
            LinearRow& hi = row(2, tag({v, m}), RowSense::less_equal, -1);
            for (std::size_t u = 0; u < n; ++u) hi.add(e(v, u) - 1, mod(u, m));
            hi.add(-1, ind(v, m));
        }

    // 3-5: mInd[v,m1,m2] = mod[v,m1] and ind[v,m2].
    for (int family : {3, 4, 5})
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t a = 0; a < nm; ++a)
                for (std::size_t b = 0; b < nm; ++b) {
                    if (a == b) continue;
                    if (family == 3) {
                        LinearRow& r = row(3, tag({v, a, b}), RowSense::less_equal, 0);
                        r.add(1, mind(v, a, b));
                        r.add(-1, mod(v, a));
                    } else if (family == 4) {
                        LinearRow& r = row(4, tag({v, a, b}), RowSense::less_equal, 0);
                        r.add(1, mind(v, a, b));
                        r.add(-1, ind(v, b));
                    } else {
                        LinearRow& r = row(5, tag({v, a, b}), RowSense::greater_equal, -1);
                        r.add(1, mind(v, a, b));
                        r.add(-1, mod(v, a));
                        r.add(-1, ind(v, b));
                    }
                }

    // 6-7: bic[m1,m2] iff every vertex of m1 points to all of m2.
    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b) {
            if (a == b) continue;
            LinearRow& lo = row(6, tag({a, b}), RowSense::greater_equal, -big);
            for (std::size_t v = 0; v < n; ++v) {
                lo.add(1, mind(v, a, b));
                lo.add(-1, mod(v, a));
            }
            lo.add(-big, bic(a, b));
        }
    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b) {
            if (a == b) continue;
            LinearRow& hi = row(7, tag({a, b}), RowSense::less_equal, -1);
            for (std::size_t v = 0; v < n; ++v) {
                hi.add(1, mind(v, a, b));
                hi.add(-1, mod(v, a));
            }
            hi.add(-1, bic(a, b));
        }

    // 8-10: vMod[v,m1,m2] = mod[v,m1] and mod[v,m2].
    for (int family : {8, 9, 10})
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t a = 0; a < nm; ++a)
                for (std::size_t b = 0; b < nm; ++b) {
                    if (a == b) continue;
                    if (family == 10) {
                        LinearRow& r = row(10, tag({v, a, b}), RowSense::greater_equal, -1);
                        r.add(1, vmod(v, a, b));
                        r.add(-1, mod(v, a));
                        r.add(-1, mod(v, b));
                    } else {
                        LinearRow& r = row(family, tag({v, a, b}), RowSense::less_equal, 0);
                        r.add(1, vmod(v, a, b));
                        r.add(-1, mod(v, family == 8 ? a : b));
                    }
                }

    // 11-13: dis[m1,m2] iff m1 and m2 share no vertex.
    for (int family : {11, 12, 13})
        for (std::size_t a = 0; a < nm; ++a)
            for (std::size_t b = 0; b < nm; ++b) {
                if (a == b) continue;
                if (family == 13) {
                    LinearRow& r = row(13, tag({a, b}), RowSense::equal, 0);
                    r.add(1, dis(a, b));
                    r.add(-1, dis(b, a));
                    continue;
                }
                const bool upper = family == 11;
                LinearRow& r = row(family, tag({a, b}), upper ? RowSense::less_equal : RowSense::greater_equal,
                                   upper ? big : 1);
                for (std::size_t v = 0; v < n; ++v) r.add(1, vmod(v, a, b));
                r.add(upper ? big : 1, dis(a, b));
            }

    // 14-16: sub[m1,m2] iff m1 is a proper subset of m2.
    for (int family : {14, 15, 16})
        for (std::size_t a = 0; a < nm; ++a)
            for (std::size_t b = 0; b < nm; ++b) {
                if (a == b) continue;
                if (family == 16) {
                    LinearRow& r = row(16, tag({a, b}), RowSense::less_equal, 0);
                    for (std::size_t v = 0; v < n; ++v) {
                        r.add(1, vmod(v, a, b));
                        r.add(-1, mod(v, b));
                    }
                    r.add(1, sub(a, b));
                    continue;
                }
                const bool lower = family == 14;
                LinearRow& r = row(family, tag({a, b}), lower ? RowSense::greater_equal : RowSense::less_equal,
                                   lower ? -big : -1);
                for (std::size_t v = 0; v < n; ++v) {
                    r.add(1, vmod(v, a, b));
                    r.add(-1, mod(v, a));
                }
                r.add(lower ? -big : -1, sub(a, b));
            }

    // 17: laminarity, once per unordered pair.
    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = a + 1; b < nm; ++b) {
            LinearRow& r = row(17, tag({a, b}), RowSense::equal, 1);
            r.add(1, dis(a, b));
            r.add(1, sub(a, b));
            r.add(1, sub(b, a));
        }

    // 18-21: sVer marks an edge removable through the pair (m1, m2).
    for (int family : {18, 19, 20, 21})
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t a = 0; a < nm; ++a)
                    for (std::size_t b = 0; b < nm; ++b) {
                        const std::int64_t rhs = family == 18 ? e(u, v) : 0;
                        LinearRow& r = row(family, tag({u, v, a, b}), RowSense::less_equal, rhs);
                        r.add(1, sver(u, v, a, b));
                        if (family == 19) r.add(-1, mod(u, a));
                        if (family == 20) r.add(-1, mod(v, b));
                        if (family == 21) r.add(-1, bic(a, b));
                    }

    // 22: each edge is saved through at most one pair.
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            LinearRow& r = row(22, tag({u, v}), RowSense::less_equal, 1);
            for (std::size_t a = 0; a < nm; ++a)
                for (std::size_t b = 0; b < nm; ++b)
                    if (a != b) r.add(1, sver(u, v, a, b));
        }

    // 23-25: sav counts the saved edges, sMod flags a used pair.
    for (int family : {23, 24, 25})
        for (std::size_t a = 0; a < nm; ++a)
            for (std::size_t b = 0; b < nm; ++b) {
                if (a == b) continue;
                LinearRow& r = row(family, tag({a, b}), RowSense::less_equal, 0);
                if (family == 23) {
                    r.add(1, sav(a, b));
                    for (std::size_t u = 0; u < n; ++u)
                        for (std::size_t v = 0; v < n; ++v)
                            if (u != v) r.add(-1, sver(u, v, a, b));
                } else if (family == 24) {
                    r.add(1, smod(a, b));
                    r.add(-1, sav(a, b));
                } else {
                    r.add(1, sav(a, b));
                    r.add(-big * big, smod(a, b));
                }
            }

    // 26-27: module v is the singleton {v}.
    for (std::size_t m = 0; m < n; ++m) {
        LinearRow& r = row(26, tag({m}), RowSense::equal, 1);
        for (std::size_t v = 0; v < n; ++v) r.add(1, mod(v, m));
    }
    for (std::size_t m = 0; m < n; ++m) row(27, tag({m}), RowSense::equal, 1).add(1, mod(m, m));

    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b)
            if (a != b) model.integers.push_back(sav(a, b));
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t m = 0; m < nm; ++m) model.binaries.push_back(mod(v, m));
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t m = 0; m < nm; ++m) model.binaries.push_back(ind(v, m));
    // bic[m,m] is only referenced by family 21, which quantifies m1 = m2 as well.
    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b) model.binaries.push_back(bic(a, b));
    auto declare_pairs = [&](auto name) {
        for (std::size_t a = 0; a < nm; ++a)
            for (std::size_t b = 0; b < nm; ++b)
                if (a != b) model.binaries.push_back(name(a, b));
    };
    auto declare_triples = [&](auto name) {
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t a = 0; a < nm; ++a)
                for (std::size_t b = 0; b < nm; ++b)
                    if (a != b) model.binaries.push_back(name(v, a, b));
    };
    declare_pairs(dis);
    declare_pairs(sub);
    declare_pairs(smod);
    declare_triples(mind);
    declare_triples(vmod);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t a = 0; a < nm; ++a)
                for (std::size_t b = 0; b < nm; ++b) model.binaries.push_back(sver(u, v, a, b));
    return model;
}

inline std::size_t default_extra_modules(const DirectedGraph& g) {
    return g.vertex_count() >= 2 ? g.vertex_count() - 2 : 0;
}

inline std::string emit_ilp(const DirectedGraph& g, std::size_t extra_modules) {
    return build_ilp(g, extra_modules).to_lp();
}

inline std::string emit_ilp(const DirectedGraph& g) { return emit_ilp(g, default_extra_modules(g)); }

}  // namespace powergraph
