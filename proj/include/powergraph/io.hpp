#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "powergraph/configuration.hpp"
#include "powergraph/representative_edges.hpp"

namespace powergraph {

// ---------------------------------------------------------------- edge lists

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) tokens.push_back(s.substr(start, i - start));
    }
    return tokens;
}

inline std::size_t parse_count(std::string_view token, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value > 0xFFFFFFFEu)
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
    return value;
}

}  // namespace detail

/// Parses "u v" lines. Blank lines and lines starting with '#' are skipped.
/// An optional "n <count>" line fixes the vertex count; otherwise it is one
/// more than the largest id.
inline DirectedGraph parse_edge_list(std::string_view text) {
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;
    std::optional<std::size_t> declared;
    std::size_t max_id = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = detail::trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto tokens = detail::split_whitespace(line);
        if (tokens.size() == 2 && tokens[0] == "n") {
            if (declared) throw ParseError(line_no, "repeated vertex count header");
            if (!edges.empty()) throw ParseError(line_no, "vertex count header after the first edge");
            declared = detail::parse_count(tokens[1], line_no);
            continue;
        }
        if (tokens.size() != 2) throw ParseError(line_no, "expected 'u v', got '" + std::string(line) + "'");
        const std::size_t u = detail::parse_count(tokens[0], line_no);
        const std::size_t v = detail::parse_count(tokens[1], line_no);
        if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
        if (declared && (u >= *declared || v >= *declared))
            throw ParseError(line_no, "vertex id outside [0, " + std::to_string(*declared) + ")");
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
        edge_lines.push_back(line_no);
        max_id = std::max({max_id, u, v});
    }
    const std::size_t n = declared ? *declared : (edges.empty() ? 0 : max_id + 1);

    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (edges[order[i]] == edges[order[i - 1]]) {
            const Edge& e = edges[order[i]];
            throw ParseError(edge_lines[order[i]], "duplicate edge " + std::to_string(e.from) + " " + std::to_string(e.to) +
                                                       " (first on line " + std::to_string(edge_lines[order[i - 1]]) + ")");
        }
    return DirectedGraph(n, std::move(edges));
}

/// Writes the vertex count header followed by one "u v" line per edge.
inline std::string write_edge_list(const DirectedGraph& g) {
    std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
    for (const Edge& e : g.edges()) out += std::to_string(e.from) + " " + std::to_string(e.to) + "\n";
    return out;
}

// ---------------------------------------------------------------- documents

inline constexpr int document_version = 1;

struct DocumentModule {
    ModuleId id = 0;
    std::optional<VertexId> vertex;  // set for trivial modules
    std::vector<ModuleId> children;  // set for non-trivial modules

    friend bool operator==(const DocumentModule&, const DocumentModule&) = default;
};

struct DocumentMetadata {
    std::string method;
    std::map<std::string, std::string> parameters;
    std::size_t edge_count = 0;
    std::size_t crossing_count = 0;
    double wall_ms = 0.0;
    bool optimality_proven = false;
    bool time_limit_hit = false;

    friend bool operator==(const DocumentMetadata&, const DocumentMetadata&) = default;
};

/// Serializable power graph: module tree plus representative edges.
struct PowerGraphDocument {
    std::size_t vertex_count = 0;
    std::vector<std::string> labels;      // empty when vertices are unlabelled
    std::vector<DocumentModule> modules;  // sorted by id
    std::vector<ModuleEdge> edges;        // sorted
    DocumentMetadata metadata;

    friend bool operator==(const PowerGraphDocument&, const PowerGraphDocument&) = default;
};

inline PowerGraphDocument make_document(const Configuration& c, const RepresentativeEdgeSet& r,
                                        DocumentMetadata metadata = {}) {
    PowerGraphDocument doc;
    doc.vertex_count = c.vertex_count();
    for (ModuleId id : c.module_ids()) {
        DocumentModule m{id, std::nullopt, {}};
        if (c.is_trivial(id)) m.vertex = static_cast<VertexId>(id);
        else m.children = c.module(id).children;
        doc.modules.push_back(std::move(m));
    }
    doc.edges = r.edges;
    metadata.edge_count = r.size();
    metadata.crossing_count = boundary_crossings(c, r);
    doc.metadata = std::move(metadata);
    return doc;
}

inline PowerGraphDocument make_document(const Configuration& c, DocumentMetadata metadata = {}) {
    return make_document(c, representative_edges(c), std::move(metadata));
}

/// A configuration rebuilt from a document, with the document's module ids
/// mapped onto the configuration's.
struct LoadedDocument {
    Configuration configuration;
    std::unordered_map<ModuleId, ModuleId> id_map;
    RepresentativeEdgeSet edges;  // in configuration ids, sorted
};

/// Rebuilds the hierarchy over `graph`. Throws ParseError when the tree is
/// malformed (unknown or repeated ids, vertices missing or listed twice,
/// cycles) and HierarchyError when a module is not laminar.
inline LoadedDocument load_document(const PowerGraphDocument& doc, std::shared_ptr<const DirectedGraph> graph) {
    const std::size_t n = graph->vertex_count();
    if (doc.vertex_count != n)
        throw ParseError(0, "document has " + std::to_string(doc.vertex_count) + " vertices, graph has " +
                                std::to_string(n));
    std::unordered_map<ModuleId, const DocumentModule*> by_id;
    std::vector<char> seen_vertex(n, 0);
    for (const DocumentModule& m : doc.modules) {
        if (!by_id.emplace(m.id, &m).second) throw ParseError(0, "module id " + std::to_string(m.id) + " repeated");
        if (m.vertex) {
            if (!m.children.empty()) throw ParseError(0, "module " + std::to_string(m.id) + " has a vertex and children");
            if (*m.vertex >= n || seen_vertex[*m.vertex])
                throw ParseError(0, "module " + std::to_string(m.id) + " has an invalid or repeated vertex");
            seen_vertex[*m.vertex] = 1;
        } else if (m.children.size() < 2) {
            throw ParseError(0, "module " + std::to_string(m.id) + " has fewer than two children");
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!seen_vertex[v]) throw ParseError(0, "vertex " + std::to_string(v) + " has no trivial module");

    LoadedDocument out{Configuration::flat(std::move(graph)), {}, {}};
    std::unordered_map<ModuleId, int> state;  // 1 = in progress, 2 = done
    auto build = [&](auto&& self, const DocumentModule& m) -> ModuleId {
        if (auto it = out.id_map.find(m.id); it != out.id_map.end()) return it->second;
        if (m.vertex) return out.id_map[m.id] = *m.vertex;
        if (state[m.id] == 1) throw ParseError(0, "module " + std::to_string(m.id) + " contains itself");
        state[m.id] = 1;
        std::vector<ModuleId> members;
        for (ModuleId child : m.children) {
            auto it = by_id.find(child);
            if (it == by_id.end()) throw ParseError(0, "module " + std::to_string(m.id) + " has unknown child " + std::to_string(child));
            members.push_back(self(self, *it->second));
        }
        for (ModuleId member : members)
            if (!out.configuration.is_top_level(member))
                throw ParseError(0, "module " + std::to_string(m.id) + " shares a child with another module");
        const ModuleId id = out.configuration.add(std::span<const ModuleId>(members));
        state[m.id] = 2;
        return out.id_map[m.id] = id;
    };
    for (const DocumentModule& m : doc.modules) build(build, m);

    for (const ModuleEdge& e : doc.edges) {
        auto a = out.id_map.find(e.from);
        auto b = out.id_map.find(e.to);
        if (a == out.id_map.end() || b == out.id_map.end())
            throw ParseError(0, "edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) + ") references an unknown module");
        out.edges.edges.push_back({a->second, b->second});
    }
    std::sort(out.edges.edges.begin(), out.edges.edges.end());
    return out;
}

inline nlohmann::json to_json_value(const PowerGraphDocument& doc) {
    using nlohmann::json;
    json modules = json::array();
    for (const DocumentModule& m : doc.modules) {
        json jm = {{"id", m.id}};
        if (m.vertex) jm["vertex"] = *m.vertex;
        else jm["children"] = m.children;
        modules.push_back(std::move(jm));
    }
    json edges = json::array();
    for (const ModuleEdge& e : doc.edges) edges.push_back({e.from, e.to});
    json j = {
        {"version", document_version},
        {"vertex_count", doc.vertex_count},
        {"modules", std::move(modules)},
        {"edges", std::move(edges)},
        {"metadata",
         {{"method", doc.metadata.method},
          {"parameters", doc.metadata.parameters},
          {"edge_count", doc.metadata.edge_count},
          {"crossing_count", doc.metadata.crossing_count},
          {"wall_ms", doc.metadata.wall_ms},
          {"optimality_proven", doc.metadata.optimality_proven},
          {"time_limit_hit", doc.metadata.time_limit_hit}}},
    };
    if (!doc.labels.empty()) j["labels"] = doc.labels;
    return j;
}

/// Canonical JSON: keys sorted, modules by id, two-space indent.
inline std::string to_json(const PowerGraphDocument& doc) { return to_json_value(doc).dump(2) + "\n"; }

inline PowerGraphDocument parse_json(std::string_view text) {
    PowerGraphDocument doc;
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        const int version = j.at("version").get<int>();
        if (version != document_version) throw ParseError(0, "unsupported document version " + std::to_string(version));
        doc.vertex_count = j.at("vertex_count").get<std::size_t>();
        if (j.contains("labels")) doc.labels = j.at("labels").get<std::vector<std::string>>();
        for (const auto& jm : j.at("modules")) {
            DocumentModule m;
            m.id = jm.at("id").get<ModuleId>();
            if (jm.contains("vertex")) m.vertex = jm.at("vertex").get<VertexId>();
            if (jm.contains("children")) m.children = jm.at("children").get<std::vector<ModuleId>>();
            doc.modules.push_back(std::move(m));
        }
        for (const auto& je : j.at("edges")) {
            if (!je.is_array() || je.size() != 2) throw ParseError(0, "edge entries must be [from, to] pairs");
            doc.edges.push_back({je[0].get<ModuleId>(), je[1].get<ModuleId>()});
        }
        const auto& jd = j.at("metadata");
        doc.metadata.method = jd.at("method").get<std::string>();
        doc.metadata.parameters = jd.at("parameters").get<std::map<std::string, std::string>>();
        doc.metadata.edge_count = jd.at("edge_count").get<std::size_t>();
        doc.metadata.crossing_count = jd.at("crossing_count").get<std::size_t>();
        doc.metadata.wall_ms = jd.at("wall_ms").get<double>();
        doc.metadata.optimality_proven = jd.at("optimality_proven").get<bool>();
        doc.metadata.time_limit_hit = jd.at("time_limit_hit").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("invalid power graph document: ") + e.what());
    }
    std::sort(doc.modules.begin(), doc.modules.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(doc.edges.begin(), doc.edges.end());
    return doc;
}

// ---------------------------------------------------------------- DOT

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace detail

/// Nested clusters for non-trivial modules, named cluster_<id>. An edge
/// touching a module attaches to the point node m<id> inside its cluster and
/// is clipped at the cluster border; a module self-edge is drawn as a dashed
/// loop on that point.
inline std::string to_dot(const PowerGraphDocument& doc) {
    std::unordered_map<ModuleId, const DocumentModule*> by_id;
    std::unordered_map<ModuleId, char> is_child;
    for (const DocumentModule& m : doc.modules) {
        by_id[m.id] = &m;
        for (ModuleId c : m.children) is_child[c] = 1;
    }
    auto node_name = [&](ModuleId id) {
        const DocumentModule& m = *by_id.at(id);
        return m.vertex ? "v" + std::to_string(*m.vertex) : "m" + std::to_string(id);
    };

    std::string out = "digraph powergraph {\n  compound=true;\n  node [shape=circle];\n";
    auto emit = [&](auto&& self, const DocumentModule& m, const std::string& indent) -> void {
        if (m.vertex) {
            const VertexId v = *m.vertex;
            const std::string label = v < doc.labels.size() ? doc.labels[v] : std::to_string(v);
            out += indent + "v" + std::to_string(v) + " [label=\"" + detail::dot_escape(label) + "\"];\n";
            return;
        }
        out += indent + "subgraph cluster_" + std::to_string(m.id) + " {\n";
        out += indent + "  label=\"" + std::to_string(m.id) + "\";\n";
        out += indent + "  m" + std::to_string(m.id) + " [shape=point, width=0.05, label=\"\"];\n";
        for (ModuleId c : m.children) self(self, *by_id.at(c), indent + "  ");
        out += indent + "}\n";
    };
    for (const DocumentModule& m : doc.modules)
        if (!is_child.count(m.id)) emit(emit, m, "  ");

    for (const ModuleEdge& e : doc.edges) {
        const bool tail_cluster = !by_id.at(e.from)->vertex;
        const bool head_cluster = !by_id.at(e.to)->vertex;
        out += "  " + node_name(e.from) + " -> " + node_name(e.to);
        if (e.from == e.to) {
            out += " [style=dashed, comment=\"self-edge\"]";
        } else if (tail_cluster || head_cluster) {
            std::string attrs;
            if (tail_cluster) attrs += "ltail=cluster_" + std::to_string(e.from);
            if (head_cluster) attrs += (attrs.empty() ? "" : ", ") + std::string("lhead=cluster_") + std::to_string(e.to);
            out += " [" + attrs + "]";
        }
        out += ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace powergraph
