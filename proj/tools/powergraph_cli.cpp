#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "powergraph/powergraph.hpp"

using namespace powergraph;

namespace {

enum Exit { ok = 0, invalid_input = 1, verification_failed = 2, time_limit = 3 };

// Error carrying the file it came from, reported as "file: message".
struct InputError {
    std::string where;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError{path, "cannot open file"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError{path, "cannot write file"};
}

DirectedGraph load_graph(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_edge_list(text);
    } catch (const Error& e) {
        throw InputError{path, e.what()};
    }
}

struct CompressArgs {
    std::string method = "beam";
    std::size_t k = 1;
    bool tie_break = false;
    std::optional<double> time_limit;
    std::string input;
    std::string output;
    std::string dot;
};

int run_compress(const CompressArgs& a) {
    const DirectedGraph g = load_graph(a.input);
    Method method;
    if (a.method == "jaccard") method = {MethodKind::jaccard, 0};
    else if (a.method == "beam") method = {MethodKind::beam, a.k};
    else method = {MethodKind::optimal, 0};

    SolveOptions options;
    options.tie_break = a.tie_break;
    if (a.time_limit)
        options.deadline = std::chrono::steady_clock::now() +
                           std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(*a.time_limit));
    const Solution s = solve(g, method, options);

    DocumentMetadata meta;
    meta.method = method.name();
    if (method.kind == MethodKind::beam) meta.parameters["k"] = std::to_string(a.k);
    if (method.kind == MethodKind::optimal) meta.parameters["tie_break"] = a.tie_break ? "true" : "false";
    if (a.time_limit) meta.parameters["time_limit_s"] = std::to_string(*a.time_limit);
    meta.wall_ms = s.ms;
    meta.optimality_proven = s.optimality_proven;
    meta.time_limit_hit = s.time_limit_hit;
    const PowerGraphDocument doc = make_document(s.configuration, s.edges, meta);

    write_output(a.output, to_json(doc));
    if (!a.dot.empty()) write_output(a.dot, to_dot(doc));
    if (s.time_limit_hit) {
        std::cerr << "time limit reached; wrote the best configuration found (" << s.edges.size()
                  << " edges), optimality not proven\n";
        return time_limit;
    }
    return ok;
}

int run_verify(const std::string& graph_path, const std::string& solution_path) {
    const auto graph = std::make_shared<const DirectedGraph>(load_graph(graph_path));
    PowerGraphDocument doc;
    try {
        doc = parse_json(read_file(solution_path));
    } catch (const Error& e) {
        throw InputError{solution_path, e.what()};
    }
    auto fail = [&](const std::string& why) {
        std::cerr << solution_path << ": verification failed: " << why << "\n";
        return verification_failed;
    };
    LoadedDocument loaded;
    try {
        loaded = load_document(doc, graph);
    } catch (const Error& e) {
        return fail(e.what());
    }
    const Configuration& c = loaded.configuration;
    try {
        c.validate();
    } catch (const Error& e) {
        return fail(e.what());
    }
    if (auto problem = check_representative_edges(c, loaded.edges)) return fail(*problem);
    if (!(loaded.edges == representative_edges(c))) return fail("edge set differs from the configuration's representative edges");
    if (doc.metadata.edge_count != loaded.edges.size()) return fail("metadata edge count does not match the edge list");
    if (doc.metadata.crossing_count != boundary_crossings(c, loaded.edges))
        return fail("metadata crossing count does not match the edge list");
    std::cout << "ok: " << graph->edge_count() << " edges represented by " << loaded.edges.size() << " across "
              << c.nontrivial_count() << " modules\n";
    return ok;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lossless power graph compression of directed graphs"};
    app.require_subcommand(1);

    CompressArgs compress;
    auto* c = app.add_subcommand("compress", "Compress an edge list into a power graph (JSON)");
    c->add_option("--method", compress.method, "jaccard, beam or optimal")
        ->check(CLI::IsMember({"jaccard", "beam", "optimal"}));
    c->add_option("-k", compress.k, "Beam width")->check(CLI::PositiveNumber);
    c->add_flag("--tie-break", compress.tie_break, "Optimal search: break edge ties by boundary crossings");
    c->add_option("--time-limit", compress.time_limit, "Optimal search: seconds before returning the incumbent")
        ->check(CLI::NonNegativeNumber);
    c->add_option("input", compress.input, "Edge list")->required();
    c->add_option("-o,--output", compress.output, "Output JSON (default stdout)");
    c->add_option("--dot", compress.dot, "Also write a DOT drawing");

    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a random scale-free digraph");
    gen->add_option("--n", gen_n, "Vertex count")->required();
    gen->add_option("--seed", gen_seed, "Seed");
    gen->add_option("-o,--output", gen_out, "Output edge list (default stdout)");

    std::string ilp_in, ilp_out;
    std::optional<std::size_t> ilp_extra;
    auto* ilp = app.add_subcommand("emit-ilp", "Write the edge-saving ILP in LP format");
    ilp->add_option("input", ilp_in, "Edge list")->required();
    ilp->add_option("-m,--extra-modules", ilp_extra, "Non-trivial module slots (default n - 2)");
    ilp->add_option("-o,--output", ilp_out, "Output .lp")->required();

    std::string cp_in, cp_out;
    std::optional<std::size_t> cp_limit, cp_ub;
    CpOptions cp_options;
    bool no_lex = false, no_twins = false, no_sp = false, no_potential = false;
    auto* cp = app.add_subcommand("emit-cp", "Write the constraint model in MiniZinc");
    cp->add_option("input", cp_in, "Edge list")->required();
    cp->add_option("--module-limit", cp_limit, "Maximum number of real modules (default n)");
    cp->add_option("--upper-bound", cp_ub, "Upper bound on the edge count (default |E|)");
    cp->add_flag("--no-lex", no_lex, "Drop the lexicographic ordering constraint");
    cp->add_flag("--no-twins", no_twins, "Drop the equal-neighbourhood constraint");
    cp->add_flag("--no-scalar-product", no_sp, "Drop the scalar-product containment constraint");
    cp->add_flag("--no-potential-edge", no_potential, "Drop the potential-edge constraint");
    cp->add_option("-o,--output", cp_out, "Output .mzn")->required();

    std::string sizes, methods = "jaccard,beam_1,beam_10", bench_out;
    std::size_t seeds = 1, threads = 0;
    auto* bench = app.add_subcommand("bench", "Benchmark methods on generated graphs (CSV)");
    bench->add_option("--sizes", sizes, "Comma-separated vertex counts")->required();
    bench->add_option("--seeds", seeds, "Seeds 1..K per size");
    bench->add_option("--methods", methods, "Comma-separated: jaccard, beam_<k>, optimal, exhaustive");
    bench->add_option("--threads", threads, "Worker threads (default POWERGRAPH_THREADS or all cores)");
    bench->add_option("-o,--output", bench_out, "Output CSV (default stdout)");

    std::string verify_graph, verify_solution;
    auto* verify = app.add_subcommand("verify", "Check a solution against its input graph");
    verify->add_option("input", verify_graph, "Edge list")->required();
    verify->add_option("solution", verify_solution, "Solution JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : invalid_input;
    }

    try {
        if (*c) return run_compress(compress);
        if (*gen) {
            write_output(gen_out, write_edge_list(bollobas_generate(gen_n, gen_seed)));
            return ok;
        }
        if (*ilp) {
            const DirectedGraph g = load_graph(ilp_in);
            write_output(ilp_out, emit_ilp(g, ilp_extra.value_or(default_extra_modules(g))));
            return ok;
        }
        if (*cp) {
            const DirectedGraph g = load_graph(cp_in);
            cp_options.lex_order = !no_lex;
            cp_options.same_neighbourhood = !no_twins;
            cp_options.scalar_product = !no_sp;
            cp_options.potential_edge = !no_potential;
            write_output(cp_out, emit_cp(g, cp_limit.value_or(g.vertex_count()), cp_ub, cp_options));
            return ok;
        }
        if (*bench) {
            BenchOptions options;
            for (const std::string& s : split_list(sizes)) options.sizes.push_back(std::stoul(s));
            for (const std::string& m : split_list(methods)) options.methods.push_back(parse_method(m));
            options.seeds = seeds;
            options.threads = threads;
            write_output(bench_out, to_csv(run_benchmark(options)));
            return ok;
        }
        if (*verify) return run_verify(verify_graph, verify_solution);
    } catch (const InputError& e) {
        std::cerr << e.where << ": " << e.message << "\n";
        return invalid_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid_input;
    }
    return invalid_input;
}
