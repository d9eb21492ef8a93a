// Command-line driver: gen, build-stats, bench.

#include "ofc/hardgen.hpp"
#include "ofc/io.hpp"
#include "ofc/oracle.hpp"
#include "ofc/random_catalog.hpp"
#include "ofc/random_tiling.hpp"
#include "ofc/structures.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <thread>

using namespace ofc;

namespace {

struct GenOptions {
    std::string kind;
    std::size_t vertices = 0;
    std::size_t per_vertex = 0;
    int height = -1;
    int degree = 3;
    double extra_edges = 0.5;
    std::int64_t n = 0;
    int h = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string witness;
};

struct StatsOptions {
    std::string instance;
    std::string structure = "tree";
    int rounds = config::kDefaultRounds;
    std::uint64_t seed = 1;
    std::optional<double> max_exponent;
};

struct BenchOptions {
    std::string instance;
    std::string structure = "tree";
    int rounds = config::kDefaultRounds;
    std::optional<std::uint64_t> seed;
    std::string queries;
    std::size_t count = 0;
    std::optional<std::size_t> min_length;
    std::optional<std::size_t> max_length;
    std::string shape = "path";
    bool verify = false;
    std::string out;
};

/// Writes to the named file, or stdout for an empty name or "-".
template <class F>
void with_output(const std::string& path, F&& f) {
    if (path.empty() || path == "-") {
        f(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidParameter, "cannot write " + path);
    f(out);
}

CatalogFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidParameter, "cannot read " + path);
    try {
        return read_catalog(in);
    } catch (const ParseError& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

int cmd_gen(const GenOptions& o) {
    if (!o.seed) throw Error(ErrorCode::InvalidParameter, "gen needs --seed");
    std::mt19937_64 rng(*o.seed);
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::InvalidParameter, std::string("--kind ") + o.kind + " needs " + what);
    };
    if (o.kind == "lb-short" || o.kind == "lb-mid") {
        need(o.n > 0 && o.h > 0, "--n and --h");
        const LBInstance inst =
            o.kind == "lb-short" ? gen_short_tree_instance(o.n, o.h, *o.seed) : gen_mid_tree_instance(o.n, o.h, *o.seed);
        with_output(o.out, [&](std::ostream& out) { write_catalog(out, inst.tree.graph(), true); });
        if (!o.witness.empty()) with_output(o.witness, [&](std::ostream& out) { write_witness(out, inst); });
        return 0;
    }
    need(o.vertices > 0 && o.per_vertex > 0, "--vertices and --per-vertex");
    if (o.kind == "random-path") {
        auto g = random_path_catalog(o.vertices, o.per_vertex, rng);
        with_output(o.out, [&](std::ostream& out) { write_catalog(out, g, true); });
    } else if (o.kind == "random-tree") {
        need(o.height >= 0, "--height");
        auto t = random_tree_catalog(o.vertices, o.per_vertex, o.height, rng);
        with_output(o.out, [&](std::ostream& out) { write_catalog(out, t.graph(), true); });
    } else if (o.kind == "random-graph") {
        auto g = random_graph_catalog(o.vertices, o.degree, o.per_vertex, rng, o.extra_edges);
        with_output(o.out, [&](std::ostream& out) { write_catalog(out, g, false); });
    } else {
        throw Error(ErrorCode::InvalidParameter, "unknown --kind " + o.kind);
    }
    return 0;
}

int cmd_build_stats(const StatsOptions& o) {
    auto file = load(o.instance);
    const auto kind = parse_structure_kind(o.structure);
    const auto vertices = file.graph.size();
    const auto n = file.graph.complexity();
    const auto t0 = std::chrono::steady_clock::now();
    Structure s(kind, std::move(file.graph), o.rounds, o.seed);
    const auto build_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const auto entries = s.stored_entries();
    const double lg = log2_real(static_cast<double>(n));
    const double ratio = static_cast<double>(entries) / static_cast<double>(n);
    // entries = n * (log n)^e
    const double exponent = lg > 1.0 ? std::log(ratio) / std::log(lg) : 0.0;
    std::cout << "structure,vertices,n,rounds,stored_entries,entries_per_n,polylog_exponent,layer_cells,build_ms\n";
    std::cout << structure_name(kind) << ',' << vertices << ',' << n << ',' << o.rounds << ',' << entries << ','
              << ratio << ',' << exponent << ',' << s.layer_cells() << ',' << build_ms << '\n';
    if (o.max_exponent && exponent > *o.max_exponent) {
        std::cerr << "stored entries exceed n*(log n)^" << *o.max_exponent << '\n';
        return 2;
    }
    return 0;
}

struct Row {
    std::size_t length = 0;
    std::string regime;
    std::int64_t wall_ns = 0;
    WorkCounters wc;
    bool checked = false;
    bool match = true;
    std::string error;
};

std::size_t worker_count() {
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("OFC_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) workers = std::min(workers, static_cast<std::size_t>(cap));
    }
    return workers;
}

std::vector<QueryLine> make_workload(const BenchOptions& o, const Structure& s, std::int64_t n) {
    std::vector<QueryLine> qs;
    if (o.count == 0) return qs;
    if (!o.seed) throw Error(ErrorCode::InvalidParameter, "a generated workload needs --seed");
    std::mt19937_64 rng(*o.seed);
    const auto& g = s.graph();
    const double lg = log2_real(static_cast<double>(n));
    std::size_t lo = 1, hi = std::max<std::size_t>(1, static_cast<std::size_t>(2 * lg));
    switch (s.kind()) {
    case StructureKind::ShortTree: hi = std::max<std::size_t>(1, static_cast<std::size_t>(lg / 2)); break;
    case StructureKind::MidTree:
        lo = static_cast<std::size_t>(std::floor(lg / 2)) + 1;
        hi = static_cast<std::size_t>(lg * lg / 2);
        break;
    case StructureKind::LongPath:
        lo = static_cast<std::size_t>(lg * lg / 2) + 1;
        hi = 2 * lo;
        break;
    case StructureKind::Tree: hi = std::max<std::size_t>(1, 2 * static_cast<std::size_t>(s.tree()->height()) + 1); break;
    default: break;
    }
    lo = o.min_length.value_or(lo);
    hi = std::max(lo, o.max_length.value_or(hi));
    const Rect bbox = g.vertex(0).tiling.bbox;
    for (std::size_t i = 0; i < o.count; ++i) {
        QueryLine q;
        q.q = random_point(bbox, rng);
        if (o.shape == "root-to-leaf") {
            if (!s.tree()) throw Error(ErrorCode::InvalidParameter, "root-to-leaf queries need a tree structure");
            q.vertices = random_root_to_leaf(*s.tree(), rng);
        } else if (o.shape == "subgraph") {
            q.subgraph = true;
            q.vertices = random_connected_subgraph(g, std::uniform_int_distribution<std::size_t>(lo, hi)(rng), rng);
        } else if (o.shape == "path") {
            for (int attempt = 0; attempt < 16 && q.vertices.empty(); ++attempt) {
                q.vertices = random_graph_path(g, std::uniform_int_distribution<std::size_t>(lo, hi)(rng), rng);
            }
            if (q.vertices.empty()) {
                throw Error(ErrorCode::InvalidParameter, "no paths with " + std::to_string(lo) + ".." +
                                                             std::to_string(hi) + " vertices in this instance");
            }
        } else {
            throw Error(ErrorCode::InvalidParameter, "unknown --shape " + o.shape);
        }
        qs.push_back(std::move(q));
    }
    return qs;
}

int cmd_bench(const BenchOptions& o) {
    auto file = load(o.instance);
    const auto kind = parse_structure_kind(o.structure);
    const auto n = file.graph.complexity();
    const RankMap ranks = file.ranks;
    Structure s(kind, std::move(file.graph), o.rounds, o.seed.value_or(1));

    std::vector<QueryLine> qs;
    if (!o.queries.empty()) {
        std::ifstream in(o.queries);
        if (!in) throw Error(ErrorCode::InvalidParameter, "cannot read " + o.queries);
        try {
            qs = read_queries(in);
        } catch (const ParseError& e) {
            throw Error(ErrorCode::ParseError, o.queries + ": " + e.what());
        }
        for (auto& q : qs) q.q = ranks.map(q.q);
    } else {
        qs = make_workload(o, s, n);
    }

    std::vector<Row> rows(qs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < qs.size(); i = next++) {
            const auto& q = qs[i];
            Row& r = rows[i];
            r.length = q.vertices.size();
            if (!q.subgraph) r.regime = s.regime(r.length);
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const QueryAnswer a = s.query(q.q, q.vertices, q.subgraph, r.wc);
                r.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
                                .count();
                if (o.verify) {
                    r.checked = true;
                    r.match = a == oracle_query(s.graph(), q.q, q.vertices);
                }
            } catch (const Error& e) {
                r.error = e.what();
            }
        }
    };
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, qs.size()));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    bool all_match = true;
    for (const Row& r : rows) {
        if (!r.error.empty()) throw Error(ErrorCode::InvalidQuery, r.error);
        all_match = all_match && r.match;
    }

    with_output(o.out, [&](std::ostream& out) {
        out << "query,kind,length,regime,wall_ns,stab_nodes_visited,pl_comparisons,structures_queried,cells_located,"
               "work,work_per_vertex,oracle_match,fit_a\n";
        double num = 0, den = 0, total_work = 0, total_len = 0;
        std::int64_t wall = 0;
        WorkCounters sum;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& r = rows[i];
            const double w = static_cast<double>(r.wc.work());
            const double m = cost_model(kind, n, r.length);
            num += w * m;
            den += m * m;
            total_work += w;
            total_len += static_cast<double>(r.length);
            wall += r.wall_ns;
            sum += r.wc;
            out << i << ',' << (qs[i].subgraph ? "subgraph" : "path") << ',' << r.length << ',' << r.regime << ','
                << r.wall_ns << ',' << r.wc.stab_nodes_visited << ',' << r.wc.pl_comparisons << ','
                << r.wc.structures_queried << ',' << r.wc.cells_located << ',' << r.wc.work() << ','
                << w / static_cast<double>(std::max<std::size_t>(1, r.length)) << ','
                << (r.checked ? (r.match ? "1" : "0") : "") << ",\n";
        }
        if (!rows.empty()) {
            const double count = static_cast<double>(rows.size());
            out << "summary," << structure_name(kind) << ',' << total_len / count << ',' << cost_model_name(kind) << ','
                << wall << ',' << sum.stab_nodes_visited << ',' << sum.pl_comparisons << ',' << sum.structures_queried
                << ',' << sum.cells_located << ',' << total_work / count << ',' << total_work / std::max(1.0, total_len)
                << ',' << (o.verify ? (all_match ? "1" : "0") : "") << ',' << (den > 0 ? num / den : 0.0) << '\n';
        }
    });
    if (!all_match) {
        std::cerr << "oracle mismatch\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal fractional cascading driver"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate a catalog instance");
    g->set_help_flag("--help", "Print this help message and exit"); // --h is the height
    g->add_option("--kind", gen.kind, "random-path | random-tree | random-graph | lb-short | lb-mid")->required();
    g->add_option("--vertices", gen.vertices);
    g->add_option("--per-vertex", gen.per_vertex, "Rects per vertex tiling");
    g->add_option("--height", gen.height);
    g->add_option("--degree", gen.degree);
    g->add_option("--extra-edges", gen.extra_edges, "Extra edges per vertex for random-graph");
    g->add_option("--n", gen.n, "Total complexity for lb-* kinds");
    g->add_option("--h", gen.h, "Tree height (layers) for lb-* kinds");
    g->add_option("--seed", gen.seed);
    g->add_option("--out,-o", gen.out, "Instance file (default stdout)");
    g->add_option("--witness", gen.witness, "Witness sidecar for lb-* kinds");

    StatsOptions stats;
    auto* b = app.add_subcommand("build-stats", "Build a structure and report its size");
    b->add_option("--instance,-i", stats.instance)->required();
    b->add_option("--structure", stats.structure, "path | short-tree | mid-tree | tree | graph | long-path | naive");
    b->add_option("--rounds", stats.rounds);
    b->add_option("--seed", stats.seed);
    b->add_option("--max-exponent", stats.max_exponent, "Fail when entries > n (log n)^E");

    BenchOptions bench;
    auto* q = app.add_subcommand("bench", "Run a query workload and emit per-query counters as CSV");
    q->add_option("--instance,-i", bench.instance)->required();
    q->add_option("--structure", bench.structure, "path | short-tree | mid-tree | tree | graph | long-path | naive");
    q->add_option("--rounds", bench.rounds);
    q->add_option("--seed", bench.seed);
    q->add_option("--queries", bench.queries, "Query file; otherwise a generated workload");
    q->add_option("--count", bench.count, "Generated queries");
    q->add_option("--min-length", bench.min_length);
    q->add_option("--max-length", bench.max_length);
    q->add_option("--shape", bench.shape, "path | root-to-leaf | subgraph");
    q->add_flag("--verify", bench.verify, "Compare every answer with the oracle");
    q->add_option("--out,-o", bench.out, "CSV file (default stdout)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*g) return cmd_gen(gen);
        if (*b) return cmd_build_stats(stats);
        return cmd_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
