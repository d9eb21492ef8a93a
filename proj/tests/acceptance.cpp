// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented.

#include "ofc/bootstrap.hpp"
#include "ofc/cutting.hpp"
#include "ofc/decompose.hpp"
#include "ofc/graph.hpp"
#include "ofc/hardgen.hpp"
#include "ofc/long_path.hpp"
#include "ofc/midtree.hpp"
#include "ofc/oracle.hpp"
#include "ofc/random_catalog.hpp"
#include "ofc/random_tiling.hpp"
#include "ofc/rootleaf.hpp"
#include "ofc/standalone.hpp"
#include "ofc/structures.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace ofc;

namespace {

using Clock = std::chrono::steady_clock;

void note(const std::string& s) { std::cout << "    " << s << '\n'; }

std::string fmt(double v, int prec = 3) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << v;
    return s.str();
}

double lg(std::int64_t n) { return std::log2(static_cast<double>(n)); }

// ---------------------------------------------------------------------------
// 1. Oracle equivalence

struct Shape {
    std::int64_t n;
    std::size_t vertices;
    std::size_t per_vertex;
    int height; // -1: not a tree instance
};

CatalogGraph make_instance(StructureKind kind, const Shape& s, std::mt19937_64& rng) {
    switch (kind) {
    case StructureKind::Path: return random_path_catalog(s.vertices, s.per_vertex, rng);
    case StructureKind::Graph:
    case StructureKind::Naive: return random_graph_catalog(s.vertices, 3, s.per_vertex, rng);
    default: return random_tree_catalog(s.vertices, s.per_vertex, s.height, rng).graph();
    }
}

// Lengths each kind is queried with.
std::pair<std::size_t, std::size_t> length_range(StructureKind kind, const Structure& st) {
    const double l = lg(st.graph().complexity());
    const auto short_max = static_cast<std::size_t>(std::floor(l / 2));
    const auto mid_max = static_cast<std::size_t>(std::floor(l * l / 2));
    switch (kind) {
    case StructureKind::ShortTree: return {1, std::max<std::size_t>(1, short_max)};
    case StructureKind::MidTree: return {short_max + 1, mid_max};
    case StructureKind::LongPath: return {mid_max + 1, 2 * mid_max};
    case StructureKind::Tree: return {1, static_cast<std::size_t>(2 * st.tree()->height() + 1)};
    default: return {1, static_cast<std::size_t>(3 * l)};
    }
}

bool criterion1() {
    const std::vector<std::pair<StructureKind, std::vector<Shape>>> plan{
        {StructureKind::Path, {{1 << 10, 32, 32, -1}, {1 << 14, 128, 128, -1}, {1 << 17, 512, 256, -1}}},
        {StructureKind::ShortTree, {{1 << 10, 32, 32, 5}, {1 << 14, 128, 128, 7}, {1 << 17, 256, 512, 8}}},
        {StructureKind::MidTree, {{1 << 10, 64, 16, 45}, {1 << 14, 256, 64, 100}, {1 << 17, 512, 256, 150}}},
        {StructureKind::Tree, {{1 << 10, 64, 16, 60}, {1 << 14, 256, 64, 120}, {1 << 17, 512, 256, 180}}},
        {StructureKind::LongPath, {{1 << 10, 128, 8, 110}, {1 << 14, 256, 64, 200}, {1 << 17, 512, 256, 300}}},
        {StructureKind::Graph, {{1 << 10, 64, 16, -1}, {1 << 14, 256, 64, -1}, {1 << 17, 512, 256, -1}}},
        {StructureKind::Naive, {{1 << 10, 64, 16, -1}, {1 << 14, 256, 64, -1}, {1 << 17, 512, 256, -1}}},
    };
    // 8 + 8 + 4 instances per kind.
    const int per_size[3] = {8, 8, 4};
    const int queries = 500;
    bool ok = true;
    std::mt19937_64 rng(101);
    for (const auto& [kind, shapes] : plan) {
        const auto t0 = Clock::now();
        int instances = 0;
        long total = 0, mismatches = 0, errors = 0;
        for (std::size_t si = 0; si < shapes.size(); ++si) {
            for (int k = 0; k < per_size[si]; ++k) {
                Structure st(kind, make_instance(kind, shapes[si], rng), 1, rng());
                ++instances;
                const auto [lo, hi] = length_range(kind, st);
                const Rect bbox = st.graph().vertex(0).tiling.bbox;
                for (int i = 0; i < queries; ++i) {
                    const Point q = random_point(bbox, rng);
                    const bool subgraph = kind == StructureKind::Graph && i % 2 == 1;
                    std::vector<VertexId> vs;
                    if (subgraph) {
                        vs = random_connected_subgraph(st.graph(), std::uniform_int_distribution<std::size_t>(lo, hi)(rng), rng);
                    } else {
                        for (int a = 0; a < 32 && vs.empty(); ++a) {
                            vs = random_graph_path(st.graph(), std::uniform_int_distribution<std::size_t>(lo, hi)(rng), rng);
                        }
                    }
                    if (vs.empty()) {
                        ++errors;
                        continue;
                    }
                    ++total;
                    try {
                        WorkCounters wc;
                        if (!(st.query(q, vs, subgraph, wc) == oracle_query(st.graph(), q, vs))) ++mismatches;
                    } catch (const std::exception& e) {
                        if (errors++ == 0) note(std::string(structure_name(kind)) + " error: " + e.what());
                    }
                }
            }
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        note(std::string(structure_name(kind)) + ": " + std::to_string(instances) + " instances, " +
               std::to_string(total) + " queries, " + std::to_string(mismatches) + " mismatches, " +
               std::to_string(errors) + " errors, " + fmt(secs, 1) + " s");
        ok = ok && mismatches == 0 && errors == 0 && instances >= 20 && total >= 500L * instances;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// 2. Structural invariants

bool criterion2() {
    const int cases = 1000;
    std::mt19937_64 rng(202);
    int bad_decomp = 0, bad_cut = 0, bad_z = 0, bad_heavy = 0;

    const Rect box{0, 0, 64, 0, 64};
    for (int i = 0; i < cases; ++i) {
        const auto segs = testing::random_segments(box, 1 + rng() % 24, rng);
        const Tiling t = trapezoidal_decompose(box, segs);
        if (!check_tiling(t).ok || t.size() > 4 * segs.size() + 1) ++bad_decomp;
    }
    note("decomposition: " + std::to_string(cases) + " cases, " + std::to_string(bad_decomp) + " violations");

    for (int i = 0; i < cases; ++i) {
        const auto k = 8 + rng() % 300;
        const Tiling src = random_tiling(Rect{0, 0, 1024, 0, 1024}, k, rng);
        const auto r = static_cast<std::int64_t>(1 + rng() % k);
        const Cutting c = cutting_build(src, r, rng);
        if (!check_cutting(src, c).ok) ++bad_cut;
    }
    note("cuttings (|cells| <= 4r, conflicts <= 8n/r, exact lists): " + std::to_string(cases) + " cases, " +
           std::to_string(bad_cut) + " violations");

    auto random_tree = [&](std::size_t max_vertices) {
        for (;;) {
            const std::size_t v = 1 + rng() % max_vertices;
            const int min_h = v == 1 ? 0 : ceil_log2(static_cast<std::int64_t>(v)) + 1;
            if (static_cast<std::size_t>(min_h) + 1 > v) continue;
            const int h = min_h + static_cast<int>(rng() % (v - static_cast<std::size_t>(min_h)));
            try {
                return random_tree_catalog(v, 1, h, rng);
            } catch (const Error&) {
            }
        }
    };

    for (int i = 0; i < cases; ++i) {
        const auto t = random_tree(200);
        const auto z = assign_z_ranges(t);
        bool ok = true;
        for (VertexId v = 0; v < t.size() && ok; ++v) {
            const auto& kids = t.children(v);
            if (kids.empty()) {
                ok = z[v].hi - z[v].lo == 1;
                continue;
            }
            Coord at = z[v].lo;
            for (VertexId c : kids) {
                ok = ok && z[c].lo == at;
                at = z[c].hi;
            }
            ok = ok && at == z[v].hi;
        }
        if (!ok) ++bad_z;
    }
    note("z-ranges (parent = disjoint union of children): " + std::to_string(cases) + " cases, " +
           std::to_string(bad_z) + " violations");

    for (int i = 0; i < cases; ++i) {
        const auto t = random_tree(1000);
        const auto paths = heavy_path_decompose(t);
        std::vector<VertexId> head(t.size());
        for (const auto& p : paths)
            for (VertexId v : p) head[v] = p.front();
        // Heavy paths met from the root down to each vertex.
        std::vector<int> met(t.size(), 1);
        int worst = 1;
        for (VertexId v : t.bfs_order()) {
            if (v == t.root()) continue;
            met[v] = met[t.parent(v)] + (head[v] == v ? 1 : 0);
            if (t.is_leaf(v)) worst = std::max(worst, met[v]);
        }
        if (worst > ceil_log2(static_cast<std::int64_t>(t.size())) + 1) ++bad_heavy;
    }
    note("heavy paths (<= ceil(log n)+1 per root-to-leaf walk, every leaf): " + std::to_string(cases) + " cases, " +
           std::to_string(bad_heavy) + " violations");
    return bad_decomp + bad_cut + bad_z + bad_heavy == 0;
}

// ---------------------------------------------------------------------------
// 3. Short-tree speedup on lb-short instances

bool criterion3() {
    const std::vector<std::int64_t> sizes{1 << 12, 1 << 14, 1 << 17};
    std::vector<double> ratios;
    for (std::int64_t n : sizes) {
        const int h = static_cast<int>(std::floor(lg(n) / 2));
        const auto inst = gen_short_tree_instance(n, h, 303);
        const auto& t = inst.tree;
        const ShortTreeDS ds = build_short_tree(t, 304);
        const StandaloneDS naive(t.graph());
        std::mt19937_64 rng(305);
        const Rect bbox = t.tiling(0).bbox;
        WorkCounters fast, slow;
        std::int64_t vertices = 0;
        for (int i = 0; i < 300; ++i) {
            const auto path = random_root_to_leaf(t, rng);
            const Point q = random_point(bbox, rng);
            query_short_tree(ds, PathQuery{q, path}, fast);
            naive.query(path, q, slow);
            vertices += static_cast<std::int64_t>(path.size());
        }
        const double pv_fast = static_cast<double>(fast.work()) / static_cast<double>(vertices);
        const double pv_slow = static_cast<double>(slow.work()) / static_cast<double>(vertices);
        ratios.push_back(pv_slow / pv_fast);
        const auto& p = ds.subpaths().params();
        note("n = 2^" + std::to_string(ceil_log2(n)) + ", h = " + std::to_string(h) + ": naive " + fmt(pv_slow, 2) +
               " / short-tree " + fmt(pv_fast, 2) + " per vertex, ratio " + fmt(ratios.back()) + " (r = " +
               std::to_string(p.r) + ", subpath length " + std::to_string(p.length) + ")");
    }
    bool increasing = true;
    for (std::size_t i = 1; i < ratios.size(); ++i) increasing = increasing && ratios[i] > ratios[i - 1];
    note(std::string("ratio >= 1.5 at 2^17: ") + (ratios.back() >= 1.5 ? "yes" : "no") +
           ", strictly increasing: " + (increasing ? "yes" : "no"));
    return ratios.back() >= 1.5 && increasing;
}

// ---------------------------------------------------------------------------
// 4. Mid-tree query shape

bool criterion4() {
    std::mt19937_64 rng(404);
    const auto t = random_tree_catalog(256, 64, 120, rng);
    const std::int64_t n = t.complexity();
    const double l = lg(n);
    const MidTreeDS ds = build_midtree_general(t, l / 2, l * l / 2, 405);
    const Rect bbox = t.tiling(0).bbox;
    const std::vector<std::size_t> lengths{8, 11, 16, 23, 32, 45, 64, 80};
    std::vector<double> mean;
    bool trace_ok = true;
    int worst_anchor = 0;
    for (std::size_t len : lengths) {
        double sum = 0;
        int got = 0;
        for (int i = 0; i < 200 && got < 40; ++i) {
            const auto p = random_tree_path(t, len, rng);
            if (p.size() != len) continue;
            WorkCounters wc;
            MidTreeTrace trace;
            const Point q = random_point(bbox, rng);
            const auto a = query_midtree_general(ds, PathQuery{q, p}, wc, &trace);
            if (!(a == oracle_query(t, q, p))) trace_ok = false;
            for (int c : trace.per_anchored) {
                worst_anchor = std::max(worst_anchor, c);
                if (c > ds.levels() + 1) trace_ok = false;
            }
            sum += static_cast<double>(wc.work());
            ++got;
        }
        if (got == 0) return false;
        mean.push_back(sum / got);
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const double m = std::sqrt(static_cast<double>(lengths[i])) * l;
        num += mean[i] * m;
        den += m * m;
    }
    const double a = num / den;
    double worst = 0;
    std::string line = "mean work by |pi|:";
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const double fit = a * std::sqrt(static_cast<double>(lengths[i])) * l;
        const double res = std::abs(mean[i] - fit) / fit;
        worst = std::max(worst, res);
        line += " " + std::to_string(lengths[i]) + ":" + fmt(mean[i], 0) + "(" + fmt(100 * res, 0) + "%)";
    }
    note("n = " + std::to_string(n) + ", levels = " + std::to_string(ds.levels()) + ", fitted a = " + fmt(a) +
           " in a*sqrt(|pi|)*log n");
    note(line);
    note("worst residual " + fmt(100 * worst, 1) + "% (limit 50%), max RootLeafDS queries per anchored half " +
           std::to_string(worst_anchor) + " (limit " + std::to_string(ds.levels() + 1) + ")");
    return worst <= 0.5 && trace_ok;
}

// ---------------------------------------------------------------------------
// 5. Long paths

bool criterion5() {
    std::mt19937_64 rng(505);
    const auto t = random_tree_catalog(512, 32, 220, rng);
    const std::int64_t n = t.complexity();
    const double l = lg(n);
    const auto ds = build_long_path(t);
    const Rect bbox = t.tiling(0).bbox;
    const auto lo = static_cast<std::size_t>(std::floor(l * l / 2)) + 1;
    const std::int64_t bound = 2 * (ceil_log2(n) + 1);
    const StandaloneDS naive(t.graph());
    bool ok = true;
    std::int64_t worst_structs = 0;
    double a = 0, a_naive = 0;
    std::size_t count = 0, shortest = SIZE_MAX, longest = 0;
    for (int i = 0; i < 400 && count < 300; ++i) {
        const auto p = random_tree_path(t, lo + rng() % 300, rng);
        if (p.size() < lo) continue;
        WorkCounters wc, wn;
        const Point q = random_point(bbox, rng);
        if (!(query_long_path(ds, PathQuery{q, p}, wc) == oracle_query(t, q, p))) ok = false;
        naive.query(p, q, wn);
        worst_structs = std::max(worst_structs, wc.structures_queried);
        if (wc.structures_queried > bound) ok = false;
        const double model = l * l + static_cast<double>(p.size());
        a = std::max(a, static_cast<double>(wc.work()) / model);
        a_naive = std::max(a_naive, static_cast<double>(wn.work()) / model);
        shortest = std::min(shortest, p.size());
        longest = std::max(longest, p.size());
        ++count;
    }
    if (count < 100) return false;
    note("n = " + std::to_string(n) + ", " + std::to_string(count) + " queries with |pi| in [" +
         std::to_string(shortest) + ", " + std::to_string(longest) + "]");
    note("structures queried max " + std::to_string(worst_structs) + " (limit " + std::to_string(bound) + ")");
    // a is the least constant with work <= a*(log^2 n + |pi|) on every query. Per-vertex
    // location on the same queries is the yardstick a Theta(|pi| log n) method would hit.
    note("fitted a = " + fmt(a) + "; naive per-vertex location needs a = " + fmt(a_naive));
    return ok && a < a_naive;
}

// ---------------------------------------------------------------------------
// 6. Space

bool criterion6() {
    std::mt19937_64 rng(606);
    const std::int64_t n = 1 << 17;
    const double l = lg(n);
    bool ok = true;
    const std::vector<std::pair<StructureKind, Shape>> plan{
        {StructureKind::Path, {n, 512, 256, -1}},      {StructureKind::ShortTree, {n, 256, 512, 8}},
        {StructureKind::MidTree, {n, 512, 256, 100}},  {StructureKind::Tree, {n, 512, 256, 100}},
        {StructureKind::LongPath, {n, 512, 256, 300}}, {StructureKind::Graph, {n, 512, 256, -1}},
        {StructureKind::Naive, {n, 512, 256, -1}},
    };
    for (const auto& [kind, shape] : plan) {
        Structure st(kind, make_instance(kind, shape, rng), 1, rng());
        const auto e = static_cast<double>(st.stored_entries());
        const double exponent = std::log(e / static_cast<double>(n)) / std::log(l);
        const bool within = e <= static_cast<double>(n) * l * l;
        ok = ok && within;
        note(std::string(structure_name(kind)) + ": " + std::to_string(st.stored_entries()) + " entries = n*(log n)^" +
               fmt(exponent) + (within ? "" : "  EXCEEDS n*(log n)^2"));
    }

    const auto t = random_tree_catalog(512, 256, 100, rng);
    std::vector<std::int64_t> cells;
    std::string line = "bootstrapped layer cells by rounds:";
    for (int c = 0; c <= 3; ++c) {
        const BootstrappedDS ds = build_bootstrapped(t, c, 607);
        cells.push_back(ds.layer_cells());
        line += " c=" + std::to_string(c) + ":" + std::to_string(cells.back());
    }
    note(line);
    const int c = config::kDefaultRounds;
    const bool drops = cells[c + 1] < cells[c];
    note("rounds " + std::to_string(c) + " -> " + std::to_string(c + 1) + ": " + std::to_string(cells[c]) +
           " -> " + std::to_string(cells[c + 1]) + (drops ? " (strictly fewer)" : " (not fewer)"));
    return ok && drops;
}

// ---------------------------------------------------------------------------
// 7. Hard instances

bool criterion7() {
    struct Case {
        bool mid;
        std::int64_t n;
        int h;
    };
    const std::vector<Case> cases{{false, 1 << 12, 6}, {false, 1 << 14, 7}, {false, 1 << 17, 8},
                                  {true, 1 << 14, 16},  {true, 1 << 16, 16}, {true, 1 << 16, 40}};
    bool ok = true;
    std::mt19937_64 rng(707);
    for (const auto& c : cases) {
        const auto inst = c.mid ? gen_mid_tree_instance(c.n, c.h, 708) : gen_short_tree_instance(c.n, c.h, 708);
        const auto& p = inst.params;
        __int128 V = 0;
        for (const auto& w : inst.witness) {
            if (w.cls >= 0) {
                V = w.box.volume();
                break;
            }
        }
        int bad_count = 0, bad_pairs = 0;
        long pairs = 0;
        std::uniform_int_distribution<Coord> coord(0, (Coord{1} << p.L) - 1);
        for (int s = 0; s < 200; ++s) {
            const auto path = random_root_to_leaf(inst.tree, rng);
            const Point q{coord(rng), coord(rng)};
            const Coord z = inst.leaf_z(path.back());
            std::vector<const LBRect*> hit;
            for (const auto& w : inst.witness) {
                if (w.cls >= 0 && w.box.contains(q.x, q.y, z)) hit.push_back(&w);
            }
            if (static_cast<int>(hit.size()) != p.t) ++bad_count;
            for (std::size_t i = 0; i < hit.size(); ++i) {
                for (std::size_t j = i + 1; j < hit.size(); ++j) {
                    ++pairs;
                    if (intersection_volume(hit[i]->box, hit[j]->box) << p.r > V) ++bad_pairs;
                }
            }
        }
        std::uniform_int_distribution<std::size_t> pick(0, inst.witness.size() - 1);
        for (int s = 0; s < 5000; ++s) {
            const auto& a = inst.witness[pick(rng)];
            const auto& b = inst.witness[pick(rng)];
            if (&a == &b || a.cls < 0 || b.cls < 0) continue;
            ++pairs;
            if (intersection_volume(a.box, b.box) << p.r > V) ++bad_pairs;
        }
        note(std::string(c.mid ? "lb-mid" : "lb-short") + " n = 2^" + std::to_string(ceil_log2(c.n)) + " h = " +
               std::to_string(c.h) + " (r = " + std::to_string(p.r) + ", t = " + std::to_string(p.t) + "): " +
               std::to_string(bad_count) + "/200 points off t, " + std::to_string(bad_pairs) + "/" +
               std::to_string(pairs) + " pairs above V/2^r");
        ok = ok && bad_count == 0 && bad_pairs == 0;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// 8. Graph reduction

bool criterion8() {
    std::mt19937_64 rng(808);
    const auto g = random_graph_catalog(200, 3, 16, rng);
    const GraphDS ds = build_graph(g, 809);
    const Rect bbox = g.vertex(0).tiling.bbox;
    int too_long = 0, not_simple = 0, wrong = 0;
    for (int i = 0; i < 100; ++i) {
        const auto sub = random_connected_subgraph(g, 1 + rng() % 24, rng);
        const auto walk = subgraph_to_walk(g, ds.expanded().map, sub);
        if (walk.size() > 2 * sub.size()) ++too_long;
        try {
            check_path(ds.expanded().graph, walk);
        } catch (const Error&) {
            ++not_simple;
        }
        const Point q = random_point(bbox, rng);
        WorkCounters wc;
        if (!(query_graph(ds, SubgraphQuery{q, sub}, wc) == oracle_query(g, q, sub))) ++wrong;
    }
    note("100 subtree queries: " + std::to_string(too_long) + " walks over 2|pi|, " + std::to_string(not_simple) +
           " not simple in g', " + std::to_string(wrong) + " answers off the oracle");
    return too_long + not_simple + wrong == 0;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool()>>> criteria{
        {"oracle equivalence", criterion1}, {"structural invariants", criterion2},
        {"short-tree speedup", criterion3}, {"mid-tree query shape", criterion4},
        {"long-path bounds", criterion5},   {"space accounting", criterion6},
        {"hard-instance fidelity", criterion7}, {"graph reduction", criterion8},
    };
    int failed = 0;
    const auto start = Clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        bool pass = false;
        try {
            pass = criteria[i].second();
        } catch (const std::exception& e) {
            note(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << fmt(secs, 1) << " s)" << std::endl;
        failed += !pass;
    }
    std::cout << "total " << fmt(std::chrono::duration<double>(Clock::now() - start).count(), 1) << " s, " << failed
              << " failed\n";
    return failed == 0 ? 0 : 1;
}
