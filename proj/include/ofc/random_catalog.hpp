#pragma once

// Random catalogs and query workloads. All tilings of one catalog share a
// bbox so every point of it is a valid query point.

#include "ofc/catalog.hpp"
#include "ofc/random_tiling.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <vector>

namespace ofc {

/// Side of the shared bbox: rank space holds about two distinct values per rect edge.
inline Coord catalog_side(std::size_t per_vertex) {
    return std::max<Coord>(16, 2 * static_cast<Coord>(per_vertex));
}

inline std::vector<CatalogVertex> random_vertices(std::size_t count, std::size_t per_vertex, std::mt19937_64& rng) {
    const Coord side = catalog_side(per_vertex);
    const Rect bbox{0, 0, side, 0, side};
    std::vector<CatalogVertex> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i].id = static_cast<VertexId>(i);
        out[i].tiling = random_tiling(bbox, per_vertex, rng);
    }
    return out;
}

inline void link(std::vector<CatalogVertex>& vs, VertexId a, VertexId b) {
    vs[a].adj.push_back(b);
    vs[b].adj.push_back(a);
}

inline CatalogGraph random_path_catalog(std::size_t count, std::size_t per_vertex, std::mt19937_64& rng) {
    auto vs = random_vertices(count, per_vertex, rng);
    for (std::size_t i = 1; i < count; ++i) link(vs, static_cast<VertexId>(i - 1), static_cast<VertexId>(i));
    return CatalogGraph(std::move(vs), 2);
}

/// Random binary catalog tree (root 0, at most two children each) of exactly
/// the given height: a spine of height+1 vertices, the rest hung at random
/// places that keep the height.
inline CatalogTree random_tree_catalog(std::size_t count, std::size_t per_vertex, int height, std::mt19937_64& rng) {
    if (height < 0 || static_cast<std::size_t>(height) + 1 > count) {
        throw Error(ErrorCode::InvalidParameter, "tree height does not fit the vertex count");
    }
    auto vs = random_vertices(count, per_vertex, rng);
    std::vector<int> depth(count, 0);
    std::vector<int> kids(count, 0);
    std::vector<VertexId> open; // vertices that can still take a child
    for (int d = 1; d <= height; ++d) {
        link(vs, static_cast<VertexId>(d - 1), static_cast<VertexId>(d));
        depth[d] = d;
        kids[d - 1] = 1;
    }
    for (int d = 0; d < height; ++d) open.push_back(static_cast<VertexId>(d));
    for (std::size_t v = static_cast<std::size_t>(height) + 1; v < count; ++v) {
        if (open.empty()) throw Error(ErrorCode::InvalidParameter, "height too small for the vertex count");
        const std::size_t at = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
        const VertexId p = open[at];
        link(vs, p, static_cast<VertexId>(v));
        depth[v] = depth[p] + 1;
        if (++kids[p] == 2) {
            open[at] = open.back();
            open.pop_back();
        }
        if (depth[v] < height) open.push_back(static_cast<VertexId>(v));
    }
    return CatalogTree(CatalogGraph(std::move(vs), 3), 0);
}

/// Complete binary tree with the given number of layers (height = layers - 1).
inline CatalogTree complete_binary_catalog(int layers, std::size_t per_vertex, std::mt19937_64& rng) {
    const std::size_t count = (std::size_t{1} << layers) - 1;
    auto vs = random_vertices(count, per_vertex, rng);
    for (std::size_t v = 1; v < count; ++v) link(vs, static_cast<VertexId>((v - 1) / 2), static_cast<VertexId>(v));
    return CatalogTree(CatalogGraph(std::move(vs), 3), 0);
}

/// Connected graph with max degree `degree`: a random spanning tree plus random extra edges.
inline CatalogGraph random_graph_catalog(std::size_t count, int degree, std::size_t per_vertex, std::mt19937_64& rng,
                                         double extra_edge_fraction = 0.5) {
    if (degree < 2 && count > 2) throw Error(ErrorCode::InvalidParameter, "degree too small to connect");
    auto vs = random_vertices(count, per_vertex, rng);
    auto deg = [&](std::size_t v) { return static_cast<int>(vs[v].adj.size()); };
    std::vector<VertexId> open{0};
    for (std::size_t v = 1; v < count; ++v) {
        const std::size_t at = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
        const VertexId p = open[at];
        link(vs, p, static_cast<VertexId>(v));
        if (deg(p) >= degree) {
            open[at] = open.back();
            open.pop_back();
        }
        if (deg(v) < degree) open.push_back(static_cast<VertexId>(v));
    }
    const auto extra = static_cast<std::size_t>(extra_edge_fraction * static_cast<double>(count));
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    std::size_t added = 0;
    for (std::size_t i = 0; i < 8 * extra && added < extra; ++i) {
        const std::size_t a = pick(rng), b = pick(rng);
        if (a == b || deg(a) >= degree || deg(b) >= degree) continue;
        if (std::find(vs[a].adj.begin(), vs[a].adj.end(), b) != vs[a].adj.end()) continue;
        link(vs, static_cast<VertexId>(a), static_cast<VertexId>(b));
        ++added;
    }
    return CatalogGraph(std::move(vs), degree);
}

/// Random simple path with exactly `length` vertices: BFS from a random
/// start, then a random vertex at distance length-1. Empty if none was found.
inline std::vector<VertexId> random_graph_path(const CatalogGraph& g, std::size_t length, std::mt19937_64& rng,
                                               int attempts = 64) {
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.size() - 1));
    std::vector<VertexId> parent(g.size());
    std::vector<std::size_t> dist(g.size());
    VertexId next = pick(rng);
    for (int a = 0; a < attempts; ++a) {
        const VertexId s = next;
        next = pick(rng);
        std::fill(dist.begin(), dist.end(), SIZE_MAX);
        dist[s] = 0;
        std::deque<VertexId> q{s};
        std::vector<VertexId> far;
        while (!q.empty()) {
            const VertexId v = q.front();
            q.pop_front();
            if (a % 2 == 0) next = v; // farthest so far: a good start for a retry
            if (dist[v] + 1 == length) {
                far.push_back(v);
                continue;
            }
            for (VertexId u : g.vertex(v).adj) {
                if (dist[u] == SIZE_MAX) {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    q.push_back(u);
                }
            }
        }
        if (far.empty()) continue;
        VertexId v = far[std::uniform_int_distribution<std::size_t>(0, far.size() - 1)(rng)];
        std::vector<VertexId> path{v};
        while (v != s) {
            v = parent[v];
            path.push_back(v);
        }
        return path;
    }
    return {};
}

inline std::vector<VertexId> random_tree_path(const CatalogTree& t, std::size_t length, std::mt19937_64& rng,
                                              int attempts = 64) {
    return random_graph_path(t.graph(), length, rng, attempts);
}

inline std::vector<VertexId> random_root_to_leaf(const CatalogTree& t, std::mt19937_64& rng) {
    std::vector<VertexId> path{t.root()};
    while (!t.is_leaf(path.back())) {
        const auto& c = t.children(path.back());
        path.push_back(c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)]);
    }
    return path;
}

/// Connected vertex set of the given size grown from a random start.
inline std::vector<VertexId> random_connected_subgraph(const CatalogGraph& g, std::size_t size, std::mt19937_64& rng) {
    size = std::min(size, g.size());
    std::vector<char> in(g.size(), 0);
    const VertexId s = std::uniform_int_distribution<VertexId>(0, static_cast<VertexId>(g.size() - 1))(rng);
    std::vector<VertexId> out{s};
    in[s] = 1;
    std::vector<VertexId> frontier(g.vertex(s).adj.begin(), g.vertex(s).adj.end());
    while (out.size() < size && !frontier.empty()) {
        const std::size_t at = std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng);
        const VertexId v = frontier[at];
        frontier[at] = frontier.back();
        frontier.pop_back();
        if (in[v]) continue;
        in[v] = 1;
        out.push_back(v);
        for (VertexId u : g.vertex(v).adj) {
            if (!in[u]) frontier.push_back(u);
        }
    }
    return out;
}

} // namespace ofc
