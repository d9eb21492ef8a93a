#pragma once

// Catalog graphs of bounded degree. Every vertex becomes 2d mutually adjacent
// copies; copies of adjacent vertices are completely joined. A connected query
// subgraph then becomes a simple path through copies: a DFS walk that takes a
// fresh copy on every revisit.

#include "ofc/catalog.hpp"
#include "ofc/subpath.hpp"

#include <cmath>
#include <memory>
#include <unordered_set>
#include <unordered_map>
#include <vector>

namespace ofc {

struct CopyMap {
    int copies_per_vertex = 0;
    std::vector<VertexId> origin; // by copy id

    VertexId copy(VertexId v, int k) const {
        return v * static_cast<VertexId>(copies_per_vertex) + static_cast<VertexId>(k);
    }
    /// Copy 0 holds the vertex's tiling.
    bool carries_tiling(VertexId c) const { return c % static_cast<VertexId>(copies_per_vertex) == 0; }
};

struct PathCatalog {
    CatalogGraph graph;
    CopyMap map;
};

/// Dummy copies get one rect spanning the vertex's bbox, so every copy still has
/// a tiling; their answers are dropped.
inline PathCatalog graph_to_path_catalog(const CatalogGraph& g) {
    const int d = std::max(1, g.degree_bound());
    PathCatalog out;
    out.map.copies_per_vertex = 2 * d;
    const auto k = static_cast<VertexId>(2 * d);
    std::vector<CatalogVertex> vs(g.size() * k);
    out.map.origin.resize(vs.size());
    for (VertexId v = 0; v < g.size(); ++v) {
        const Tiling& src = g.vertex(v).tiling;
        for (VertexId i = 0; i < k; ++i) {
            const VertexId c = v * k + i;
            auto& cv = vs[c];
            cv.id = c;
            out.map.origin[c] = v;
            if (i == 0) {
                cv.tiling = src;
            } else {
                Rect whole = src.bbox;
                whole.id = 0;
                cv.tiling = Tiling{src.bbox, {whole}};
            }
            for (VertexId j = 0; j < k; ++j) {
                if (j != i) cv.adj.push_back(v * k + j);
            }
            for (VertexId u : g.vertex(v).adj) {
                for (VertexId j = 0; j < k; ++j) cv.adj.push_back(u * k + j);
            }
        }
    }
    const int degree = static_cast<int>(k) - 1 + g.degree_bound() * static_cast<int>(k);
    out.graph = CatalogGraph(std::move(vs), std::max(1, degree));
    return out;
}

/// DFS over a spanning tree of the subgraph; each visit of a vertex uses the next
/// unused copy. The result has at most 2|pi| - 1 vertices and is a simple path in g'.
inline std::vector<VertexId> subgraph_to_walk(const CatalogGraph& g, const CopyMap& map,
                                              const std::vector<VertexId>& vertices) {
    if (vertices.empty()) throw Error(ErrorCode::InvalidQuery, "empty subgraph");
    std::unordered_map<VertexId, int> visits;
    for (VertexId v : vertices) {
        g.check_vertex(v);
        if (!visits.emplace(v, 0).second) {
            throw Error(ErrorCode::InvalidQuery, "subgraph repeats vertex " + std::to_string(v));
        }
    }
    std::vector<VertexId> walk;
    std::unordered_set<VertexId> done;
    auto visit = [&](VertexId v) {
        int& used = visits[v];
        if (used >= map.copies_per_vertex) {
            throw Error(ErrorCode::InvalidCatalog, "vertex " + std::to_string(v) + " ran out of copies");
        }
        walk.push_back(map.copy(v, used++));
    };
    // Iterative DFS: frame = (vertex, next adjacency index).
    std::vector<std::pair<VertexId, std::size_t>> stack{{vertices.front(), 0}};
    done.insert(vertices.front());
    visit(vertices.front());
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        const auto& adj = g.vertex(v).adj;
        while (next < adj.size() && (!visits.count(adj[next]) || done.count(adj[next]))) ++next;
        if (next == adj.size()) {
            stack.pop_back();
            if (!stack.empty()) visit(stack.back().first);
            continue;
        }
        const VertexId u = adj[next++];
        done.insert(u);
        visit(u);
        stack.emplace_back(u, 0);
    }
    if (done.size() != vertices.size()) {
        throw Error(ErrorCode::DisconnectedSubgraph, "query subgraph is not connected");
    }
    // The trailing returns to the start reach nothing new. Every copy other than
    // copy 0 is a revisit.
    while (walk.size() > 1 && !map.carries_tiling(walk.back())) walk.pop_back();
    return walk;
}

class GraphDS {
public:
    GraphDS() = default;

    /// The graph must outlive the structure.
    GraphDS(const CatalogGraph& g, std::uint64_t seed)
        : graph_(&g), expanded_(std::make_unique<PathCatalog>(graph_to_path_catalog(g))) {
        const double d = std::max(2, expanded_->graph.max_degree());
        ds_ = SubpathDS(expanded_->graph, 2.0 * std::log2(d), seed);
    }

    const CatalogGraph& graph() const { return *graph_; }
    const PathCatalog& expanded() const { return *expanded_; }
    const SubpathDS& subpaths() const { return ds_; }
    std::int64_t stored_entries() const { return ds_.stored_entries(); }

    QueryAnswer query(const PathQuery& q, WorkCounters& wc) const {
        check_path(*graph_, q.path);
        std::vector<VertexId> walk;
        walk.reserve(q.path.size());
        for (VertexId v : q.path) walk.push_back(expanded_->map.copy(v, 0));
        return run(walk, q.q, wc);
    }

    QueryAnswer query(const SubgraphQuery& q, WorkCounters& wc) const {
        return run(subgraph_to_walk(*graph_, expanded_->map, q.vertices), q.q, wc);
    }

private:
    QueryAnswer run(const std::vector<VertexId>& walk, const Point& q, WorkCounters& wc) const {
        std::vector<Location> raw;
        ds_.query(walk, q, raw, wc);
        QueryAnswer a;
        for (const Location& l : raw) {
            if (expanded_->map.carries_tiling(l.vertex)) a.located.push_back(Location{expanded_->map.origin[l.vertex], l.rect});
        }
        return a;
    }

    const CatalogGraph* graph_ = nullptr;
    std::unique_ptr<PathCatalog> expanded_;
    SubpathDS ds_;
};

inline GraphDS build_graph(const CatalogGraph& g, std::uint64_t seed = 1) { return GraphDS(g, seed); }

inline QueryAnswer query_graph(const GraphDS& ds, const PathQuery& q, WorkCounters& wc) { return ds.query(q, wc); }

inline QueryAnswer query_graph(const GraphDS& ds, const SubgraphQuery& q, WorkCounters& wc) {
    return ds.query(q, wc);
}

} // namespace ofc
