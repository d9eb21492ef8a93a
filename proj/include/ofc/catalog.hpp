#pragma once

// Catalog graphs and trees, query types, and the tree-path helpers shared by
// every query structure.

#include "ofc/counters.hpp"
#include "ofc/error.hpp"
#include "ofc/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ofc {

using VertexId = std::uint32_t;

struct CatalogVertex {
    VertexId id = 0;
    Tiling tiling;
    std::vector<VertexId> adj;
};

class CatalogGraph {
public:
    CatalogGraph() = default;

    CatalogGraph(std::vector<CatalogVertex> vertices, int degree_bound)
        : vertices_(std::move(vertices)), degree_(degree_bound) {
        validate();
    }

    std::size_t size() const { return vertices_.size(); }
    int degree_bound() const { return degree_; }
    const CatalogVertex& vertex(VertexId v) const { return vertices_.at(v); }
    const std::vector<CatalogVertex>& vertices() const { return vertices_; }

    /// Total complexity: number of rects over all tilings.
    std::int64_t complexity() const {
        std::int64_t n = 0;
        for (const auto& v : vertices_) n += static_cast<std::int64_t>(v.tiling.size());
        return n;
    }

    int max_degree() const {
        std::size_t d = 0;
        for (const auto& v : vertices_) d = std::max(d, v.adj.size());
        return static_cast<int>(d);
    }

    bool adjacent(VertexId u, VertexId v) const {
        const auto& a = vertices_.at(u).adj;
        return std::find(a.begin(), a.end(), v) != a.end();
    }

    void check_vertex(VertexId v) const {
        if (v >= vertices_.size()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    }

private:
    void validate() const {
        if (vertices_.empty()) throw Error(ErrorCode::InvalidCatalog, "catalog has no vertices");
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            const auto& v = vertices_[i];
            if (v.id != i) throw Error(ErrorCode::InvalidCatalog, "vertex ids must be 0..m-1 in order");
            if (static_cast<int>(v.adj.size()) > degree_) {
                throw Error(ErrorCode::InvalidCatalog, "vertex " + std::to_string(i) + " exceeds degree bound");
            }
            for (VertexId u : v.adj) {
                if (u >= vertices_.size() || u == i) {
                    throw Error(ErrorCode::InvalidCatalog, "bad edge at vertex " + std::to_string(i));
                }
                const auto& back = vertices_[u].adj;
                if (std::find(back.begin(), back.end(), static_cast<VertexId>(i)) == back.end()) {
                    throw Error(ErrorCode::InvalidCatalog, "edge " + std::to_string(i) + "-" + std::to_string(u) +
                                                               " is not symmetric");
                }
            }
        }
        std::vector<char> seen(vertices_.size(), 0);
        std::deque<VertexId> q{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!q.empty()) {
            const VertexId v = q.front();
            q.pop_front();
            for (VertexId u : vertices_[v].adj) {
                if (!seen[u]) {
                    seen[u] = 1;
                    ++count;
                    q.push_back(u);
                }
            }
        }
        if (count != vertices_.size()) throw Error(ErrorCode::InvalidCatalog, "catalog graph is not connected");
    }

    std::vector<CatalogVertex> vertices_;
    int degree_ = 3;
};

/// Rooted catalog tree. Children keep adjacency order (parent removed), which
/// fixes the left-to-right leaf order.
class CatalogTree {
public:
    static constexpr VertexId kNone = static_cast<VertexId>(-1);

    CatalogTree() = default;

    explicit CatalogTree(CatalogGraph g, VertexId root = 0) : graph_(std::move(g)), root_(root) {
        graph_.check_vertex(root);
        const std::size_t m = graph_.size();
        std::size_t edges = 0;
        for (const auto& v : graph_.vertices()) edges += v.adj.size();
        if (edges != 2 * (m - 1)) throw Error(ErrorCode::InvalidCatalog, "catalog tree must have m-1 edges");
        parent_.assign(m, kNone);
        depth_.assign(m, 0);
        children_.assign(m, {});
        order_.reserve(m);
        order_.push_back(root);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            const VertexId v = order_[i];
            for (VertexId u : graph_.vertex(v).adj) {
                if (u == parent_[v]) continue;
                parent_[u] = v;
                depth_[u] = depth_[v] + 1;
                children_[v].push_back(u);
                order_.push_back(u);
            }
        }
        height_ = 0;
        for (int d : depth_) height_ = std::max(height_, d);
    }

    const CatalogGraph& graph() const { return graph_; }
    std::size_t size() const { return graph_.size(); }
    VertexId root() const { return root_; }
    int height() const { return height_; }
    std::int64_t complexity() const { return graph_.complexity(); }
    const Tiling& tiling(VertexId v) const { return graph_.vertex(v).tiling; }
    VertexId parent(VertexId v) const { return parent_[v]; }
    int depth(VertexId v) const { return depth_[v]; }
    const std::vector<VertexId>& children(VertexId v) const { return children_[v]; }
    bool is_leaf(VertexId v) const { return children_[v].empty(); }
    /// BFS order from the root.
    const std::vector<VertexId>& bfs_order() const { return order_; }

    VertexId ancestor_at_depth(VertexId v, int d) const {
        while (depth_[v] > d) v = parent_[v];
        return v;
    }

    bool is_ancestor(VertexId a, VertexId v) const {
        return depth_[v] >= depth_[a] && ancestor_at_depth(v, depth_[a]) == a;
    }

    /// Vertices of the tree path from u to v, in order.
    std::vector<VertexId> path_between(VertexId u, VertexId v) const {
        std::vector<VertexId> up;
        std::vector<VertexId> down;
        while (depth_[u] > depth_[v]) { up.push_back(u); u = parent_[u]; }
        while (depth_[v] > depth_[u]) { down.push_back(v); v = parent_[v]; }
        while (u != v) {
            up.push_back(u);
            down.push_back(v);
            u = parent_[u];
            v = parent_[v];
        }
        up.push_back(u);
        up.insert(up.end(), down.rbegin(), down.rend());
        return up;
    }

private:
    CatalogGraph graph_;
    VertexId root_ = 0;
    std::vector<VertexId> parent_;
    std::vector<int> depth_;
    std::vector<std::vector<VertexId>> children_;
    std::vector<VertexId> order_;
    int height_ = 0;
};

struct PathQuery {
    Point q;
    std::vector<VertexId> path;
};

struct SubgraphQuery {
    Point q;
    std::vector<VertexId> vertices;
};

struct Location {
    VertexId vertex = 0;
    RectId rect = 0;

    friend bool operator==(const Location&, const Location&) = default;
    friend bool operator<(const Location& a, const Location& b) {
        return a.vertex != b.vertex ? a.vertex < b.vertex : a.rect < b.rect;
    }
};

struct QueryAnswer {
    std::vector<Location> located;

    /// Sorted by vertex; the canonical form compared in tests.
    QueryAnswer normalized() const {
        QueryAnswer out = *this;
        std::sort(out.located.begin(), out.located.end());
        return out;
    }

    friend bool operator==(const QueryAnswer& a, const QueryAnswer& b) {
        return a.normalized().located == b.normalized().located;
    }
};

/// Throws unless the path is non-empty, repeat-free and consecutive vertices are adjacent.
inline void check_path(const CatalogGraph& g, const std::vector<VertexId>& path) {
    if (path.empty()) throw Error(ErrorCode::InvalidQuery, "empty path");
    std::unordered_set<VertexId> seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
        g.check_vertex(path[i]);
        if (!seen.insert(path[i]).second) {
            throw Error(ErrorCode::InvalidQuery, "path repeats vertex " + std::to_string(path[i]));
        }
        if (i > 0 && !g.adjacent(path[i - 1], path[i])) {
            throw Error(ErrorCode::InvalidQuery, "path vertices " + std::to_string(path[i - 1]) + " and " +
                                                     std::to_string(path[i]) + " are not adjacent");
        }
    }
}

/// A tree path split at its highest vertex. Both halves descend from the apex;
/// the apex belongs to the first half only.
struct SplitPath {
    VertexId apex = 0;
    std::vector<VertexId> first;  // apex ... end1
    std::vector<VertexId> second; // child of apex ... end2 (may be empty)
};

inline SplitPath split_at_apex(const CatalogTree& t, const std::vector<VertexId>& path) {
    std::size_t at = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (t.depth(path[i]) < t.depth(path[at])) at = i;
    }
    SplitPath s;
    s.apex = path[at];
    for (std::size_t i = at + 1; i-- > 0;) s.first.push_back(path[i]);
    for (std::size_t i = at + 1; i < path.size(); ++i) s.second.push_back(path[i]);
    // Keep the longer half first so the apex rides with it.
    if (s.second.size() + 1 > s.first.size()) {
        std::vector<VertexId> longer{s.apex};
        longer.insert(longer.end(), s.second.begin(), s.second.end());
        s.second.assign(s.first.begin() + 1, s.first.end());
        s.first = std::move(longer);
    }
    return s;
}

} // namespace ofc
