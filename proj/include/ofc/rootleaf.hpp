#pragma once

// Root-to-leaf queries by z-lifting. Leaves get unit z-ranges left to right,
// inner vertices the union of their children's; every cutting cell of a vertex
// is lifted by the vertex's range, and one 3D stabbing query at the deepest
// query vertex's z finds a cell on every vertex of the root-to-leaf path.

#include "ofc/catalog.hpp"
#include "ofc/cutting.hpp"
#include "ofc/stabbing.hpp"
#include "ofc/vertex_cuttings.hpp"

#include <cmath>
#include <functional>
#include <unordered_map>
#include <vector>

namespace ofc {

struct ZRange {
    Coord lo = 0;
    Coord hi = 0;

    friend bool operator==(const ZRange&, const ZRange&) = default;
};

/// z-ranges for the subtree of `root` cut to `layers` layers (vertices deeper
/// than that are ignored; the bottom layer acts as leaves). Indexed like `vertices`,
/// which receives the subtree in BFS order.
inline std::vector<ZRange> assign_z_ranges(const CatalogTree& t, VertexId root, int layers,
                                           std::vector<VertexId>& vertices) {
    const int bottom = t.depth(root) + layers - 1;
    vertices.assign(1, root);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (t.depth(vertices[i]) == bottom) continue;
        for (VertexId c : t.children(vertices[i])) vertices.push_back(c);
    }
    std::unordered_map<VertexId, std::size_t> local;
    for (std::size_t i = 0; i < vertices.size(); ++i) local.emplace(vertices[i], i);
    std::vector<ZRange> z(vertices.size());
    Coord next = 0;
    // Iterative DFS, children left to right; a vertex closes after its last child.
    std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
    z[0].lo = 0;
    while (!stack.empty()) {
        auto& [v, child] = stack.back();
        const auto& kids = t.children(v);
        const bool cut = t.depth(v) == bottom;
        if (cut || kids.empty()) {
            z[local[v]] = ZRange{next, next + 1};
            ++next;
            stack.pop_back();
        } else if (child < kids.size()) {
            const VertexId c = kids[child++];
            z[local[c]].lo = next;
            stack.push_back({c, 0});
        } else {
            z[local[v]].hi = next;
            stack.pop_back();
        }
    }
    return z;
}

/// Whole-tree z-ranges indexed by vertex id.
inline std::vector<ZRange> assign_z_ranges(const CatalogTree& t) {
    std::vector<VertexId> order;
    auto local = assign_z_ranges(t, t.root(), t.height() + 1, order);
    std::vector<ZRange> out(t.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = local[i];
    return out;
}

struct RootLeafParams {
    int height = 1;
    std::int64_t r = 1; // 2^ceil(log n / sqrt h)
    int fanout = 2;     // max(2, floor(r / log(n/r)))
};

inline RootLeafParams rootleaf_params(std::int64_t n, int height) {
    RootLeafParams p;
    p.height = std::max(1, height);
    const double lg = log2_real(static_cast<double>(n));
    const int e = std::min(40, static_cast<int>(std::ceil(lg / std::sqrt(static_cast<double>(p.height)))));
    p.r = std::int64_t{1} << std::max(0, e);
    const double rest = std::max(1.0, log2_real(static_cast<double>(n) / static_cast<double>(p.r)));
    p.fanout = std::max(2, static_cast<int>(std::floor(static_cast<double>(p.r) / rest)));
    return p;
}

class RootLeafDS {
public:
    RootLeafDS() = default;

    /// Structure over the subtree of `root` cut to `layers` layers; n is the
    /// complexity that fixes the parameters. The tree must outlive the structure.
    RootLeafDS(const CatalogTree& t, VertexId root, int layers, std::int64_t n, Rng& rng)
        : tree_(&t), root_(root), layers_(layers) {
        z_ = assign_z_ranges(t, root, layers, vertices_);
        int deepest = 0;
        for (VertexId v : vertices_) deepest = std::max(deepest, t.depth(v) - t.depth(root));
        params_ = rootleaf_params(n, deepest);
        for (std::size_t i = 0; i < vertices_.size(); ++i) local_.emplace(vertices_[i], static_cast<std::uint32_t>(i));

        cuts_.reserve(vertices_.size());
        std::vector<Rect3> boxes;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            const Tiling& tiling = t.tiling(vertices_[i]);
            const auto param = cutting_parameter(static_cast<std::int64_t>(tiling.size()),
                                                 static_cast<double>(params_.r));
            cuts_.emplace_back(tiling, cutting_build(tiling, param, rng));
            for (const Rect& c : cuts_.back().cells().rects) {
                boxes.push_back(Rect3{static_cast<RectId>(keys_.size()), c.xlo, c.xhi, c.ylo, c.yhi, z_[i].lo, z_[i].hi});
                keys_.push_back(Key{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(c.id)});
            }
        }
        stab_ = Stab3D(boxes, params_.fanout);
    }

    VertexId root() const { return root_; }
    int layers() const { return layers_; }
    const RootLeafParams& params() const { return params_; }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    bool contains(VertexId v) const { return local_.count(v) != 0; }
    ZRange z_range(VertexId v) const { return z_[local_.at(v)]; }
    std::size_t cell_count() const { return keys_.size(); }

    /// Rects of the vertices held (the conflict lists cover each tiling once).
    std::int64_t input_size() const {
        std::int64_t total = 0;
        for (VertexId v : vertices_) total += static_cast<std::int64_t>(tree_->tiling(v).size());
        return total;
    }

    std::int64_t stored_entries() const {
        std::int64_t total = stab_.stored_entries();
        for (const auto& c : cuts_) total += c.stored_entries();
        return total;
    }

    /// Locates q on the root-to-leaf path through `deepest` (extended below it
    /// to the leftmost leaf). Every located vertex is counted; only those with
    /// keep(v) are reported.
    template <class Keep>
    void query(VertexId deepest, const Point& q, Keep&& keep, std::vector<Location>& out, WorkCounters& wc) const {
        const auto it = local_.find(deepest);
        if (it == local_.end()) throw Error(ErrorCode::InvalidQuery, "vertex outside this subtree");
        wc.structures_queried += 1;
        const Point3 p{q.x, q.y, z_[it->second].lo};
        std::size_t found = 0;
        stab_.query(
            p,
            [&](std::uint64_t key) {
                const Key& k = keys_[key];
                const VertexId v = vertices_[k.local];
                const auto pos = cuts_[k.local].locate_in_cell(k.cell, q, wc);
                wc.cells_located += 1;
                ++found;
                if (keep(v)) out.push_back(Location{v, tree_->tiling(v).rects[pos].id});
            },
            wc);
        const auto expect = static_cast<std::size_t>(tree_->depth(deepest) - tree_->depth(root_) + 1);
        if (found < expect) throw Error(ErrorCode::PointOutsideBBox, "query point is outside some tiling");
    }

private:
    struct Key {
        std::uint32_t local;
        std::uint32_t cell;
    };

    const CatalogTree* tree_ = nullptr;
    VertexId root_ = 0;
    int layers_ = 0;
    RootLeafParams params_;
    std::vector<VertexId> vertices_;
    std::unordered_map<VertexId, std::uint32_t> local_;
    std::vector<ZRange> z_;
    std::vector<IndexedCutting> cuts_;
    std::vector<Key> keys_;
    Stab3D stab_;
};

/// Whole-tree structure; the height must lie in ((log n)/2, (log^2 n)/2]
/// (a single vertex is accepted as the degenerate case).
inline RootLeafDS build_midtree_rootleaf(const CatalogTree& t, std::uint64_t seed = 1) {
    const double lg = log2_real(static_cast<double>(t.complexity()));
    const int h = t.height();
    if (t.size() > 1 && (h <= lg / 2.0 || h > lg * lg / 2.0)) {
        throw Error(ErrorCode::HeightOutOfRegime, "height " + std::to_string(h) + " outside ((log n)/2, (log^2 n)/2]");
    }
    Rng rng(seed);
    return RootLeafDS(t, t.root(), h + 1, t.complexity(), rng);
}

inline QueryAnswer query_midtree_rootleaf(const RootLeafDS& ds, const CatalogTree& t, const PathQuery& q,
                                          WorkCounters& wc) {
    const auto& p = q.path;
    bool ok = !p.empty() && p.front() == ds.root() && t.is_leaf(p.back());
    for (std::size_t i = 1; ok && i < p.size(); ++i) ok = p[i] < t.size() && t.parent(p[i]) == p[i - 1];
    if (!ok) throw Error(ErrorCode::NotRootToLeaf, "query path must run from the root to a leaf");
    QueryAnswer a;
    ds.query(p.back(), q.q, [](VertexId) { return true; }, a.located, wc);
    return a;
}

} // namespace ofc
