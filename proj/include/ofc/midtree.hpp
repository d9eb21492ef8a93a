#pragma once

// Mid-length paths, h1 <= |pi| <= h2. The tree is cut into a forest of trees
// with h2 layers; every tree is split into its top half T0 and the subtrees
// T_i hanging below, recursively, until trees have at most h1 layers. Every
// tree in this hierarchy carries a root-to-leaf structure. A query splits at
// its highest vertex and answers each half as anchored paths, using at most
// one root-to-leaf structure per hierarchy level.

#include "ofc/catalog.hpp"
#include "ofc/rootleaf.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ofc {

struct MidTreeTrace {
    /// Root-to-leaf structures queried for each anchored piece of the last query.
    std::vector<int> per_anchored;
    /// Point-location work spent on conflict lists after the mid-tree answer (bootstrapped layers).
    std::int64_t conflict_work = 0;
};

class MidTreeDS {
public:
    MidTreeDS() = default;

    MidTreeDS(const CatalogTree& t, double h1, double h2, std::uint64_t seed, std::int64_t n = 0)
        : tree_(&t), h1_(h1), h2_(h2) {
        if (!(h1 < h2) || h2 < 1.0) {
            throw Error(ErrorCode::InvalidHeights, "need h1 < h2, got " + std::to_string(h1) + ", " + std::to_string(h2));
        }
        n_ = n > 0 ? n : t.complexity();
        Rng rng(seed);
        forest_layers_ = std::max(1, static_cast<int>(std::ceil(h2)));
        for (VertexId v : t.bfs_order()) {
            if (t.depth(v) % forest_layers_ == 0) {
                forest_.emplace(v, build_node(v, forest_layers_, 0, rng));
            }
        }
    }

    double h1() const { return h1_; }
    double h2() const { return h2_; }
    int forest_layers() const { return forest_layers_; }
    /// Halving steps below the forest level.
    int levels() const { return levels_; }
    std::size_t instance_count() const { return nodes_.size(); }
    const CatalogTree& tree() const { return *tree_; }

    /// Cells stored over all root-to-leaf structures.
    std::int64_t stored_cells() const {
        std::int64_t total = 0;
        for (const auto& n : nodes_) total += static_cast<std::int64_t>(n.ds.cell_count());
        return total;
    }

    /// Input rects over all root-to-leaf structures: n times the number of hierarchy levels.
    std::int64_t stored_inputs() const {
        std::int64_t total = 0;
        for (const auto& n : nodes_) total += n.ds.input_size();
        return total;
    }

    std::int64_t stored_entries() const {
        std::int64_t total = 0;
        for (const auto& n : nodes_) total += n.ds.stored_entries();
        return total;
    }

    /// Instances per hierarchy level, level 0 being the forest.
    std::vector<std::size_t> instances_per_level() const {
        std::vector<std::size_t> out(static_cast<std::size_t>(levels_) + 1, 0);
        for (const auto& n : nodes_) out[static_cast<std::size_t>(n.level)] += 1;
        return out;
    }

    /// No length check; callers that route by length use this directly.
    void answer(const std::vector<VertexId>& path, const Point& q, std::vector<Location>& out, WorkCounters& wc,
                MidTreeTrace* trace = nullptr) const {
        const SplitPath s = split_at_apex(*tree_, path);
        // Each half keeps only its own vertices: the extension above the second
        // half's top reaches the apex, which belongs to the first.
        for (const auto* half : {&s.first, &s.second}) {
            if (half->empty()) continue;
            Ctx ctx{q, out, wc, trace, {}};
            ctx.wanted.insert(half->begin(), half->end());
            descend_forest(*half, ctx);
        }
    }

    QueryAnswer query(const PathQuery& q, WorkCounters& wc, MidTreeTrace* trace = nullptr) const {
        check_path(tree_->graph(), q.path);
        const auto len = static_cast<double>(q.path.size());
        if (len < h1_ || len > h2_) {
            throw Error(ErrorCode::PathOutOfRegime, "|pi| = " + std::to_string(q.path.size()) + " outside [" +
                                                        std::to_string(h1_) + ", " + std::to_string(h2_) + "]");
        }
        QueryAnswer a;
        answer(q.path, q.q, a.located, wc, trace);
        return a;
    }

private:
    struct Node {
        VertexId root = 0;
        int layers = 0;
        int level = 0;
        bool leaf = true;
        int half = 0;
        std::int32_t top = -1;                               // T0
        std::vector<std::pair<VertexId, std::int32_t>> subs; // T_i by root vertex, sorted
        RootLeafDS ds;
    };

    struct Ctx {
        const Point& q;
        std::vector<Location>& out;
        WorkCounters& wc;
        MidTreeTrace* trace;
        std::unordered_set<VertexId> wanted;
        int* counter = nullptr;
    };

    std::int32_t build_node(VertexId root, int layers, int level, Rng& rng) {
        const auto idx = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
        levels_ = std::max(levels_, level);
        RootLeafDS ds(*tree_, root, layers, n_, rng);
        const bool leaf = layers <= h1_ || layers < 2;
        const int half = (layers + 1) / 2;
        std::int32_t top = -1;
        std::vector<std::pair<VertexId, std::int32_t>> subs;
        if (!leaf) {
            top = build_node(root, half, level + 1, rng);
            const int cut = tree_->depth(root) + half;
            for (VertexId v : ds.vertices()) {
                if (tree_->depth(v) == cut) subs.emplace_back(v, build_node(v, layers - half, level + 1, rng));
            }
            std::sort(subs.begin(), subs.end());
        }
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        n.root = root;
        n.layers = layers;
        n.level = level;
        n.leaf = leaf;
        n.half = half;
        n.top = top;
        n.subs = std::move(subs);
        n.ds = std::move(ds);
        return idx;
    }

    const Node& node(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }

    const Node& sub_of(const Node& n, VertexId v) const {
        const VertexId r = tree_->ancestor_at_depth(v, tree_->depth(n.root) + n.half);
        auto it = std::lower_bound(n.subs.begin(), n.subs.end(), std::make_pair(r, std::int32_t{-1}));
        return node(it->second);
    }

    int rel(const Node& n, VertexId v) const { return tree_->depth(v) - tree_->depth(n.root); }

    void rootleaf(const Node& n, VertexId deepest, Ctx& ctx) const {
        if (ctx.counter) ++*ctx.counter;
        n.ds.query(deepest, ctx.q, [&](VertexId v) { return ctx.wanted.count(v) != 0; }, ctx.out, ctx.wc);
    }

    void begin_anchored(Ctx& ctx, int& slot) const {
        slot = 0;
        ctx.counter = &slot;
    }

    void end_anchored(Ctx& ctx, const int& slot) const {
        if (ctx.trace) ctx.trace->per_anchored.push_back(slot);
        ctx.counter = nullptr;
    }

    /// A descending path (top first) in the forest: at most one cut between forest trees.
    void descend_forest(const std::vector<VertexId>& p, Ctx& ctx) const {
        const VertexId top = p.front();
        const VertexId bottom = p.back();
        const VertexId froot = tree_->ancestor_at_depth(top, tree_->depth(top) / forest_layers_ * forest_layers_);
        const Node& f = node(forest_index(froot));
        if (rel(f, bottom) < f.layers) {
            general(f, top, bottom, ctx);
            return;
        }
        const VertexId last = tree_->ancestor_at_depth(bottom, tree_->depth(f.root) + f.layers - 1);
        int a = 0;
        begin_anchored(ctx, a);
        bottom_anchored(f, top, last, ctx);
        end_anchored(ctx, a);
        const Node& g = node(forest_index(tree_->ancestor_at_depth(bottom, tree_->depth(f.root) + f.layers)));
        int b = 0;
        begin_anchored(ctx, b);
        top_anchored(g, bottom, ctx);
        end_anchored(ctx, b);
    }

    std::int32_t forest_index(VertexId root) const {
        const auto it = forest_.find(root);
        if (it == forest_.end()) throw Error(ErrorCode::InvalidQuery, "no forest tree rooted at " + std::to_string(root));
        return it->second;
    }

    /// Path top..bottom strictly inside n, anchored at neither end.
    void general(const Node& n, VertexId top, VertexId bottom, Ctx& ctx) const {
        if (n.leaf) {
            int a = 0;
            begin_anchored(ctx, a);
            rootleaf(n, bottom, ctx);
            end_anchored(ctx, a);
            return;
        }
        if (rel(n, bottom) < n.half) {
            general(node(n.top), top, bottom, ctx);
        } else if (rel(n, top) >= n.half) {
            general(sub_of(n, top), top, bottom, ctx);
        } else {
            const VertexId last = tree_->ancestor_at_depth(bottom, tree_->depth(n.root) + n.half - 1);
            int a = 0;
            begin_anchored(ctx, a);
            bottom_anchored(node(n.top), top, last, ctx);
            end_anchored(ctx, a);
            int b = 0;
            begin_anchored(ctx, b);
            top_anchored(sub_of(n, bottom), bottom, ctx);
            end_anchored(ctx, b);
        }
    }

    /// Path from n's root down to bottom.
    void top_anchored(const Node& n, VertexId bottom, Ctx& ctx) const {
        if (n.leaf) {
            rootleaf(n, bottom, ctx);
            return;
        }
        if (rel(n, bottom) < n.half) {
            top_anchored(node(n.top), bottom, ctx);
            return;
        }
        const VertexId last = tree_->ancestor_at_depth(bottom, tree_->depth(n.root) + n.half - 1);
        rootleaf(node(n.top), last, ctx);
        top_anchored(sub_of(n, bottom), bottom, ctx);
    }

    /// Path from top down to `bottom`, which lies on n's last layer.
    void bottom_anchored(const Node& n, VertexId top, VertexId bottom, Ctx& ctx) const {
        if (n.leaf) {
            rootleaf(n, bottom, ctx);
            return;
        }
        const Node& s = sub_of(n, bottom);
        if (rel(n, top) >= n.half) {
            bottom_anchored(s, top, bottom, ctx);
            return;
        }
        const VertexId last = tree_->ancestor_at_depth(bottom, tree_->depth(n.root) + n.half - 1);
        bottom_anchored(node(n.top), top, last, ctx);
        rootleaf(s, bottom, ctx);
    }

    const CatalogTree* tree_ = nullptr;
    double h1_ = 0;
    double h2_ = 0;
    std::int64_t n_ = 0;
    int forest_layers_ = 1;
    int levels_ = 0;
    std::vector<Node> nodes_;
    std::unordered_map<VertexId, std::int32_t> forest_;
};

/// The tree must outlive the structure.
inline MidTreeDS build_midtree_general(const CatalogTree& t, double h1, double h2, std::uint64_t seed = 1) {
    return MidTreeDS(t, h1, h2, seed);
}

inline QueryAnswer query_midtree_general(const MidTreeDS& ds, const PathQuery& q, WorkCounters& wc,
                                         MidTreeTrace* trace = nullptr) {
    return ds.query(q, wc, trace);
}

} // namespace ofc
