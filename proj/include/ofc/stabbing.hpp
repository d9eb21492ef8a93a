#pragma once

// Rectangle stabbing in two and three dimensions.
//
// Stab2D is a segment tree over x. Each node keeps the y-intervals of the
// rects stored there as filtering-search windows: the y-line is cut into
// windows whose interval list is at most kWindowSlack * max(1, depth) long, so
// scanning the window that holds q.y costs O(1 + output). Window boundaries
// are fractionally cascaded down the tree, so after one binary search at the
// root every level costs O(1).

#include "ofc/config.hpp"
#include "ofc/counters.hpp"
#include "ofc/error.hpp"
#include "ofc/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace ofc {

struct StabItem {
    Coord xlo = 0;
    Coord xhi = 0;
    Coord ylo = 0;
    Coord yhi = 0;
    std::uint64_t key = 0;
};

inline StabItem stab_item(const Rect& r, std::uint64_t key) { return {r.xlo, r.xhi, r.ylo, r.yhi, key}; }

class Stab2D {
public:
    Stab2D() = default;

    explicit Stab2D(std::vector<StabItem> items) : items_(std::move(items)) { build(); }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    /// Stored entries: window list entries plus cascaded catalog entries plus nodes.
    std::int64_t stored_entries() const {
        return static_cast<std::int64_t>(entries_.size() + aug_key_.size() + nodes_.size());
    }

    const StabItem& item(std::uint32_t i) const { return items_[i]; }

    /// Appends the keys of all items containing p.
    template <class Out>
    void query(const Point& p, Out&& out, WorkCounters& wc) const {
        wc.stab_nodes_visited += 1;
        if (nodes_.empty() || p.x < xs_.front() || p.x >= xs_.back()) return;

        const Node* node = &nodes_[0];
        // Root catalog search.
        std::size_t pos;
        {
            auto first = aug_key_.begin() + node->aug_begin;
            auto last = aug_key_.begin() + node->aug_end;
            std::size_t len = static_cast<std::size_t>(last - first);
            auto it = std::upper_bound(first, last, p.y);
            pos = static_cast<std::size_t>(it - aug_key_.begin()) - 1;
            wc.stab_nodes_visited += ceil_log2(static_cast<std::int64_t>(len) + 1);
        }
        while (true) {
            wc.stab_nodes_visited += 1;
            const std::uint32_t w = aug_own_[pos];
            for (std::uint32_t e = win_entry_begin_[w]; e < win_entry_begin_[w + 1]; ++e) {
                const StabItem& it = items_[entries_[e]];
                wc.stab_nodes_visited += 1;
                if (it.ylo <= p.y && p.y < it.yhi) out(it.key);
            }
            if (node->left < 0) break;
            const bool go_left = p.x < xs_[node->mid];
            const std::int32_t child_idx = go_left ? node->left : node->right;
            std::size_t cpos = go_left ? aug_down_left_[pos] : aug_down_right_[pos];
            const Node& child = nodes_[static_cast<std::size_t>(child_idx)];
            while (cpos + 1 < child.aug_end && aug_key_[cpos + 1] <= p.y) {
                ++cpos;
                wc.stab_nodes_visited += 1;
            }
            node = &child;
            pos = cpos;
        }
    }

    std::vector<std::uint64_t> query(const Point& p, WorkCounters& wc) const {
        std::vector<std::uint64_t> out;
        query(p, [&](std::uint64_t k) { out.push_back(k); }, wc);
        return out;
    }

    /// Number of segment-tree levels on the search path for x (tests, benchmarks).
    int depth() const { return depth_; }

private:
    struct Node {
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint32_t lo = 0; // leaf range [lo, hi) over elementary x-intervals
        std::uint32_t hi = 0;
        std::uint32_t mid = 0;
        std::uint32_t aug_begin = 0; // absolute offsets into aug_* arrays
        std::uint32_t aug_end = 0;
    };

    std::int32_t build_node(std::uint32_t lo, std::uint32_t hi, int level) {
        const auto idx = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(Node{});
        nodes_[idx].lo = lo;
        nodes_[idx].hi = hi;
        depth_ = std::max(depth_, level + 1);
        if (hi - lo > 1) {
            const std::uint32_t mid = lo + (hi - lo) / 2;
            nodes_[idx].mid = mid;
            const std::int32_t l = build_node(lo, mid, level + 1);
            const std::int32_t r = build_node(mid, hi, level + 1);
            nodes_[idx].left = l;
            nodes_[idx].right = r;
        }
        return idx;
    }

    void insert(std::int32_t v, std::uint32_t a, std::uint32_t b, std::uint32_t item,
                std::vector<std::vector<std::uint32_t>>& at) {
        const Node& n = nodes_[static_cast<std::size_t>(v)];
        if (b <= n.lo || n.hi <= a) return;
        if (a <= n.lo && n.hi <= b) {
            at[static_cast<std::size_t>(v)].push_back(item);
            return;
        }
        insert(n.left, a, b, item, at);
        insert(n.right, a, b, item, at);
    }

    /// Filtering-search windows for one node. Returns window starts; appends lists.
    std::vector<Coord> build_windows(std::vector<std::uint32_t>& ids) {
        std::vector<Coord> starts{kCoordMin};
        if (ids.empty()) {
            win_entry_begin_.push_back(static_cast<std::uint32_t>(entries_.size()));
            return starts;
        }
        std::vector<Coord> ends;
        ends.reserve(2 * ids.size());
        for (auto i : ids) {
            ends.push_back(items_[i].ylo);
            ends.push_back(items_[i].yhi);
        }
        std::sort(ends.begin(), ends.end());
        ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
        const std::size_t pieces = ends.size() + 1; // piece k starts at ends[k-1]
        std::vector<std::int64_t> delta(pieces + 1, 0);
        std::vector<std::int64_t> starts_at(pieces, 0);
        auto rank = [&](Coord y) {
            return static_cast<std::size_t>(std::lower_bound(ends.begin(), ends.end(), y) - ends.begin()) + 1;
        };
        for (auto i : ids) {
            const std::size_t a = rank(items_[i].ylo);
            const std::size_t b = rank(items_[i].yhi);
            delta[a] += 1;
            delta[b] -= 1;
            starts_at[a] += 1;
        }
        std::vector<std::int64_t> depth(pieces, 0);
        std::int64_t run = 0;
        for (std::size_t k = 0; k < pieces; ++k) {
            run += delta[k];
            depth[k] = run;
        }

        // Greedy windows over pieces.
        std::vector<std::size_t> first_piece{0};
        std::int64_t list = depth[0];
        std::int64_t min_depth = depth[0];
        for (std::size_t k = 1; k < pieces; ++k) {
            const std::int64_t next_list = list + starts_at[k];
            const std::int64_t next_min = std::min(min_depth, depth[k]);
            if (next_list <= config::kWindowSlack * std::max<std::int64_t>(1, next_min)) {
                list = next_list;
                min_depth = next_min;
            } else {
                first_piece.push_back(k);
                list = depth[k];
                min_depth = depth[k];
            }
        }
        for (std::size_t w = 1; w < first_piece.size(); ++w) starts.push_back(ends[first_piece[w] - 1]);

        // Lists: items with ylo < window end and yhi > window start.
        std::sort(ids.begin(), ids.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return items_[a].ylo < items_[b].ylo; });
        std::vector<std::uint32_t> active;
        std::size_t next = 0;
        for (std::size_t w = 0; w < starts.size(); ++w) {
            const Coord ys = starts[w];
            const Coord ye = w + 1 < starts.size() ? starts[w + 1] : kCoordMax;
            while (next < ids.size() && items_[ids[next]].ylo < ye) active.push_back(ids[next++]);
            win_entry_begin_.push_back(static_cast<std::uint32_t>(entries_.size()));
            std::vector<std::uint32_t> keep;
            for (auto i : active) {
                if (items_[i].yhi > ys) {
                    entries_.push_back(i);
                    if (items_[i].yhi > ye || ye == kCoordMax) keep.push_back(i);
                }
            }
            active.swap(keep);
        }
        return starts;
    }

    /// Post-order: own windows, then the cascaded catalog merging every other
    /// element of each child's catalog.
    void cascade(std::int32_t v, std::vector<std::vector<std::uint32_t>>& at) {
        Node& n0 = nodes_[static_cast<std::size_t>(v)];
        if (n0.left >= 0) {
            cascade(n0.left, at);
            cascade(n0.right, at);
        }
        const std::uint32_t own_base = static_cast<std::uint32_t>(win_entry_begin_.size());
        std::vector<Coord> own = build_windows(at[static_cast<std::size_t>(v)]);
        at[static_cast<std::size_t>(v)].clear();
        at[static_cast<std::size_t>(v)].shrink_to_fit();

        Node& n = nodes_[static_cast<std::size_t>(v)];
        std::vector<Coord> keys = own;
        std::vector<Coord> lsample;
        std::vector<Coord> rsample;
        if (n.left >= 0) {
            const Node& l = nodes_[static_cast<std::size_t>(n.left)];
            const Node& r = nodes_[static_cast<std::size_t>(n.right)];
            for (std::uint32_t i = l.aug_begin + 1; i < l.aug_end; i += 2) lsample.push_back(aug_key_[i]);
            for (std::uint32_t i = r.aug_begin + 1; i < r.aug_end; i += 2) rsample.push_back(aug_key_[i]);
            keys.insert(keys.end(), lsample.begin(), lsample.end());
            keys.insert(keys.end(), rsample.begin(), rsample.end());
            std::sort(keys.begin(), keys.end());
        }
        n.aug_begin = static_cast<std::uint32_t>(aug_key_.size());
        std::size_t o = 0;
        std::uint32_t li = 0;
        std::uint32_t ri = 0;
        const Node* l = n.left >= 0 ? &nodes_[static_cast<std::size_t>(n.left)] : nullptr;
        const Node* r = n.left >= 0 ? &nodes_[static_cast<std::size_t>(n.right)] : nullptr;
        if (l) {
            li = l->aug_begin;
            ri = r->aug_begin;
        }
        for (Coord k : keys) {
            while (o + 1 < own.size() && own[o + 1] <= k) ++o;
            aug_key_.push_back(k);
            aug_own_.push_back(own_base + static_cast<std::uint32_t>(o));
            if (l) {
                while (li + 1 < l->aug_end && aug_key_[li + 1] <= k) ++li;
                while (ri + 1 < r->aug_end && aug_key_[ri + 1] <= k) ++ri;
            }
            aug_down_left_.push_back(li);
            aug_down_right_.push_back(ri);
        }
        n.aug_end = static_cast<std::uint32_t>(aug_key_.size());
    }

    void build() {
        nodes_.clear();
        if (items_.empty()) return;
        xs_.reserve(2 * items_.size());
        for (const auto& it : items_) {
            if (!(it.xlo < it.xhi && it.ylo < it.yhi)) {
                throw Error(ErrorCode::InvalidParameter, "empty rectangle in stabbing input");
            }
            xs_.push_back(it.xlo);
            xs_.push_back(it.xhi);
        }
        std::sort(xs_.begin(), xs_.end());
        xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
        const auto leaves = static_cast<std::uint32_t>(xs_.size() - 1);
        build_node(0, leaves, 0);
        std::vector<std::vector<std::uint32_t>> at(nodes_.size());
        for (std::uint32_t i = 0; i < items_.size(); ++i) {
            auto a = static_cast<std::uint32_t>(std::lower_bound(xs_.begin(), xs_.end(), items_[i].xlo) - xs_.begin());
            auto b = static_cast<std::uint32_t>(std::lower_bound(xs_.begin(), xs_.end(), items_[i].xhi) - xs_.begin());
            insert(0, a, b, i, at);
        }
        cascade(0, at);
        win_entry_begin_.push_back(static_cast<std::uint32_t>(entries_.size()));
    }

    std::vector<StabItem> items_;
    std::vector<Coord> xs_;
    std::vector<Node> nodes_;
    int depth_ = 0;
    std::vector<std::uint32_t> entries_;         // flat window lists (item indices)
    std::vector<std::uint32_t> win_entry_begin_; // per window, into entries_; one extra at the end
    std::vector<Coord> aug_key_;
    std::vector<std::uint32_t> aug_own_;
    std::vector<std::uint32_t> aug_down_left_;
    std::vector<std::uint32_t> aug_down_right_;
};

inline Stab2D stab2d_build(std::vector<StabItem> items) { return Stab2D(std::move(items)); }

inline std::vector<std::uint64_t> stab2d_query(const Stab2D& s, const Point& p, WorkCounters& wc) {
    return s.query(p, wc);
}

struct Point3 {
    Coord x = 0;
    Coord y = 0;
    Coord z = 0;
};

/// Half-open 3D box.
struct Rect3 {
    RectId id = 0;
    Coord xlo = 0, xhi = 0, ylo = 0, yhi = 0, zlo = 0, zhi = 0;

    bool valid() const { return xlo < xhi && ylo < yhi && zlo < zhi; }
    bool contains(const Point3& p) const {
        return xlo <= p.x && p.x < xhi && ylo <= p.y && p.y < yhi && zlo <= p.z && p.z < zhi;
    }
};

/// Range tree over z with fan-out H. Node v with children c_1..c_H keeps, for
/// every child c_i, a Stab2D of the boxes stored at v whose z-range covers c_i
/// but not all of v. A query walks one root-to-leaf z path and queries one
/// Stab2D per node.
class Stab3D {
public:
    Stab3D() = default;

    Stab3D(const std::vector<Rect3>& boxes, int fanout) : fanout_(fanout) {
        if (fanout < 2) throw Error(ErrorCode::InvalidFanout, "H = " + std::to_string(fanout));
        build(boxes);
    }

    int fanout() const { return fanout_; }
    std::size_t size() const { return count_; }

    std::int64_t stored_entries() const {
        std::int64_t total = spanning_.stored_entries();
        for (const auto& n : nodes_) {
            for (const auto& s : n.per_child) total += s.stored_entries();
            total += 1;
        }
        return total;
    }

    /// Internal range-tree nodes on the z path of z (0 if z falls outside).
    int z_path_length(Coord z) const {
        if (nodes_.empty() || z < zs_.front() || z >= zs_.back()) return 0;
        const auto slab = slab_of(z);
        int len = 0;
        std::int32_t v = 0;
        while (v >= 0) {
            ++len;
            const Node& n = nodes_[static_cast<std::size_t>(v)];
            v = n.child_node[child_index(n, slab)];
        }
        return len;
    }

    template <class Out>
    void query(const Point3& p, Out&& out, WorkCounters& wc) const {
        wc.stab_nodes_visited += 1;
        if (nodes_.empty() || p.z < zs_.front() || p.z >= zs_.back()) return;
        const Point q{p.x, p.y};
        spanning_.query(q, out, wc);
        const auto slab = slab_of(p.z);
        wc.stab_nodes_visited += ceil_log2(static_cast<std::int64_t>(zs_.size()));
        std::int32_t v = 0;
        while (v >= 0) {
            wc.stab_nodes_visited += 1;
            const Node& n = nodes_[static_cast<std::size_t>(v)];
            const std::size_t c = child_index(n, slab);
            n.per_child[c].query(q, out, wc);
            v = n.child_node[c];
        }
    }

    std::vector<std::uint64_t> query(const Point3& p, WorkCounters& wc) const {
        std::vector<std::uint64_t> out;
        query(p, [&](std::uint64_t k) { out.push_back(k); }, wc);
        return out;
    }

private:
    struct Node {
        std::uint32_t lo = 0; // slab range [lo, hi)
        std::uint32_t hi = 0;
        std::vector<std::uint32_t> bounds;     // child c covers [bounds[c], bounds[c+1])
        std::vector<std::int32_t> child_node;  // -1 for single-slab children
        std::vector<Stab2D> per_child;
    };

    std::uint32_t slab_of(Coord z) const {
        return static_cast<std::uint32_t>(std::upper_bound(zs_.begin(), zs_.end(), z) - zs_.begin()) - 1;
    }

    static std::size_t child_index(const Node& n, std::uint32_t slab) {
        return static_cast<std::size_t>(std::upper_bound(n.bounds.begin(), n.bounds.end(), slab) -
                                        n.bounds.begin()) - 1;
    }

    std::int32_t build_node(std::uint32_t lo, std::uint32_t hi) {
        const auto idx = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(Node{});
        const std::uint32_t span = hi - lo;
        const std::uint32_t parts = std::min<std::uint32_t>(span, static_cast<std::uint32_t>(fanout_));
        std::vector<std::uint32_t> bounds;
        for (std::uint32_t c = 0; c <= parts; ++c) {
            bounds.push_back(lo + static_cast<std::uint32_t>(static_cast<std::uint64_t>(span) * c / parts));
        }
        std::vector<std::int32_t> kids(parts, -1);
        for (std::uint32_t c = 0; c < parts; ++c) {
            if (bounds[c + 1] - bounds[c] > 1) kids[c] = build_node(bounds[c], bounds[c + 1]);
        }
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        n.lo = lo;
        n.hi = hi;
        n.bounds = std::move(bounds);
        n.child_node = std::move(kids);
        return idx;
    }

    void insert(std::int32_t v, std::uint32_t a, std::uint32_t b, const StabItem& item,
                std::vector<std::vector<std::vector<StabItem>>>& pending) {
        const Node& n = nodes_[static_cast<std::size_t>(v)];
        for (std::size_t c = 0; c + 1 < n.bounds.size(); ++c) {
            const std::uint32_t cl = n.bounds[c];
            const std::uint32_t cr = n.bounds[c + 1];
            if (b <= cl || cr <= a) continue;
            if (a <= cl && cr <= b) {
                pending[static_cast<std::size_t>(v)][c].push_back(item);
            } else {
                insert(n.child_node[c], a, b, item, pending);
            }
        }
    }

    void build(const std::vector<Rect3>& boxes) {
        count_ = boxes.size();
        if (boxes.empty()) return;
        for (const auto& b : boxes) {
            if (!b.valid()) throw Error(ErrorCode::InvalidParameter, "empty box in stabbing input");
            zs_.push_back(b.zlo);
            zs_.push_back(b.zhi);
        }
        std::sort(zs_.begin(), zs_.end());
        zs_.erase(std::unique(zs_.begin(), zs_.end()), zs_.end());
        const auto slabs = static_cast<std::uint32_t>(zs_.size() - 1);
        build_node(0, slabs);
        std::vector<std::vector<std::vector<StabItem>>> pending(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) pending[i].resize(nodes_[i].child_node.size());
        std::vector<StabItem> spanning;
        for (const auto& b : boxes) {
            const StabItem item{b.xlo, b.xhi, b.ylo, b.yhi, static_cast<std::uint64_t>(b.id)};
            auto a = static_cast<std::uint32_t>(std::lower_bound(zs_.begin(), zs_.end(), b.zlo) - zs_.begin());
            auto e = static_cast<std::uint32_t>(std::lower_bound(zs_.begin(), zs_.end(), b.zhi) - zs_.begin());
            if (a == 0 && e == slabs && slabs > 1) {
                spanning.push_back(item);
            } else {
                insert(0, a, e, item, pending);
            }
        }
        spanning_ = Stab2D(std::move(spanning));
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            nodes_[i].per_child.reserve(pending[i].size());
            for (auto& items : pending[i]) nodes_[i].per_child.emplace_back(std::move(items));
        }
    }

    int fanout_ = 2;
    std::size_t count_ = 0;
    std::vector<Coord> zs_;
    std::vector<Node> nodes_;
    Stab2D spanning_;
};

inline Stab3D stab3d_build(const std::vector<Rect3>& boxes, int fanout) { return Stab3D(boxes, fanout); }

inline std::vector<std::uint64_t> stab3d_query(const Stab3D& s, const Point3& p, WorkCounters& wc) {
    return s.query(p, wc);
}

} // namespace ofc
