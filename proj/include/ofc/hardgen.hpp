#pragma once

// Adversarial catalog trees built from 3D box families. Every (class, group)
// pair is one box shape [1/K^j x K^j 2^e V x 1/2^e]; isometric copies of it tile
// the unit cube. A tree layer holds one shape: its 2^e vertices are the z-slabs
// of depth 1/2^e, each carrying the xy-projection of the boxes in its slab.
//
// The cube is an integer grid: side 2^L in x and y, 2^Z in z. V is rounded to
// the dyadic 2^-m with m the least value for which t * 2^m >= n.

#include "ofc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace ofc {

enum class LBRegime { Short, Mid };

struct LBLayer {
    int cls = -1;   // -1 for padding above the construction
    int group = -1;
    int exponent = 0;  // 2^exponent vertices, boxes of depth 1/2^exponent
    int width_bits = 0;  // 2^width_bits columns
    int height_bits = 0; // 2^height_bits rows
};

struct LBParams {
    LBRegime regime = LBRegime::Short;
    std::int64_t n = 0;
    int h = 0;
    int r = 1;
    std::int64_t K = 2;
    int m = 0;         // V = 2^-m
    int classes = 0;
    int groups = 0;    // per class
    int unary = 0;     // mid regime: one-child layers per class
    int t = 0;         // layers carrying boxes; a lifted point lies in exactly t boxes
    int padding = 0;   // single-rect layers above the construction
    int L = 0;
    int Z = 0;
    std::vector<LBLayer> layers; // padding first
};

struct Box3 {
    Coord xlo = 0, xhi = 0, ylo = 0, yhi = 0, zlo = 0, zhi = 0;

    bool contains(Coord x, Coord y, Coord z) const {
        return xlo <= x && x < xhi && ylo <= y && y < yhi && zlo <= z && z < zhi;
    }
    __int128 volume() const {
        return static_cast<__int128>(xhi - xlo) * (yhi - ylo) * (zhi - zlo);
    }
};

inline __int128 intersection_volume(const Box3& a, const Box3& b) {
    const Coord dx = std::min(a.xhi, b.xhi) - std::max(a.xlo, b.xlo);
    const Coord dy = std::min(a.yhi, b.yhi) - std::max(a.ylo, b.ylo);
    const Coord dz = std::min(a.zhi, b.zhi) - std::max(a.zlo, b.zlo);
    if (dx <= 0 || dy <= 0 || dz <= 0) return 0;
    return static_cast<__int128>(dx) * dy * dz;
}

struct LBRect {
    VertexId vertex = 0;
    RectId rect = 0;
    int cls = -1;
    int group = -1;
    int layer = 0;
    Box3 box;
};

struct LBInstance {
    LBParams params;
    CatalogTree tree;
    std::vector<LBRect> witness;      // by (vertex, position in its tiling)
    std::vector<int> layer_of;        // by vertex
    std::vector<std::size_t> first;   // witness offset per vertex

    /// z grid coordinate inside a leaf's slab.
    Coord leaf_z(VertexId leaf) const { return witness[first[leaf]].box.zlo; }

    /// Boxes with cls >= 0 that contain the lifted point (linear scan).
    int stabbing_count(const Point& p, Coord z) const {
        int count = 0;
        for (const auto& w : witness) count += w.cls >= 0 && w.box.contains(p.x, p.y, z);
        return count;
    }
};

namespace detail {

inline void fill_dims(LBParams& p) {
    std::int64_t m = 0;
    while (static_cast<std::int64_t>(p.t) * (std::int64_t{1} << m) < p.n) ++m;
    p.m = static_cast<int>(m);
    p.L = p.m;
    p.Z = 0;
    for (auto& l : p.layers) {
        if (l.cls < 0) continue;
        l.height_bits = p.m - l.width_bits - l.exponent;
        if (l.height_bits < 0) {
            throw Error(ErrorCode::InfeasibleParams,
                        "box height K^j 2^e V exceeds 1 at class " + std::to_string(l.cls) + ", group " +
                            std::to_string(l.group) + " (n = " + std::to_string(p.n) + ", h = " + std::to_string(p.h) +
                            ", r = " + std::to_string(p.r) + ")");
        }
        p.L = std::max(p.L, l.width_bits);
        p.Z = std::max(p.Z, l.exponent);
    }
    if (p.L > 40 || p.Z > 40) throw Error(ErrorCode::InfeasibleParams, "grid too fine for 64-bit coordinates");
}

} // namespace detail

/// Short regime: sqrt(log n) <= h <= (log n)/2, r = ceil(sqrt(log n)/4), K = 2^r,
/// layer s = i*r + j holds class i, group j.
inline LBParams lb_short_params(std::int64_t n, int h) {
    const double lg = log2_real(static_cast<double>(n));
    if (n < 2 || h < std::sqrt(lg) || h > lg / 2.0) {
        throw Error(ErrorCode::InfeasibleParams, "short regime needs sqrt(log n) <= h <= (log n)/2, got n = " +
                                                     std::to_string(n) + ", h = " + std::to_string(h));
    }
    LBParams p;
    p.regime = LBRegime::Short;
    p.n = n;
    p.h = h;
    p.r = std::max(1, static_cast<int>(std::ceil(std::sqrt(lg) / 4.0)));
    p.K = std::int64_t{1} << p.r;
    p.groups = p.r;
    p.classes = (h + p.r - 1) / p.r;
    p.t = h;
    for (int s = 0; s < h; ++s) {
        const int j = s % p.r;
        p.layers.push_back(LBLayer{s / p.r, j, s, p.r * j, 0});
    }
    detail::fill_dims(p);
    return p;
}

/// Mid regime: (log n)/2 < h <= (log^2 n)/2, r = ceil(log n/(4 sqrt h)),
/// floor(sqrt(h)/2) classes of r branching groups then floor(sqrt h) one-child
/// groups. The construction has t = classes*(r + unary) <= h layers; the rest
/// is padding above it.
inline LBParams lb_mid_params(std::int64_t n, int h) {
    const double lg = log2_real(static_cast<double>(n));
    if (n < 2 || h <= lg / 2.0 || h > lg * lg / 2.0) {
        throw Error(ErrorCode::InfeasibleParams, "mid regime needs (log n)/2 < h <= (log^2 n)/2, got n = " +
                                                     std::to_string(n) + ", h = " + std::to_string(h));
    }
    LBParams p;
    p.regime = LBRegime::Mid;
    p.n = n;
    p.h = h;
    const double root = std::sqrt(static_cast<double>(h));
    p.r = std::max(1, static_cast<int>(std::ceil(lg / (4.0 * root))));
    p.K = std::int64_t{1} << p.r;
    p.classes = std::max(1, static_cast<int>(std::floor(root / 2.0)));
    p.unary = std::max(1, static_cast<int>(std::floor(root)));
    p.groups = p.r + p.unary;
    p.t = p.classes * p.groups;
    if (p.t > h) {
        throw Error(ErrorCode::InfeasibleParams, "construction needs " + std::to_string(p.t) + " layers > h = " +
                                                     std::to_string(h));
    }
    p.padding = h - p.t;
    for (int k = 0; k < p.padding; ++k) p.layers.push_back(LBLayer{});
    for (int i = 0; i < p.classes; ++i) {
        for (int j = 0; j < p.groups; ++j) {
            p.layers.push_back(LBLayer{i, j, i * p.r + std::min(j, p.r), p.r * j, 0});
        }
    }
    detail::fill_dims(p);
    return p;
}

/// Builds the tree and tilings for already validated params.
inline LBInstance lb_build(const LBParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LBInstance inst;
    inst.params = p;
    const Coord side = Coord{1} << p.L;
    const Rect bbox{0, 0, side, 0, side};

    std::vector<CatalogVertex> vs;
    std::vector<std::vector<LBRect>> per_vertex;
    std::vector<VertexId> prev;
    for (std::size_t li = 0; li < p.layers.size(); ++li) {
        const LBLayer& l = p.layers[li];
        const std::int64_t count = std::int64_t{1} << l.exponent;
        const Coord zdepth = Coord{1} << (p.Z - l.exponent);
        std::vector<VertexId> cur;
        for (std::int64_t k = 0; k < count; ++k) {
            const auto v = static_cast<VertexId>(vs.size());
            cur.push_back(v);
            CatalogVertex cv;
            cv.id = v;
            cv.tiling.bbox = bbox;
            std::vector<LBRect> boxes;
            const Coord zlo = k * zdepth, zhi = zlo + zdepth;
            if (l.cls < 0) {
                boxes.push_back(LBRect{v, 0, -1, -1, static_cast<int>(li), Box3{0, side, 0, side, zlo, zhi}});
            } else {
                const Coord w = side >> l.width_bits, row = side >> l.height_bits;
                for (Coord x = 0; x < side; x += w) {
                    for (Coord y = 0; y < side; y += row) {
                        boxes.push_back(LBRect{v, 0, l.cls, l.group, static_cast<int>(li),
                                               Box3{x, x + w, y, y + row, zlo, zhi}});
                    }
                }
            }
            std::vector<RectId> ids(boxes.size());
            std::iota(ids.begin(), ids.end(), RectId{0});
            std::shuffle(ids.begin(), ids.end(), rng);
            for (std::size_t b = 0; b < boxes.size(); ++b) {
                boxes[b].rect = ids[b];
                const Box3& x = boxes[b].box;
                cv.tiling.rects.push_back(Rect{ids[b], x.xlo, x.xhi, x.ylo, x.yhi});
            }
            vs.push_back(std::move(cv));
            per_vertex.push_back(std::move(boxes));
            inst.layer_of.push_back(static_cast<int>(li));
        }
        if (!prev.empty()) {
            const bool doubling = cur.size() == 2 * prev.size();
            for (std::size_t k = 0; k < cur.size(); ++k) {
                const VertexId parent = prev[doubling ? k / 2 : k];
                vs[parent].adj.push_back(cur[k]);
                vs[cur[k]].adj.push_back(parent);
            }
        }
        prev = std::move(cur);
    }
    inst.tree = CatalogTree(CatalogGraph(std::move(vs), 3), 0);
    for (auto& boxes : per_vertex) {
        inst.first.push_back(inst.witness.size());
        inst.witness.insert(inst.witness.end(), boxes.begin(), boxes.end());
    }
    return inst;
}

inline LBInstance gen_short_tree_instance(std::int64_t n, int h, std::uint64_t seed = 1) {
    return lb_build(lb_short_params(n, h), seed);
}

inline LBInstance gen_mid_tree_instance(std::int64_t n, int h, std::uint64_t seed = 1) {
    return lb_build(lb_mid_params(n, h), seed);
}

} // namespace ofc
