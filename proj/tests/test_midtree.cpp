#include "ofc/midtree.hpp"
#include "ofc/oracle.hpp"
#include "ofc/random_catalog.hpp"
#include "ofc/rootleaf.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace ofc;

namespace {

WorkCounters& wc_dummy() {
    static WorkCounters wc;
    return wc;
}

double lg(const CatalogTree& t) { return std::log2(static_cast<double>(t.complexity())); }

} // namespace

TEST(ZRanges, SingleLeaf) {
    std::mt19937_64 rng(1);
    auto t = random_tree_catalog(1, 4, 0, rng);
    EXPECT_EQ(assign_z_ranges(t)[0], (ZRange{0, 1}));
}

TEST(ZRanges, CompleteTreeFourLeaves) {
    std::mt19937_64 rng(2);
    auto t = complete_binary_catalog(3, 4, rng);
    auto z = assign_z_ranges(t);
    EXPECT_EQ(z[3], (ZRange{0, 1}));
    EXPECT_EQ(z[4], (ZRange{1, 2}));
    EXPECT_EQ(z[5], (ZRange{2, 3}));
    EXPECT_EQ(z[6], (ZRange{3, 4}));
    EXPECT_EQ(z[0], (ZRange{0, 4}));
}

TEST(ZRanges, ParentIsDisjointUnionOfChildren) {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 50; ++round) {
        // 31 vertices in a binary tree with 16 leaves is forced; use random shapes instead.
        auto t = random_tree_catalog(40, 2, 6 + static_cast<int>(rng() % 20), rng);
        auto z = assign_z_ranges(t);
        Coord leaves = 0;
        for (VertexId v = 0; v < t.size(); ++v) {
            if (t.is_leaf(v)) {
                ++leaves;
                EXPECT_EQ(z[v].hi - z[v].lo, 1);
                continue;
            }
            Coord at = z[v].lo;
            for (VertexId c : t.children(v)) {
                EXPECT_EQ(z[c].lo, at);
                at = z[c].hi;
            }
            EXPECT_EQ(at, z[v].hi);
        }
        EXPECT_EQ(z[t.root()], (ZRange{0, leaves}));
    }
}

TEST(RootLeaf, ParameterFormula) {
    // n = 2^20, h = 2^10: r = 2^ceil(20/32) = 2, H = max(2, floor(2/19)) = 2.
    auto p = rootleaf_params(std::int64_t{1} << 20, 1 << 10);
    EXPECT_EQ(p.r, 2);
    EXPECT_EQ(p.fanout, 2);
    // n = 2^14, h = 16: r = 2^ceil(14/4) = 16, H = floor(16/10) = 1 -> 2.
    auto q = rootleaf_params(std::int64_t{1} << 14, 16);
    EXPECT_EQ(q.r, 16);
    EXPECT_EQ(q.fanout, 2);
    // n = 2^20, h = 4: r = 2^10, H = floor(1024/10) = 102.
    EXPECT_EQ(rootleaf_params(std::int64_t{1} << 20, 4).fanout, 102);
}

TEST(RootLeaf, RootOnly) {
    std::mt19937_64 rng(4);
    auto t = random_tree_catalog(1, 64, 0, rng);
    RootLeafDS ds = build_midtree_rootleaf(t);
    EXPECT_GE(ds.cell_count(), 1u);
    WorkCounters wc;
    const Point q{7, 7};
    EXPECT_EQ(query_midtree_rootleaf(ds, t, PathQuery{q, {0}}, wc), oracle_query(t, q, {0}));
}

TEST(RootLeaf, RegimeAndShapeErrors) {
    std::mt19937_64 rng(5);
    auto low = random_tree_catalog(32, 128, 6, rng); // log n = 12, height 6 <= 6
    EXPECT_THROW(build_midtree_rootleaf(low), Error);
    auto t = random_tree_catalog(64, 64, 14, rng);
    RootLeafDS ds = build_midtree_rootleaf(t);
    WorkCounters wc;
    try {
        query_midtree_rootleaf(ds, t, PathQuery{Point{1, 1}, {0, 1}}, wc);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotRootToLeaf);
    }
}

TEST(RootLeaf, RandomRootToLeafMatchesOracle) {
    std::mt19937_64 rng(6);
    auto t = random_tree_catalog(128, 128, 14, rng); // n = 2^14, height = log n
    RootLeafDS ds = build_midtree_rootleaf(t);
    const Rect bbox = t.tiling(0).bbox;
    for (int i = 0; i < 100; ++i) {
        PathQuery q{random_point(bbox, rng), random_root_to_leaf(t, rng)};
        WorkCounters wc;
        ASSERT_EQ(query_midtree_rootleaf(ds, t, q, wc), oracle_query(t, q.q, q.path));
        EXPECT_EQ(wc.structures_queried, 1);
    }
}

TEST(MidTree, InvalidHeights) {
    std::mt19937_64 rng(7);
    auto t = random_tree_catalog(16, 4, 8, rng);
    try {
        build_midtree_general(t, 8, 8);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidHeights);
    }
}

TEST(MidTree, HalfRatioIsOneLevel) {
    std::mt19937_64 rng(8);
    auto t = random_tree_catalog(200, 8, 30, rng);
    EXPECT_EQ(build_midtree_general(t, 8, 16).levels(), 1);
}

TEST(MidTree, InstanceCountMatchesDirectCount) {
    std::mt19937_64 rng(9);
    auto t = random_tree_catalog(120, 8, 16, rng);
    MidTreeDS ds = build_midtree_general(t, 4, 16);
    EXPECT_EQ(ds.levels(), 2);
    // Direct count: a tree with L layers rooted at r counts itself, and when
    // L > 4 also its top half and one tree per vertex at relative depth ceil(L/2).
    std::function<std::size_t(VertexId, int)> count = [&](VertexId r, int layers) -> std::size_t {
        std::size_t c = 1;
        if (layers <= 4) return c;
        const int half = (layers + 1) / 2;
        c += count(r, half);
        for (VertexId v = 0; v < t.size(); ++v) {
            if (t.depth(v) == t.depth(r) + half && t.is_ancestor(r, v)) c += count(v, layers - half);
        }
        return c;
    };
    std::size_t want = 0;
    for (VertexId v = 0; v < t.size(); ++v) {
        if (t.depth(v) % 16 == 0) want += count(v, 16);
    }
    EXPECT_EQ(ds.instance_count(), want);
}

TEST(MidTree, PathInsideOneLeafTree) {
    std::mt19937_64 rng(10);
    auto t = random_tree_catalog(200, 8, 40, rng);
    MidTreeDS ds = build_midtree_general(t, 4, 16);
    // A 3-vertex path strictly inside the top 4 layers: one root-to-leaf query.
    std::vector<VertexId> p{1, 0};
    ASSERT_TRUE(t.graph().adjacent(0, 1));
    WorkCounters wc;
    std::vector<Location> out;
    ds.answer(p, Point{3, 3}, out, wc);
    EXPECT_EQ(wc.structures_queried, 1);
    EXPECT_EQ(out.size(), 2u);
    EXPECT_GT(wc.cells_located, 2);
}

TEST(MidTree, RandomQueriesMatchOracle) {
    std::mt19937_64 rng(11);
    auto t = random_tree_catalog(256, 64, 60, rng); // n = 2^14
    const double h1 = lg(t) / 2, h2 = lg(t) * lg(t) / 2;
    MidTreeDS ds = build_midtree_general(t, h1, h2);
    const Rect bbox = t.tiling(0).bbox;
    int asked = 0;
    for (int i = 0; i < 300 && asked < 100; ++i) {
        const auto len = static_cast<std::size_t>(std::ceil(h1)) + rng() % 40;
        auto p = random_tree_path(t, len, rng);
        if (p.empty()) continue;
        ++asked;
        PathQuery q{random_point(bbox, rng), p};
        WorkCounters wc;
        MidTreeTrace trace;
        ASSERT_EQ(query_midtree_general(ds, q, wc, &trace), oracle_query(t, q.q, p));
        for (int used : trace.per_anchored) EXPECT_LE(used, ds.levels() + 1);
    }
    EXPECT_EQ(asked, 100);
}

TEST(MidTree, SmallForestCutsAndAnchors) {
    std::mt19937_64 rng(12);
    auto t = random_tree_catalog(300, 16, 80, rng);
    MidTreeDS ds = build_midtree_general(t, 3, 20);
    const Rect bbox = t.tiling(0).bbox;
    for (int i = 0; i < 300; ++i) {
        auto p = random_tree_path(t, 3 + rng() % 18, rng);
        if (p.empty()) continue;
        PathQuery q{random_point(bbox, rng), p};
        WorkCounters wc;
        MidTreeTrace trace;
        ASSERT_EQ(ds.query(q, wc, &trace), oracle_query(t, q.q, p));
        for (int used : trace.per_anchored) EXPECT_LE(used, ds.levels() + 1);
    }
    EXPECT_THROW(ds.query(PathQuery{Point{0, 0}, {0}}, wc_dummy()), Error);
}
