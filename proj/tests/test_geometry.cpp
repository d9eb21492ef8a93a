#include "ofc/geometry.hpp"
#include "ofc/random_tiling.hpp"
#include "ofc/tiling_index.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ofc;

namespace {

Tiling split_at(Coord c) {
    Rect box{0, 0, 10, 0, 10};
    return Tiling{box, {Rect{1, 0, c, 0, 10}, Rect{2, c, 10, 0, 10}}};
}

} // namespace

TEST(Rect, HalfOpenContainment) {
    Rect r{0, 0, 4, 0, 4};
    EXPECT_TRUE(r.contains(Point{0, 0}));
    EXPECT_TRUE(r.contains(Point{3, 3}));
    EXPECT_FALSE(r.contains(Point{4, 0}));
    EXPECT_FALSE(r.contains(Point{0, 4}));
}

TEST(Rect, TouchingRectsDoNotIntersect) {
    EXPECT_FALSE((Rect{0, 0, 2, 0, 2}.intersects(Rect{1, 2, 4, 0, 2})));
    EXPECT_TRUE((Rect{0, 0, 3, 0, 2}.intersects(Rect{1, 2, 4, 1, 2})));
}

TEST(Rect, AreaOverflowIsDetected) {
    Rect huge{0, kCoordMin, kCoordMax, kCoordMin, kCoordMax};
    EXPECT_THROW(checked_area(huge), Error);
    Rect big{0, 0, Coord{1} << 62, 0, Coord{1} << 62};
    EXPECT_EQ(checked_area(big), static_cast<__int128>(Coord{1} << 62) * (Coord{1} << 62));
}

TEST(CheckTiling, AcceptsSplitAndRejectsDefects) {
    EXPECT_TRUE(check_tiling(split_at(3)).ok);

    Tiling overlap{Rect{0, 0, 10, 0, 10}, {Rect{1, 0, 6, 0, 10}, Rect{2, 4, 10, 0, 10}}};
    EXPECT_FALSE(check_tiling(overlap).ok);

    Tiling gap{Rect{0, 0, 10, 0, 10}, {Rect{1, 0, 4, 0, 10}, Rect{2, 5, 10, 0, 10}}};
    EXPECT_FALSE(check_tiling(gap).ok);

    // Equal area, but one rect overlaps another and a hole remains.
    Tiling swapped{Rect{0, 0, 2, 0, 2}, {Rect{1, 0, 1, 0, 1}, Rect{2, 0, 1, 0, 1}, Rect{3, 1, 2, 0, 2}}};
    EXPECT_FALSE(check_tiling(swapped).ok);
}

TEST(LocateNaive, SingleRect) {
    Tiling t{Rect{0, 0, 5, 0, 5}, {Rect{7, 0, 5, 0, 5}}};
    EXPECT_EQ(tiling_locate_naive(t, Point{2, 3}), 7);
}

TEST(LocateNaive, BoundaryGoesRight) {
    EXPECT_EQ(tiling_locate_naive(split_at(4), Point{4, 5}), 2);
    EXPECT_EQ(tiling_locate_naive(split_at(4), Point{3, 5}), 1);
}

TEST(LocateNaive, OutsideThrows) {
    try {
        tiling_locate_naive(split_at(4), Point{10, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PointOutsideBBox);
    }
}

TEST(LocateFast, SingleRectAndBoundary) {
    Tiling one{Rect{0, 0, 5, 0, 5}, {Rect{7, 0, 5, 0, 5}}};
    EXPECT_EQ(tiling_locate_fast(one, TilingIndex(one), Point{2, 3}), 7);
    Tiling two = split_at(4);
    TilingIndex idx(two);
    EXPECT_EQ(tiling_locate_fast(two, idx, Point{4, 5}), 2);
    EXPECT_THROW(tiling_locate_fast(two, idx, Point{-1, 5}), Error);
}

TEST(LocateFast, AgreesWithNaiveOnRandomTilings) {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 20; ++round) {
        Tiling t = random_tiling(Rect{0, 0, 1000, 0, 1000}, 64, rng);
        ASSERT_TRUE(check_tiling(t).ok);
        TilingIndex idx(t);
        for (int i = 0; i < 100; ++i) {
            Point p = random_point(t.bbox, rng);
            ASSERT_EQ(tiling_locate_fast(t, idx, p), tiling_locate_naive(t, p));
        }
    }
}

TEST(LocateFast, ComparisonsAreLogarithmic) {
    std::mt19937_64 rng(9);
    for (std::size_t k : {256u, 4096u}) {
        Tiling t = random_tiling(Rect{0, 0, 1 << 20, 0, 1 << 20}, k, rng);
        TilingIndex idx(t);
        WorkCounters wc;
        const int samples = 200;
        for (int i = 0; i < samples; ++i) tiling_locate_fast(t, idx, random_point(t.bbox, rng), wc);
        EXPECT_LE(wc.pl_comparisons / samples, 8 * ceil_log2(static_cast<std::int64_t>(k)));
    }
}

TEST(CeilLog2, Values) {
    EXPECT_EQ(ceil_log2(1), 1);
    EXPECT_EQ(ceil_log2(2), 1);
    EXPECT_EQ(ceil_log2(3), 2);
    EXPECT_EQ(ceil_log2(16), 4);
    EXPECT_EQ(ceil_log2(17), 5);
}
