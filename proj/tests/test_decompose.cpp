#include "ofc/decompose.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ofc;
using ofc::testing::box_set;

TEST(Decompose, EmptySubdivisionIsBBox) {
    Rect box{0, 0, 1, 0, 1};
    Tiling t = trapezoidal_decompose(box, {});
    ASSERT_EQ(t.size(), 1u);
    EXPECT_TRUE(t.rects[0].same_box(box));
}

TEST(Decompose, SingleFullWall) {
    Rect box{0, 0, 10, 0, 10};
    Tiling t = trapezoidal_decompose(box, {Segment{Axis::vertical, 4, 0, 10}});
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(box_set(t.rects), box_set({Rect{0, 0, 4, 0, 10}, Rect{0, 4, 10, 0, 10}}));
}

TEST(Decompose, FloatingHorizontalGetsRays) {
    Rect box{0, 0, 10, 0, 10};
    Tiling t = trapezoidal_decompose(box, {Segment{Axis::horizontal, 5, 3, 7}});
    EXPECT_EQ(box_set(t.rects), box_set({Rect{0, 0, 3, 0, 10}, Rect{0, 7, 10, 0, 10}, Rect{0, 3, 7, 0, 5},
                                         Rect{0, 3, 7, 5, 10}}));
}

TEST(Decompose, CrossingSegmentsRejected) {
    Rect box{0, 0, 10, 0, 10};
    try {
        trapezoidal_decompose(box, {Segment{Axis::vertical, 5, 0, 10}, Segment{Axis::horizontal, 5, 0, 10}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OverlappingSegments);
    }
    EXPECT_THROW(trapezoidal_decompose(box, {Segment{Axis::vertical, 5, 0, 6}, Segment{Axis::vertical, 5, 4, 8}}),
                 Error);
}

TEST(Decompose, TJunctionAccepted) {
    Rect box{0, 0, 10, 0, 10};
    Tiling t = trapezoidal_decompose(box, {Segment{Axis::vertical, 5, 0, 10}, Segment{Axis::horizontal, 5, 0, 5}});
    EXPECT_EQ(t.size(), 3u);
}

TEST(Decompose, OutOfBoundsRejected) {
    try {
        trapezoidal_decompose(Rect{0, 0, 10, 0, 10}, {Segment{Axis::vertical, 11, 0, 10}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfBounds);
    }
}

TEST(Decompose, MatchesGridOracleSeed7) {
    std::mt19937_64 rng(7);
    Rect box{0, 0, 16, 0, 16};
    auto segs = ofc::testing::random_segments(box, 10, rng);
    ASSERT_EQ(segs.size(), 10u);
    Tiling t = trapezoidal_decompose(box, segs);
    auto oracle = ofc::testing::grid_decompose(box, segs);
    ASSERT_FALSE(oracle.empty());
    EXPECT_EQ(t.size(), oracle.size());
    EXPECT_EQ(box_set(t.rects), box_set(oracle));
}

TEST(Decompose, RandomAgainstGridOracle) {
    std::mt19937_64 rng(1234);
    Rect box{0, 0, 16, 0, 16};
    for (int round = 0; round < 300; ++round) {
        auto segs = ofc::testing::random_segments(box, 1 + round % 24, rng);
        Tiling t = trapezoidal_decompose(box, segs);
        ASSERT_TRUE(check_tiling(t).ok) << check_tiling(t).reason;
        ASSERT_LE(t.size(), 4 * segs.size() + 1);
        auto oracle = ofc::testing::grid_decompose(box, segs);
        ASSERT_FALSE(oracle.empty());
        ASSERT_EQ(box_set(t.rects), box_set(oracle)) << "round " << round;
    }
}

TEST(Decompose, SegmentsLieOnBoundaries) {
    std::mt19937_64 rng(99);
    Rect box{0, 0, 64, 0, 64};
    for (int round = 0; round < 100; ++round) {
        auto segs = ofc::testing::random_segments(box, 30, rng);
        Tiling t = trapezoidal_decompose(box, segs);
        // A point just either side of a segment's interior must lie in different rects.
        for (const Segment& s : segs) {
            for (Coord v = s.lo; v < s.hi; ++v) {
                Point below = s.axis == Axis::horizontal ? Point{v, s.fixed - 1} : Point{s.fixed - 1, v};
                Point above = s.axis == Axis::horizontal ? Point{v, s.fixed} : Point{s.fixed, v};
                if (!box.contains(below) || !box.contains(above)) continue;
                ASSERT_NE(tiling_locate_naive(t, below), tiling_locate_naive(t, above));
            }
        }
    }
}

TEST(RectBoundaries, MergesCollinearEdges) {
    std::vector<Rect> rects{Rect{0, 0, 2, 0, 1}, Rect{1, 2, 4, 0, 1}};
    auto segs = rect_boundaries(rects);
    int bottoms = 0;
    for (const Segment& s : segs) {
        if (s.axis == Axis::horizontal && s.fixed == 0) {
            ++bottoms;
            EXPECT_EQ(s.lo, 0);
            EXPECT_EQ(s.hi, 4);
        }
    }
    EXPECT_EQ(bottoms, 1);
}
