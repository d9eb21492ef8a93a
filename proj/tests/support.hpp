#pragma once

// Test-only helpers: random subdivisions and independent reference implementations.

#include "ofc/geometry.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <tuple>
#include <vector>

namespace ofc::testing {

inline bool properly_cross(const Segment& a, const Segment& b) {
    if (a.axis == b.axis) return a.fixed == b.fixed && a.lo < b.hi && b.lo < a.hi;
    const Segment& h = a.axis == Axis::horizontal ? a : b;
    const Segment& v = a.axis == Axis::horizontal ? b : a;
    return h.lo < v.fixed && v.fixed < h.hi && v.lo < h.fixed && h.fixed < v.hi;
}

/// Up to `count` random non-crossing segments with endpoints on the integer grid of bbox.
inline std::vector<Segment> random_segments(const Rect& bbox, std::size_t count, std::mt19937_64& rng) {
    std::vector<Segment> out;
    for (std::size_t tries = 0; out.size() < count && tries < 200 * count; ++tries) {
        Segment s;
        s.axis = std::bernoulli_distribution(0.5)(rng) ? Axis::horizontal : Axis::vertical;
        const bool h = s.axis == Axis::horizontal;
        s.fixed = std::uniform_int_distribution<Coord>(h ? bbox.ylo : bbox.xlo, h ? bbox.yhi : bbox.xhi)(rng);
        Coord a = std::uniform_int_distribution<Coord>(h ? bbox.xlo : bbox.ylo, h ? bbox.xhi : bbox.yhi)(rng);
        Coord b = std::uniform_int_distribution<Coord>(h ? bbox.xlo : bbox.ylo, h ? bbox.xhi : bbox.yhi)(rng);
        if (a == b) continue;
        s.lo = std::min(a, b);
        s.hi = std::max(a, b);
        if (std::none_of(out.begin(), out.end(), [&](const Segment& o) { return properly_cross(s, o); })) {
            out.push_back(s);
        }
    }
    return out;
}

/// Reference decomposition on the unit grid: walls are the segments plus the
/// vertical rays, computed by brute force; faces come from flood fill. Returns
/// the faces as boxes, or an empty vector if some face is not a rectangle.
inline std::vector<Rect> grid_decompose(const Rect& bbox, const std::vector<Segment>& segs) {
    const Coord w = bbox.xhi - bbox.xlo;
    const Coord hgt = bbox.yhi - bbox.ylo;
    // vwall[x][y]: wall on the line x between rows y and y+1. hwall[y][x] likewise.
    std::vector<std::vector<bool>> vwall(w + 1, std::vector<bool>(hgt, false));
    std::vector<std::vector<bool>> hwall(hgt + 1, std::vector<bool>(w, false));
    auto vertical = [&](Coord x, Coord y0, Coord y1) {
        for (Coord y = y0; y < y1; ++y) vwall[x - bbox.xlo][y - bbox.ylo] = true;
    };
    auto shoot = [&](Coord x, Coord y, bool up) {
        for (const Segment& s : segs) {
            if (s.axis == Axis::horizontal && s.fixed == y && s.lo < x && x < s.hi) return;
        }
        Coord stop = up ? bbox.yhi : bbox.ylo;
        for (const Segment& s : segs) {
            if (s.axis != Axis::horizontal || s.lo > x || x > s.hi) continue;
            if (up && s.fixed > y) stop = std::min(stop, s.fixed);
            if (!up && s.fixed < y) stop = std::max(stop, s.fixed);
        }
        if (up) vertical(x, y, stop);
        else vertical(x, stop, y);
    };
    for (const Segment& s : segs) {
        if (s.axis == Axis::horizontal) {
            for (Coord x = s.lo; x < s.hi; ++x) hwall[s.fixed - bbox.ylo][x - bbox.xlo] = true;
            for (Coord x : {s.lo, s.hi}) {
                shoot(x, s.fixed, true);
                shoot(x, s.fixed, false);
            }
        } else {
            vertical(s.fixed, s.lo, s.hi);
            shoot(s.fixed, s.hi, true);
            shoot(s.fixed, s.lo, false);
        }
    }
    std::vector<std::vector<int>> comp(w, std::vector<int>(hgt, -1));
    std::vector<Rect> faces;
    for (Coord sx = 0; sx < w; ++sx) {
        for (Coord sy = 0; sy < hgt; ++sy) {
            if (comp[sx][sy] >= 0) continue;
            const int id = static_cast<int>(faces.size());
            Rect box{id, sx, sx + 1, sy, sy + 1};
            std::int64_t cells = 0;
            std::queue<std::pair<Coord, Coord>> todo;
            todo.push({sx, sy});
            comp[sx][sy] = id;
            while (!todo.empty()) {
                auto [x, y] = todo.front();
                todo.pop();
                ++cells;
                box.xlo = std::min(box.xlo, x);
                box.xhi = std::max(box.xhi, x + 1);
                box.ylo = std::min(box.ylo, y);
                box.yhi = std::max(box.yhi, y + 1);
                auto visit = [&](Coord nx, Coord ny) {
                    if (comp[nx][ny] < 0) {
                        comp[nx][ny] = id;
                        todo.push({nx, ny});
                    }
                };
                if (x > 0 && !vwall[x][y]) visit(x - 1, y);
                if (x + 1 < w && !vwall[x + 1][y]) visit(x + 1, y);
                if (y > 0 && !hwall[y][x]) visit(x, y - 1);
                if (y + 1 < hgt && !hwall[y + 1][x]) visit(x, y + 1);
            }
            if (cells != (box.xhi - box.xlo) * (box.yhi - box.ylo)) return {};
            faces.push_back(box);
        }
    }
    for (Rect& f : faces) {
        f.xlo += bbox.xlo;
        f.xhi += bbox.xlo;
        f.ylo += bbox.ylo;
        f.yhi += bbox.ylo;
    }
    return faces;
}

using Box = std::tuple<Coord, Coord, Coord, Coord>;

inline std::set<Box> box_set(const std::vector<Rect>& rects) {
    std::set<Box> out;
    for (const Rect& r : rects) out.insert({r.xlo, r.xhi, r.ylo, r.yhi});
    return out;
}

} // namespace ofc::testing
