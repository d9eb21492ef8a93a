#pragma once

#include "ofc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace ofc {

using Coord = std::int64_t;
using RectId = std::int64_t;

inline constexpr Coord kCoordMin = std::numeric_limits<Coord>::min();
inline constexpr Coord kCoordMax = std::numeric_limits<Coord>::max();

struct Point {
    Coord x = 0;
    Coord y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Half-open axis-aligned rectangle [xlo, xhi) x [ylo, yhi).
struct Rect {
    RectId id = 0;
    Coord xlo = 0;
    Coord xhi = 0;
    Coord ylo = 0;
    Coord yhi = 0;

    bool valid() const { return xlo < xhi && ylo < yhi; }

    bool contains(const Point& p) const {
        return xlo <= p.x && p.x < xhi && ylo <= p.y && p.y < yhi;
    }

    bool contains(const Rect& o) const {
        return xlo <= o.xlo && o.xhi <= xhi && ylo <= o.ylo && o.yhi <= yhi;
    }

    /// Positive-area overlap.
    bool intersects(const Rect& o) const {
        return xlo < o.xhi && o.xlo < xhi && ylo < o.yhi && o.ylo < yhi;
    }

    bool same_box(const Rect& o) const {
        return xlo == o.xlo && xhi == o.xhi && ylo == o.ylo && yhi == o.yhi;
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

inline Rect intersection(const Rect& a, const Rect& b) {
    return Rect{a.id, std::max(a.xlo, b.xlo), std::min(a.xhi, b.xhi), std::max(a.ylo, b.ylo),
                std::min(a.yhi, b.yhi)};
}

/// Area with overflow detection; throws InvalidTiling when the product does not fit.
inline __int128 checked_area(const Rect& r) {
    __int128 w = static_cast<__int128>(r.xhi) - r.xlo;
    __int128 h = static_cast<__int128>(r.yhi) - r.ylo;
    __int128 out = 0;
    if (__builtin_mul_overflow(w, h, &out)) {
        throw Error(ErrorCode::InvalidTiling, "rectangle area overflows 128 bits");
    }
    return out;
}

enum class Axis { horizontal, vertical };

/// Axis-parallel segment. A horizontal segment lies at y = fixed and spans x in [lo, hi].
struct Segment {
    Axis axis = Axis::horizontal;
    Coord fixed = 0;
    Coord lo = 0;
    Coord hi = 0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Tiling {
    Rect bbox;
    std::vector<Rect> rects;

    std::size_t size() const { return rects.size(); }
};

/// Linear scan; the reference every indexed locator is checked against.
inline RectId tiling_locate_naive(const Tiling& t, const Point& p) {
    if (!t.bbox.contains(p)) {
        throw Error(ErrorCode::PointOutsideBBox,
                    "point (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
    }
    for (const Rect& r : t.rects) {
        if (r.contains(p)) return r.id;
    }
    throw Error(ErrorCode::InvalidTiling, "no rect contains a point inside the bbox");
}

struct TilingCheck {
    bool ok = true;
    std::string reason;
};

/// Validity of a tiling: every rect non-empty and inside bbox, pairwise disjoint,
/// and the areas sum to the bbox area. Disjointness is checked with an x-sweep.
inline TilingCheck check_tiling(const Tiling& t) {
    auto fail = [](std::string why) { return TilingCheck{false, std::move(why)}; };
    if (!t.bbox.valid()) return fail("empty bbox");
    __int128 total = 0;
    for (const Rect& r : t.rects) {
        if (!r.valid()) return fail("empty rect " + std::to_string(r.id));
        if (!t.bbox.contains(r)) return fail("rect " + std::to_string(r.id) + " leaves bbox");
        if (__builtin_add_overflow(total, checked_area(r), &total)) {
            return fail("area sum overflows");
        }
    }
    if (total != checked_area(t.bbox)) return fail("areas do not sum to bbox area");

    struct Event {
        Coord x;
        bool insert;
        std::size_t idx;
    };
    std::vector<Event> events;
    events.reserve(2 * t.rects.size());
    for (std::size_t i = 0; i < t.rects.size(); ++i) {
        events.push_back({t.rects[i].xlo, true, i});
        events.push_back({t.rects[i].xhi, false, i});
    }
    // Removals first at equal x: half-open rects touching at x do not overlap.
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.insert < b.insert;
    });
    std::map<Coord, Coord> active; // ylo -> yhi
    for (const Event& e : events) {
        const Rect& r = t.rects[e.idx];
        if (!e.insert) {
            active.erase(r.ylo);
            continue;
        }
        auto it = active.lower_bound(r.ylo);
        if (it != active.end() && it->first < r.yhi) return fail("overlap at rect " + std::to_string(r.id));
        if (it != active.begin() && std::prev(it)->second > r.ylo) {
            return fail("overlap at rect " + std::to_string(r.id));
        }
        active.emplace(r.ylo, r.yhi);
    }
    return {};
}

/// ceil(log2(n)) clamped to at least 1; the integer "log n" used by every parameter formula.
inline int ceil_log2(std::int64_t n) {
    int k = 0;
    while (k < 62 && (std::int64_t{1} << k) < n) ++k;
    return std::max(k, 1);
}

inline double log2_real(double n) { return n <= 1.0 ? 0.0 : std::log2(n); }

} // namespace ofc
