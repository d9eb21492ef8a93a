#pragma once

// Vertical trapezoidal decomposition of orthogonal subdivisions. Every segment
// endpoint shoots a ray up and down until it meets a horizontal segment or the
// bbox; the resulting faces are rectangles.

#include "ofc/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace ofc {

namespace detail {

inline std::string describe(const Segment& s) {
    return std::string(s.axis == Axis::horizontal ? "h " : "v ") + std::to_string(s.fixed) + " " +
           std::to_string(s.lo) + " " + std::to_string(s.hi);
}

/// Collinear overlap and proper crossings. O(s log s + s k) with a sweep.
inline void validate_segments(const Rect& bbox, const std::vector<Segment>& segs) {
    for (const Segment& s : segs) {
        if (s.lo >= s.hi) throw Error(ErrorCode::InvalidParameter, "degenerate segment " + describe(s));
        bool inside = s.axis == Axis::horizontal
                          ? (bbox.ylo <= s.fixed && s.fixed <= bbox.yhi && bbox.xlo <= s.lo && s.hi <= bbox.xhi)
                          : (bbox.xlo <= s.fixed && s.fixed <= bbox.xhi && bbox.ylo <= s.lo && s.hi <= bbox.yhi);
        if (!inside) throw Error(ErrorCode::OutOfBounds, "segment " + describe(s));
    }

    std::vector<const Segment*> sorted;
    sorted.reserve(segs.size());
    for (const Segment& s : segs) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(), [](const Segment* a, const Segment* b) {
        return std::tie(a->axis, a->fixed, a->lo) < std::tie(b->axis, b->fixed, b->lo);
    });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const Segment& a = *sorted[i - 1];
        const Segment& b = *sorted[i];
        if (a.axis == b.axis && a.fixed == b.fixed && b.lo < a.hi) {
            throw Error(ErrorCode::OverlappingSegments, describe(a) + " and " + describe(b));
        }
    }

    // Proper crossing: a vertical at x with lo < y < hi against a horizontal at y with lo < x < hi.
    struct Event {
        Coord x;
        int kind; // 0 remove horizontal, 1 vertical probe, 2 insert horizontal
        const Segment* s;
    };
    std::vector<Event> events;
    for (const Segment& s : segs) {
        if (s.axis == Axis::horizontal) {
            events.push_back({s.lo, 2, &s});
            events.push_back({s.hi, 0, &s});
        } else {
            events.push_back({s.fixed, 1, &s});
        }
    }
    // At equal x: removals (hi == x) and probes happen before inserts (lo == x),
    // so only horizontals with lo < x < hi are active during a probe.
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return std::tie(a.x, a.kind) < std::tie(b.x, b.kind); });
    std::multiset<Coord> active;
    for (const Event& e : events) {
        if (e.kind == 0) {
            active.erase(active.find(e.s->fixed));
        } else if (e.kind == 2) {
            active.insert(e.s->fixed);
        } else {
            auto it = active.upper_bound(e.s->lo);
            if (it != active.end() && *it < e.s->hi) {
                throw Error(ErrorCode::OverlappingSegments,
                            describe(*e.s) + " crosses a horizontal at y=" + std::to_string(*it));
            }
        }
    }
}

} // namespace detail

/// Decomposes the orthogonal subdivision of `bbox` by `segments` into a rectangle tiling.
/// Output rects are sorted by (xlo, ylo) and numbered 0..k-1.
inline Tiling trapezoidal_decompose(const Rect& bbox, const std::vector<Segment>& segments,
                                    bool validate = true) {
    if (!bbox.valid()) throw Error(ErrorCode::InvalidParameter, "empty bbox");
    if (validate) detail::validate_segments(bbox, segments);

    // Horizontal events and ray sources, keyed by x.
    struct HEvent {
        Coord x;
        Coord y;
        bool start;
    };
    struct Source {
        Coord x;
        Coord y;
        bool up;
        bool down;
    };
    std::vector<HEvent> hevents;
    std::vector<Source> sources;
    std::map<Coord, std::vector<std::pair<Coord, Coord>>> walls; // x -> [ylo, yhi)
    std::vector<Coord> xs{bbox.xlo, bbox.xhi};
    for (const Segment& s : segments) {
        if (s.axis == Axis::horizontal) {
            hevents.push_back({s.lo, s.fixed, true});
            hevents.push_back({s.hi, s.fixed, false});
            sources.push_back({s.lo, s.fixed, true, true});
            sources.push_back({s.hi, s.fixed, true, true});
            xs.push_back(s.lo);
            xs.push_back(s.hi);
        } else {
            walls[s.fixed].emplace_back(s.lo, s.hi);
            sources.push_back({s.fixed, s.hi, true, false});
            sources.push_back({s.fixed, s.lo, false, true});
            xs.push_back(s.fixed);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    xs.erase(std::remove_if(xs.begin(), xs.end(), [&](Coord x) { return x < bbox.xlo || x > bbox.xhi; }),
             xs.end());

    std::sort(hevents.begin(), hevents.end(),
              [](const HEvent& a, const HEvent& b) { return a.x < b.x; });
    std::sort(sources.begin(), sources.end(), [](const Source& a, const Source& b) { return a.x < b.x; });

    std::multiset<Coord> closed; // horizontals with lo <= x <= hi
    std::multiset<Coord> strict; // horizontals with lo <= x < hi after the x event (slab set)
    std::size_t hi_ev = 0;
    std::size_t src = 0;

    std::map<std::pair<Coord, Coord>, Coord> open; // piece (ylo, yhi) -> xstart
    std::vector<Rect> out;

    std::vector<Coord> ys;
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        const Coord x = xs[xi];
        std::size_t ev_end = hi_ev;
        while (ev_end < hevents.size() && hevents[ev_end].x == x) ++ev_end;

        // Horizontals ending at x leave the strict set, starting ones join the closed set.
        for (std::size_t e = hi_ev; e < ev_end; ++e) {
            if (!hevents[e].start) strict.erase(strict.find(hevents[e].y));
        }
        for (std::size_t e = hi_ev; e < ev_end; ++e) {
            if (hevents[e].start) closed.insert(hevents[e].y);
        }
        // Rays. A ray is blocked at once by a horizontal passing strictly through its source.
        for (; src < sources.size() && sources[src].x < x; ++src) {}
        for (; src < sources.size() && sources[src].x == x; ++src) {
            const Source& s = sources[src];
            if (strict.count(s.y)) continue;
            if (s.up) {
                auto it = closed.upper_bound(s.y);
                Coord top = it == closed.end() ? bbox.yhi : *it;
                if (top > s.y) walls[x].emplace_back(s.y, top);
            }
            if (s.down) {
                auto it = closed.lower_bound(s.y);
                Coord bottom = it == closed.begin() ? bbox.ylo : *std::prev(it);
                if (bottom < s.y) walls[x].emplace_back(bottom, s.y);
            }
        }
        for (std::size_t e = hi_ev; e < ev_end; ++e) {
            if (!hevents[e].start) closed.erase(closed.find(hevents[e].y));
        }
        for (std::size_t e = hi_ev; e < ev_end; ++e) {
            if (hevents[e].start) strict.insert(hevents[e].y);
        }
        hi_ev = ev_end;

        // Close pieces of the previous slab that hit a wall at x (or the bbox edge).
        std::vector<std::pair<Coord, Coord>> wx;
        if (auto it = walls.find(x); it != walls.end()) wx = it->second;
        std::sort(wx.begin(), wx.end());
        std::vector<std::pair<Coord, Coord>> merged;
        for (const auto& w : wx) {
            if (!merged.empty() && w.first <= merged.back().second) {
                merged.back().second = std::max(merged.back().second, w.second);
            } else {
                merged.push_back(w);
            }
        }
        auto walled = [&](Coord a, Coord b) {
            auto it = std::lower_bound(merged.begin(), merged.end(), std::make_pair(b, kCoordMin));
            return it != merged.begin() && std::prev(it)->second > a;
        };
        std::map<std::pair<Coord, Coord>, Coord> carried;
        for (const auto& [piece, xstart] : open) {
            if (x == bbox.xhi || walled(piece.first, piece.second)) {
                out.push_back(Rect{0, xstart, x, piece.first, piece.second});
            } else {
                carried.emplace(piece, xstart);
            }
        }
        if (x == bbox.xhi) break;

        // Pieces of the slab [x, next x).
        ys.clear();
        ys.push_back(bbox.ylo);
        for (Coord y : strict) {
            if (y > bbox.ylo && y < bbox.yhi && y != ys.back()) ys.push_back(y);
        }
        ys.push_back(bbox.yhi);
        open.clear();
        for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
            auto key = std::make_pair(ys[k], ys[k + 1]);
            auto it = carried.find(key);
            open.emplace(key, it == carried.end() ? x : it->second);
            if (it != carried.end()) carried.erase(it);
        }
        if (!carried.empty()) {
            throw Error(ErrorCode::InvalidParameter, "decomposition lost a piece at x=" + std::to_string(x));
        }
    }

    std::sort(out.begin(), out.end(),
              [](const Rect& a, const Rect& b) { return std::tie(a.xlo, a.ylo) < std::tie(b.xlo, b.ylo); });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<RectId>(i);
    return Tiling{bbox, std::move(out)};
}

/// Boundary segments of a set of disjoint rects, with collinear touching or
/// overlapping pieces merged so the result is a valid subdivision input.
inline std::vector<Segment> rect_boundaries(const std::vector<Rect>& rects) {
    std::map<std::pair<Coord, int>, std::vector<std::pair<Coord, Coord>>> lines;
    auto add = [&](Axis a, Coord fixed, Coord lo, Coord hi) {
        lines[{fixed, static_cast<int>(a)}].emplace_back(lo, hi);
    };
    for (const Rect& r : rects) {
        add(Axis::horizontal, r.ylo, r.xlo, r.xhi);
        add(Axis::horizontal, r.yhi, r.xlo, r.xhi);
        add(Axis::vertical, r.xlo, r.ylo, r.yhi);
        add(Axis::vertical, r.xhi, r.ylo, r.yhi);
    }
    std::vector<Segment> out;
    for (auto& [key, spans] : lines) {
        std::sort(spans.begin(), spans.end());
        Coord lo = spans.front().first;
        Coord hi = spans.front().second;
        auto emit = [&] { out.push_back(Segment{static_cast<Axis>(key.second), key.first, lo, hi}); };
        for (std::size_t i = 1; i < spans.size(); ++i) {
            if (spans[i].first <= hi) {
                hi = std::max(hi, spans[i].second);
            } else {
                emit();
                lo = spans[i].first;
                hi = spans[i].second;
            }
        }
        emit();
    }
    return out;
}

} // namespace ofc
