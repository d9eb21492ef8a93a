#pragma once

// (1/r)-cuttings of rectangle tilings: a coarse rectangle tiling of the same
// bbox whose cells each meet at most kConflictPerNR * n / r source rects.
//
// Construction: sample source rects, decompose the sampled boundaries, compute
// conflict lists with an overlay sweep, split cells whose lists are still too
// long, then verify both bounds and retry with fresh randomness on failure.

#include "ofc/config.hpp"
#include "ofc/counters.hpp"
#include "ofc/decompose.hpp"
#include "ofc/error.hpp"
#include "ofc/geometry.hpp"
#include "ofc/tiling_index.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ofc {

using Rng = std::mt19937_64;

struct Cutting {
    Tiling cells;
    std::vector<std::vector<std::uint32_t>> conflicts; // per cell: positions in the source rect list
    std::int64_t source_size = 0;
    std::int64_t target = 1;
    TilingIndex index; // over cells

    std::size_t max_conflict() const {
        std::size_t m = 0;
        for (const auto& c : conflicts) m = std::max(m, c.size());
        return m;
    }
};

struct CellHit {
    std::size_t cell = 0;
    std::span<const std::uint32_t> conflicts;
};

namespace detail {

/// For two sets of internally disjoint rects, the list of b-rects meeting each
/// a-rect (positive area). Sweep over x with the active y-intervals of each set
/// kept in ordered maps.
inline std::vector<std::vector<std::uint32_t>> overlay(const std::vector<Rect>& a, const std::vector<Rect>& b) {
    struct Event {
        Coord x;
        int kind; // 0 remove, 1 insert a, 2 insert b
        std::uint32_t idx;
        bool from_a;
    };
    std::vector<Event> ev;
    ev.reserve(2 * (a.size() + b.size()));
    for (std::uint32_t i = 0; i < a.size(); ++i) {
        ev.push_back({a[i].xlo, 1, i, true});
        ev.push_back({a[i].xhi, 0, i, true});
    }
    for (std::uint32_t i = 0; i < b.size(); ++i) {
        ev.push_back({b[i].xlo, 2, i, false});
        ev.push_back({b[i].xhi, 0, i, false});
    }
    std::sort(ev.begin(), ev.end(), [](const Event& p, const Event& q) {
        if (p.x != q.x) return p.x < q.x;
        return p.kind < q.kind;
    });
    std::map<Coord, std::uint32_t> act_a; // ylo -> idx
    std::map<Coord, std::uint32_t> act_b;
    std::vector<std::vector<std::uint32_t>> out(a.size());
    auto each_overlap = [](const std::map<Coord, std::uint32_t>& act, const std::vector<Rect>& rs, Coord lo,
                           Coord hi, auto&& fn) {
        auto it = act.upper_bound(lo);
        if (it != act.begin()) {
            auto p = std::prev(it);
            if (rs[p->second].yhi > lo) fn(p->second);
        }
        for (; it != act.end() && it->first < hi; ++it) fn(it->second);
    };
    for (const Event& e : ev) {
        if (e.kind == 0) {
            if (e.from_a) {
                act_a.erase(a[e.idx].ylo);
            } else {
                act_b.erase(b[e.idx].ylo);
            }
        } else if (e.kind == 1) {
            each_overlap(act_b, b, a[e.idx].ylo, a[e.idx].yhi, [&](std::uint32_t j) { out[e.idx].push_back(j); });
            act_a.emplace(a[e.idx].ylo, e.idx);
        } else {
            each_overlap(act_a, a, b[e.idx].ylo, b[e.idx].yhi, [&](std::uint32_t i) { out[i].push_back(e.idx); });
            act_b.emplace(b[e.idx].ylo, e.idx);
        }
    }
    for (auto& l : out) std::sort(l.begin(), l.end());
    return out;
}

/// Splits `cell` until every piece meets at most `limit` of `src`, choosing at
/// each step the median boundary on the axis that balances better.
inline void refine(const Rect& cell, std::vector<std::uint32_t> conflict, const std::vector<Rect>& src,
                   std::size_t limit, std::vector<Rect>& cells_out,
                   std::vector<std::vector<std::uint32_t>>& conf_out) {
    if (conflict.size() <= limit) {
        cells_out.push_back(cell);
        conf_out.push_back(std::move(conflict));
        return;
    }
    struct Choice {
        bool vertical;
        Coord at;
        std::size_t worst;
    };
    auto evaluate = [&](bool vertical) -> std::optional<Choice> {
        std::vector<Coord> cand;
        for (auto i : conflict) {
            const Rect& r = src[i];
            const Coord lo = vertical ? r.xlo : r.ylo;
            const Coord hi = vertical ? r.xhi : r.yhi;
            const Coord clo = vertical ? cell.xlo : cell.ylo;
            const Coord chi = vertical ? cell.xhi : cell.yhi;
            if (lo > clo && lo < chi) cand.push_back(lo);
            if (hi > clo && hi < chi) cand.push_back(hi);
        }
        if (cand.empty()) return std::nullopt;
        std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(cand.size() / 2), cand.end());
        const Coord at = cand[cand.size() / 2];
        std::size_t lo_count = 0;
        std::size_t hi_count = 0;
        for (auto i : conflict) {
            const Rect& r = src[i];
            if ((vertical ? r.xlo : r.ylo) < at) ++lo_count;
            if ((vertical ? r.xhi : r.yhi) > at) ++hi_count;
        }
        return Choice{vertical, at, std::max(lo_count, hi_count)};
    };
    auto v = evaluate(true);
    auto h = evaluate(false);
    if (!v && !h) {
        throw Error(ErrorCode::InvalidTiling, "cell with several conflicts has no inner boundary");
    }
    const Choice c = (!h || (v && v->worst <= h->worst)) ? *v : *h;
    Rect lo = cell;
    Rect hi = cell;
    if (c.vertical) {
        lo.xhi = c.at;
        hi.xlo = c.at;
    } else {
        lo.yhi = c.at;
        hi.ylo = c.at;
    }
    std::vector<std::uint32_t> lo_conf;
    std::vector<std::uint32_t> hi_conf;
    for (auto i : conflict) {
        if (src[i].intersects(lo)) lo_conf.push_back(i);
        if (src[i].intersects(hi)) hi_conf.push_back(i);
    }
    conflict.clear();
    conflict.shrink_to_fit();
    refine(lo, std::move(lo_conf), src, limit, cells_out, conf_out);
    refine(hi, std::move(hi_conf), src, limit, cells_out, conf_out);
}

inline std::size_t conflict_limit(std::int64_t n, std::int64_t r) {
    return static_cast<std::size_t>(config::kConflictPerNR * n / r);
}

} // namespace detail

struct CuttingCheck {
    bool ok = true;
    std::string reason;
};

/// The post-build verification pass: cell tiling validity, both size bounds,
/// and exact conflict lists (a source rect is listed iff it meets the cell).
inline CuttingCheck check_cutting(const Tiling& source, const Cutting& c) {
    auto fail = [](std::string why) { return CuttingCheck{false, std::move(why)}; };
    if (auto t = check_tiling(c.cells); !t.ok) return fail("cells: " + t.reason);
    if (!c.cells.bbox.same_box(source.bbox)) return fail("cell bbox differs from source bbox");
    if (static_cast<std::int64_t>(c.cells.size()) > config::kCellsPerR * c.target) {
        return fail("too many cells: " + std::to_string(c.cells.size()));
    }
    const std::size_t limit = detail::conflict_limit(c.source_size, c.target);
    if (c.conflicts.size() != c.cells.size()) return fail("conflict list count mismatch");
    const auto expect = detail::overlay(c.cells.rects, source.rects);
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
        if (c.conflicts[i].size() > limit) {
            return fail("conflict list " + std::to_string(i) + " has " + std::to_string(c.conflicts[i].size()) +
                        " > " + std::to_string(limit));
        }
        if (c.conflicts[i] != expect[i]) return fail("conflict list " + std::to_string(i) + " is not exact");
    }
    return {};
}

inline Cutting cutting_build(const Tiling& source, std::int64_t r, Rng& rng) {
    const auto n = static_cast<std::int64_t>(source.size());
    if (r < 1 || r > n) {
        throw Error(ErrorCode::InvalidParameter,
                    "cutting parameter r=" + std::to_string(r) + " outside [1, " + std::to_string(n) + "]");
    }
    auto finish = [&](std::vector<Rect> cells, std::vector<std::vector<std::uint32_t>> conf) {
        Cutting c;
        for (std::size_t i = 0; i < cells.size(); ++i) cells[i].id = static_cast<RectId>(i);
        c.cells = Tiling{source.bbox, std::move(cells)};
        c.conflicts = std::move(conf);
        c.source_size = n;
        c.target = r;
        return c;
    };

    if (r == 1) {
        std::vector<std::uint32_t> all(source.size());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        Cutting c = finish({source.bbox}, {std::move(all)});
        c.index = TilingIndex(c.cells);
        return c;
    }

    const double p = std::min(1.0, config::kSampleRate * static_cast<double>(r) / static_cast<double>(n));
    const std::size_t limit = detail::conflict_limit(n, r);
    std::bernoulli_distribution coin(p);
    for (int attempt = 0; attempt < config::kCuttingRetries; ++attempt) {
        std::vector<Rect> cells;
        std::vector<std::vector<std::uint32_t>> conf;
        if (p >= 1.0 || n <= 2 * r) {
            // The source rects already meet both bounds and sampling would keep most of them.
            cells = source.rects;
            for (std::uint32_t i = 0; i < cells.size(); ++i) conf.push_back({i});
        } else {
            std::vector<Rect> sample;
            for (const Rect& s : source.rects) {
                if (coin(rng)) sample.push_back(s);
            }
            const Tiling coarse = trapezoidal_decompose(source.bbox, rect_boundaries(sample), false);
            auto lists = detail::overlay(coarse.rects, source.rects);
            for (std::size_t i = 0; i < coarse.size(); ++i) {
                detail::refine(coarse.rects[i], std::move(lists[i]), source.rects, limit, cells, conf);
            }
        }
        if (static_cast<std::int64_t>(cells.size()) > config::kCellsPerR * r) continue;
        for (auto& l : conf) std::sort(l.begin(), l.end());
        Cutting c = finish(std::move(cells), std::move(conf));
        if (!check_cutting(source, c).ok) continue;
        c.index = TilingIndex(c.cells);
        return c;
    }
    throw Error(ErrorCode::RetryExhausted, "no valid (1/" + std::to_string(r) + ")-cutting after " +
                                               std::to_string(config::kCuttingRetries) + " attempts");
}

inline CellHit cutting_locate(const Cutting& c, const Point& p, WorkCounters& wc) {
    const std::size_t cell = c.index.locate(p, wc);
    return CellHit{cell, std::span<const std::uint32_t>(c.conflicts[cell])};
}

inline CellHit cutting_locate(const Cutting& c, const Point& p) {
    WorkCounters wc;
    return cutting_locate(c, p, wc);
}

/// A cutting plus a point-location index on every conflict list (rects clipped
/// to the cell). Maps a point to its cell and then to the containing source rect.
class IndexedCutting {
public:
    IndexedCutting() = default;

    IndexedCutting(const Tiling& source, Cutting cut) : cut_(std::move(cut)) {
        per_cell_.reserve(cut_.cells.size());
        for (std::size_t i = 0; i < cut_.cells.size(); ++i) {
            std::vector<Rect> clipped;
            clipped.reserve(cut_.conflicts[i].size());
            for (auto s : cut_.conflicts[i]) clipped.push_back(intersection(source.rects[s], cut_.cells.rects[i]));
            per_cell_.emplace_back(clipped);
        }
    }

    const Cutting& cutting() const { return cut_; }
    const Tiling& cells() const { return cut_.cells; }

    /// Source rect position for p, given the cell that contains it.
    std::uint32_t locate_in_cell(std::size_t cell, const Point& p, WorkCounters& wc) const {
        const std::size_t at = per_cell_[cell].locate(p, wc);
        return cut_.conflicts[cell][at];
    }

    std::int64_t stored_entries() const {
        std::int64_t total = cut_.index.stored_entries();
        for (const auto& t : per_cell_) total += t.stored_entries();
        return total;
    }

private:
    Cutting cut_;
    std::vector<TilingIndex> per_cell_;
};

} // namespace ofc
