#pragma once

#include "ofc/counters.hpp"
#include "ofc/error.hpp"
#include "ofc/geometry.hpp"
#include "ofc/stabbing.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ofc {

/// O(log n) point location over a set of disjoint rects (a tiling or a clipped
/// conflict list). Returns the position of the containing rect in the input order.
class TilingIndex {
public:
    TilingIndex() = default;

    explicit TilingIndex(const std::vector<Rect>& rects) : count_(rects.size()) {
        std::vector<StabItem> items;
        items.reserve(rects.size());
        for (std::size_t i = 0; i < rects.size(); ++i) items.push_back(stab_item(rects[i], i));
        stab_ = Stab2D(std::move(items));
    }

    explicit TilingIndex(const Tiling& t) : TilingIndex(t.rects) { bbox_ = t.bbox; has_bbox_ = true; }

    std::size_t size() const { return count_; }
    std::int64_t stored_entries() const { return stab_.stored_entries(); }

    /// Position of the rect containing p, or -1 when none does.
    std::int64_t try_locate(const Point& p, WorkCounters& wc) const {
        std::int64_t found = -1;
        WorkCounters local;
        stab_.query(p, [&](std::uint64_t k) { found = static_cast<std::int64_t>(k); }, local);
        wc.pl_comparisons += local.stab_nodes_visited;
        return found;
    }

    std::size_t locate(const Point& p, WorkCounters& wc) const {
        if (has_bbox_ && !bbox_.contains(p)) {
            throw Error(ErrorCode::PointOutsideBBox,
                        "point (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
        }
        const std::int64_t at = try_locate(p, wc);
        if (at < 0) {
            throw Error(ErrorCode::PointOutsideBBox,
                        "no rect contains (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
        }
        return static_cast<std::size_t>(at);
    }

private:
    Stab2D stab_;
    std::size_t count_ = 0;
    Rect bbox_;
    bool has_bbox_ = false;
};

/// Fast counterpart of tiling_locate_naive; the index must have been built over t.
inline RectId tiling_locate_fast(const Tiling& t, const TilingIndex& index, const Point& p,
                                 WorkCounters& wc) {
    return t.rects[index.locate(p, wc)].id;
}

inline RectId tiling_locate_fast(const Tiling& t, const TilingIndex& index, const Point& p) {
    WorkCounters wc;
    return tiling_locate_fast(t, index, p, wc);
}

} // namespace ofc
