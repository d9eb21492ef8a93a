#pragma once

#include "ofc/geometry.hpp"

#include <random>
#include <vector>

namespace ofc {

/// Random guillotine tiling of bbox with exactly k rects (k >= 1). Needs bbox
/// large enough to split k-1 times; throws InvalidParameter otherwise.
inline Tiling random_tiling(const Rect& bbox, std::size_t k, std::mt19937_64& rng) {
    if (k == 0) throw Error(ErrorCode::InvalidParameter, "tiling needs at least one rect");
    std::vector<Rect> rects{bbox};
    std::size_t stuck = 0;
    while (rects.size() < k) {
        std::uniform_int_distribution<std::size_t> pick(0, rects.size() - 1);
        Rect& r = rects[pick(rng)];
        const bool can_x = r.xhi - r.xlo >= 2;
        const bool can_y = r.yhi - r.ylo >= 2;
        if (!can_x && !can_y) {
            if (++stuck > 64 * k) throw Error(ErrorCode::InvalidParameter, "bbox too small for the tiling");
            continue;
        }
        bool vertical = can_x && (!can_y || std::bernoulli_distribution(0.5)(rng));
        Rect other = r;
        if (vertical) {
            const Coord at = std::uniform_int_distribution<Coord>(r.xlo + 1, r.xhi - 1)(rng);
            r.xhi = at;
            other.xlo = at;
        } else {
            const Coord at = std::uniform_int_distribution<Coord>(r.ylo + 1, r.yhi - 1)(rng);
            r.yhi = at;
            other.ylo = at;
        }
        rects.push_back(other);
    }
    for (std::size_t i = 0; i < rects.size(); ++i) rects[i].id = static_cast<RectId>(i);
    return Tiling{bbox, std::move(rects)};
}

inline Point random_point(const Rect& bbox, std::mt19937_64& rng) {
    return Point{std::uniform_int_distribution<Coord>(bbox.xlo, bbox.xhi - 1)(rng),
                 std::uniform_int_distribution<Coord>(bbox.ylo, bbox.yhi - 1)(rng)};
}

} // namespace ofc
