#pragma once

// Per-vertex cuttings with point location on the clipped conflict lists.

#include "ofc/catalog.hpp"
#include "ofc/cutting.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace ofc {

/// Cutting parameter ceil(n_i / divisor) clamped to [1, n_i].
inline std::int64_t cutting_parameter(std::int64_t n_i, double divisor) {
    if (n_i <= 1) return 1;
    const double v = std::ceil(static_cast<double>(n_i) / std::max(1.0, divisor));
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(v), 1, n_i);
}

class VertexCuttings {
public:
    VertexCuttings() = default;

    /// Cuts the tiling of every vertex in `which` (all vertices if empty) with
    /// parameter param(n_i).
    VertexCuttings(const CatalogGraph& g, const std::function<std::int64_t(std::int64_t)>& param, Rng& rng,
                   const std::vector<VertexId>& which = {})
        : graph_(&g) {
        cuts_.resize(g.size());
        auto build = [&](VertexId v) {
            const Tiling& t = g.vertex(v).tiling;
            cuts_[v] = IndexedCutting(t, cutting_build(t, param(static_cast<std::int64_t>(t.size())), rng));
        };
        if (which.empty()) {
            for (VertexId v = 0; v < g.size(); ++v) build(v);
        } else {
            for (VertexId v : which) build(v);
        }
    }

    const IndexedCutting& at(VertexId v) const { return cuts_[v]; }
    const Tiling& cells(VertexId v) const { return cuts_[v].cells(); }

    /// Rect id of v's tiling containing q, given the cell of v's cutting that contains q.
    RectId locate(VertexId v, std::size_t cell, const Point& q, WorkCounters& wc) const {
        wc.cells_located += 1;
        return graph_->vertex(v).tiling.rects[cuts_[v].locate_in_cell(cell, q, wc)].id;
    }

    std::int64_t total_cells() const {
        std::int64_t total = 0;
        for (const auto& c : cuts_) total += static_cast<std::int64_t>(c.cells().size());
        return total;
    }

    std::int64_t stored_entries() const {
        std::int64_t total = 0;
        for (const auto& c : cuts_) total += c.stored_entries();
        return total;
    }

private:
    const CatalogGraph* graph_ = nullptr;
    std::vector<IndexedCutting> cuts_;
};

} // namespace ofc
