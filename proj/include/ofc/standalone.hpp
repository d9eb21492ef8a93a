#pragma once

// One independent point-location index per vertex. The trivial solution, the
// small-instance fallback of every builder, and the baseline for speedups.

#include "ofc/catalog.hpp"
#include "ofc/tiling_index.hpp"

#include <vector>

namespace ofc {

class StandaloneDS {
public:
    StandaloneDS() = default;

    explicit StandaloneDS(const CatalogGraph& g) : graph_(&g) {
        index_.reserve(g.size());
        for (const auto& v : g.vertices()) index_.emplace_back(v.tiling);
    }

    RectId locate(VertexId v, const Point& q, WorkCounters& wc) const {
        const auto& t = graph_->vertex(v).tiling;
        wc.cells_located += 1;
        return t.rects[index_[v].locate(q, wc)].id;
    }

    void query(const std::vector<VertexId>& vertices, const Point& q, std::vector<Location>& out,
               WorkCounters& wc) const {
        for (VertexId v : vertices) {
            graph_->check_vertex(v);
            wc.structures_queried += 1;
            out.push_back(Location{v, locate(v, q, wc)});
        }
    }

    QueryAnswer query(const std::vector<VertexId>& vertices, const Point& q, WorkCounters& wc) const {
        QueryAnswer a;
        query(vertices, q, a.located, wc);
        return a;
    }

    std::int64_t stored_entries() const {
        std::int64_t total = 0;
        for (const auto& i : index_) total += i.stored_entries();
        return total;
    }

private:
    const CatalogGraph* graph_ = nullptr;
    std::vector<TilingIndex> index_;
};

} // namespace ofc
