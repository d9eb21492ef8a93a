#pragma once

// Ground truth: independent per-vertex linear scans. Shares nothing with the
// indexed structures beyond Rect::contains.

#include "ofc/catalog.hpp"
#include "ofc/geometry.hpp"

#include <vector>

namespace ofc {

inline QueryAnswer oracle_query(const CatalogGraph& g, const Point& q, const std::vector<VertexId>& vertices) {
    QueryAnswer out;
    out.located.reserve(vertices.size());
    for (VertexId v : vertices) {
        g.check_vertex(v);
        out.located.push_back(Location{v, tiling_locate_naive(g.vertex(v).tiling, q)});
    }
    return out;
}

inline QueryAnswer oracle_query(const CatalogTree& t, const Point& q, const std::vector<VertexId>& vertices) {
    return oracle_query(t.graph(), q, vertices);
}

} // namespace ofc
