#pragma once

#include <cstdint>

namespace ofc {

/// Per-query work accounting. Caller-owned; structures only ever add to it.
struct WorkCounters {
    std::int64_t stab_nodes_visited = 0;
    std::int64_t pl_comparisons = 0;
    std::int64_t structures_queried = 0;
    std::int64_t cells_located = 0;

    std::int64_t work() const { return stab_nodes_visited + pl_comparisons; }

    void reset() { *this = WorkCounters{}; }

    WorkCounters& operator+=(const WorkCounters& o) {
        stab_nodes_visited += o.stab_nodes_visited;
        pl_comparisons += o.pl_comparisons;
        structures_queried += o.structures_queried;
        cells_located += o.cells_located;
        return *this;
    }
};

} // namespace ofc
