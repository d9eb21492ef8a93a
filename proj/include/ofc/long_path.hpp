#pragma once

// Long query paths: heavy-path decomposition with one path structure per heavy
// path. A query path meets each heavy path in at most one run per half.

#include "ofc/catalog.hpp"
#include "ofc/path_ds.hpp"

#include <vector>

namespace ofc {

/// Heavy paths, each listed top to bottom. The heavy child is the one with the
/// largest subtree; equal sizes go to the lower vertex id.
inline std::vector<std::vector<VertexId>> heavy_path_decompose(const CatalogTree& t) {
    const auto& order = t.bfs_order();
    std::vector<std::size_t> size(t.size(), 1);
    for (std::size_t i = order.size(); i-- > 1;) size[t.parent(order[i])] += size[order[i]];
    std::vector<VertexId> heavy(t.size(), CatalogTree::kNone);
    for (VertexId v : order) {
        for (VertexId c : t.children(v)) {
            const VertexId h = heavy[v];
            if (h == CatalogTree::kNone || size[c] > size[h] || (size[c] == size[h] && c < h)) heavy[v] = c;
        }
    }
    std::vector<std::vector<VertexId>> paths;
    for (VertexId v : order) {
        if (v != t.root() && heavy[t.parent(v)] == v) continue;
        std::vector<VertexId> path{v};
        while (heavy[path.back()] != CatalogTree::kNone) path.push_back(heavy[path.back()]);
        paths.push_back(std::move(path));
    }
    return paths;
}

class LongPathDS {
public:
    LongPathDS() = default;

    /// The tree must outlive the structure.
    explicit LongPathDS(const CatalogTree& t) : tree_(&t) {
        auto paths = heavy_path_decompose(t);
        where_.resize(t.size());
        for (std::size_t i = 0; i < paths.size(); ++i) {
            for (std::size_t j = 0; j < paths[i].size(); ++j) where_[paths[i][j]] = {static_cast<std::uint32_t>(i), j};
            paths_.emplace_back(t.graph(), std::move(paths[i]), t.complexity());
        }
    }

    std::size_t heavy_path_count() const { return paths_.size(); }

    std::int64_t stored_entries() const {
        std::int64_t total = 0;
        for (const auto& p : paths_) total += p.stored_entries();
        return total;
    }

    /// structures_queried counts heavy-path runs.
    void answer(const std::vector<VertexId>& path, const Point& q, std::vector<Location>& out,
                WorkCounters& wc) const {
        const SplitPath s = split_at_apex(*tree_, path);
        for (const auto* half : {&s.first, &s.second}) {
            std::size_t i = 0;
            while (i < half->size()) {
                const auto hp = where_[(*half)[i]].path;
                std::size_t j = i;
                while (j + 1 < half->size() && where_[(*half)[j + 1]].path == hp) ++j;
                WorkCounters local;
                paths_[hp].query_range(q, where_[(*half)[i]].pos, where_[(*half)[j]].pos, out, local);
                local.structures_queried = 1;
                wc += local;
                i = j + 1;
            }
        }
    }

    QueryAnswer query(const PathQuery& q, WorkCounters& wc) const {
        check_path(tree_->graph(), q.path);
        const double lg = log2_real(static_cast<double>(tree_->complexity()));
        if (static_cast<double>(q.path.size()) <= lg * lg / 2.0) {
            throw Error(ErrorCode::PathTooShort, "|pi| = " + std::to_string(q.path.size()) + " <= (log^2 n)/2");
        }
        QueryAnswer a;
        answer(q.path, q.q, a.located, wc);
        return a;
    }

private:
    struct Where {
        std::uint32_t path = 0;
        std::size_t pos = 0;
    };

    const CatalogTree* tree_ = nullptr;
    std::vector<PathDS> paths_;
    std::vector<Where> where_;
};

inline LongPathDS build_long_path(const CatalogTree& t) { return LongPathDS(t); }

inline QueryAnswer query_long_path(const LongPathDS& ds, const PathQuery& q, WorkCounters& wc) {
    return ds.query(q, wc);
}

} // namespace ofc
