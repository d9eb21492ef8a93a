#pragma once

// Short query paths on catalog trees: (r^2/n_i)-cuttings per vertex, one
// stabbing structure per subpath of ceil(log r) vertices, r = 2^ceil(sqrt(log n)).

#include "ofc/catalog.hpp"
#include "ofc/subpath.hpp"

namespace ofc {

class ShortTreeDS {
public:
    ShortTreeDS() = default;

    /// No regime check; the dispatcher uses this on trees of any height.
    ShortTreeDS(const CatalogTree& t, std::uint64_t seed) : tree_(&t), ds_(t.graph(), 2.0, seed) {}

    const CatalogTree& tree() const { return *tree_; }
    const SubpathDS& subpaths() const { return ds_; }
    std::int64_t stored_entries() const { return ds_.stored_entries(); }

    QueryAnswer query(const PathQuery& q, WorkCounters& wc) const {
        check_path(tree_->graph(), q.path);
        QueryAnswer a;
        ds_.query(q.path, q.q, a.located, wc);
        return a;
    }

private:
    const CatalogTree* tree_ = nullptr;
    SubpathDS ds_;
};

/// The tree must outlive the structure.
inline ShortTreeDS build_short_tree(const CatalogTree& t, std::uint64_t seed = 1) {
    const double half_log = log2_real(static_cast<double>(t.complexity())) / 2.0;
    if (t.height() > half_log && t.complexity() >= config::kSmallInstance) {
        throw Error(ErrorCode::HeightOutOfRegime,
                    "height " + std::to_string(t.height()) + " exceeds (log n)/2 = " + std::to_string(half_log));
    }
    return ShortTreeDS(t, seed);
}

inline QueryAnswer query_short_tree(const ShortTreeDS& ds, const PathQuery& q, WorkCounters& wc) {
    return ds.query(q, wc);
}

inline QueryAnswer query_short_tree(const ShortTreeDS& ds, const PathQuery& q) {
    WorkCounters wc;
    return ds.query(q, wc);
}

} // namespace ofc
