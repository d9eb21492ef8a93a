#pragma once

// Catalog tree structure: one structure per path-length regime, picked at query
// time. |pi| <= (log n)/2 goes to the short-tree structure, |pi| <= (log^2 n)/2
// to the bootstrapped mid-length structure, anything longer to heavy paths.

#include "ofc/bootstrap.hpp"
#include "ofc/long_path.hpp"
#include "ofc/short_tree.hpp"

namespace ofc {

enum class Regime { Short, Mid, Long };

inline const char* regime_name(Regime r) {
    switch (r) {
    case Regime::Short: return "short";
    case Regime::Mid: return "mid";
    case Regime::Long: return "long";
    }
    return "?";
}

class TreeDS {
public:
    TreeDS() = default;

    /// The tree must outlive the structure.
    TreeDS(const CatalogTree& t, int rounds, std::uint64_t seed)
        : tree_(&t), short_(t, seed), mid_(t, rounds, seed + 1), long_(t) {
        const double lg = log2_real(static_cast<double>(t.complexity()));
        short_max_ = lg / 2.0;
        mid_max_ = lg * lg / 2.0;
    }

    Regime regime(std::size_t len) const {
        const auto x = static_cast<double>(len);
        if (x <= short_max_) return Regime::Short;
        if (x <= mid_max_) return Regime::Mid;
        return Regime::Long;
    }

    const ShortTreeDS& short_tree() const { return short_; }
    const BootstrappedDS& mid() const { return mid_; }
    const LongPathDS& long_path() const { return long_; }

    std::int64_t stored_entries() const {
        return short_.stored_entries() + mid_.stored_entries() + long_.stored_entries();
    }

    QueryAnswer query(const PathQuery& q, WorkCounters& wc) const {
        check_path(tree_->graph(), q.path);
        QueryAnswer a;
        switch (regime(q.path.size())) {
        case Regime::Short: short_.subpaths().query(q.path, q.q, a.located, wc); break;
        case Regime::Mid: mid_.answer(q.path, q.q, a.located, wc); break;
        case Regime::Long: long_.answer(q.path, q.q, a.located, wc); break;
        }
        return a;
    }

private:
    const CatalogTree* tree_ = nullptr;
    double short_max_ = 0;
    double mid_max_ = 0;
    ShortTreeDS short_;
    BootstrappedDS mid_;
    LongPathDS long_;
};

inline TreeDS build_tree(const CatalogTree& t, int rounds = config::kDefaultRounds, std::uint64_t seed = 1) {
    if (rounds < 0) throw Error(ErrorCode::InvalidRounds, "rounds = " + std::to_string(rounds));
    return TreeDS(t, rounds, seed);
}

inline QueryAnswer query_tree(const TreeDS& ds, const PathQuery& q, WorkCounters& wc) { return ds.query(q, wc); }

inline QueryAnswer query_tree(const TreeDS& ds, const PathQuery& q) {
    WorkCounters wc;
    return ds.query(q, wc);
}

} // namespace ofc
