#pragma once

// Bootstrapped mid-length structure. Round k replaces every tiling by the cells
// of an (f_k/n_i)-cutting and answers paths with |pi| in (lo_k, up_k] on those
// cells with a mid-tree structure, followed by one conflict-list point location
// per vertex. The remaining lengths up to (log^2 n)/2 go to a mid-tree
// structure on the original rects.
//
// Schedule: f_0 = ceil(log n), f_k = ceil(log^{*(k)} n); lo_0 = (log n)/2,
// up_k = ((log n / log f_k)^2)/2, lo_{k+1} = up_k. Rounds stop at c or once f_k <= 3.

#include "ofc/catalog.hpp"
#include "ofc/midtree.hpp"
#include "ofc/vertex_cuttings.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace ofc {

/// log^{*(i)} x: log^{*(0)} = log2, and for i >= 1 the number of times
/// log^{*(i-1)} must be applied to x to get down to 1.
inline double iterated_log_star(int i, double x) {
    if (i == 0) return log2_real(x);
    if (x <= 1.0) return 0.0;
    return 1.0 + iterated_log_star(i, iterated_log_star(i - 1, x));
}

struct BootstrapRound {
    std::int64_t f = 1;
    double lo = 0;
    double up = 0;
};

inline std::vector<BootstrapRound> bootstrap_schedule(std::int64_t n, int rounds) {
    if (rounds < 0) throw Error(ErrorCode::InvalidRounds, "rounds = " + std::to_string(rounds));
    const double lg = log2_real(static_cast<double>(n));
    const double top = lg * lg / 2.0;
    std::vector<BootstrapRound> out;
    double lo = lg / 2.0;
    for (int k = 0; k < rounds; ++k) {
        const auto f = static_cast<std::int64_t>(
            std::ceil(k == 0 ? lg : iterated_log_star(k, static_cast<double>(n))));
        if (f <= 3) break;
        const double ratio = lg / log2_real(static_cast<double>(f));
        const double up = std::clamp(ratio * ratio / 2.0, lo, std::max(lo, top));
        out.push_back(BootstrapRound{f, lo, up});
        lo = up;
    }
    return out;
}

class BootstrappedDS {
public:
    BootstrappedDS() = default;

    BootstrappedDS(const CatalogTree& t, int rounds, std::uint64_t seed) : tree_(&t) {
        n_ = t.complexity();
        schedule_ = bootstrap_schedule(n_, rounds);
        const double lg = log2_real(static_cast<double>(n_));
        lo_ = lg / 2.0;
        top_ = lg * lg / 2.0;
        Rng rng(seed);
        for (const auto& round : schedule_) {
            auto layer = std::make_unique<Layer>();
            layer->round = round;
            // A window without an integer length can never be queried: its cells
            // are counted but no structure is kept.
            build_layer(*layer, rng, std::floor(round.up) > round.lo);
            layers_.push_back(std::move(layer));
        }
        base_lo_ = schedule_.empty() ? lo_ : schedule_.back().up;
        if (base_lo_ < top_) base_ = MidTreeDS(t, base_lo_, top_, rng(), n_);
        has_base_ = base_lo_ < top_;
    }

    const std::vector<BootstrapRound>& schedule() const { return schedule_; }
    std::size_t rounds() const { return schedule_.size(); }
    double base_lo() const { return base_lo_; }
    bool has_base() const { return has_base_; }
    const MidTreeDS& base() const { return base_; }

    /// Cutting cells of round k.
    std::int64_t round_cells(std::size_t k) const { return layers_[k]->cells; }

    /// Inputs held by all root-to-leaf structures over every layer and the base:
    /// cutting cells in a layer, original rects in the base. This is the space
    /// the telescoping argument tracks.
    std::int64_t layer_cells() const {
        std::int64_t total = has_base_ ? base_.stored_inputs() : 0;
        for (const auto& l : layers_) {
            if (l->built) total += l->mid.stored_inputs();
        }
        return total;
    }

    std::int64_t stored_entries() const {
        std::int64_t total = has_base_ ? base_.stored_entries() : 0;
        for (const auto& l : layers_) {
            if (!l->built) continue;
            total += l->mid.stored_entries();
            for (const auto& c : l->cuts) total += c.stored_entries();
        }
        return total;
    }

    /// Round serving a length, or -1 for the base.
    int route(std::size_t len) const {
        const auto x = static_cast<double>(len);
        if (x <= lo_ || x > top_) {
            throw Error(ErrorCode::PathOutOfRegime, "|pi| = " + std::to_string(len) + " outside ((log n)/2, (log^2 n)/2]");
        }
        for (std::size_t k = 0; k < layers_.size(); ++k) {
            const auto& r = layers_[k]->round;
            if (r.lo < x && x <= r.up) return static_cast<int>(k);
        }
        return -1;
    }

    void answer(const std::vector<VertexId>& path, const Point& q, std::vector<Location>& out, WorkCounters& wc,
                MidTreeTrace* trace = nullptr) const {
        const int k = route(path.size());
        if (k < 0) {
            base_.answer(path, q, out, wc, trace);
            return;
        }
        const Layer& l = *layers_[static_cast<std::size_t>(k)];
        std::vector<Location> cells;
        l.mid.answer(path, q, cells, wc, trace);
        WorkCounters extra;
        for (const Location& c : cells) {
            const auto pos = l.cuts[c.vertex].locate_in_cell(static_cast<std::size_t>(c.rect), q, extra);
            out.push_back(Location{c.vertex, tree_->tiling(c.vertex).rects[pos].id});
        }
        if (trace) trace->conflict_work += extra.work();
        wc += extra;
    }

    QueryAnswer query(const PathQuery& q, WorkCounters& wc, MidTreeTrace* trace = nullptr) const {
        check_path(tree_->graph(), q.path);
        QueryAnswer a;
        answer(q.path, q.q, a.located, wc, trace);
        return a;
    }

private:
    struct Layer {
        BootstrapRound round;
        bool built = false;
        std::int64_t cells = 0;
        std::unique_ptr<CatalogTree> cell_tree;
        std::vector<IndexedCutting> cuts; // by vertex id
        MidTreeDS mid;
    };

    void build_layer(Layer& l, Rng& rng, bool keep) {
        const CatalogTree& t = *tree_;
        std::vector<CatalogVertex> vs(t.size());
        // Cuttings are built even for an unused window so that round_cells() reports them.
        l.cuts.reserve(t.size());
        for (VertexId v = 0; v < t.size(); ++v) {
            const Tiling& tiling = t.tiling(v);
            const auto param = cutting_parameter(static_cast<std::int64_t>(tiling.size()),
                                                 static_cast<double>(l.round.f));
            l.cuts.emplace_back(tiling, cutting_build(tiling, param, rng));
            vs[v] = CatalogVertex{v, l.cuts.back().cells(), t.graph().vertex(v).adj};
            l.cells += static_cast<std::int64_t>(vs[v].tiling.size());
        }
        if (!keep) {
            l.cuts.clear();
            return;
        }
        l.cell_tree = std::make_unique<CatalogTree>(CatalogGraph(std::move(vs), t.graph().degree_bound()), t.root());
        l.mid = MidTreeDS(*l.cell_tree, l.round.lo, l.round.up, rng(), n_);
        l.built = true;
    }

    const CatalogTree* tree_ = nullptr;
    std::int64_t n_ = 0;
    double lo_ = 0;
    double top_ = 0;
    double base_lo_ = 0;
    bool has_base_ = false;
    std::vector<BootstrapRound> schedule_;
    std::vector<std::unique_ptr<Layer>> layers_;
    MidTreeDS base_;
};

/// The tree must outlive the structure.
inline BootstrappedDS build_bootstrapped(const CatalogTree& t, int rounds, std::uint64_t seed = 1) {
    if (rounds < 0) throw Error(ErrorCode::InvalidRounds, "rounds = " + std::to_string(rounds));
    return BootstrappedDS(t, rounds, seed);
}

inline QueryAnswer query_bootstrapped(const BootstrappedDS& ds, const PathQuery& q, WorkCounters& wc,
                                      MidTreeTrace* trace = nullptr) {
    return ds.query(q, wc, trace);
}

} // namespace ofc
