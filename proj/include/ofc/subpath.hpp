#pragma once

// Every simple path of at most L vertices in the catalog gets one 2D stabbing
// structure over the cutting cells of its vertices. A query path is cut into
// windows of L vertices; each window costs one stabbing query plus one
// conflict-list point location per vertex.

#include "ofc/catalog.hpp"
#include "ofc/config.hpp"
#include "ofc/stabbing.hpp"
#include "ofc/standalone.hpp"
#include "ofc/vertex_cuttings.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

namespace ofc {

struct SubpathParams {
    std::int64_t r = 1;           // 2^ceil(sqrt(log n))
    int requested_length = 1;     // ceil(log r)
    int length = 1;               // after the enumeration cap
    double cut_divisor = 1.0;     // cutting parameter is n_i / cut_divisor
};

namespace detail {

struct SeqHash {
    std::size_t operator()(const std::vector<VertexId>& s) const {
        std::size_t h = 1469598103934665603ull;
        for (VertexId v : s) h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

/// Calls f(path) once per simple path of 1..len vertices, in the orientation
/// with front < back. Stops early (returning false) if f returns false.
template <class F>
bool for_each_subpath(const CatalogGraph& g, int len, F&& f) {
    std::vector<VertexId> path;
    std::vector<char> on(g.size(), 0);
    bool go = true;
    auto dfs = [&](auto&& self, VertexId v) -> void {
        path.push_back(v);
        on[v] = 1;
        if (path.size() == 1 || path.front() < path.back()) go = f(path);
        if (go && static_cast<int>(path.size()) < len) {
            for (VertexId u : g.vertex(v).adj) {
                if (!on[u]) self(self, u);
                if (!go) break;
            }
        }
        on[v] = 0;
        path.pop_back();
    };
    for (VertexId s = 0; s < g.size() && go; ++s) dfs(dfs, s);
    return go;
}

inline std::size_t count_subpaths(const CatalogGraph& g, int len, std::size_t cap) {
    std::size_t count = 0;
    for_each_subpath(g, len, [&](const std::vector<VertexId>&) { return ++count <= cap; });
    return count;
}

} // namespace detail

class SubpathDS {
public:
    SubpathDS() = default;

    /// cut_exponent e: each vertex gets an (r^e / n_i)-cutting, i.e. parameter n_i / r^e.
    SubpathDS(const CatalogGraph& g, double cut_exponent, std::uint64_t seed) : graph_(&g) {
        const std::int64_t n = g.complexity();
        if (n < config::kSmallInstance) {
            fallback_ = StandaloneDS(g);
            small_ = true;
            return;
        }
        const int k = static_cast<int>(std::ceil(std::sqrt(log2_real(static_cast<double>(n)))));
        params_.r = std::int64_t{1} << k;
        params_.requested_length = std::max(1, k);
        params_.cut_divisor = std::pow(static_cast<double>(params_.r), cut_exponent);
        int len = params_.requested_length;
        const auto cap = static_cast<std::size_t>(config::kMaxSubpaths);
        while (len > 1 && detail::count_subpaths(g, len, cap) > cap) --len;
        params_.length = len;

        Rng rng(seed);
        const double div = params_.cut_divisor;
        cuts_ = VertexCuttings(g, [div](std::int64_t ni) { return cutting_parameter(ni, div); }, rng);

        detail::for_each_subpath(g, len, [&](const std::vector<VertexId>& p) {
            std::vector<StabItem> items;
            for (std::size_t j = 0; j < p.size(); ++j) {
                const auto& cells = cuts_.cells(p[j]).rects;
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    items.push_back(stab_item(cells[c], (static_cast<std::uint64_t>(j) << 32) | c));
                }
            }
            index_.emplace(p, static_cast<std::uint32_t>(stabs_.size()));
            stabs_.emplace_back(std::move(items));
            return true;
        });
    }

    const SubpathParams& params() const { return params_; }
    std::size_t subpath_count() const { return stabs_.size(); }
    bool is_fallback() const { return small_; }
    const VertexCuttings& cuttings() const { return cuts_; }

    std::int64_t stored_entries() const {
        if (small_) return fallback_.stored_entries();
        std::int64_t total = cuts_.stored_entries();
        for (const auto& s : stabs_) total += s.stored_entries();
        return total;
    }

    /// Locates q on every vertex of a simple path (already validated).
    void query(const std::vector<VertexId>& path, const Point& q, std::vector<Location>& out,
               WorkCounters& wc) const {
        if (small_) {
            fallback_.query(path, q, out, wc);
            return;
        }
        const std::size_t len = static_cast<std::size_t>(params_.length);
        std::vector<VertexId> window;
        for (std::size_t at = 0; at < path.size(); at += len) {
            window.assign(path.begin() + static_cast<std::ptrdiff_t>(at),
                          path.begin() + static_cast<std::ptrdiff_t>(std::min(path.size(), at + len)));
            if (window.front() > window.back()) std::reverse(window.begin(), window.end());
            const auto it = index_.find(window);
            if (it == index_.end()) throw Error(ErrorCode::InvalidQuery, "window is not a catalog path");
            wc.structures_queried += 1;
            std::size_t found = 0;
            stabs_[it->second].query(
                q,
                [&](std::uint64_t key) {
                    const VertexId v = window[key >> 32];
                    out.push_back(Location{v, cuts_.locate(v, key & 0xffffffffu, q, wc)});
                    ++found;
                },
                wc);
            if (found != window.size()) {
                throw Error(ErrorCode::PointOutsideBBox, "query point is outside some tiling on the path");
            }
        }
    }

private:
    const CatalogGraph* graph_ = nullptr;
    SubpathParams params_;
    bool small_ = false;
    StandaloneDS fallback_;
    VertexCuttings cuts_;
    std::vector<Stab2D> stabs_;
    std::unordered_map<std::vector<VertexId>, std::uint32_t, detail::SeqHash> index_;
};

} // namespace ofc
