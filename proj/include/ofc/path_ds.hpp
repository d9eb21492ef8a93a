#pragma once

// Iterative point location along a catalog path. The path is cut into blocks
// of ceil(log n) consecutive vertices and every block gets one 2D stabbing
// structure over all rects of its vertices. A subpath touches at most two
// partial blocks.

#include "ofc/catalog.hpp"
#include "ofc/counters.hpp"
#include "ofc/stabbing.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace ofc {

class PathDS {
public:
    PathDS() = default;

    /// `sequence` lists the path's vertices in order; `total_complexity` is the
    /// n that fixes the block length (the whole catalog's, for heavy paths).
    PathDS(const CatalogGraph& g, std::vector<VertexId> sequence, std::int64_t total_complexity)
        : sequence_(std::move(sequence)) {
        block_len_ = static_cast<std::size_t>(ceil_log2(total_complexity));
        for (std::size_t i = 0; i < sequence_.size(); ++i) position_.emplace(sequence_[i], i);
        const std::size_t blocks = (sequence_.size() + block_len_ - 1) / block_len_;
        blocks_.reserve(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            std::vector<StabItem> items;
            const std::size_t end = std::min(sequence_.size(), (b + 1) * block_len_);
            for (std::size_t i = b * block_len_; i < end; ++i) {
                for (const Rect& r : g.vertex(sequence_[i]).tiling.rects) {
                    items.push_back(stab_item(r, static_cast<std::uint64_t>(entries_.size())));
                    entries_.push_back(Entry{static_cast<std::uint32_t>(i), r.id});
                }
            }
            blocks_.emplace_back(std::move(items));
        }
    }

    std::size_t block_count() const { return blocks_.size(); }
    std::size_t block_length() const { return block_len_; }
    const std::vector<VertexId>& sequence() const { return sequence_; }

    std::int64_t stored_entries() const {
        std::int64_t total = 0;
        for (const auto& b : blocks_) total += b.stored_entries();
        return total;
    }

    /// Position of v on the path, or -1.
    std::int64_t position(VertexId v) const {
        auto it = position_.find(v);
        return it == position_.end() ? -1 : static_cast<std::int64_t>(it->second);
    }

    /// Locates q at every path position in [first, last].
    void query_range(const Point& q, std::size_t first, std::size_t last, std::vector<Location>& out,
                     WorkCounters& wc) const {
        const std::size_t before = out.size();
        for (std::size_t b = first / block_len_; b <= last / block_len_; ++b) {
            wc.structures_queried += 1;
            blocks_[b].query(
                q,
                [&](std::uint64_t key) {
                    const Entry& e = entries_[key];
                    if (e.position >= first && e.position <= last) {
                        out.push_back(Location{sequence_[e.position], e.rect});
                    }
                },
                wc);
        }
        wc.cells_located += static_cast<std::int64_t>(out.size() - before);
        if (out.size() - before != last - first + 1) {
            throw Error(ErrorCode::PointOutsideBBox, "query point is outside some tiling on the path");
        }
    }

private:
    struct Entry {
        std::uint32_t position;
        RectId rect;
    };

    std::vector<VertexId> sequence_;
    std::unordered_map<VertexId, std::size_t> position_;
    std::size_t block_len_ = 1;
    std::vector<Stab2D> blocks_;
    std::vector<Entry> entries_;
};

/// The catalog must be a simple path; it is walked from one endpoint.
inline PathDS build_path_structure(const CatalogGraph& g) {
    VertexId start = 0;
    for (const auto& v : g.vertices()) {
        if (v.adj.size() > 2) throw Error(ErrorCode::InvalidCatalog, "catalog is not a path");
        if (v.adj.size() <= 1) {
            start = v.id;
            break;
        }
    }
    std::vector<VertexId> seq{start};
    VertexId prev = CatalogTree::kNone;
    while (true) {
        VertexId next = CatalogTree::kNone;
        for (VertexId u : g.vertex(seq.back()).adj) {
            if (u != prev) next = u;
        }
        if (next == CatalogTree::kNone || seq.size() == g.size()) break;
        prev = seq.back();
        seq.push_back(next);
    }
    if (seq.size() != g.size()) throw Error(ErrorCode::InvalidCatalog, "catalog is not a path");
    return PathDS(g, std::move(seq), g.complexity());
}

inline PathDS build_path_structure(const CatalogTree& t) { return build_path_structure(t.graph()); }

inline QueryAnswer query_path_structure(const PathDS& ds, const PathQuery& q, WorkCounters& wc) {
    if (q.path.empty()) throw Error(ErrorCode::InvalidQuery, "empty path");
    std::vector<std::int64_t> pos;
    pos.reserve(q.path.size());
    for (VertexId v : q.path) {
        const std::int64_t p = ds.position(v);
        if (p < 0) throw Error(ErrorCode::VertexNotOnPath, "vertex " + std::to_string(v));
        pos.push_back(p);
    }
    const bool forward = pos.size() < 2 || pos[1] > pos[0];
    for (std::size_t i = 1; i < pos.size(); ++i) {
        if (pos[i] != pos[i - 1] + (forward ? 1 : -1)) {
            throw Error(ErrorCode::VertexNotOnPath, "query is not a contiguous subpath");
        }
    }
    const auto [lo, hi] = std::minmax(pos.front(), pos.back());
    QueryAnswer out;
    ds.query_range(q.q, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), out.located, wc);
    return out;
}

} // namespace ofc
