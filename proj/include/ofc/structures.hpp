#pragma once

// One handle over every query structure, picked by name. Used by the command
// line driver and the acceptance suite.

#include "ofc/bootstrap.hpp"
#include "ofc/graph.hpp"
#include "ofc/long_path.hpp"
#include "ofc/path_ds.hpp"
#include "ofc/short_tree.hpp"
#include "ofc/standalone.hpp"
#include "ofc/tree_ds.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <variant>

namespace ofc {

enum class StructureKind { Path, ShortTree, MidTree, Tree, Graph, LongPath, Naive };

inline StructureKind parse_structure_kind(const std::string& s) {
    if (s == "path") return StructureKind::Path;
    if (s == "short-tree") return StructureKind::ShortTree;
    if (s == "mid-tree") return StructureKind::MidTree;
    if (s == "tree") return StructureKind::Tree;
    if (s == "graph") return StructureKind::Graph;
    if (s == "long-path") return StructureKind::LongPath;
    if (s == "naive") return StructureKind::Naive;
    throw Error(ErrorCode::InvalidParameter, "unknown structure kind '" + s + "'");
}

inline const char* structure_name(StructureKind k) {
    switch (k) {
    case StructureKind::Path: return "path";
    case StructureKind::ShortTree: return "short-tree";
    case StructureKind::MidTree: return "mid-tree";
    case StructureKind::Tree: return "tree";
    case StructureKind::Graph: return "graph";
    case StructureKind::LongPath: return "long-path";
    case StructureKind::Naive: return "naive";
    }
    return "?";
}

inline bool needs_tree(StructureKind k) {
    return k == StructureKind::ShortTree || k == StructureKind::MidTree || k == StructureKind::Tree ||
           k == StructureKind::LongPath;
}

/// Cost model each structure's counter work is fitted against.
inline double cost_model(StructureKind k, std::int64_t n, std::size_t len) {
    const double lg = std::max(1.0, log2_real(static_cast<double>(n)));
    const double p = static_cast<double>(len);
    switch (k) {
    case StructureKind::Naive: return p * lg;
    case StructureKind::Path: return lg + p;
    case StructureKind::ShortTree:
    case StructureKind::Graph: return lg + p * std::sqrt(lg);
    case StructureKind::MidTree: return std::sqrt(p) * lg;
    case StructureKind::LongPath: return lg * lg + p;
    case StructureKind::Tree: return lg + p + std::min(p * std::sqrt(lg), std::sqrt(p) * lg);
    }
    return 1.0;
}

inline const char* cost_model_name(StructureKind k) {
    switch (k) {
    case StructureKind::Naive: return "|pi|*log n";
    case StructureKind::Path: return "log n + |pi|";
    case StructureKind::ShortTree:
    case StructureKind::Graph: return "log n + |pi|*sqrt(log n)";
    case StructureKind::MidTree: return "sqrt(|pi|)*log n";
    case StructureKind::LongPath: return "log^2 n + |pi|";
    case StructureKind::Tree: return "log n + |pi| + min(|pi|*sqrt(log n), sqrt(|pi|)*log n)";
    }
    return "?";
}

class Structure {
public:
    /// Takes ownership of the catalog. A catalog with m-1 edges is also held as a
    /// tree rooted at vertex 0; tree kinds require that.
    Structure(StructureKind kind, CatalogGraph g, int rounds, std::uint64_t seed) : kind_(kind) {
        std::size_t ends = 0;
        for (const auto& v : g.vertices()) ends += v.adj.size();
        if (needs_tree(kind) || ends == 2 * (g.size() - 1)) {
            tree_ = std::make_unique<CatalogTree>(std::move(g));
            graph_ = &tree_->graph();
        } else {
            owned_ = std::make_unique<CatalogGraph>(std::move(g));
            graph_ = owned_.get();
        }
        switch (kind) {
        case StructureKind::Path: ds_ = build_path_structure(*graph_); break;
        case StructureKind::ShortTree: ds_ = build_short_tree(*tree_, seed); break;
        case StructureKind::MidTree: ds_ = std::make_unique<BootstrappedDS>(build_bootstrapped(*tree_, rounds, seed)); break;
        case StructureKind::Tree: ds_ = std::make_unique<TreeDS>(build_tree(*tree_, rounds, seed)); break;
        case StructureKind::Graph: ds_ = build_graph(*graph_, seed); break;
        case StructureKind::LongPath: ds_ = build_long_path(*tree_); break;
        case StructureKind::Naive: ds_ = StandaloneDS(*graph_); break;
        }
    }

    StructureKind kind() const { return kind_; }
    const CatalogGraph& graph() const { return *graph_; }
    const CatalogTree* tree() const { return tree_.get(); }

    std::int64_t stored_entries() const {
        return std::visit(
            [](const auto& ds) -> std::int64_t {
                if constexpr (requires { ds->stored_entries(); }) {
                    return ds->stored_entries();
                } else {
                    return ds.stored_entries();
                }
            },
            ds_);
    }

    /// Layer cells of the bootstrapped structure; 0 for other kinds.
    std::int64_t layer_cells() const {
        if (auto* b = std::get_if<std::unique_ptr<BootstrappedDS>>(&ds_)) return (*b)->layer_cells();
        if (auto* t = std::get_if<std::unique_ptr<TreeDS>>(&ds_)) return (*t)->mid().layer_cells();
        return 0;
    }

    /// Dispatch target of the tree structure for a path length; empty for other kinds.
    std::string regime(std::size_t len) const {
        if (auto* t = std::get_if<std::unique_ptr<TreeDS>>(&ds_)) return regime_name((*t)->regime(len));
        return {};
    }

    /// Subgraph queries are accepted by the graph and naive kinds only.
    QueryAnswer query(const Point& q, const std::vector<VertexId>& vertices, bool subgraph, WorkCounters& wc) const {
        if (subgraph) {
            if (auto* g = std::get_if<GraphDS>(&ds_)) return query_graph(*g, SubgraphQuery{q, vertices}, wc);
            if (auto* s = std::get_if<StandaloneDS>(&ds_)) return s->query(vertices, q, wc);
            throw Error(ErrorCode::InvalidQuery,
                        std::string("subgraph queries need the graph or naive structure, not ") + structure_name(kind_));
        }
        const PathQuery pq{q, vertices};
        return std::visit(
            [&](const auto& ds) -> QueryAnswer {
                using T = std::decay_t<decltype(ds)>;
                if constexpr (std::is_same_v<T, PathDS>) {
                    return query_path_structure(ds, pq, wc);
                } else if constexpr (std::is_same_v<T, ShortTreeDS>) {
                    return query_short_tree(ds, pq, wc);
                } else if constexpr (std::is_same_v<T, std::unique_ptr<BootstrappedDS>>) {
                    return query_bootstrapped(*ds, pq, wc);
                } else if constexpr (std::is_same_v<T, std::unique_ptr<TreeDS>>) {
                    return query_tree(*ds, pq, wc);
                } else if constexpr (std::is_same_v<T, GraphDS>) {
                    return query_graph(ds, pq, wc);
                } else if constexpr (std::is_same_v<T, LongPathDS>) {
                    return query_long_path(ds, pq, wc);
                } else {
                    check_path(*graph_, vertices);
                    return ds.query(vertices, q, wc);
                }
            },
            ds_);
    }

private:
    StructureKind kind_;
    std::unique_ptr<CatalogGraph> owned_;
    std::unique_ptr<CatalogTree> tree_;
    const CatalogGraph* graph_ = nullptr;
    std::variant<PathDS, ShortTreeDS, std::unique_ptr<BootstrappedDS>, std::unique_ptr<TreeDS>, GraphDS, LongPathDS,
                 StandaloneDS>
        ds_;
};

} // namespace ofc
