#pragma once

// Line-oriented text formats. '#' starts a comment; blank lines are skipped.
//
// Geometry file:
//   bbox xlo xhi ylo yhi
//   rect id xlo xhi ylo yhi
//   seg h|v fixed lo hi
// Catalog file:
//   graph|tree n_vertices degree
//   adj v u1 u2 ...            one line per vertex, in id order
//   vertex v                   then a geometry block (bbox + rects) for v
// Query file:
//   path qx qy v1 v2 ...
//   subgraph qx qy { v1 v2 ... }   braces optional
//
// Catalog coordinates are rank-normalized on load; query points go through the
// same map.

#include "ofc/catalog.hpp"
#include "ofc/hardgen.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ofc {

namespace detail {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next non-empty line split into tokens; false at end of input.
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
            std::istringstream ss(line);
            tokens.clear();
            for (std::string tok; ss >> tok;) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    /// Pushes the current line back so the next call returns it again.
    void unread(std::vector<std::string> tokens) {
        pending_ = std::move(tokens);
        has_pending_ = true;
    }

    bool take(std::vector<std::string>& tokens) {
        if (has_pending_) {
            tokens = std::move(pending_);
            has_pending_ = false;
            return true;
        }
        return next(tokens);
    }

    std::size_t line() const { return line_no_; }

    [[noreturn]] void fail(const std::string& why) const { throw ParseError(line_no_, why); }

    template <class T>
    T number(const std::string& tok) const {
        T v{};
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail("bad number '" + tok + "'");
        return v;
    }

    void expect_count(const std::vector<std::string>& t, std::size_t n) const {
        if (t.size() != n) {
            fail("'" + t[0] + "' takes " + std::to_string(n - 1) + " fields, got " + std::to_string(t.size() - 1));
        }
    }

    Rect rect(const std::vector<std::string>& t, std::size_t at, RectId id) const {
        Rect r{id, number<Coord>(t[at]), number<Coord>(t[at + 1]), number<Coord>(t[at + 2]), number<Coord>(t[at + 3])};
        if (!r.valid()) fail("empty rectangle");
        return r;
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
    std::vector<std::string> pending_;
    bool has_pending_ = false;
};

} // namespace detail

struct GeometryFile {
    Rect bbox;
    std::vector<Rect> rects;
    std::vector<Segment> segments;
};

inline GeometryFile read_geometry(std::istream& in) {
    detail::LineReader rd(in);
    GeometryFile out;
    std::vector<std::string> t;
    bool have_bbox = false;
    while (rd.next(t)) {
        if (t[0] == "bbox") {
            if (have_bbox) rd.fail("second bbox");
            rd.expect_count(t, 5);
            out.bbox = rd.rect(t, 1, 0);
            have_bbox = true;
        } else if (!have_bbox) {
            rd.fail("expected bbox first");
        } else if (t[0] == "rect") {
            rd.expect_count(t, 6);
            out.rects.push_back(rd.rect(t, 2, rd.number<RectId>(t[1])));
        } else if (t[0] == "seg") {
            rd.expect_count(t, 5);
            if (t[1] != "h" && t[1] != "v") rd.fail("segment axis must be h or v");
            Segment s{t[1] == "h" ? Axis::horizontal : Axis::vertical, rd.number<Coord>(t[2]), rd.number<Coord>(t[3]),
                      rd.number<Coord>(t[4])};
            if (s.lo >= s.hi) rd.fail("degenerate segment");
            out.segments.push_back(s);
        } else {
            rd.fail("unknown record '" + t[0] + "'");
        }
    }
    if (!have_bbox) rd.fail("missing bbox");
    return out;
}

inline void write_geometry(std::ostream& out, const GeometryFile& g) {
    out << "bbox " << g.bbox.xlo << ' ' << g.bbox.xhi << ' ' << g.bbox.ylo << ' ' << g.bbox.yhi << '\n';
    for (const Rect& r : g.rects) out << "rect " << r.id << ' ' << r.xlo << ' ' << r.xhi << ' ' << r.ylo << ' ' << r.yhi << '\n';
    for (const Segment& s : g.segments) {
        out << "seg " << (s.axis == Axis::horizontal ? 'h' : 'v') << ' ' << s.fixed << ' ' << s.lo << ' ' << s.hi << '\n';
    }
}

/// Sorted distinct coordinates per axis; maps original coordinates to ranks.
struct RankMap {
    std::vector<Coord> xs;
    std::vector<Coord> ys;

    static Coord rank(const std::vector<Coord>& axis, Coord v) {
        return static_cast<Coord>(std::upper_bound(axis.begin(), axis.end(), v) - axis.begin()) - 1;
    }
    /// A point keeps its containment relations: x in [a, b) iff rank(x) in [rank(a), rank(b)).
    Point map(const Point& p) const { return Point{rank(xs, p.x), rank(ys, p.y)}; }
    Rect map(const Rect& r) const { return Rect{r.id, rank(xs, r.xlo), rank(xs, r.xhi), rank(ys, r.ylo), rank(ys, r.yhi)}; }
};

struct CatalogFile {
    bool is_tree = false;
    CatalogGraph graph;
    RankMap ranks;
};

inline CatalogFile read_catalog(std::istream& in) {
    detail::LineReader rd(in);
    std::vector<std::string> t;
    if (!rd.next(t)) rd.fail("empty catalog file");
    if (t[0] != "graph" && t[0] != "tree") rd.fail("header must start with 'graph' or 'tree'");
    rd.expect_count(t, 3);
    CatalogFile out;
    out.is_tree = t[0] == "tree";
    const auto count = rd.number<std::size_t>(t[1]);
    const int degree = rd.number<int>(t[2]);
    if (count == 0) rd.fail("catalog needs at least one vertex");
    if (degree < 1) rd.fail("degree must be positive");

    std::vector<CatalogVertex> vs(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!rd.next(t)) rd.fail("missing adjacency line for vertex " + std::to_string(i));
        if (t[0] != "adj" || t.size() < 2) rd.fail("expected 'adj v ...'");
        if (rd.number<std::size_t>(t[1]) != i) rd.fail("adjacency lines must be in id order");
        vs[i].id = static_cast<VertexId>(i);
        for (std::size_t k = 2; k < t.size(); ++k) {
            const auto u = rd.number<std::size_t>(t[k]);
            if (u >= count) rd.fail("neighbor " + t[k] + " out of range");
            vs[i].adj.push_back(static_cast<VertexId>(u));
        }
    }

    std::vector<char> seen(count, 0);
    while (rd.take(t)) {
        if (t[0] != "vertex") rd.fail("expected 'vertex v'");
        rd.expect_count(t, 2);
        const auto v = rd.number<std::size_t>(t[1]);
        if (v >= count) rd.fail("vertex " + t[1] + " out of range");
        if (seen[v]) rd.fail("vertex " + t[1] + " listed twice");
        seen[v] = 1;
        if (!rd.next(t) || t[0] != "bbox") rd.fail("vertex block must start with bbox");
        rd.expect_count(t, 5);
        Tiling& tiling = vs[v].tiling;
        tiling.bbox = rd.rect(t, 1, 0);
        while (rd.next(t)) {
            if (t[0] != "rect") {
                rd.unread(t);
                break;
            }
            rd.expect_count(t, 6);
            tiling.rects.push_back(rd.rect(t, 2, rd.number<RectId>(t[1])));
        }
        if (tiling.rects.empty()) rd.fail("vertex " + std::to_string(v) + " has no rects");
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (!seen[i]) rd.fail("no tiling for vertex " + std::to_string(i));
    }

    for (const auto& v : vs) {
        for (const Rect& r : v.tiling.rects) {
            out.ranks.xs.insert(out.ranks.xs.end(), {r.xlo, r.xhi});
            out.ranks.ys.insert(out.ranks.ys.end(), {r.ylo, r.yhi});
        }
        out.ranks.xs.insert(out.ranks.xs.end(), {v.tiling.bbox.xlo, v.tiling.bbox.xhi});
        out.ranks.ys.insert(out.ranks.ys.end(), {v.tiling.bbox.ylo, v.tiling.bbox.yhi});
    }
    for (auto* axis : {&out.ranks.xs, &out.ranks.ys}) {
        std::sort(axis->begin(), axis->end());
        axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
    }
    for (std::size_t i = 0; i < count; ++i) {
        Tiling& tiling = vs[i].tiling;
        tiling.bbox = out.ranks.map(tiling.bbox);
        for (Rect& r : tiling.rects) r = out.ranks.map(r);
        const auto check = check_tiling(tiling);
        if (!check.ok) throw Error(ErrorCode::InvalidTiling, "vertex " + std::to_string(i) + ": " + check.reason);
    }
    if (out.is_tree) {
        std::size_t ends = 0;
        for (const auto& v : vs) ends += v.adj.size();
        if (ends != 2 * (count - 1)) throw Error(ErrorCode::InvalidCatalog, "tree file with a cycle");
    }
    out.graph = CatalogGraph(std::move(vs), degree);
    return out;
}

inline void write_catalog(std::ostream& out, const CatalogGraph& g, bool tree) {
    out << (tree ? "tree " : "graph ") << g.size() << ' ' << g.degree_bound() << '\n';
    for (const auto& v : g.vertices()) {
        out << "adj " << v.id;
        for (VertexId u : v.adj) out << ' ' << u;
        out << '\n';
    }
    for (const auto& v : g.vertices()) {
        out << "vertex " << v.id << '\n';
        write_geometry(out, GeometryFile{v.tiling.bbox, v.tiling.rects, {}});
    }
}

struct QueryLine {
    bool subgraph = false;
    Point q;
    std::vector<VertexId> vertices;
};

inline std::vector<QueryLine> read_queries(std::istream& in) {
    detail::LineReader rd(in);
    std::vector<QueryLine> out;
    std::vector<std::string> t;
    while (rd.next(t)) {
        if (t[0] != "path" && t[0] != "subgraph") rd.fail("query must start with 'path' or 'subgraph'");
        QueryLine ql;
        ql.subgraph = t[0] == "subgraph";
        std::vector<std::string> rest;
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (t[i] != "{" && t[i] != "}") rest.push_back(t[i]);
        }
        if (rest.size() < 3) rd.fail("query needs a point and at least one vertex");
        ql.q = Point{rd.number<Coord>(rest[0]), rd.number<Coord>(rest[1])};
        for (std::size_t i = 2; i < rest.size(); ++i) ql.vertices.push_back(rd.number<VertexId>(rest[i]));
        out.push_back(std::move(ql));
    }
    return out;
}

inline void write_queries(std::ostream& out, const std::vector<QueryLine>& qs) {
    for (const auto& q : qs) {
        out << (q.subgraph ? "subgraph " : "path ") << q.q.x << ' ' << q.q.y;
        if (q.subgraph) out << " {";
        for (VertexId v : q.vertices) out << ' ' << v;
        if (q.subgraph) out << " }";
        out << '\n';
    }
}

/// Sidecar for generated lower-bound instances: one line per rect.
inline void write_witness(std::ostream& out, const LBInstance& inst) {
    const auto& p = inst.params;
    out << "witness " << (p.regime == LBRegime::Short ? "short" : "mid") << " n " << p.n << " h " << p.h << " r "
        << p.r << " K " << p.K << " m " << p.m << " t " << p.t << " L " << p.L << " Z " << p.Z << '\n';
    out << "# vertex rect class group layer xlo xhi ylo yhi zlo zhi\n";
    for (const auto& w : inst.witness) {
        out << "box " << w.vertex << ' ' << w.rect << ' ' << w.cls << ' ' << w.group << ' ' << w.layer << ' '
            << w.box.xlo << ' ' << w.box.xhi << ' ' << w.box.ylo << ' ' << w.box.yhi << ' ' << w.box.zlo << ' '
            << w.box.zhi << '\n';
    }
}

} // namespace ofc
