#include "polyvis/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "rows.hpp"

namespace polyvis {

const char *ToString(GraphEdge::Tag tag) {
    switch (tag) {
    case GraphEdge::Tag::VV: return "VV";
    case GraphEdge::Tag::PP: return "PP";
    case GraphEdge::Tag::VP: return "VP";
    }
    return "?";
}

std::size_t VisGraph::count(GraphEdge::Tag tag) const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](const GraphEdge &e) { return e.tag == tag; }));
}

namespace {

using Rows = std::vector<std::vector<int>>;

void CheckSites(const VisibilityEngine &eng, const std::vector<VertexId> &V, const std::vector<Point> &P) {
    std::vector<char> seen(eng.mesh().vertex_count(), 0);
    std::map<std::pair<double, double>, int> at;
    for (VertexId v : V) {
        if (v < 0 || static_cast<std::size_t>(v) >= seen.size()) throw std::invalid_argument("vertex site out of range");
        if (seen[v]++) throw std::invalid_argument("duplicate vertex site");
        Point p = eng.mesh().point(v);
        at[{p.x, p.y}] = v;
    }
    for (Point p : P)
        if (at.count({p.x, p.y})) throw std::invalid_argument("point site coincides with a vertex site");
}

std::vector<char> Filter(const VisibilityEngine &eng, const std::vector<VertexId> &V, std::vector<int> &site_of) {
    std::vector<char> filter(eng.mesh().vertex_count(), 0);
    site_of.assign(eng.mesh().vertex_count(), -1);
    for (std::size_t i = 0; i < V.size(); ++i) {
        filter[V[i]] = 1;
        site_of[V[i]] = static_cast<int>(i);
    }
    return filter;
}

// Edges from rows; row i of `rows` holds neighbors of site offset_i + i in the target index space.
void AddEdges(std::vector<GraphEdge> &out, GraphEdge::Tag tag, const Rows &rows, int offset_from, int offset_to) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int a = offset_from + static_cast<int>(i);
        for (int j : rows[i]) {
            int b = offset_to + j;
            if (a < b) out.push_back({tag, a, b});
        }
    }
}

// rows_ab[i] lists j (b side) seen from a_i; rows_ba[j] lists i seen from b_j.
void RequireSymmetric(const Rows &rows_ab, const Rows &rows_ba, const char *what) {
    for (std::size_t i = 0; i < rows_ab.size(); ++i) {
        for (int j : rows_ab[i]) {
            const auto &back = rows_ba[j];
            if (!std::binary_search(back.begin(), back.end(), static_cast<int>(i)))
                throw std::logic_error(std::string("asymmetric visibility in ") + what);
        }
    }
}

VisGraph Empty(const std::vector<VertexId> &V, const std::vector<Point> &P) {
    VisGraph g;
    g.vertex_sites = V;
    g.point_sites = P;
    return g;
}

std::vector<int> Unlocated(const SiteIndex &idx) {
    std::vector<int> out;
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (!idx.location(static_cast<int>(i))) out.push_back(static_cast<int>(i));
    return out;
}

Rows VertexRows(const VisibilityEngine &eng, const std::vector<VertexId> &V, const std::vector<char> &filter,
                const std::vector<int> &site_of, std::optional<double> d, bool all, bool parallel) {
    return ComputeRows(V.size(), parallel, [&](std::size_t i) {
        VertexId v = V[i];
        std::vector<int> row;
        for (VertexId w : VisibleVertices(eng.mesh(), LocateVertex(eng.mesh(), v), eng.mesh().point(v), d, filter)) {
            int j = site_of[w];
            if (j != static_cast<int>(i) && (all || j > static_cast<int>(i))) row.push_back(j);
        }
        std::sort(row.begin(), row.end());
        return row;
    });
}

Rows PointRowsFromPoints(const VisibilityEngine &eng, const SiteIndex &idx, std::optional<double> d, bool all,
                         bool parallel) {
    return ComputeRows(idx.size(), parallel, [&](std::size_t i) {
        std::vector<int> row;
        const auto &pl = idx.location(static_cast<int>(i));
        if (!pl) return row;
        for (int j : VisiblePoints(eng.mesh(), *pl, idx.site(static_cast<int>(i)), idx, d))
            if (j != static_cast<int>(i) && (all || j > static_cast<int>(i))) row.push_back(j);
        return row;
    });
}

} // namespace

VisGraph VertexVertexGraph(const VisibilityEngine &eng, const std::vector<VertexId> &V, const GraphOptions &opt) {
    CheckSites(eng, V, {});
    VisGraph g = Empty(V, {});
    std::vector<int> site_of;
    auto filter = Filter(eng, V, site_of);
    Rows rows = VertexRows(eng, V, filter, site_of, opt.range, opt.check_symmetry, opt.parallel);
    if (opt.check_symmetry) RequireSymmetric(rows, rows, "vertex-vertex graph");
    AddEdges(g.edges, GraphEdge::Tag::VV, rows, 0, 0);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

VisGraph PointPointGraph(const VisibilityEngine &eng, const std::vector<Point> &P, const GraphOptions &opt) {
    VisGraph g = Empty({}, P);
    SiteIndex idx = eng.Sites(P);
    g.unlocated = Unlocated(idx);
    Rows rows = PointRowsFromPoints(eng, idx, opt.range, opt.check_symmetry, opt.parallel);
    if (opt.check_symmetry) RequireSymmetric(rows, rows, "point-point graph");
    AddEdges(g.edges, GraphEdge::Tag::PP, rows, 0, 0);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

VisGraph VertexPointGraph(const VisibilityEngine &eng, const std::vector<VertexId> &V, const std::vector<Point> &P,
                          const GraphOptions &opt) {
    CheckSites(eng, V, P);
    VisGraph g = Empty(V, P);
    SiteIndex idx = eng.Sites(P);
    g.unlocated = Unlocated(idx);
    const int nv = static_cast<int>(V.size());
    // Vertex sites have the smaller indices, so rows are computed from the vertices.
    Rows rows = ComputeRows(V.size(), opt.parallel, [&](std::size_t i) {
        VertexId v = V[i];
        auto row = VisiblePoints(eng.mesh(), LocateVertex(eng.mesh(), v), eng.mesh().point(v), idx, opt.range);
        return row;
    });
    if (opt.check_symmetry) {
        std::vector<int> site_of;
        auto filter = Filter(eng, V, site_of);
        Rows back = ComputeRows(P.size(), opt.parallel, [&](std::size_t j) {
            std::vector<int> row;
            const auto &pl = idx.location(static_cast<int>(j));
            if (!pl) return row;
            for (VertexId w : VisibleVertices(eng.mesh(), *pl, P[j], opt.range, filter)) row.push_back(site_of[w]);
            std::sort(row.begin(), row.end());
            return row;
        });
        RequireSymmetric(rows, back, "vertex-point graph");
        RequireSymmetric(back, rows, "vertex-point graph");
    }
    AddEdges(g.edges, GraphEdge::Tag::VP, rows, 0, nv);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

VisGraph MergeGraphs(const VisGraph &vv, const VisGraph &pp, const VisGraph &vp) {
    const auto &V = vp.vertex_sites;
    const auto &P = vp.point_sites;
    bool ok = vv.vertex_sites == V && (vv.point_sites.empty() || vv.point_sites == P) && pp.point_sites == P &&
              (pp.vertex_sites.empty() || pp.vertex_sites == V);
    if (!ok) throw std::invalid_argument("graphs are built over different site sets");
    VisGraph g = Empty(V, P);
    g.unlocated = vp.unlocated;
    g.edges = vv.edges;
    // A point-only graph indexes its sites from 0; move them behind the vertex sites.
    const int shift = pp.vertex_sites.empty() ? static_cast<int>(V.size()) : 0;
    for (GraphEdge e : pp.edges) g.edges.push_back({e.tag, e.a + shift, e.b + shift});
    g.edges.insert(g.edges.end(), vp.edges.begin(), vp.edges.end());
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

VisGraph BuildGraph(const VisibilityEngine &eng, const std::vector<VertexId> &V, const std::vector<Point> &P,
                    const GraphOptions &opt) {
    CheckSites(eng, V, P);
    return MergeGraphs(VertexVertexGraph(eng, V, opt), PointPointGraph(eng, P, opt), VertexPointGraph(eng, V, P, opt));
}

std::string ExportText(const VisGraph &g) {
    std::string out;
    for (const GraphEdge &e : g.edges) {
        out += ToString(e.tag);
        out += ' ';
        out += std::to_string(e.a);
        out += ' ';
        out += std::to_string(e.b);
        out += '\n';
    }
    return out;
}

} // namespace polyvis
