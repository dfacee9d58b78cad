#include "polyvis/io/query.hpp"

#include <array>
#include <stdexcept>

#include "polyvis/graph.hpp"

namespace polyvis::io {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::array<const char *, 6> kNames{"region", "2pt", "ray", "vertices", "points", "graph"};

Json P(Point p) { return Json::array({p.x, p.y}); }

Json Points(const std::vector<Point> &ps) {
    Json a = Json::array();
    for (Point p : ps) a.push_back(P(p));
    return a;
}

const char *CoincidenceName(Coincidence c) {
    switch (c) {
    case Coincidence::Interior: return "interior";
    case Coincidence::OnEdge: return "edge";
    case Coincidence::OnVertex: return "vertex";
    }
    return "?";
}

Json LocationJson(const PointLocationResult &pl) {
    Json j;
    j["triangle"] = pl.triangle;
    j["coincidence"] = CoincidenceName(pl.coincidence);
    j["eps1_used"] = pl.eps1_used;
    j["snapped_vertex"] = pl.snapped() ? Json(pl.snapped_vertex) : Json(nullptr);
    return j;
}

Json StatsJson(const VisQueryStats &s) {
    Json j;
    j["triangles_traversed"] = s.triangles_traversed;
    j["views_split"] = s.views_split;
    j["boundary_edges_hit"] = s.boundary_edges_hit;
    return j;
}

Json RequestJson(const QueryRequest &req) {
    Json q;
    q["type"] = ToString(req.type);
    if (req.type != QueryType::Graph) q["at"] = P(req.at);
    if (req.to) q["to"] = P(*req.to);
    if (req.dir) q["dir"] = Json::array({req.dir->ux, req.dir->uy});
    if (!req.sites.empty()) q["sites"] = req.sites.size();
    q["range"] = req.range ? Json(*req.range) : Json(nullptr);
    return q;
}

QueryOutcome Graph(const VisibilityEngine &eng, const QueryRequest &req, Json doc, SvgScene *svg) {
    std::vector<VertexId> V(eng.mesh().vertex_count());
    for (std::size_t i = 0; i < V.size(); ++i) V[i] = static_cast<VertexId>(i);
    GraphOptions opt;
    opt.range = req.range;
    VisGraph g = BuildGraph(eng, V, req.sites, opt);

    Json r;
    r["kind"] = "graph";
    r["vertex_sites"] = V.size();
    r["point_sites"] = Points(req.sites);
    r["unlocated"] = g.unlocated;
    Json edges = Json::array();
    std::vector<std::pair<Point, Point>> segs;
    auto site = [&](int i) { return i < static_cast<int>(V.size()) ? eng.mesh().point(V[i]) : req.sites[i - V.size()]; };
    for (const GraphEdge &e : g.edges) {
        edges.push_back(Json::array({ToString(e.tag), e.a, e.b}));
        segs.emplace_back(site(e.a), site(e.b));
    }
    r["edges"] = std::move(edges);
    doc["result"] = std::move(r);
    Json st;
    st["edges"] = g.edges.size();
    st["VV"] = g.count(GraphEdge::Tag::VV);
    st["PP"] = g.count(GraphEdge::Tag::PP);
    st["VP"] = g.count(GraphEdge::Tag::VP);
    doc["stats"] = std::move(st);
    if (svg) {
        svg->AddSegments(segs);
        for (Point p : req.sites) svg->AddPoint(p);
    }
    return {std::move(doc), false};
}

} // namespace

const char *ToString(QueryType t) { return kNames[static_cast<int>(t)]; }

std::optional<QueryType> ParseQueryType(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (name == kNames[i]) return static_cast<QueryType>(i);
    return std::nullopt;
}

QueryOutcome RunQuery(const VisibilityEngine &eng, const QueryRequest &req, SvgScene *svg) {
    if (req.range && !(*req.range >= 0.0)) throw std::invalid_argument("range must be non-negative");
    Json doc;
    doc["query"] = RequestJson(req);
    if (req.type == QueryType::Graph) return Graph(eng, req, std::move(doc), svg);

    if (req.type == QueryType::TwoPoint && !req.to) throw std::invalid_argument("2pt query needs a target point");
    if (req.type == QueryType::Ray && !req.dir) throw std::invalid_argument("ray query needs a direction");

    const Mesh &mesh = eng.mesh();
    const Point q = req.at;
    if (svg) svg->AddPoint(q);
    auto pl = eng.Locate(q);
    if (!pl) {
        doc["result"] = nullptr;
        doc["stats"] = Json::object();
        return {std::move(doc), true};
    }
    VisQueryStats stats;
    QueryProbe probe{&stats, nullptr};
    Json r;
    switch (req.type) {
    case QueryType::Region: {
        RegionResult res = eng.RegionFrom(*pl, q, req.range);
        stats = res.stats;
        r["kind"] = "region";
        r["polygon"] = Points(res.polygon);
        r["area"] = SignedArea(res.polygon);
        if (svg) svg->AddRegion(res.radial);
        break;
    }
    case QueryType::TwoPoint: {
        bool v = TwoPointVisible(mesh, *pl, q, *req.to, req.range, probe);
        r["kind"] = "bool";
        r["value"] = v;
        if (svg) {
            svg->AddRay(q, *req.to);
            svg->AddPoint(*req.to);
        }
        break;
    }
    case QueryType::Ray: {
        auto hit = ShootRay(mesh, *pl, q, *req.dir, req.range, probe);
        r["kind"] = "point";
        r["value"] = hit ? P(*hit) : Json(nullptr);
        if (svg && hit) svg->AddRay(q, *hit);
        break;
    }
    case QueryType::Vertices: {
        auto ids = VisibleVertices(mesh, *pl, q, req.range, {}, probe);
        std::vector<Point> pts;
        for (VertexId v : ids) pts.push_back(mesh.point(v));
        r["kind"] = "ids";
        r["ids"] = ids;
        r["points"] = Points(pts);
        if (svg) {
            std::vector<std::pair<Point, Point>> segs;
            for (Point p : pts) segs.emplace_back(Seed(mesh, *pl, q), p);
            svg->AddSegments(segs);
        }
        break;
    }
    case QueryType::Points: {
        SiteIndex idx = eng.Sites(req.sites);
        auto ids = VisiblePoints(mesh, *pl, q, idx, req.range, probe);
        r["kind"] = "ids";
        r["ids"] = ids;
        if (svg) {
            std::vector<std::pair<Point, Point>> segs;
            for (int i : ids) segs.emplace_back(Seed(mesh, *pl, q), req.sites[i]);
            svg->AddSegments(segs);
            for (Point p : req.sites) svg->AddPoint(p);
        }
        break;
    }
    case QueryType::Graph: break;
    }
    doc["result"] = std::move(r);
    Json st = StatsJson(stats);
    st["location"] = LocationJson(*pl);
    doc["stats"] = std::move(st);
    return {std::move(doc), false};
}

} // namespace polyvis::io
