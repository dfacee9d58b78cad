#include "polyvis/engine.hpp"

namespace polyvis {

VisibilityEngine VisibilityEngine::Build(Environment env, EngineConfig cfg) {
    VisibilityEngine e;
    e.mesh_ = Mesh::Build(env);
    e.grid_ = BucketGrid::Build(e.mesh_, cfg.bucket_size);
    e.env_ = std::move(env);
    e.cfg_ = std::move(cfg);
    return e;
}

RegionResult VisibilityEngine::RegionFrom(const PointLocationResult &pl, Point q, std::optional<double> d) const {
    RegionResult r;
    r.location = pl;
    r.abstract_region = VisibilityRegion(mesh_, pl, q, d, {&r.stats, nullptr});
    r.radial = ToRadial(mesh_, r.abstract_region, &r.degenerate_restrictions);
    if (d) r.radial = IntersectWithCircle(r.radial, *d);
    r.polygon = ToPolygon(SampleArcEdges(r.radial, cfg_.arc_angle));
    return r;
}

std::optional<RegionResult> VisibilityEngine::Region(Point q, std::optional<double> d) const {
    auto pl = Locate(q);
    if (!pl) return std::nullopt;
    return RegionFrom(*pl, q, d);
}

std::optional<bool> VisibilityEngine::TwoPoint(Point q, Point p, std::optional<double> d, VisQueryStats *stats) const {
    auto pl = Locate(q);
    if (!pl) return std::nullopt;
    return TwoPointVisible(mesh_, *pl, q, p, d, {stats, nullptr});
}

std::optional<std::optional<Point>> VisibilityEngine::Ray(Point q, DirVector u, std::optional<double> d,
                                                          VisQueryStats *stats) const {
    auto pl = Locate(q);
    if (!pl) return std::nullopt;
    return ShootRay(mesh_, *pl, q, u, d, {stats, nullptr});
}

std::optional<std::vector<VertexId>> VisibilityEngine::Vertices(Point q, std::optional<double> d,
                                                                const std::vector<char> &filter) const {
    auto pl = Locate(q);
    if (!pl) return std::nullopt;
    return VisibleVertices(mesh_, *pl, q, d, filter);
}

std::optional<std::vector<int>> VisibilityEngine::Points(Point q, const SiteIndex &sites,
                                                         std::optional<double> d) const {
    auto pl = Locate(q);
    if (!pl) return std::nullopt;
    return VisiblePoints(mesh_, *pl, q, sites, d);
}

} // namespace polyvis
