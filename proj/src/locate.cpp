#include "polyvis/locate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyvis/predicates.hpp"

namespace polyvis {

namespace {

// Conservative triangle/box overlap test (separating axes with a small slack).
bool MayOverlap(const std::array<Point, 3> &t, Point lo, Point hi, double slack) {
    double tx0 = std::min({t[0].x, t[1].x, t[2].x}), tx1 = std::max({t[0].x, t[1].x, t[2].x});
    double ty0 = std::min({t[0].y, t[1].y, t[2].y}), ty1 = std::max({t[0].y, t[1].y, t[2].y});
    if (tx1 < lo.x - slack || tx0 > hi.x + slack || ty1 < lo.y - slack || ty0 > hi.y + slack) return false;
    const Point box[4] = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
    for (int i = 0; i < 3; ++i) {
        Point a = t[i], b = t[(i + 1) % 3];
        Point e = b - a;
        double len = std::sqrt(Dot(e, e));
        bool all_out = true;
        for (const Point &c : box) {
            if (Cross(e, c - a) >= -slack * len) {
                all_out = false;
                break;
            }
        }
        if (all_out) return false;
    }
    return true;
}

PointLocationResult MakeResult(const Mesh &mesh, TriangleId t, const TriangleHit &hit) {
    PointLocationResult r;
    r.triangle = t;
    const Triangle &tr = mesh.triangle(t);
    switch (hit.where) {
    case TriangleLocation::OnVertex:
        r.coincidence = Coincidence::OnVertex;
        r.feature = tr.v[hit.index];
        break;
    case TriangleLocation::OnEdge:
        r.coincidence = Coincidence::OnEdge;
        r.feature = tr.e[hit.index];
        break;
    default:
        r.coincidence = Coincidence::Interior;
        break;
    }
    return r;
}

void Snap(const Mesh &mesh, Point q, double eps2, PointLocationResult &r) {
    const Triangle &tr = mesh.triangle(r.triangle);
    double best = std::numeric_limits<double>::infinity();
    for (VertexId v : tr.v) {
        double d = Distance(mesh.point(v), q);
        if (d < best) {
            best = d;
            if (d <= eps2) r.snapped_vertex = v;
        }
    }
}

} // namespace

BucketGrid BucketGrid::Build(const Mesh &mesh, double cell_size) {
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw std::invalid_argument("bucket size must be positive");
    BucketGrid g;
    g.box_ = mesh.bbox();
    g.cell_ = cell_size;
    g.nx_ = static_cast<int>(std::floor(g.box_.Width() / cell_size)) + 1;
    g.ny_ = static_cast<int>(std::floor(g.box_.Height() / cell_size)) + 1;
    const std::size_t cells = static_cast<std::size_t>(g.nx_) * g.ny_;
    if (cells > (std::size_t{1} << 31)) throw std::invalid_argument("bucket grid too large for this bucket size");

    const double slack = 1e-9 * cell_size;
    std::vector<std::uint32_t> counts(cells + 1, 0);
    std::vector<std::pair<std::uint32_t, TriangleId>> pairs;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        auto c = mesh.corners(static_cast<TriangleId>(t));
        int x0 = g.CellX(std::min({c[0].x, c[1].x, c[2].x}));
        int x1 = g.CellX(std::max({c[0].x, c[1].x, c[2].x}));
        int y0 = g.CellY(std::min({c[0].y, c[1].y, c[2].y}));
        int y1 = g.CellY(std::max({c[0].y, c[1].y, c[2].y}));
        // Neighboring cells too: a vertex on a cell border touches both.
        x0 = std::max(0, x0 - 1);
        y0 = std::max(0, y0 - 1);
        for (int cy = y0; cy <= y1; ++cy) {
            for (int cx = x0; cx <= x1; ++cx) {
                Point lo{g.box_.lo.x + cx * cell_size, g.box_.lo.y + cy * cell_size};
                Point hi{lo.x + cell_size, lo.y + cell_size};
                if (MayOverlap(c, lo, hi, slack)) {
                    pairs.emplace_back(static_cast<std::uint32_t>(cy) * g.nx_ + cx, static_cast<TriangleId>(t));
                    ++counts[static_cast<std::size_t>(cy) * g.nx_ + cx + 1];
                }
            }
        }
    }
    for (std::size_t i = 1; i <= cells; ++i) counts[i] += counts[i - 1];
    g.offsets_ = counts;
    g.items_.resize(pairs.size());
    std::vector<std::uint32_t> fill(counts.begin(), counts.end() - 1);
    for (auto [cell, t] : pairs) g.items_[fill[cell]++] = t;
    return g;
}

int BucketGrid::CellX(double x) const {
    double f = std::floor((x - box_.lo.x) / cell_);
    if (!(f > 0.0)) return 0;
    return f >= nx_ - 1 ? nx_ - 1 : static_cast<int>(f);
}

int BucketGrid::CellY(double y) const {
    double f = std::floor((y - box_.lo.y) / cell_);
    if (!(f > 0.0)) return 0;
    return f >= ny_ - 1 ? ny_ - 1 : static_cast<int>(f);
}

std::optional<PointLocationResult> Locate(const Mesh &mesh, const BucketGrid &grid, Point q,
                                          const EpsilonConfig &eps) {
    if (!IsFinite(q) || mesh.triangle_count() == 0) return std::nullopt;
    double max_eps = 0.0;
    for (double e : eps.eps1) max_eps = std::max(max_eps, e);
    const Box &b = grid.box();
    if (q.x < b.lo.x - max_eps || q.x > b.hi.x + max_eps || q.y < b.lo.y - max_eps || q.y > b.hi.y + max_eps) {
        return std::nullopt;
    }
    const int cx = grid.CellX(q.x), cy = grid.CellY(q.y);
    for (TriangleId t : grid.cell(cx, cy)) {
        TriangleHit hit = PointInTriangle(q, mesh.corners(t), 0.0);
        if (hit.where == TriangleLocation::Outside) continue;
        PointLocationResult r = MakeResult(mesh, t, hit);
        Snap(mesh, q, eps.eps2, r);
        return r;
    }
    if (eps.eps1.empty()) return std::nullopt;

    // Fallback passes share one scan: the best triangle by minimum signed distance
    // is accepted at the first tolerance that admits it.
    double best = -std::numeric_limits<double>::infinity();
    TriangleId best_t = kNone;
    int best_edge = -1;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            int x = cx + dx, y = cy + dy;
            if (x < 0 || y < 0 || x >= grid.nx() || y >= grid.ny()) continue;
            for (TriangleId t : grid.cell(x, y)) {
                auto c = mesh.corners(t);
                double worst = std::numeric_limits<double>::infinity();
                int worst_edge = -1;
                for (int i = 0; i < 3; ++i) {
                    double d = SignedLineDistance(c[i], c[(i + 1) % 3], q);
                    if (d < worst) {
                        worst = d;
                        worst_edge = i;
                    }
                }
                if (worst > best || (worst == best && t < best_t)) {
                    best = worst;
                    best_t = t;
                    best_edge = worst_edge;
                }
            }
        }
    }
    if (best_t == kNone) return std::nullopt;
    for (double e : eps.eps1) {
        if (best >= -e) {
            PointLocationResult r = MakeResult(mesh, best_t, {TriangleLocation::OnEdge, best_edge});
            r.eps1_used = e;
            Snap(mesh, q, eps.eps2, r);
            return r;
        }
    }
    return std::nullopt;
}

PointLocationResult LocateVertex(const Mesh &mesh, VertexId v) {
    auto fans = mesh.fans(v);
    if (fans.empty()) throw std::invalid_argument("vertex has no incident triangle");
    PointLocationResult r;
    r.triangle = mesh.fan_triangles(fans[0])[0];
    r.coincidence = Coincidence::OnVertex;
    r.feature = v;
    r.snapped_vertex = v;
    return r;
}

} // namespace polyvis
