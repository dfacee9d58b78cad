#include "polyvis/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyvis/predicates.hpp"

namespace polyvis {

namespace {

using VKind = RadialVertex::Kind;
using EKind = RadialEdge::Kind;

void Append(RadialVisibilityRegion &reg, RadialVertex v, RadialEdge out) {
    if (!reg.vertices.empty() && reg.vertices.back().point == v.point) {
        RadialVertex &prev = reg.vertices.back();
        if (v.kind == VKind::EnvVertex) prev = v;
        reg.edges.back() = out;
        return;
    }
    reg.vertices.push_back(v);
    reg.edges.push_back(out);
}

void CloseCycle(RadialVisibilityRegion &reg) {
    while (reg.vertices.size() > 1 && reg.vertices.back().point == reg.vertices.front().point) {
        if (reg.vertices.back().kind == VKind::EnvVertex) reg.vertices.front() = reg.vertices.back();
        reg.vertices.pop_back();
        reg.edges.pop_back();
    }
}

double Angle(Point seed, Point p) { return std::atan2(p.y - seed.y, p.x - seed.x); }

Point OnCircle(Point seed, double d, Point p) {
    double r = Distance(seed, p);
    if (r == 0.0) return {seed.x + d, seed.y};
    return {seed.x + d * (p.x - seed.x) / r, seed.y + d * (p.y - seed.y) / r};
}

} // namespace

RadialVisibilityRegion ToRadial(const Mesh &mesh, const AbstractVisibilityRegion &abs, int *degenerate) {
    RadialVisibilityRegion reg;
    reg.seed = abs.seed;
    reg.radius = abs.radius;
    auto resolve = [&](VertexId end, VertexId restriction, const AbstractElement &e) -> RadialVertex {
        if (restriction == kNone) return {mesh.point(end), VKind::EnvVertex, end};
        Point a = mesh.point(e.right), b = mesh.point(e.left);
        auto hit = RaySegmentIntersectionThrough(abs.seed, mesh.point(restriction), a, b);
        if (!hit) {
            if (degenerate) ++*degenerate;
            Point r = mesh.point(restriction);
            Point p = SquaredDistance(r, a) < SquaredDistance(r, b) ? a : b;
            return {p, VKind::EnvVertex, p == a ? e.right : e.left};
        }
        if (hit->point == a) return {a, VKind::EnvVertex, e.right};
        if (hit->point == b) return {b, VKind::EnvVertex, e.left};
        return {hit->point, VKind::BoundaryIntersection, e.edge};
    };
    for (const AbstractElement &e : abs.elements) {
        if (e.kind == AbstractElement::Kind::Node) {
            Append(reg, {mesh.point(e.node), VKind::EnvVertex, e.node}, {EKind::FreeChord});
            continue;
        }
        RadialEdge along = e.pruned ? RadialEdge{EKind::FreeChord} : RadialEdge{EKind::OnBoundary, e.edge};
        Append(reg, resolve(e.right, e.restrict_right, e), along);
        Append(reg, resolve(e.left, e.restrict_left, e), {EKind::FreeChord});
    }
    CloseCycle(reg);
    return reg;
}

RadialVisibilityRegion IntersectWithCircle(const RadialVisibilityRegion &reg, double d) {
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("radius must be positive");
    const Point q = reg.seed;
    RadialVisibilityRegion out;
    out.seed = q;
    out.radius = reg.radius ? std::min(*reg.radius, d) : d;

    const std::size_t n = reg.vertices.size();
    std::vector<char> is_exit; // per emitted vertex: an arc leaves it
    auto emit = [&](RadialVertex v, RadialEdge e, bool exit) {
        if (!out.vertices.empty() && out.vertices.back().point == v.point) {
            out.edges.back() = e;
            is_exit.back() = exit;
            return;
        }
        out.vertices.push_back(v);
        out.edges.push_back(e);
        is_exit.push_back(exit);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const RadialVertex &A = reg.vertices[i];
        const RadialVertex &B = reg.vertices[(i + 1) % n];
        const RadialEdge &e = reg.edges[i];
        bool a_in = Distance(q, A.point) <= d;
        bool b_in = Distance(q, B.point) <= d;
        Point a = A.point - q, v = B.point - A.point;
        double vv = Dot(v, v);
        double av = Dot(a, v);
        double disc = av * av - vv * (Dot(a, a) - d * d);
        double t1 = 0.0, t2 = 1.0;
        bool crosses = vv > 0.0 && disc > 0.0;
        if (crosses) {
            double root = std::sqrt(disc);
            t1 = (-av - root) / vv;
            t2 = (-av + root) / vv;
        }
        auto at = [&](double t) {
            t = std::clamp(t, 0.0, 1.0);
            return OnCircle(q, d, A.point + t * v);
        };
        RadialEdge arc{EKind::Arc};
        if (a_in) emit(A, e, false);
        if (a_in && !b_in) {
            emit({at(t2), VKind::ArcPoint, kNone}, arc, true);
        } else if (!a_in && b_in) {
            emit({at(t1), VKind::ArcPoint, kNone}, e, false);
        } else if (!a_in && !b_in && crosses && t1 > 0.0 && t2 < 1.0 && t1 < t2) {
            emit({at(t1), VKind::ArcPoint, kNone}, e, false);
            emit({at(t2), VKind::ArcPoint, kNone}, arc, true);
        }
    }
    if (out.vertices.size() > 1 && out.vertices.back().point == out.vertices.front().point) {
        out.vertices.pop_back();
        out.edges.pop_back();
        is_exit.pop_back();
    }
    if (out.vertices.empty()) {
        // Nothing of the region boundary reaches into the disk.
        out.vertices.push_back({{q.x + d, q.y}, VKind::ArcPoint, kNone});
        out.edges.push_back({EKind::Arc, kNone, 2.0 * std::numbers::pi});
        return out;
    }
    const std::size_t m = out.vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (out.edges[i].kind != EKind::Arc) continue;
        Point x = out.vertices[i].point, y = out.vertices[(i + 1) % m].point;
        double sweep = Angle(q, y) - Angle(q, x);
        while (sweep < 0.0) sweep += 2.0 * std::numbers::pi;
        while (sweep >= 2.0 * std::numbers::pi) sweep -= 2.0 * std::numbers::pi;
        if (m == 1 || (sweep == 0.0 && x == y)) sweep = 2.0 * std::numbers::pi;
        out.edges[i].arc_angle = sweep;
    }
    return out;
}

RadialVisibilityRegion SampleArcEdges(const RadialVisibilityRegion &reg, double max_angle) {
    if (!(max_angle > 0.0)) throw std::invalid_argument("arc sampling angle must be positive");
    RadialVisibilityRegion out;
    out.seed = reg.seed;
    out.radius = reg.radius;
    const std::size_t n = reg.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RadialEdge &e = reg.edges[i];
        if (e.kind != EKind::Arc) {
            out.vertices.push_back(reg.vertices[i]);
            out.edges.push_back(e);
            continue;
        }
        if (!reg.radius) throw std::invalid_argument("arc edge without radius");
        const double d = *reg.radius;
        const Point x = reg.vertices[i].point;
        const double start = Angle(reg.seed, x);
        const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(e.arc_angle / max_angle - 1e-9)));
        out.vertices.push_back(reg.vertices[i]);
        out.edges.push_back({EKind::FreeChord});
        for (std::size_t j = 1; j < pieces; ++j) {
            double phi = start + e.arc_angle * static_cast<double>(j) / static_cast<double>(pieces);
            Point p{reg.seed.x + d * std::cos(phi), reg.seed.y + d * std::sin(phi)};
            out.vertices.push_back({p, VKind::ArcPoint, kNone});
            out.edges.push_back({EKind::FreeChord});
        }
    }
    return out;
}

Ring ToPolygon(const RadialVisibilityRegion &reg) {
    Ring ring;
    for (std::size_t i = 0; i < reg.vertices.size(); ++i) {
        if (reg.edges[i].kind == EKind::Arc) throw std::invalid_argument("region still has arc edges; sample first");
        Point p = reg.vertices[i].point;
        if (ring.empty() || !(ring.back() == p)) ring.push_back(p);
    }
    while (ring.size() > 1 && ring.back() == ring.front()) ring.pop_back();
    return ring;
}

Ring Canonical(const Ring &ring) {
    Ring r;
    for (Point p : ring)
        if (r.empty() || !(r.back() == p)) r.push_back(p);
    while (r.size() > 1 && r.back() == r.front()) r.pop_back();
    if (r.empty()) return r;
    auto first = std::min_element(r.begin(), r.end(), LexLess);
    std::rotate(r.begin(), first, r.end());
    return r;
}

} // namespace polyvis
