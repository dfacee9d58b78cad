// Two-point visibility and ray shooting: a single walk along the line through the seed.

#include <functional>

#include "polyvis/predicates.hpp"
#include "polyvis/visibility.hpp"
#include "vis_common.hpp"

namespace polyvis {

namespace {

struct WalkEnd {
    bool reached = false; // target found (two-point mode)
    Point tip;            // far end of the visible prefix (ray mode)
};

class LineWalker {
public:
    // side(x): position of x relative to the directed line. target: optional point that ends the walk.
    LineWalker(const Mesh &m, Point seed, Point dir, std::function<Orientation(Point)> side, const Point *target,
               QueryProbe probe)
        : m_(m), s_(seed), dir_(dir), side_(std::move(side)), target_(target), probe_(probe) {}

    WalkEnd Run(const PointLocationResult &pl) {
        if (target_ && *target_ == s_) return {true, s_};
        switch (detail::StartOf(pl)) {
        case detail::StartKind::Vertex:
            return FromVertex(pl.snapped() ? pl.snapped_vertex : pl.feature);
        case detail::StartKind::Edge:
            return FromEdge(pl.feature);
        case detail::StartKind::Triangle:
            return FromTriangle(pl.triangle);
        }
        return {false, s_};
    }

private:
    const Mesh &m_;
    Point s_;
    Point dir_;
    std::function<Orientation(Point)> side_;
    const Point *target_;
    QueryProbe probe_;
    std::size_t steps_ = 0;

    [[nodiscard]] Point P(VertexId v) const { return m_.point(v); }
    Orientation Side(VertexId v) const { return side_(P(v)); }

    void Count(TriangleId t) {
        ++steps_;
        if (probe_.stats) ++probe_.stats->triangles_traversed;
        if (probe_.trace) probe_.trace->push_back(t);
    }

    // x is on the line; true when it lies ahead of `from` along the direction.
    [[nodiscard]] bool Ahead(Point from, Point x) const {
        if (x.x != from.x) return (x.x > from.x) == (dir_.x > 0.0);
        return (x.y > from.y) == (dir_.y > 0.0);
    }

    // The walk moves along the line from a to b: is the target on that closed piece?
    [[nodiscard]] bool TargetBetween(Point a, Point b) const {
        if (!target_) return false;
        Point p = *target_;
        return p == a || p == b || (Ahead(a, p) && Ahead(p, b));
    }

    [[nodiscard]] bool TargetIn(TriangleId t) const {
        return target_ && PointInTriangle(*target_, m_.corners(t), 0.0).where != TriangleLocation::Outside;
    }

    WalkEnd Blocked(Point at) const { return {false, at}; }

    WalkEnd ExitThrough(TriangleId t, int k) {
        const Triangle &T = m_.triangle(t);
        Point a = P(T.v[k]), b = P(T.v[detail::Next(k)]);
        if (target_) return Blocked(s_);
        auto hit = RaySegmentIntersection(s_, DirVector(dir_.x, dir_.y), a, b);
        if (!hit) return Blocked(SquaredDistance(s_, a) < SquaredDistance(s_, b) ? a : b);
        return Blocked(hit->point);
    }

    WalkEnd FromVertex(VertexId w) {
        const std::size_t limit = m_.vertex_count() + m_.triangle_count() + 2;
        while (steps_ <= limit) {
            ++steps_;
            Point pw = P(w);
            if (target_ && *target_ == pw) return {true, pw};
            TriangleId through = kNone;
            int through_edge = -1;
            VertexId next = kNone;
            for (const Mesh::Fan &f : m_.fans(w)) {
                for (TriangleId t : m_.fan_triangles(f)) {
                    int i = m_.corner_of(t, w);
                    const Triangle &T = m_.triangle(t);
                    VertexId a = T.v[detail::Next(i)], b = T.v[detail::Prev(i)];
                    Orientation sa = Side(a), sb = Side(b);
                    if (sa == Orientation::CCW || sb == Orientation::CW) continue;
                    if (sa == Orientation::Collinear) {
                        if (Ahead(pw, P(a))) next = a;
                    } else if (sb == Orientation::Collinear) {
                        if (Ahead(pw, P(b))) next = b;
                    } else {
                        through = t;
                        through_edge = detail::Next(i);
                    }
                    if (next != kNone || through != kNone) break;
                }
                if (next != kNone || through != kNone) break;
            }
            if (next != kNone) {
                if (TargetBetween(pw, P(next))) return {true, *target_};
                w = next;
                continue;
            }
            if (through == kNone) return Blocked(pw);
            Count(through);
            if (TargetIn(through)) return {true, *target_};
            auto r = Cross(through, through_edge);
            if (r.vertex != kNone) {
                w = r.vertex;
                continue;
            }
            return r.end;
        }
        return Blocked(s_);
    }

    struct CrossResult {
        VertexId vertex = kNone;
        WalkEnd end;
    };

    // Leaves t through edge k and keeps crossing triangles until a vertex on the line or the boundary.
    CrossResult Cross(TriangleId t, int k) {
        const std::size_t limit = m_.triangle_count() + 2;
        for (std::size_t g = 0; g <= limit; ++g) {
            const Triangle &T = m_.triangle(t);
            TriangleId n = T.n[k];
            if (n == kNone) return {kNone, ExitThrough(t, k)};
            int entry = m_.edge_towards(n, t);
            t = n;
            Count(t);
            if (TargetIn(t)) return {kNone, {true, *target_}};
            VertexId c = m_.triangle(t).v[detail::Prev(entry)];
            Orientation sc = Side(c);
            if (sc == Orientation::Collinear) return {c, {}};
            k = sc == Orientation::CCW ? detail::Next(entry) : detail::Prev(entry);
        }
        return {kNone, Blocked(s_)};
    }

    WalkEnd Continue(CrossResult r) {
        if (r.vertex == kNone) return r.end;
        if (TargetBetween(s_, P(r.vertex))) return {true, *target_};
        return FromVertex(r.vertex);
    }

    WalkEnd FromEdge(EdgeId e) {
        const MeshEdge &me = m_.edge(e);
        Orientation sb = side_(P(me.b));
        if (sb == Orientation::Collinear) {
            // Moving along the edge itself.
            VertexId w = Ahead(s_, P(me.b)) ? me.b : me.a;
            if (TargetBetween(s_, P(w))) return {true, *target_};
            return FromVertex(w);
        }
        TriangleId t = sb == Orientation::CW ? me.t0 : me.t1;
        if (t == kNone) return Blocked(s_);
        Count(t);
        if (TargetIn(t)) return {true, *target_};
        int ei = -1;
        for (int i = 0; i < 3; ++i)
            if (m_.triangle(t).e[i] == e) ei = i;
        const Triangle &T = m_.triangle(t);
        VertexId c = T.v[detail::Prev(ei)];
        Orientation sc = Side(c);
        if (sc == Orientation::Collinear) {
            if (TargetBetween(s_, P(c))) return {true, *target_};
            return FromVertex(c);
        }
        return Continue(Cross(t, sc == Orientation::CCW ? detail::Next(ei) : detail::Prev(ei)));
    }

    WalkEnd FromTriangle(TriangleId t) {
        Count(t);
        if (TargetIn(t)) return {true, *target_};
        const Triangle &T = m_.triangle(t);
        for (int k = 0; k < 3; ++k) {
            VertexId v = T.v[k];
            if (Side(v) == Orientation::Collinear && Ahead(s_, P(v))) {
                if (TargetBetween(s_, P(v))) return {true, *target_};
                return FromVertex(v);
            }
        }
        for (int k = 0; k < 3; ++k) {
            if (Side(T.v[k]) == Orientation::CW && Side(T.v[detail::Next(k)]) == Orientation::CCW)
                return Continue(Cross(t, k));
        }
        return Blocked(s_);
    }
};

} // namespace

bool TwoPointVisible(const Mesh &mesh, const PointLocationResult &pl, Point q, Point p, std::optional<double> d,
                     QueryProbe probe) {
    Point s = Seed(mesh, pl, q);
    if (d && Distance(s, p) > *d) return false;
    if (p == s) return true;
    LineWalker w(mesh, s, p - s, [s, p](Point x) { return Orient(s, p, x); }, &p, probe);
    return w.Run(pl).reached;
}

std::optional<Point> ShootRay(const Mesh &mesh, const PointLocationResult &pl, Point q, DirVector u,
                              std::optional<double> d, QueryProbe probe) {
    Point s = Seed(mesh, pl, q);
    LineWalker w(mesh, s, u.AsPoint(), [s, u](Point x) { return OrientDir(s, u, x); }, nullptr, probe);
    Point tip = w.Run(pl).tip;
    if (d && Distance(s, tip) > *d) return std::nullopt;
    return tip;
}

} // namespace polyvis
