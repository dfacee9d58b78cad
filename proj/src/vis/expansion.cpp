// Triangular expansion over the constrained triangulation.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyvis/predicates.hpp"
#include "polyvis/visibility.hpp"
#include "vis_common.hpp"

namespace polyvis {

namespace {

enum class Mode { Region, Vertices, Points };

struct View {
    TriangleId t;
    int entry;          // edge of t through which the view enters
    VertexId R, L;      // rays seed -> R (right) and seed -> L (left)
    bool walked_r, walked_l;
    std::size_t depth;
};

struct Task {
    enum class Kind { Expand, Walk, Edge } kind = Kind::Expand;
    View view{};          // for edges: t is the owner, entry the edge index
    VertexId ray = kNone; // for walks: ray from the seed through this vertex
};

class Expander {
public:
    Expander(const Mesh &m, Point seed, std::optional<double> d, Mode mode, QueryProbe probe)
        : m_(m), q_(seed), d_(d), mode_(mode), probe_(probe) {}

    const SiteIndex *sites = nullptr;
    const std::vector<char> *filter = nullptr;

    std::vector<AbstractElement> elements;
    std::vector<VertexId> vertices;
    std::vector<int> points;

    void Run(const PointLocationResult &pl) {
        switch (detail::StartOf(pl)) {
        case detail::StartKind::Vertex: StartAtVertex(pl.snapped() ? pl.snapped_vertex : pl.feature); break;
        case detail::StartKind::Edge: StartOnEdge(pl.feature); break;
        case detail::StartKind::Triangle: StartInTriangle(pl.triangle); break;
        }
        Drain();
        if (mode_ == Mode::Vertices) {
            std::sort(vertices.begin(), vertices.end());
            vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        }
        if (mode_ == Mode::Points) {
            std::sort(points.begin(), points.end());
            points.erase(std::unique(points.begin(), points.end()), points.end());
        }
    }

private:
    const Mesh &m_;
    Point q_;
    std::optional<double> d_;
    Mode mode_;
    QueryProbe probe_;
    std::vector<Task> stack_;
    std::vector<char> seen_site_;

    [[nodiscard]] Point P(VertexId v) const { return m_.point(v); }

    void Count(TriangleId t) {
        if (probe_.stats) ++probe_.stats->triangles_traversed;
        if (probe_.trace) probe_.trace->push_back(t);
    }

    bool WithinRange(Point p) const { return !d_ || Distance(q_, p) <= *d_; }

    void MarkVertex(VertexId v) {
        if (mode_ != Mode::Vertices) return;
        if (filter && !filter->empty() && !(*filter)[v]) return;
        if (WithinRange(P(v))) vertices.push_back(v);
    }

    void AddSite(int s) {
        if (seen_site_.empty()) seen_site_.assign(sites->size(), 0);
        if (seen_site_[s]) return;
        seen_site_[s] = 1;
        points.push_back(s);
    }

    // Sites of a triangle that the seed sees entirely.
    void SitesAll(TriangleId t) {
        if (mode_ != Mode::Points) return;
        for (int s : sites->in_triangle(t))
            if (WithinRange(sites->site(s))) AddSite(s);
    }

    void SitesInView(TriangleId t, VertexId R, VertexId L) {
        if (mode_ != Mode::Points) return;
        for (int s : sites->in_triangle(t)) {
            Point p = sites->site(s);
            if (Orient(q_, P(R), p) != Orientation::CW && Orient(q_, P(L), p) != Orientation::CCW && WithinRange(p))
                AddSite(s);
        }
    }

    void SitesOnRay(TriangleId t, VertexId ray) {
        if (mode_ != Mode::Points) return;
        for (int s : sites->in_triangle(t)) {
            Point p = sites->site(s);
            if (Orient(q_, P(ray), p) == Orientation::Collinear && Dot(p - q_, P(ray) - q_) > 0.0 && WithinRange(p))
                AddSite(s);
        }
    }

    void EmitNode(VertexId v) {
        if (mode_ == Mode::Region) elements.push_back({AbstractElement::Kind::Node, v});
    }

    void EmitEdge(TriangleId t, int k, VertexId rr, VertexId rl, bool pruned) {
        if (mode_ != Mode::Region) return;
        const Triangle &T = m_.triangle(t);
        AbstractElement e;
        e.kind = AbstractElement::Kind::EdgeSegment;
        e.edge = T.e[k];
        e.right = T.v[k];
        e.left = T.v[detail::Next(k)];
        e.restrict_right = rr;
        e.restrict_left = rl;
        e.pruned = pruned;
        elements.push_back(e);
    }

    // Hands edge k of t to the view (R, L): record it when it blocks or lies out of range,
    // otherwise schedule the neighbor.
    void Child(TriangleId t, int k, VertexId R, VertexId L, bool wr, bool wl, std::size_t depth) {
        const Triangle &T = m_.triangle(t);
        VertexId er = T.v[k], el = T.v[detail::Next(k)];
        TriangleId n = T.n[k];
        if (n == kNone || (d_ && detail::SegmentDistance(q_, P(er), P(el)) > *d_)) {
            if (n == kNone && probe_.stats) ++probe_.stats->boundary_edges_hit;
            if (mode_ == Mode::Region) {
                Task task;
                task.kind = Task::Kind::Edge;
                task.view = {t, k, R, L, false, false, depth};
                stack_.push_back(task);
            }
            return;
        }
        if (depth >= m_.triangle_count()) return; // cannot happen for seeds in W
        Task task;
        task.view = {n, m_.edge_towards(n, t), R, L, wr, wl, depth + 1};
        stack_.push_back(task);
    }

    void Record(const View &v) {
        const Triangle &T = m_.triangle(v.t);
        VertexId er = T.v[v.entry], el = T.v[detail::Next(v.entry)];
        VertexId rr = Orient(q_, P(v.R), P(er)) == Orientation::CW ? v.R : kNone;
        VertexId rl = Orient(q_, P(v.L), P(el)) == Orientation::CCW ? v.L : kNone;
        EmitEdge(v.t, v.entry, rr, rl, T.n[v.entry] != kNone);
    }

    void PushWalk(VertexId ray) {
        Task task;
        task.kind = Task::Kind::Walk;
        task.ray = ray;
        stack_.push_back(task);
    }

    void Drain() {
        while (!stack_.empty()) {
            Task task = stack_.back();
            stack_.pop_back();
            switch (task.kind) {
            case Task::Kind::Expand: Expand(task.view); break;
            case Task::Kind::Walk: Walk(task.ray); break;
            case Task::Kind::Edge: Record(task.view); break;
            }
        }
    }

    void Expand(const View &v) {
        Count(v.t);
        const Triangle &T = m_.triangle(v.t);
        const int ri = detail::Next(v.entry), li = detail::Prev(v.entry);
        const VertexId c = T.v[li];
        SitesInView(v.t, v.R, v.L);

        Orientation o_r = Orient(q_, P(v.R), P(c));
        Orientation o_l = Orient(q_, P(v.L), P(c));
        if (o_r == Orientation::CW) {
            Child(v.t, li, v.R, v.L, v.walked_r, v.walked_l, v.depth);
            return;
        }
        if (o_l == Orientation::CCW) {
            Child(v.t, ri, v.R, v.L, v.walked_r, v.walked_l, v.depth);
            return;
        }
        MarkVertex(c);
        if (probe_.stats) ++probe_.stats->views_split;
        // Tasks are pushed in reverse so the stack pops them counter-clockwise.
        if (o_r == Orientation::Collinear) {
            Child(v.t, li, c, v.L, true, v.walked_l, v.depth);
            if (!v.walked_r) PushWalk(c);
        } else if (o_l == Orientation::Collinear) {
            if (!v.walked_l) PushWalk(c);
            Child(v.t, ri, v.R, c, v.walked_r, true, v.depth);
        } else {
            Child(v.t, li, c, v.L, false, v.walked_l, v.depth);
            Child(v.t, ri, v.R, c, v.walked_r, false, v.depth);
        }
    }

    // x is on the line seed -> through; true when it lies beyond `from`.
    bool Ahead(Point through, Point from, Point x) const {
        if (x.x != from.x) return (x.x > from.x) == (through.x > q_.x);
        return (x.y > from.y) == (through.y > q_.y);
    }

    // Follows the ray seed -> ray beyond vertex `ray` (a zero-width view).
    void Walk(VertexId ray) {
        const Point dir = P(ray);
        auto side = [&](VertexId x) { return Orient(q_, dir, P(x)); };
        VertexId w = ray;
        for (std::size_t guard = 0; guard <= m_.vertex_count() + m_.triangle_count(); ++guard) {
            // At vertex w: find the corner that contains the forward direction.
            TriangleId through = kNone;
            int through_edge = -1;
            VertexId next_vertex = kNone;
            for (const Mesh::Fan &f : m_.fans(w)) {
                for (TriangleId t : m_.fan_triangles(f)) {
                    if (mode_ == Mode::Points) {
                        for (int s : sites->in_triangle(t))
                            if (sites->site(s) == P(w) && WithinRange(P(w))) AddSite(s);
                    }
                    if (through != kNone || next_vertex != kNone) continue;
                    int i = m_.corner_of(t, w);
                    const Triangle &T = m_.triangle(t);
                    VertexId a = T.v[detail::Next(i)], b = T.v[detail::Prev(i)];
                    Orientation sa = side(a), sb = side(b);
                    if (sa == Orientation::CCW || sb == Orientation::CW) continue;
                    if (sa == Orientation::Collinear) {
                        if (Ahead(dir, P(w), P(a))) next_vertex = a;
                    } else if (sb == Orientation::Collinear) {
                        if (Ahead(dir, P(w), P(b))) next_vertex = b;
                    } else {
                        through = t;
                        through_edge = detail::Next(i);
                    }
                }
            }
            if (next_vertex != kNone) {
                w = next_vertex;
                MarkVertex(w);
                continue;
            }
            if (through == kNone) {
                EmitNode(w);
                return;
            }
            // Cross triangles until the ray hits a vertex or the boundary.
            TriangleId t = through;
            int k = through_edge;
            Count(t);
            SitesOnRay(t, ray);
            bool at_vertex = false;
            for (std::size_t g2 = 0; g2 <= m_.triangle_count(); ++g2) {
                const Triangle &T = m_.triangle(t);
                TriangleId n = T.n[k];
                if (n == kNone) {
                    if (probe_.stats) ++probe_.stats->boundary_edges_hit;
                    EmitEdge(t, k, ray, ray, false);
                    return;
                }
                int entry = m_.edge_towards(n, t);
                t = n;
                Count(t);
                SitesOnRay(t, ray);
                const Triangle &N = m_.triangle(t);
                VertexId z = N.v[detail::Prev(entry)];
                Orientation sz = side(z);
                if (sz == Orientation::Collinear) {
                    w = z;
                    MarkVertex(w);
                    at_vertex = true;
                    break;
                }
                k = sz == Orientation::CCW ? detail::Next(entry) : detail::Prev(entry);
            }
            if (!at_vertex) return;
        }
    }

    void StartAtVertex(VertexId v) {
        q_ = P(v);
        MarkVertex(v);
        for (const Mesh::Fan &f : m_.fans(v)) {
            EmitNode(v);
            auto tris = m_.fan_triangles(f);
            // Reverse push keeps counter-clockwise output order.
            for (std::size_t j = tris.size(); j-- > 0;) {
                TriangleId t = tris[j];
                int i = m_.corner_of(t, v);
                const Triangle &T = m_.triangle(t);
                Count(t);
                SitesAll(t);
                MarkVertex(T.v[detail::Next(i)]);
                MarkVertex(T.v[detail::Prev(i)]);
                Child(t, detail::Next(i), T.v[detail::Next(i)], T.v[detail::Prev(i)], false, false, 0);
            }
            Drain();
        }
    }

    void StartEdges(TriangleId t, std::initializer_list<int> ks) {
        std::vector<int> order(ks);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int k = *it;
            const Triangle &T = m_.triangle(t);
            VertexId a = T.v[k], b = T.v[detail::Next(k)];
            // Edges seen edge-on or from behind (seed on them, or located with tolerance) add nothing.
            if (Orient(q_, P(a), P(b)) != Orientation::CCW) continue;
            Child(t, k, a, b, false, false, 0);
        }
    }

    void StartInTriangle(TriangleId t) {
        Count(t);
        SitesAll(t);
        for (VertexId v : m_.triangle(t).v) MarkVertex(v);
        StartEdges(t, {0, 1, 2});
        Drain();
    }

    void StartOnEdge(EdgeId e) {
        const MeshEdge &me = m_.edge(e);
        TriangleId t0 = me.t0, t1 = me.t1;
        int k0 = -1;
        for (int i = 0; i < 3; ++i)
            if (m_.triangle(t0).e[i] == e) k0 = i;
        Count(t0);
        SitesAll(t0);
        for (VertexId v : m_.triangle(t0).v) MarkVertex(v);
        if (t1 == kNone) {
            // Seed on the boundary: the closing chord passes through it.
            StartEdges(t0, {detail::Next(k0), detail::Prev(k0)});
            Drain();
            return;
        }
        int k1 = m_.edge_towards(t1, t0);
        Count(t1);
        SitesAll(t1);
        for (VertexId v : m_.triangle(t1).v) MarkVertex(v);
        StartEdges(t1, {detail::Next(k1), detail::Prev(k1)});
        StartEdges(t0, {detail::Next(k0), detail::Prev(k0)});
        Drain();
    }
};

} // namespace

AbstractVisibilityRegion VisibilityRegion(const Mesh &mesh, const PointLocationResult &pl, Point q,
                                          std::optional<double> d, QueryProbe probe) {
    Point seed = Seed(mesh, pl, q);
    Expander ex(mesh, seed, d, Mode::Region, probe);
    ex.Run(pl);
    AbstractVisibilityRegion out;
    out.seed = seed;
    if (detail::StartOf(pl) == detail::StartKind::Vertex) out.seed_vertex = pl.snapped() ? pl.snapped_vertex : pl.feature;
    out.radius = d;
    out.elements = std::move(ex.elements);
    return out;
}

std::vector<VertexId> VisibleVertices(const Mesh &mesh, const PointLocationResult &pl, Point q,
                                      std::optional<double> d, const std::vector<char> &filter, QueryProbe probe) {
    Expander ex(mesh, Seed(mesh, pl, q), d, Mode::Vertices, probe);
    ex.filter = &filter;
    ex.Run(pl);
    return std::move(ex.vertices);
}

std::vector<int> VisiblePoints(const Mesh &mesh, const PointLocationResult &pl, Point q, const SiteIndex &sites,
                               std::optional<double> d, QueryProbe probe) {
    Expander ex(mesh, Seed(mesh, pl, q), d, Mode::Points, probe);
    ex.sites = &sites;
    ex.Run(pl);
    return std::move(ex.points);
}

SiteIndex SiteIndex::Build(const Mesh &mesh, const BucketGrid &grid, const std::vector<Point> &sites,
                           const EpsilonConfig &eps) {
    SiteIndex idx;
    idx.sites_ = sites;
    std::vector<std::vector<int>> per(mesh.triangle_count());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        auto pl = Locate(mesh, grid, sites[i], eps);
        idx.locations_.push_back(pl);
        if (!pl) continue;
        int s = static_cast<int>(i);
        if (pl->coincidence == Coincidence::OnVertex) {
            for (TriangleId t : mesh.OrderedFan(pl->feature)) per[t].push_back(s);
        } else if (pl->coincidence == Coincidence::OnEdge && pl->eps1_used == 0.0) {
            const MeshEdge &e = mesh.edge(pl->feature);
            per[e.t0].push_back(s);
            if (e.t1 != kNone) per[e.t1].push_back(s);
        } else {
            per[pl->triangle].push_back(s);
        }
    }
    idx.offsets_.push_back(0);
    for (auto &v : per) {
        idx.items_.insert(idx.items_.end(), v.begin(), v.end());
        idx.offsets_.push_back(static_cast<std::uint32_t>(idx.items_.size()));
    }
    return idx;
}

} // namespace polyvis
