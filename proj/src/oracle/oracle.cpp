#include "polyvis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyvis::oracle {

namespace {

// Any error of the float evaluation of a 2x2 determinant of coordinate differences is far
// below this fraction of the absolute term sum; inconclusive cases go to rationals.
constexpr double kFilter = 1e-13;

int SignOf(const mpq_class &v) { return sgn(v); }

int Det(double ax, double ay, double bx, double by, Point a0, Point a1, Point b0, Point b1) {
    double l = ax * by, r = ay * bx;
    double det = l - r;
    double bound = kFilter * (std::fabs(l) + std::fabs(r));
    if (det > bound) return 1;
    if (det < -bound) return -1;
    mpq_class dax = mpq_class(a1.x) - mpq_class(a0.x), day = mpq_class(a1.y) - mpq_class(a0.y);
    mpq_class dbx = mpq_class(b1.x) - mpq_class(b0.x), dby = mpq_class(b1.y) - mpq_class(b0.y);
    return SignOf(dax * dby - day * dbx);
}

bool Between(Point a, Point b, Point p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

// p on the closed segment ab.
bool OnSegment(Point a, Point b, Point p) { return Orient(a, b, p) == 0 && Between(a, b, p); }

bool StrictlyInside(Point a, Point b, Point p) { return !(p == a) && !(p == b) && OnSegment(a, b, p); }

bool SameRational(const RationalPoint &a, const RationalPoint &b) { return a.x == b.x && a.y == b.y; }

} // namespace

int Orient(Point a, Point b, Point c) { return Det(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y, a, b, a, c); }

int Cross(Point a, Point b, Point c, Point d) { return Det(b.x - a.x, b.y - a.y, d.x - c.x, d.y - c.y, a, b, c, d); }

Oracle::Oracle(const Environment &env) : env_(env) {
    for (std::size_t r = 0; r < env_.ring_count(); ++r) {
        const Ring &ring = env_.ring(r);
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            Point v = ring[i], next = ring[(i + 1) % n], prev = ring[(i + n - 1) % n];
            edges_.push_back({v, next});
            auto &w = wedges_[{v.x, v.y}];
            if (w.empty()) locations_.push_back(v);
            w.push_back({next, prev});
        }
    }
}

const std::vector<Oracle::Wedge> *Oracle::WedgesAt(Point p) const {
    auto it = wedges_.find({p.x, p.y});
    return it == wedges_.end() ? nullptr : &it->second;
}

Where Oracle::Classify(Point q) const {
    bool inside = false;
    for (const Seg &e : edges_) {
        if (OnSegment(e.a, e.b, q)) return Where::Boundary;
        if ((e.a.y > q.y) != (e.b.y > q.y)) {
            int o = Orient(e.a, e.b, q);
            if (e.b.y > e.a.y ? o > 0 : o < 0) inside = !inside;
        }
    }
    return inside ? Where::Inside : Where::Outside;
}

// Does the direction from -> to, taken at `at`, point into W (closed)?
bool Oracle::DirectionInW(Point at, Point from, Point to) const {
    if (const auto *ws = WedgesAt(at)) {
        for (const Wedge &w : *ws) {
            int convex = Cross(at, w.next, at, w.prev);
            int c1 = Cross(at, w.next, from, to);
            int c2 = Cross(from, to, at, w.prev);
            if (convex > 0 ? (c1 >= 0 && c2 >= 0) : (c1 >= 0 || c2 >= 0)) return true;
        }
        return false;
    }
    for (const Seg &e : edges_)
        if (OnSegment(e.a, e.b, at)) return Cross(e.a, e.b, from, to) >= 0;
    return true;
}

bool Oracle::SegmentVisible(Point q, Point p) const {
    if (!Contains(q) || !Contains(p)) return false;
    if (q == p) return true;
    for (const Seg &e : edges_) {
        int o1 = Orient(q, p, e.a), o2 = Orient(q, p, e.b);
        if (o1 * o2 >= 0) continue;
        int o3 = Orient(e.a, e.b, q), o4 = Orient(e.a, e.b, p);
        if (o3 * o4 < 0) return false;
    }
    for (Point v : locations_) {
        if (!StrictlyInside(q, p, v)) continue;
        if (!DirectionInW(v, q, p) || !DirectionInW(v, p, q)) return false;
    }
    return DirectionInW(q, q, p) && DirectionInW(p, p, q);
}

std::vector<VertexId> Oracle::VisibleVertices(Point q) const {
    std::vector<VertexId> out;
    if (!Contains(q)) return out;
    std::map<std::pair<double, double>, bool> memo;
    for (VertexId v = 0; v < static_cast<VertexId>(env_.vertex_count()); ++v) {
        Point p = env_.vertex(v);
        auto [it, fresh] = memo.try_emplace({p.x, p.y}, false);
        if (fresh) it->second = SegmentVisible(q, p);
        if (it->second) out.push_back(v);
    }
    return out;
}

std::vector<std::pair<int, int>> Oracle::Graph(const std::vector<Point> &sites, std::optional<double> d) const {
    std::vector<std::pair<int, int>> out;
    std::vector<char> in(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) in[i] = Contains(sites[i]);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (!in[i]) continue;
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            if (!in[j]) continue;
            if (d) {
                RationalPoint a = Lift(sites[i]), b = Lift(sites[j]);
                mpq_class dx = a.x - b.x, dy = a.y - b.y, dd(*d);
                if (dx * dx + dy * dy > dd * dd) continue;
            }
            if (SegmentVisible(sites[i], sites[j])) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return out;
}

// Intersection of the line q -> through with the line of e.
std::optional<RationalPoint> Oracle::RayLineHit(Point q, Point through, const Seg &e) const {
    if (Orient(q, through, e.a) == 0) return Lift(e.a);
    if (Orient(q, through, e.b) == 0) return Lift(e.b);
    RationalPoint Q = Lift(q), T = Lift(through), A = Lift(e.a), B = Lift(e.b);
    mpq_class ex = B.x - A.x, ey = B.y - A.y;
    mpq_class dx = T.x - Q.x, dy = T.y - Q.y;
    mpq_class den = dx * ey - dy * ex;
    if (den == 0) return std::nullopt;
    mpq_class t = ((A.x - Q.x) * ey - (A.y - Q.y) * ex) / den;
    return RationalPoint{Q.x + t * dx, Q.y + t * dy};
}

// For segments that both meet the ray q -> through and do not cross each other:
// does a meet it no later than b?
bool Oracle::InFront(const Seg &a, const Seg &b, Point q, Point through) const {
    int sa = Orient(a.a, a.b, q);
    int b1 = Orient(a.a, a.b, b.a), b2 = Orient(a.a, a.b, b.b);
    if (b1 * sa <= 0 && b2 * sa <= 0) return true;
    int sb = Orient(b.a, b.b, q);
    int a1 = Orient(b.a, b.b, a.a), a2 = Orient(b.a, b.b, a.b);
    if (a1 * sb <= 0 && a2 * sb <= 0) return false;
    auto ha = RayLineHit(q, through, a), hb = RayLineHit(q, through, b);
    if (!ha || !hb) return static_cast<bool>(ha);
    RationalPoint Q = Lift(q);
    mpq_class da = (ha->x - Q.x) * (ha->x - Q.x) + (ha->y - Q.y) * (ha->y - Q.y);
    mpq_class db = (hb->x - Q.x) * (hb->x - Q.x) + (hb->y - Q.y) * (hb->y - Q.y);
    return da <= db;
}

std::optional<Ring> Oracle::VisibilityPolygon(Point q) const {
    if (!Contains(q)) return std::nullopt;

    // Distinct vertex positions sorted counter-clockwise around q from direction +x,
    // grouped by direction, each group nearest first.
    std::vector<Point> pts;
    for (Point v : locations_)
        if (!(v == q)) pts.push_back(v);
    auto half = [&](Point v) { return (v.y > q.y || (v.y == q.y && v.x > q.x)) ? 0 : 1; };
    auto same_dir = [&](Point a, Point b) { return half(a) == half(b) && Orient(q, a, b) == 0; };
    auto nearer = [&](Point a, Point b) {
        if (a.x != b.x) return (a.x < b.x) == (a.x > q.x);
        return (a.y < b.y) == (a.y > q.y);
    };
    std::sort(pts.begin(), pts.end(), [&](Point a, Point b) {
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        int o = Orient(q, a, b);
        if (o != 0) return o > 0;
        return nearer(a, b);
    });
    std::vector<std::vector<Point>> groups;
    std::map<std::pair<double, double>, int> group_of;
    for (Point v : pts) {
        if (groups.empty() || !same_dir(groups.back().front(), v)) groups.emplace_back();
        groups.back().push_back(v);
        group_of[{v.x, v.y}] = static_cast<int>(groups.size()) - 1;
    }
    const int m = static_cast<int>(groups.size());
    if (m == 0) return Ring{q};

    // Front edge of every open angular interval (between group i and i + 1).
    std::vector<int> front(m, -1);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const Seg &e = edges_[k];
        int o = Orient(q, e.a, e.b);
        if (o == 0) continue;
        int from = group_of.at({e.a.x, e.a.y}), to = group_of.at({e.b.x, e.b.y});
        if (o < 0) std::swap(from, to);
        for (int i = from; i != to; i = (i + 1) % m) {
            Point through = groups[(i + 1) % m].front();
            if (front[i] < 0 || InFront(e, edges_[front[i]], q, through)) front[i] = static_cast<int>(k);
        }
    }
    std::vector<char> live(m);
    for (int i = 0; i < m; ++i) live[i] = front[i] >= 0 && Orient(edges_[front[i]].a, edges_[front[i]].b, q) > 0;

    std::vector<RationalPoint> out;
    auto emit = [&](const RationalPoint &p) {
        if (out.empty() || !SameRational(out.back(), p)) out.push_back(p);
    };
    const RationalPoint Q = Lift(q);
    for (int i = 0; i < m; ++i) {
        const int before = (i + m - 1) % m;
        const Point r = groups[i].front();
        std::optional<RationalPoint> lo, hi, tip;
        if (live[before]) lo = RayLineHit(q, r, edges_[front[before]]);
        if (live[i]) hi = RayLineHit(q, r, edges_[front[i]]);

        std::optional<Point> far;
        for (Point v : groups[i]) {
            if (!SegmentVisible(q, v)) break;
            far = v;
        }
        if (far) {
            tip = Lift(*far);
            if (DirectionInW(*far, q, *far)) {
                // The sightline goes on past the farthest visible vertex: first crossing beyond it.
                int best = -1;
                for (std::size_t k = 0; k < edges_.size(); ++k) {
                    const Seg &e = edges_[k];
                    int oa = Orient(q, *far, e.a), ob = Orient(q, *far, e.b);
                    if (oa * ob >= 0) continue;
                    if (Orient(*far, e.a, e.b) != ob) continue;
                    if (best < 0 || InFront(e, edges_[best], q, *far)) best = static_cast<int>(k);
                }
                if (best < 0) throw std::logic_error("oracle: sightline leaves a bounded environment");
                tip = RayLineHit(q, *far, edges_[best]);
            }
        } else {
            tip = lo ? lo : hi;
        }
        emit(lo ? *lo : Q);
        if (tip) emit(*tip);
        emit(hi ? *hi : Q);
    }
    while (out.size() > 1 && SameRational(out.back(), out.front())) out.pop_back();

    Ring ring;
    for (const RationalPoint &p : out) {
        Point x = Round(p);
        if (ring.empty() || !(ring.back() == x)) ring.push_back(x);
    }
    while (ring.size() > 1 && ring.back() == ring.front()) ring.pop_back();
    return ring;
}

} // namespace polyvis::oracle
