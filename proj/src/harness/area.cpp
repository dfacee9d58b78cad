#include "polyvis/harness/area.hpp"

#include <algorithm>
#include <cmath>

namespace polyvis::harness {

namespace {

struct Edge {
    Point lo, hi; // lo.x < hi.x
    int dir;      // +1 when the ring runs towards +x
    int owner;    // 0 for A, 1 for B
    [[nodiscard]] double YAt(double x) const {
        if (x <= lo.x) return lo.y;
        if (x >= hi.x) return hi.y;
        return lo.y + (hi.y - lo.y) * ((x - lo.x) / (hi.x - lo.x));
    }
};

void Collect(const std::vector<Ring> &rings, int owner, std::vector<Edge> &out) {
    for (const Ring &r : rings) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            Point a = r[i], b = r[(i + 1) % r.size()];
            if (a.x == b.x) continue;
            if (a.x < b.x) {
                out.push_back({a, b, +1, owner});
            } else {
                out.push_back({b, a, -1, owner});
            }
        }
    }
}

// x of a proper crossing of two edges, if any.
bool CrossingX(const Edge &e, const Edge &f, double &x) {
    double x0 = std::max(e.lo.x, f.lo.x), x1 = std::min(e.hi.x, f.hi.x);
    if (!(x0 < x1)) return false;
    double d0 = e.YAt(x0) - f.YAt(x0), d1 = e.YAt(x1) - f.YAt(x1);
    if (!((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0))) return false;
    x = x0 + (x1 - x0) * (d0 / (d0 - d1));
    return x > x0 && x < x1;
}

} // namespace

double OverlayArea(const std::vector<Ring> &a, const std::vector<Ring> &b,
                   const std::function<bool(bool, bool)> &keep) {
    std::vector<Edge> edges;
    Collect(a, 0, edges);
    Collect(b, 1, edges);
    std::sort(edges.begin(), edges.end(), [](const Edge &e, const Edge &f) { return e.lo.x < f.lo.x; });

    std::vector<double> xs;
    for (const Edge &e : edges) {
        xs.push_back(e.lo.x);
        xs.push_back(e.hi.x);
    }
    // Sweep for crossings among edges with overlapping x-ranges.
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size() && edges[j].lo.x < edges[i].hi.x; ++j) {
            double x;
            if (CrossingX(edges[i], edges[j], x)) xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    struct Piece {
        double y0, y1, ym;
        int dir, owner;
    };
    double area = 0.0;
    std::vector<const Edge *> active;
    std::vector<Piece> pieces;
    std::size_t next = 0;
    for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
        const double x0 = xs[s], x1 = xs[s + 1];
        while (next < edges.size() && edges[next].lo.x <= x0) active.push_back(&edges[next++]);
        std::erase_if(active, [&](const Edge *e) { return e->hi.x <= x0; });
        pieces.clear();
        const double xm = 0.5 * (x0 + x1);
        for (const Edge *e : active) {
            if (e->lo.x > x0 || e->hi.x < x1) continue;
            pieces.push_back({e->YAt(x0), e->YAt(x1), e->YAt(xm), e->dir, e->owner});
        }
        std::sort(pieces.begin(), pieces.end(), [](const Piece &p, const Piece &q) { return p.ym < q.ym; });
        int wa = 0, wb = 0;
        for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
            (pieces[k].owner == 0 ? wa : wb) += pieces[k].dir;
            if (!keep(wa != 0, wb != 0)) continue;
            double h0 = pieces[k + 1].y0 - pieces[k].y0, h1 = pieces[k + 1].y1 - pieces[k].y1;
            area += 0.5 * (x1 - x0) * std::fabs(h0 + h1);
        }
    }
    return area;
}

} // namespace polyvis::harness
