#include "polyvis/predicates.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "expansion.hpp"

namespace polyvis {

using namespace expansion;

namespace {

// Bounds from the standard forward error analysis of the determinant evaluation,
// instantiated for this build's double format.
constexpr double kResultErrBound = (3.0 + 8.0 * kEpsilon) * kEpsilon;
constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kCcwErrBoundB = (2.0 + 12.0 * kEpsilon) * kEpsilon;
constexpr double kCcwErrBoundC = (9.0 + 64.0 * kEpsilon) * kEpsilon * kEpsilon;
constexpr double kIccErrBoundA = (10.0 + 96.0 * kEpsilon) * kEpsilon;

double Orient2dAdapt(Point pa, Point pb, Point pc, double detsum) {
    double acx = pa.x - pc.x;
    double bcx = pb.x - pc.x;
    double acy = pa.y - pc.y;
    double bcy = pb.y - pc.y;

    double detleft, detlefttail, detright, detrighttail;
    TwoProduct(acx, bcy, detleft, detlefttail);
    TwoProduct(acy, bcx, detright, detrighttail);

    double B[4];
    TwoTwoDiff(detleft, detlefttail, detright, detrighttail, B[3], B[2], B[1], B[0]);

    double det = Estimate(4, B);
    double errbound = kCcwErrBoundB * detsum;
    if (det >= errbound || -det >= errbound) return det;

    double acxtail = TwoDiffTail(pa.x, pc.x, acx);
    double bcxtail = TwoDiffTail(pb.x, pc.x, bcx);
    double acytail = TwoDiffTail(pa.y, pc.y, acy);
    double bcytail = TwoDiffTail(pb.y, pc.y, bcy);

    if (acxtail == 0.0 && acytail == 0.0 && bcxtail == 0.0 && bcytail == 0.0) return det;

    errbound = kCcwErrBoundC * detsum + kResultErrBound * std::fabs(det);
    det += (acx * bcytail + bcy * acxtail) - (acy * bcxtail + bcx * acytail);
    if (det >= errbound || -det >= errbound) return det;

    double s1, s0, t1, t0, u[4];
    double C1[8], C2[12], D[16];

    TwoProduct(acxtail, bcy, s1, s0);
    TwoProduct(acytail, bcx, t1, t0);
    TwoTwoDiff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    int c1len = FastExpansionSumZeroElim(4, B, 4, u, C1);

    TwoProduct(acx, bcytail, s1, s0);
    TwoProduct(acy, bcxtail, t1, t0);
    TwoTwoDiff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    int c2len = FastExpansionSumZeroElim(c1len, C1, 4, u, C2);

    TwoProduct(acxtail, bcytail, s1, s0);
    TwoProduct(acytail, bcxtail, t1, t0);
    TwoTwoDiff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    int dlen = FastExpansionSumZeroElim(c2len, C2, 4, u, D);

    return D[dlen - 1];
}

Orientation ToOrientation(double v) {
    if (v > 0.0) return Orientation::CCW;
    if (v < 0.0) return Orientation::CW;
    return Orientation::Collinear;
}

int InCircleExact(Point a, Point b, Point c, Point d) {
    Expansion adx = Expansion::Diff(a.x, d.x), ady = Expansion::Diff(a.y, d.y);
    Expansion bdx = Expansion::Diff(b.x, d.x), bdy = Expansion::Diff(b.y, d.y);
    Expansion cdx = Expansion::Diff(c.x, d.x), cdy = Expansion::Diff(c.y, d.y);

    Expansion alift = adx * adx + ady * ady;
    Expansion blift = bdx * bdx + bdy * bdy;
    Expansion clift = cdx * cdx + cdy * cdy;

    Expansion det = alift * (bdx * cdy - bdy * cdx) + blift * (cdx * ady - cdy * adx) +
                    clift * (adx * bdy - ady * bdx);
    return det.Sign();
}

} // namespace

double Orient2d(Point pa, Point pb, Point pc) {
    double detleft = (pa.x - pc.x) * (pb.y - pc.y);
    double detright = (pa.y - pc.y) * (pb.x - pc.x);
    double det = detleft - detright;
    double detsum;

    if (detleft > 0.0) {
        if (detright <= 0.0) return det;
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det;
        detsum = -detleft - detright;
    } else {
        return det;
    }

    double errbound = kCcwErrBoundA * detsum;
    if (det >= errbound || -det >= errbound) return det;
    return Orient2dAdapt(pa, pb, pc, detsum);
}

Orientation Orient(Point a, Point b, Point c) { return ToOrientation(Orient2d(a, b, c)); }

Orientation OrientDir(Point origin, DirVector u, Point x) {
    double dx = x.x - origin.x;
    double dy = x.y - origin.y;
    double l = u.ux * dy;
    double r = u.uy * dx;
    double det = l - r;
    double errbound = kCcwErrBoundA * (std::fabs(l) + std::fabs(r));
    if (det > errbound || -det > errbound) return ToOrientation(det);
    Expansion ey = Expansion::Diff(x.y, origin.y);
    Expansion ex = Expansion::Diff(x.x, origin.x);
    Expansion e = ey.Scale(u.ux) - ex.Scale(u.uy);
    int s = e.Sign();
    return s > 0 ? Orientation::CCW : (s < 0 ? Orientation::CW : Orientation::Collinear);
}

int InCircle(Point pa, Point pb, Point pc, Point pd) {
    double adx = pa.x - pd.x, bdx = pb.x - pd.x, cdx = pc.x - pd.x;
    double ady = pa.y - pd.y, bdy = pb.y - pd.y, cdy = pc.y - pd.y;

    double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    double alift = adx * adx + ady * ady;
    double cdxady = cdx * ady, adxcdy = adx * cdy;
    double blift = bdx * bdx + bdy * bdy;
    double adxbdy = adx * bdy, bdxady = bdx * ady;
    double clift = cdx * cdx + cdy * cdy;

    double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                       (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                       (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
    double errbound = kIccErrBoundA * permanent;
    if (det > errbound) return 1;
    if (-det > errbound) return -1;
    return InCircleExact(pa, pb, pc, pd);
}

double SignedLineDistance(Point a, Point b, Point q) {
    Point e = b - a;
    double len = std::sqrt(Dot(e, e));
    if (len == 0.0) return -Distance(a, q);
    return Cross(e, q - a) / len;
}

TriangleHit PointInTriangle(Point q, const std::array<Point, 3> &t, double eps) {
    for (int i = 0; i < 3; ++i) {
        if (q == t[i]) return {TriangleLocation::OnVertex, i};
    }
    Orientation o[3];
    for (int i = 0; i < 3; ++i) o[i] = Orient(t[i], t[(i + 1) % 3], q);

    int zeros = 0, zero_at = -1;
    bool negative = false;
    for (int i = 0; i < 3; ++i) {
        if (o[i] == Orientation::Collinear) {
            ++zeros;
            zero_at = i;
        } else if (o[i] == Orientation::CW) {
            negative = true;
        }
    }
    if (!negative) {
        if (zeros == 0) return {TriangleLocation::Inside, -1};
        if (zeros == 1) return {TriangleLocation::OnEdge, zero_at};
        // Degenerate triangle with q on its supporting line.
    }
    if (eps > 0.0) {
        double worst = std::numeric_limits<double>::infinity();
        int worst_edge = -1;
        for (int i = 0; i < 3; ++i) {
            double d = SignedLineDistance(t[i], t[(i + 1) % 3], q);
            if (d < worst) {
                worst = d;
                worst_edge = i;
            }
        }
        if (worst >= -eps) return {TriangleLocation::OnEdge, worst_edge};
    }
    return {TriangleLocation::Outside, -1};
}

bool OnSegment(Point a, Point b, Point p) {
    if (Orient(a, b, p) != Orientation::Collinear) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

SegmentContact ClassifySegments(Point a, Point b, Point c, Point d) {
    if (std::max(a.x, b.x) < std::min(c.x, d.x) || std::max(c.x, d.x) < std::min(a.x, b.x) ||
        std::max(a.y, b.y) < std::min(c.y, d.y) || std::max(c.y, d.y) < std::min(a.y, b.y)) {
        return SegmentContact::None;
    }
    int o1 = Sign(Orient(a, b, c));
    int o2 = Sign(Orient(a, b, d));
    int o3 = Sign(Orient(c, d, a));
    int o4 = Sign(Orient(c, d, b));

    if (o1 == 0 && o2 == 0) {
        // Collinear: count common points via projections on the dominant axis.
        bool use_x = std::fabs(b.x - a.x) + std::fabs(d.x - c.x) >= std::fabs(b.y - a.y) + std::fabs(d.y - c.y);
        auto key = [use_x](Point p) { return use_x ? p.x : p.y; };
        double lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
        double lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
        double lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (lo > hi) return SegmentContact::None;
        if (lo < hi) return SegmentContact::Overlap;
        bool shared = (a == c || a == d || b == c || b == d);
        return shared ? SegmentContact::SharedEndpoint : SegmentContact::Touch;
    }
    if (o1 * o2 > 0 || o3 * o4 > 0) return SegmentContact::None;
    if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return SegmentContact::Proper;
    bool shared = (a == c || a == d || b == c || b == d);
    if (shared) {
        // A shared endpoint with the other endpoints off the opposite segment's line.
        int zeros = (o1 == 0) + (o2 == 0) + (o3 == 0) + (o4 == 0);
        if (zeros == 2) return SegmentContact::SharedEndpoint;
    }
    return SegmentContact::Touch;
}

namespace {

std::optional<RayHit> FinishHit(Point origin, Point dir, Point s0, Point s1, int side0, int side1) {
    if (side0 == 0) {
        double l = Dot(s0 - origin, dir) / Dot(dir, dir);
        return RayHit{s0, std::max(0.0, l)};
    }
    if (side1 == 0) {
        double l = Dot(s1 - origin, dir) / Dot(dir, dir);
        return RayHit{s1, std::max(0.0, l)};
    }
    Point e = s1 - s0;
    double den = Cross(dir, e);
    double s = std::clamp(Cross(dir, origin - s0) / den, 0.0, 1.0);
    Point p = s0 + s * e;
    if (s == 0.0) p = s0;
    if (s == 1.0) p = s1;
    double l = Dot(p - origin, dir) / Dot(dir, dir);
    return RayHit{p, std::max(0.0, l)};
}

std::optional<RayHit> CollinearHit(Point origin, Point dir, Point s0, Point s1) {
    double dd = Dot(dir, dir);
    double l0 = Dot(s0 - origin, dir) / dd;
    double l1 = Dot(s1 - origin, dir) / dd;
    if (l0 > l1) {
        std::swap(l0, l1);
        std::swap(s0, s1);
    }
    if (l1 < 0.0) return std::nullopt;
    if (l0 <= 0.0) return RayHit{origin, 0.0};
    return RayHit{s0, l0};
}

} // namespace

std::optional<RayHit> RaySegmentIntersection(Point origin, DirVector u, Point s0, Point s1) {
    int side0 = Sign(OrientDir(origin, u, s0));
    int side1 = Sign(OrientDir(origin, u, s1));
    Point dir = u.AsPoint();
    if (side0 != 0 && side0 == side1) return std::nullopt;
    if (side0 == 0 && side1 == 0) return CollinearHit(origin, dir, s0, s1);
    // Crossing of the supporting line; it is ahead iff orient(origin, s0, s1) agrees
    // with the direction in which the segment crosses the ray line.
    int num = Sign(Orient(origin, s0, s1));
    int den = side1 - side0 > 0 ? 1 : -1;
    if (num != 0 && num != den) return std::nullopt;
    return FinishHit(origin, dir, s0, s1, side0, side1);
}

std::optional<RayHit> RaySegmentIntersectionThrough(Point origin, Point through, Point s0, Point s1) {
    int side0 = Sign(Orient(origin, through, s0));
    int side1 = Sign(Orient(origin, through, s1));
    Point dir = through - origin;
    if (side0 != 0 && side0 == side1) return std::nullopt;
    if (side0 == 0 && side1 == 0) return CollinearHit(origin, dir, s0, s1);
    int num = Sign(Orient(origin, s0, s1));
    int den = side1 - side0 > 0 ? 1 : -1;
    if (num != 0 && num != den) return std::nullopt;
    if (side0 == 0 || side1 == 0) {
        // Endpoint on the line: it must lie ahead of the origin.
        Point p = side0 == 0 ? s0 : s1;
        if (Dot(p - origin, dir) < 0.0) return std::nullopt;
    }
    return FinishHit(origin, dir, s0, s1, side0, side1);
}

} // namespace polyvis
