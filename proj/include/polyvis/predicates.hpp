#pragma once

#include <array>
#include <optional>

#include "polyvis/geometry.hpp"

namespace polyvis {

enum class Orientation : int { CW = -1, Collinear = 0, CCW = 1 };

inline int Sign(Orientation o) { return static_cast<int>(o); }

/// Exact sign of the cross product (b - a) x (c - a). Adaptive: a floating-point
/// filter followed by exact expansion arithmetic when the filter is inconclusive.
Orientation Orient(Point a, Point b, Point c);

/// Raw adaptive determinant; its sign is exact, its magnitude approximate.
double Orient2d(Point a, Point b, Point c);

/// Exact sign of u x (x - origin), i.e. which side of the ray (origin, u) x is on.
Orientation OrientDir(Point origin, DirVector u, Point x);

/// Exact sign of the in-circle determinant: > 0 when d is strictly inside the
/// circle through the counter-clockwise triangle a, b, c.
int InCircle(Point a, Point b, Point c, Point d);

enum class TriangleLocation { Inside, OnEdge, OnVertex, Outside };

/// Edge i of a triangle joins corner i to corner (i + 1) % 3.
struct TriangleHit {
    TriangleLocation where = TriangleLocation::Outside;
    int index = -1; ///< edge index for OnEdge, corner index for OnVertex
};

/// Classifies q against the counter-clockwise triangle t. With eps == 0 the result
/// is exact. With eps > 0 a point outside is accepted as OnEdge of the closest edge
/// line when its signed perpendicular distance to every edge line is >= -eps.
TriangleHit PointInTriangle(Point q, const std::array<Point, 3> &t, double eps = 0.0);

/// Signed perpendicular distance of q to the directed line a -> b, positive on the left.
double SignedLineDistance(Point a, Point b, Point q);

struct RayHit {
    Point point;
    double lambda = 0.0; ///< point = origin + lambda * direction
};

/// First point of the closed segment s0 s1 on the ray origin + lambda * u, lambda >= 0.
/// Collinear overlap yields the overlap point closest to the origin.
std::optional<RayHit> RaySegmentIntersection(Point origin, DirVector u, Point s0, Point s1);

/// Same as above for the ray from origin through the point `through` (lambda in units
/// of through - origin). Decisions use point-based orientation only.
std::optional<RayHit> RaySegmentIntersectionThrough(Point origin, Point through, Point s0, Point s1);

enum class SegmentContact { None, Proper, SharedEndpoint, Touch, Overlap };

/// Exact classification of two closed segments. SharedEndpoint means the only common
/// point is an endpoint that both segments have; Touch covers any other single-point
/// contact involving an endpoint.
SegmentContact ClassifySegments(Point a, Point b, Point c, Point d);

/// True if p lies on the closed segment a b (exact).
bool OnSegment(Point a, Point b, Point p);

} // namespace polyvis
