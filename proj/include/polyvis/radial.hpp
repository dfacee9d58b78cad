#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "polyvis/mesh.hpp"
#include "polyvis/visibility.hpp"

namespace polyvis {

struct RadialVertex {
    enum class Kind { EnvVertex, BoundaryIntersection, ArcPoint };
    Point point;
    Kind kind = Kind::EnvVertex;
    std::int32_t id = kNone; ///< vertex id, edge id, or kNone for arc points
};

/// Boundary piece from vertex i to vertex i + 1 (cyclically).
struct RadialEdge {
    enum class Kind { OnBoundary, FreeChord, Arc };
    Kind kind = Kind::FreeChord;
    EdgeId edge = kNone;
    double arc_angle = 0.0; ///< counter-clockwise sweep about the seed, arcs only
};

struct RadialVisibilityRegion {
    Point seed;
    std::optional<double> radius;
    std::vector<RadialVertex> vertices;
    std::vector<RadialEdge> edges;
};

/// Resolves view restrictions to points. `degenerate`, when given, counts restrictions
/// whose ray missed the edge numerically (the nearer edge endpoint is used instead).
RadialVisibilityRegion ToRadial(const Mesh &mesh, const AbstractVisibilityRegion &abs, int *degenerate = nullptr);

/// Clips the region to the disk of radius d about the seed.
RadialVisibilityRegion IntersectWithCircle(const RadialVisibilityRegion &reg, double d);

inline constexpr double kDefaultArcAngle = std::numbers::pi / 180.0;

/// Replaces arcs by chords subtending at most max_angle each.
RadialVisibilityRegion SampleArcEdges(const RadialVisibilityRegion &reg, double max_angle = kDefaultArcAngle);

/// Counter-clockwise ring of the region. Throws on remaining arcs.
Ring ToPolygon(const RadialVisibilityRegion &reg);

/// Rotation of the ring starting at its lexicographically smallest point, consecutive
/// duplicates removed.
Ring Canonical(const Ring &ring);

} // namespace polyvis
