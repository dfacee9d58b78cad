#pragma once

#include <algorithm>
#include <cmath>

#include "polyvis/locate.hpp"

namespace polyvis::detail {

inline int Next(int i) { return i == 2 ? 0 : i + 1; }
inline int Prev(int i) { return i == 0 ? 2 : i - 1; }

enum class StartKind { Vertex, Edge, Triangle };

// Exact edge coincidence gets its own start; tolerance hits start from the triangle.
inline StartKind StartOf(const PointLocationResult &pl) {
    if (pl.snapped() || pl.coincidence == Coincidence::OnVertex) return StartKind::Vertex;
    if (pl.coincidence == Coincidence::OnEdge && pl.eps1_used == 0.0) return StartKind::Edge;
    return StartKind::Triangle;
}

inline double SegmentDistance(Point q, Point a, Point b) {
    Point ab = b - a;
    double len2 = Dot(ab, ab);
    double t = len2 > 0.0 ? std::clamp(Dot(q - a, ab) / len2, 0.0, 1.0) : 0.0;
    return Distance(q, a + t * ab);
}

} // namespace polyvis::detail
