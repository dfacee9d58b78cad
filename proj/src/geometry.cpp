#include "polyvis/geometry.hpp"

namespace polyvis {

double SignedArea(const Ring &ring) {
    const std::size_t n = ring.size();
    if (n < 3) return 0.0;
    // Shoelace relative to the first vertex keeps magnitudes small.
    const Point o = ring[0];
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        acc += Cross(ring[i] - o, ring[i + 1] - o);
    }
    return 0.5 * acc;
}

Box BoundingBox(const Ring &ring) {
    Box b;
    for (const Point &p : ring) b.Add(p);
    return b;
}

} // namespace polyvis
