#pragma once

#include <functional>
#include <vector>

#include "polyvis/geometry.hpp"

namespace polyvis::harness {

/// Area of the set of points whose membership in A and B (nonzero winding) satisfies
/// `keep`. Rings may be non-simple; zero-width spikes contribute nothing.
double OverlayArea(const std::vector<Ring> &a, const std::vector<Ring> &b,
                   const std::function<bool(bool, bool)> &keep);

inline double XorArea(const Ring &a, const Ring &b) {
    return OverlayArea({a}, {b}, [](bool x, bool y) { return x != y; });
}

/// Area of A minus B.
inline double DifferenceArea(const Ring &a, const Ring &b) {
    return OverlayArea({a}, {b}, [](bool x, bool y) { return x && !y; });
}

inline constexpr double kSameFraction = 1e-9;

/// Equality of two regions up to a symmetric-difference area of 1e-9 times the map area.
inline bool XorAreaSame(const Ring &a, const Ring &b, double map_area) {
    return XorArea(a, b) <= kSameFraction * map_area;
}

} // namespace polyvis::harness
