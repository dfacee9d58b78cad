#pragma once

#include <gmpxx.h>

#include "polyvis/environment.hpp"
#include "polyvis/geometry.hpp"

namespace testsupport {

inline mpq_class Q(double v) { return mpq_class(v); }

inline int ExactOrient(polyvis::Point a, polyvis::Point b, polyvis::Point c) {
    mpq_class d = (Q(b.x) - Q(a.x)) * (Q(c.y) - Q(a.y)) - (Q(b.y) - Q(a.y)) * (Q(c.x) - Q(a.x));
    return sgn(d);
}

inline int ExactInCircle(polyvis::Point a, polyvis::Point b, polyvis::Point c, polyvis::Point d) {
    mpq_class adx = Q(a.x) - Q(d.x), ady = Q(a.y) - Q(d.y);
    mpq_class bdx = Q(b.x) - Q(d.x), bdy = Q(b.y) - Q(d.y);
    mpq_class cdx = Q(c.x) - Q(d.x), cdy = Q(c.y) - Q(d.y);
    mpq_class det = (adx * adx + ady * ady) * (bdx * cdy - bdy * cdx) +
                    (bdx * bdx + bdy * bdy) * (cdx * ady - cdy * adx) +
                    (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx);
    return sgn(det);
}

/// 10 x 10 square with a 2 x 2 square hole in the middle.
inline polyvis::Environment SquareWithHole() {
    polyvis::Ring outer{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    polyvis::Ring hole{{4, 4}, {4, 6}, {6, 6}, {6, 4}};
    return polyvis::ValidateAndNormalize({outer, hole});
}

inline polyvis::Environment UnitSquare() {
    return polyvis::ValidateAndNormalize({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
}

} // namespace testsupport
