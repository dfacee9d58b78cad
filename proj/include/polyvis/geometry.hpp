#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace polyvis {

using VertexId = std::int32_t;
using TriangleId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point &, const Point &) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

inline double Dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double Cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double SquaredDistance(Point a, Point b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}
inline double Distance(Point a, Point b) { return std::sqrt(SquaredDistance(a, b)); }
inline bool IsFinite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Lexicographic order, used for deterministic deduplication.
inline bool LexLess(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

/// Non-zero direction. Construction throws on a zero or non-finite vector.
struct DirVector {
    double ux = 1.0;
    double uy = 0.0;

    DirVector() = default;
    DirVector(double x, double y) : ux(x), uy(y) {
        if (!std::isfinite(x) || !std::isfinite(y) || (x == 0.0 && y == 0.0)) {
            throw std::invalid_argument("direction vector must be finite and non-zero");
        }
    }
    [[nodiscard]] Point AsPoint() const { return {ux, uy}; }
};

/// Closed polygonal ring, implicit closing edge from back() to front().
using Ring = std::vector<Point>;

/// Signed area, positive for counter-clockwise rings.
double SignedArea(const Ring &ring);

struct Box {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void Add(Point p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    [[nodiscard]] bool Empty() const { return lo.x > hi.x; }
    [[nodiscard]] double Width() const { return hi.x - lo.x; }
    [[nodiscard]] double Height() const { return hi.y - lo.y; }
    [[nodiscard]] double Area() const { return Width() * Height(); }
    [[nodiscard]] bool Contains(Point p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
};

Box BoundingBox(const Ring &ring);

} // namespace polyvis
