#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "polyvis/environment.hpp"

namespace polyvis::oracle {

struct RationalPoint {
    mpq_class x;
    mpq_class y;
};

inline RationalPoint Lift(Point p) { return {mpq_class(p.x), mpq_class(p.y)}; }
inline Point Round(const RationalPoint &p) { return {p.x.get_d(), p.y.get_d()}; }

/// Exact sign of orient(a, b, c) (float filter, rational fallback).
int Orient(Point a, Point b, Point c);
/// Exact sign of (b - a) x (d - c).
int Cross(Point a, Point b, Point c, Point d);

enum class Where { Outside, Boundary, Inside };

/// Brute-force reference over the bit-exact input coordinates. No mesh, no tolerances.
/// Intended for desk-scale maps; every query is O(n^2) or better.
class Oracle {
public:
    explicit Oracle(const Environment &env);

    [[nodiscard]] const Environment &environment() const { return env_; }

    [[nodiscard]] Where Classify(Point q) const;
    [[nodiscard]] bool Contains(Point q) const { return Classify(q) != Where::Outside; }

    /// Closed segment qp lies in the closed environment.
    [[nodiscard]] bool SegmentVisible(Point q, Point p) const;

    /// Visibility polygon of q, counter-clockwise, or absent when q is outside W.
    /// Antennas appear as zero-width spikes; coordinates are rounded exact values.
    [[nodiscard]] std::optional<Ring> VisibilityPolygon(Point q) const;

    /// Environment vertex ids v with segment q v_pos in W, increasing.
    [[nodiscard]] std::vector<VertexId> VisibleVertices(Point q) const;

    /// Pairs i < j of mutually visible sites (and |s_i s_j| <= d when given), sorted.
    [[nodiscard]] std::vector<std::pair<int, int>> Graph(const std::vector<Point> &sites,
                                                         std::optional<double> d = {}) const;

private:
    struct Wedge {
        Point next; // W lies counter-clockwise from next towards prev
        Point prev;
    };
    struct Seg {
        Point a, b; // W on the left
    };

    Environment env_;
    std::vector<Seg> edges_;
    std::map<std::pair<double, double>, std::vector<Wedge>> wedges_;
    std::vector<Point> locations_; // distinct vertex positions

    [[nodiscard]] const std::vector<Wedge> *WedgesAt(Point p) const;
    [[nodiscard]] bool DirectionInW(Point at, Point from, Point to) const;
    [[nodiscard]] bool InFront(const Seg &a, const Seg &b, Point q, Point through) const;
    [[nodiscard]] std::optional<RationalPoint> RayLineHit(Point q, Point through, const Seg &e) const;
};

} // namespace polyvis::oracle
