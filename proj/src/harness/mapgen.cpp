#include "polyvis/harness/mapgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "polyvis/harness/random.hpp"
#include "polyvis/predicates.hpp"

namespace polyvis::harness {

namespace {

Point Round(Point p, bool grid) { return grid ? Point{std::round(p.x), std::round(p.y)} : p; }

// Star-shaped ring around c; empty when rounding broke the angular order.
Ring StarRing(Rng &rng, Point c, int k, double rmin, double rmax, bool grid) {
    Ring ring;
    const double step = 2.0 * std::numbers::pi / k;
    const double phase = rng.Uniform(0.0, step);
    for (int i = 0; i < k; ++i) {
        double a = phase + step * (i + rng.Uniform(-0.35, 0.35));
        double r = rng.Uniform(rmin, rmax);
        ring.push_back(Round({c.x + r * std::cos(a), c.y + r * std::sin(a)}, grid));
    }
    for (int i = 0; i < k; ++i) {
        Point a = ring[i], b = ring[(i + 1) % k];
        if (a == b || a == c || Orient(c, a, b) != Orientation::CCW) return {};
    }
    return ring;
}

} // namespace

Environment RandomMap(const RandomMapParams &p) {
    if (p.outer_vertices < 3) throw std::invalid_argument("outer ring needs at least 3 vertices");
    Rng rng(p.seed);
    const Point center = Round({0.5 * p.extent, 0.5 * p.extent}, p.integer_grid);

    Ring outer;
    for (int attempt = 0; outer.empty(); ++attempt) {
        if (attempt > 1000) throw std::runtime_error("could not generate an outer ring");
        outer = StarRing(rng, center, p.outer_vertices, 0.3 * p.extent, 0.48 * p.extent, p.integer_grid);
    }

    std::vector<Ring> rings{outer};
    std::set<std::pair<double, double>> used;
    for (const Point &q : outer) used.emplace(q.x, q.y);

    const double hole_scale = 0.3 * p.extent / std::max(2.0, std::sqrt(static_cast<double>(p.holes) + 1.0));
    int placed = 0;
    for (int attempt = 0; placed < p.holes; ++attempt) {
        if (attempt > 200 * (p.holes + 1)) throw std::runtime_error("could not place all holes");
        int k = p.hole_vertices_min +
                static_cast<int>(rng.Index(static_cast<std::uint64_t>(p.hole_vertices_max - p.hole_vertices_min + 1)));
        double r = rng.Uniform(0.35, 0.5) * hole_scale;
        Point c = Round({rng.Uniform(0.1, 0.9) * p.extent, rng.Uniform(0.1, 0.9) * p.extent}, p.integer_grid);
        Ring hole = StarRing(rng, c, k, 0.4 * r, r, p.integer_grid);
        if (hole.empty()) continue;
        bool clash = false;
        for (const Point &q : hole) clash = clash || used.count({q.x, q.y}) > 0;
        if (clash) continue;
        rings.push_back(hole);
        try {
            NormalizeReport rep;
            ValidateAndNormalize(rings, &rep);
            if (rep.discarded == 0) {
                for (const Point &q : hole) used.emplace(q.x, q.y);
                ++placed;
                continue;
            }
        } catch (const EnvironmentError &) {
        }
        rings.pop_back();
    }
    return ValidateAndNormalize(rings);
}

RandomMapParams DeskMapParams(std::uint64_t seed) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 7);
    RandomMapParams p;
    p.seed = seed;
    p.holes = static_cast<int>(rng.Index(6));
    p.hole_vertices_min = 3;
    p.hole_vertices_max = 10;
    int budget = 20 + static_cast<int>(rng.Index(181)); // total vertices in [20, 200]
    int hole_budget = std::min(p.holes * 6, budget - 14);
    p.outer_vertices = std::max(14, budget - hole_budget);
    if (p.holes > 0) {
        int per = std::max(3, hole_budget / p.holes);
        p.hole_vertices_min = std::max(3, per - 2);
        p.hole_vertices_max = std::max(p.hole_vertices_min, std::min(per + 2, (200 - p.outer_vertices) / p.holes));
    }
    p.extent = std::max(100.0, 4.0 * p.outer_vertices);
    p.integer_grid = true;
    return p;
}

RandomMapParams LargeMapParams(std::uint64_t seed) {
    RandomMapParams p;
    p.seed = seed;
    p.outer_vertices = 400;
    p.holes = 60;
    p.hole_vertices_min = 26;
    p.hole_vertices_max = 34;
    p.extent = 1200.0;
    p.integer_grid = true;
    return p;
}

} // namespace polyvis::harness
