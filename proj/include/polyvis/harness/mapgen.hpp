#pragma once

#include <cstdint>

#include "polyvis/environment.hpp"

namespace polyvis::harness {

struct RandomMapParams {
    int outer_vertices = 40;
    int holes = 3;
    int hole_vertices_min = 3;
    int hole_vertices_max = 8;
    double extent = 100.0;   ///< coordinates lie in [0, extent]^2
    bool integer_grid = true;
    std::uint64_t seed = 1;
};

/// Seeded random environment: a star-shaped outer ring with star-shaped holes placed
/// without contact. Deterministic for a given parameter set.
Environment RandomMap(const RandomMapParams &params);

/// Parameters for the acceptance family: 20 to 200 vertices, 0 to 5 holes.
RandomMapParams DeskMapParams(std::uint64_t seed);

/// A map with at least 2000 vertices and at least 50 holes.
RandomMapParams LargeMapParams(std::uint64_t seed);

} // namespace polyvis::harness
