#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polyvis/engine.hpp"

namespace polyvis {

/// Many independent queries against one engine. `parallel = false` runs the plain loop
/// kept as the reference for the OpenMP path; both return identical results.
std::vector<std::optional<Ring>> RegionBatch(const VisibilityEngine &eng, const std::vector<Point> &queries,
                                             std::optional<double> d = {}, bool parallel = true);

std::vector<std::optional<bool>> TwoPointBatch(const VisibilityEngine &eng,
                                               const std::vector<std::pair<Point, Point>> &pairs,
                                               std::optional<double> d = {}, bool parallel = true);

std::vector<std::optional<std::vector<VertexId>>> VerticesBatch(const VisibilityEngine &eng,
                                                                const std::vector<Point> &queries,
                                                                std::optional<double> d = {}, bool parallel = true);

} // namespace polyvis
