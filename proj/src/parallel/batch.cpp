#include "polyvis/batch.hpp"

#include "rows.hpp"

namespace polyvis {

std::vector<std::optional<Ring>> RegionBatch(const VisibilityEngine &eng, const std::vector<Point> &queries,
                                             std::optional<double> d, bool parallel) {
    return ComputeRows(queries.size(), parallel, [&](std::size_t i) -> std::optional<Ring> {
        auto r = eng.Region(queries[i], d);
        if (!r) return std::nullopt;
        return std::move(r->polygon);
    });
}

std::vector<std::optional<bool>> TwoPointBatch(const VisibilityEngine &eng,
                                               const std::vector<std::pair<Point, Point>> &pairs,
                                               std::optional<double> d, bool parallel) {
    return ComputeRows(pairs.size(), parallel,
                       [&](std::size_t i) { return eng.TwoPoint(pairs[i].first, pairs[i].second, d); });
}

std::vector<std::optional<std::vector<VertexId>>> VerticesBatch(const VisibilityEngine &eng,
                                                                const std::vector<Point> &queries,
                                                                std::optional<double> d, bool parallel) {
    return ComputeRows(queries.size(), parallel, [&](std::size_t i) { return eng.Vertices(queries[i], d); });
}

} // namespace polyvis
