#pragma once

#include <optional>
#include <vector>

#include "polyvis/mesh.hpp"

namespace polyvis {

struct EpsilonConfig {
    /// Increasing tolerances for the fallback location passes.
    std::vector<double> eps1{1e-18, 1e-17, 1e-16, 1e-15, 1e-14, 1e-13, 1e-12, 1e-11, 1e-10, 1e-9};
    /// Snapping radius to the nearest vertex of the located triangle.
    double eps2 = 1e-12;
};

enum class Coincidence { Interior, OnEdge, OnVertex };

struct PointLocationResult {
    TriangleId triangle = kNone;
    Coincidence coincidence = Coincidence::Interior;
    std::int32_t feature = kNone;     ///< edge id for OnEdge, vertex id for OnVertex
    VertexId snapped_vertex = kNone;  ///< nearest triangle vertex within eps2
    double eps1_used = 0.0;           ///< 0 when located exactly
    [[nodiscard]] bool snapped() const { return snapped_vertex != kNone; }
};

/// Uniform grid over the mesh bounding box; each cell lists (in increasing id order)
/// every triangle whose closure may meet the closed cell.
class BucketGrid {
public:
    static BucketGrid Build(const Mesh &mesh, double cell_size = 1.0);

    [[nodiscard]] int nx() const { return nx_; }
    [[nodiscard]] int ny() const { return ny_; }
    [[nodiscard]] double cell_size() const { return cell_; }
    [[nodiscard]] int CellX(double x) const;
    [[nodiscard]] int CellY(double y) const;
    [[nodiscard]] std::span<const TriangleId> cell(int cx, int cy) const {
        std::size_t c = static_cast<std::size_t>(cy) * nx_ + cx;
        return {items_.data() + offsets_[c], items_.data() + offsets_[c + 1]};
    }
    [[nodiscard]] const Box &box() const { return box_; }

private:
    Box box_;
    double cell_ = 1.0;
    int nx_ = 0, ny_ = 0;
    std::vector<std::uint32_t> offsets_;
    std::vector<TriangleId> items_;
};

/// Finds a triangle containing q: exact pass over q's cell, then the eps1 passes over
/// the 3x3 neighborhood, then snapping within eps2. Absent when every pass fails.
std::optional<PointLocationResult> Locate(const Mesh &mesh, const BucketGrid &grid, Point q,
                                          const EpsilonConfig &eps = {});

/// Location result describing the mesh vertex v itself.
PointLocationResult LocateVertex(const Mesh &mesh, VertexId v);

/// Query seed: the snapped vertex when snapping happened, otherwise q.
inline Point Seed(const Mesh &mesh, const PointLocationResult &pl, Point q) {
    return pl.snapped() ? mesh.point(pl.snapped_vertex) : q;
}

} // namespace polyvis
