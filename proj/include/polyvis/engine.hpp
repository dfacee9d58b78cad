#pragma once

#include <optional>
#include <vector>

#include "polyvis/environment.hpp"
#include "polyvis/locate.hpp"
#include "polyvis/mesh.hpp"
#include "polyvis/radial.hpp"
#include "polyvis/visibility.hpp"

namespace polyvis {

struct EngineConfig {
    EpsilonConfig eps;
    double bucket_size = 1.0;
    double arc_angle = kDefaultArcAngle;
};

struct RegionResult {
    PointLocationResult location;
    AbstractVisibilityRegion abstract_region;
    RadialVisibilityRegion radial;   ///< after circle intersection, before sampling
    Ring polygon;
    VisQueryStats stats;
    int degenerate_restrictions = 0;
};

/// Mesh, bucket grid and configuration for one environment. Immutable after Build;
/// all queries are safe to run concurrently. Absent results mean q is outside W.
class VisibilityEngine {
public:
    static VisibilityEngine Build(Environment env, EngineConfig cfg = {});

    [[nodiscard]] const Environment &environment() const { return env_; }
    [[nodiscard]] const Mesh &mesh() const { return mesh_; }
    [[nodiscard]] const BucketGrid &grid() const { return grid_; }
    [[nodiscard]] const EngineConfig &config() const { return cfg_; }

    [[nodiscard]] std::optional<PointLocationResult> Locate(Point q) const { return polyvis::Locate(mesh_, grid_, q, cfg_.eps); }

    /// Locate, expand, resolve, clip to the disk, sample arcs, emit the ring.
    [[nodiscard]] std::optional<RegionResult> Region(Point q, std::optional<double> d = {}) const;
    /// Same pipeline from an existing location result.
    [[nodiscard]] RegionResult RegionFrom(const PointLocationResult &pl, Point q, std::optional<double> d = {}) const;

    [[nodiscard]] std::optional<bool> TwoPoint(Point q, Point p, std::optional<double> d = {},
                                               VisQueryStats *stats = nullptr) const;
    /// Outer absent: q outside W. Inner absent: the hit is farther than d.
    [[nodiscard]] std::optional<std::optional<Point>> Ray(Point q, DirVector u, std::optional<double> d = {},
                                                          VisQueryStats *stats = nullptr) const;
    [[nodiscard]] std::optional<std::vector<VertexId>> Vertices(Point q, std::optional<double> d = {},
                                                                const std::vector<char> &filter = {}) const;
    [[nodiscard]] SiteIndex Sites(const std::vector<Point> &points) const {
        return SiteIndex::Build(mesh_, grid_, points, cfg_.eps);
    }
    [[nodiscard]] std::optional<std::vector<int>> Points(Point q, const SiteIndex &sites,
                                                         std::optional<double> d = {}) const;

private:
    Environment env_;
    Mesh mesh_;
    BucketGrid grid_;
    EngineConfig cfg_;
};

} // namespace polyvis
