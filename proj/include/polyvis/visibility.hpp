#pragma once

#include <optional>
#include <vector>

#include "polyvis/locate.hpp"
#include "polyvis/mesh.hpp"

namespace polyvis {

struct VisQueryStats {
    std::size_t triangles_traversed = 0;
    std::size_t views_split = 0;
    std::size_t boundary_edges_hit = 0;
};

/// Optional per-query instrumentation.
struct QueryProbe {
    VisQueryStats *stats = nullptr;
    std::vector<TriangleId> *trace = nullptr; ///< triangles entered, in order
};

/// One piece of the region boundary, in counter-clockwise order around the seed.
/// A restriction is the ray from the seed through a mesh vertex that clips the
/// corresponding end of the edge.
struct AbstractElement {
    enum class Kind { Node, EdgeSegment };
    Kind kind = Kind::Node;
    VertexId node = kNone;
    EdgeId edge = kNone;
    VertexId right = kNone; ///< edge endpoint seen first when sweeping counter-clockwise
    VertexId left = kNone;
    VertexId restrict_right = kNone;
    VertexId restrict_left = kNone;
    bool pruned = false; ///< edge lies beyond the range limit; not part of the boundary of W
};

struct AbstractVisibilityRegion {
    Point seed;
    VertexId seed_vertex = kNone; ///< set when the expansion starts from a vertex
    std::optional<double> radius;
    std::vector<AbstractElement> elements;
};

/// Visibility region of q, optionally limited to radius d (the result is then a superset
/// of the limited region, to be intersected with the disk of radius d).
AbstractVisibilityRegion VisibilityRegion(const Mesh &mesh, const PointLocationResult &pl, Point q,
                                          std::optional<double> d = {}, QueryProbe probe = {});

/// Visible vertex ids in increasing order. `filter`, when non-empty, is indexed by vertex
/// id and restricts the output to vertices with a non-zero entry.
std::vector<VertexId> VisibleVertices(const Mesh &mesh, const PointLocationResult &pl, Point q,
                                      std::optional<double> d = {}, const std::vector<char> &filter = {},
                                      QueryProbe probe = {});

/// Query sites bucketed by the triangle that contains them. A site on an edge or a vertex
/// is stored in every incident triangle; sites outside W are not stored.
class SiteIndex {
public:
    static SiteIndex Build(const Mesh &mesh, const BucketGrid &grid, const std::vector<Point> &sites,
                           const EpsilonConfig &eps = {});

    [[nodiscard]] std::size_t size() const { return sites_.size(); }
    [[nodiscard]] Point site(int i) const { return sites_[i]; }
    [[nodiscard]] const std::optional<PointLocationResult> &location(int i) const { return locations_[i]; }
    [[nodiscard]] std::span<const int> in_triangle(TriangleId t) const {
        return {items_.data() + offsets_[t], items_.data() + offsets_[t + 1]};
    }

private:
    std::vector<Point> sites_;
    std::vector<std::optional<PointLocationResult>> locations_;
    std::vector<std::uint32_t> offsets_;
    std::vector<int> items_;
};

/// Indices of visible sites in increasing order.
std::vector<int> VisiblePoints(const Mesh &mesh, const PointLocationResult &pl, Point q, const SiteIndex &sites,
                               std::optional<double> d = {}, QueryProbe probe = {});

/// True when the closed segment from the seed of q to p lies in W (and within d).
bool TwoPointVisible(const Mesh &mesh, const PointLocationResult &pl, Point q, Point p,
                     std::optional<double> d = {}, QueryProbe probe = {});

/// Point where the ray from the seed of q in direction u leaves W, i.e. the far end of
/// the longest visible prefix. Absent when that point lies farther than d.
std::optional<Point> ShootRay(const Mesh &mesh, const PointLocationResult &pl, Point q, DirVector u,
                              std::optional<double> d = {}, QueryProbe probe = {});

} // namespace polyvis
