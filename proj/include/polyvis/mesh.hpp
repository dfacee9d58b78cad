#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "polyvis/environment.hpp"
#include "polyvis/geometry.hpp"

namespace polyvis {

/// Triangle with counter-clockwise corners. Edge i joins v[i] and v[(i + 1) % 3];
/// n[i] is the neighbor across edge i or kNone on the boundary of W.
struct Triangle {
    std::array<VertexId, 3> v{kNone, kNone, kNone};
    std::array<TriangleId, 3> n{kNone, kNone, kNone};
    std::array<EdgeId, 3> e{kNone, kNone, kNone};
};

struct MeshEdge {
    VertexId a = kNone;
    VertexId b = kNone;
    TriangleId t0 = kNone; ///< triangle holding a -> b counter-clockwise
    TriangleId t1 = kNone; ///< triangle across, or kNone for a boundary edge
    [[nodiscard]] bool boundary() const { return t1 == kNone; }
};

/// Constrained Delaunay triangulation of an environment. Every environment vertex is
/// a mesh vertex; vertices with identical coordinates share one mesh vertex.
class Mesh {
public:
    /// Counter-clockwise chain of triangles around a vertex (one wedge of W).
    struct Fan {
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
    };

    static Mesh Build(const Environment &env);

    [[nodiscard]] std::size_t vertex_count() const { return points_.size(); }
    [[nodiscard]] std::size_t triangle_count() const { return triangles_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

    [[nodiscard]] Point point(VertexId v) const { return points_[v]; }
    [[nodiscard]] const std::vector<Point> &points() const { return points_; }
    [[nodiscard]] const Triangle &triangle(TriangleId t) const { return triangles_[t]; }
    [[nodiscard]] const std::vector<Triangle> &triangles() const { return triangles_; }
    [[nodiscard]] const MeshEdge &edge(EdgeId e) const { return edges_[e]; }
    [[nodiscard]] const std::vector<MeshEdge> &edges() const { return edges_; }

    [[nodiscard]] std::array<Point, 3> corners(TriangleId t) const {
        const Triangle &tr = triangles_[t];
        return {points_[tr.v[0]], points_[tr.v[1]], points_[tr.v[2]]};
    }
    /// Corner index of v in t, or -1.
    [[nodiscard]] int corner_of(TriangleId t, VertexId v) const {
        const Triangle &tr = triangles_[t];
        for (int i = 0; i < 3; ++i)
            if (tr.v[i] == v) return i;
        return -1;
    }
    /// Edge index of t whose neighbor is u, or -1.
    [[nodiscard]] int edge_towards(TriangleId t, TriangleId u) const {
        const Triangle &tr = triangles_[t];
        for (int i = 0; i < 3; ++i)
            if (tr.n[i] == u) return i;
        return -1;
    }

    [[nodiscard]] std::span<const Fan> fans(VertexId v) const {
        return {fans_.data() + fan_offsets_[v], fans_.data() + fan_offsets_[v + 1]};
    }
    [[nodiscard]] std::span<const TriangleId> fan_triangles(const Fan &f) const {
        return {fan_tris_.data() + f.begin, fan_tris_.data() + f.end};
    }
    /// All triangles around v, wedge after wedge, each wedge counter-clockwise.
    [[nodiscard]] std::vector<TriangleId> OrderedFan(VertexId v) const;
    /// For each triangle of OrderedFan(v), the edge opposite v with that triangle.
    [[nodiscard]] std::vector<std::pair<EdgeId, TriangleId>> OuterFanEdges(VertexId v) const;

    [[nodiscard]] VertexId mesh_vertex_of(VertexId env_vertex) const { return env_to_mesh_[env_vertex]; }
    /// Number of environment vertices merged into v (2 or more at weakly simple vertices).
    [[nodiscard]] int multiplicity(VertexId v) const { return multiplicity_[v]; }
    [[nodiscard]] const Box &bbox() const { return bbox_; }
    [[nodiscard]] std::size_t hole_count() const { return hole_count_; }

    /// Structural self-check; returns human-readable problems (empty when valid).
    [[nodiscard]] std::vector<std::string> CheckInvariants(const Environment &env) const;

private:
    std::vector<Point> points_;
    std::vector<Triangle> triangles_;
    std::vector<MeshEdge> edges_;
    std::vector<VertexId> env_to_mesh_;
    std::vector<int> multiplicity_;
    std::vector<std::uint32_t> fan_offsets_;
    std::vector<Fan> fans_;
    std::vector<TriangleId> fan_tris_;
    Box bbox_;
    std::size_t hole_count_ = 0;

    friend class MeshBuilder;
};

} // namespace polyvis
