#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "polyvis/geometry.hpp"

namespace polyvis {

class EnvironmentError : public std::runtime_error {
public:
    enum class Kind {
        Empty,
        NonFinite,
        TooFewVertices,
        RepeatedVertex,
        Spike,
        ZeroArea,
        SelfIntersection,
        HoleOverlapsOuter,
        HolesOverlap,
        DisconnectedInterior,
    };

    EnvironmentError(Kind kind, int ring, std::string what)
        : std::runtime_error(std::move(what)), kind_(kind), ring_(ring) {}

    [[nodiscard]] Kind kind() const { return kind_; }
    /// Index of the offending ring in the raw input, or -1.
    [[nodiscard]] int ring() const { return ring_; }

private:
    Kind kind_;
    int ring_;
};

const char *ToString(EnvironmentError::Kind kind);

/// Polygonal domain W: one counter-clockwise outer ring and clockwise holes.
/// Vertex ids enumerate the outer ring first, then each hole in order.
class Environment {
public:
    struct Edge {
        VertexId a; ///< W lies to the left of a -> b
        VertexId b;
        int ring;
    };

    Environment() = default;

    [[nodiscard]] const Ring &outer() const { return outer_; }
    [[nodiscard]] const std::vector<Ring> &holes() const { return holes_; }
    [[nodiscard]] std::size_t ring_count() const { return 1 + holes_.size(); }
    [[nodiscard]] const Ring &ring(std::size_t i) const { return i == 0 ? outer_ : holes_[i - 1]; }

    [[nodiscard]] const std::vector<Point> &vertices() const { return vertices_; }
    [[nodiscard]] Point vertex(VertexId v) const { return vertices_[v]; }
    [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }
    [[nodiscard]] const std::vector<Edge> &edges() const { return edges_; }

    [[nodiscard]] int ring_of(VertexId v) const;
    [[nodiscard]] VertexId ring_offset(std::size_t ring) const { return offsets_[ring]; }
    [[nodiscard]] VertexId next_in_ring(VertexId v) const;
    [[nodiscard]] VertexId prev_in_ring(VertexId v) const;

    [[nodiscard]] const Box &bbox() const { return bbox_; }
    /// Area of W: outer area minus hole areas.
    [[nodiscard]] double area() const { return area_; }

    /// Builds directly from rings that are already valid and oriented.
    static Environment FromNormalized(Ring outer, std::vector<Ring> holes);

private:
    Ring outer_;
    std::vector<Ring> holes_;
    std::vector<Point> vertices_;
    std::vector<Edge> edges_;
    std::vector<VertexId> offsets_;
    Box bbox_;
    double area_ = 0.0;
};

struct NormalizeReport {
    std::vector<std::string> diagnostics; ///< one line per discarded or reoriented ring
    int discarded = 0;
};

/// Validates raw rings and builds an environment. The largest ring by absolute area
/// becomes the outer boundary; rings strictly inside it become holes; rings outside it
/// or inside a hole are discarded. Invalid input is rejected, never repaired.
Environment ValidateAndNormalize(const std::vector<Ring> &raw, NormalizeReport *report = nullptr);

/// True when the location of v coincides with another vertex of W.
bool IsWeaklySimpleVertex(const Environment &env, VertexId v);

} // namespace polyvis
