#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyvis/engine.hpp"

namespace polyvis {

/// Sites are indexed vertex sites first, then point sites.
struct GraphEdge {
    enum class Tag { VV, PP, VP };
    Tag tag = Tag::VV;
    int a = 0; ///< smaller site index
    int b = 0;
    friend bool operator==(const GraphEdge &, const GraphEdge &) = default;
    friend auto operator<=>(const GraphEdge &, const GraphEdge &) = default;
};

const char *ToString(GraphEdge::Tag tag);

struct VisGraph {
    std::vector<VertexId> vertex_sites; ///< mesh vertex ids
    std::vector<Point> point_sites;
    std::vector<GraphEdge> edges;       ///< sorted
    std::vector<int> unlocated;         ///< point-site indices outside W (no edges)

    [[nodiscard]] std::size_t site_count() const { return vertex_sites.size() + point_sites.size(); }
    [[nodiscard]] std::size_t count(GraphEdge::Tag tag) const;
};

struct GraphOptions {
    std::optional<double> range;
    bool parallel = true;
    /// Compute every pair from both endpoints and throw std::logic_error on disagreement.
#ifdef NDEBUG
    bool check_symmetry = false;
#else
    bool check_symmetry = true;
#endif
};

VisGraph VertexVertexGraph(const VisibilityEngine &eng, const std::vector<VertexId> &V, const GraphOptions &opt = {});
VisGraph PointPointGraph(const VisibilityEngine &eng, const std::vector<Point> &P, const GraphOptions &opt = {});
VisGraph VertexPointGraph(const VisibilityEngine &eng, const std::vector<VertexId> &V, const std::vector<Point> &P,
                          const GraphOptions &opt = {});

/// Disjoint union. Throws std::invalid_argument when the site sets differ.
VisGraph MergeGraphs(const VisGraph &vv, const VisGraph &pp, const VisGraph &vp);

/// Full graph over V and P: the merge of the three subgraphs.
VisGraph BuildGraph(const VisibilityEngine &eng, const std::vector<VertexId> &V, const std::vector<Point> &P,
                    const GraphOptions &opt = {});

/// One line per edge, `<tag> <a> <b>`, in edge order.
std::string ExportText(const VisGraph &g);

} // namespace polyvis
