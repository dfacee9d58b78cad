#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "polyvis/engine.hpp"
#include "polyvis/io/svg.hpp"

namespace polyvis::io {

enum class QueryType { Region, TwoPoint, Ray, Vertices, Points, Graph };

/// Command-line names: region, 2pt, ray, vertices, points, graph.
const char *ToString(QueryType t);
std::optional<QueryType> ParseQueryType(std::string_view name);

struct QueryRequest {
    QueryType type = QueryType::Region;
    Point at;
    std::optional<Point> to;       ///< 2pt
    std::optional<DirVector> dir;  ///< ray
    std::vector<Point> sites;      ///< points, graph
    std::optional<double> range;
};

struct QueryOutcome {
    nlohmann::ordered_json json;
    bool null = false; ///< the query point is outside W
};

/// Runs one request and describes it as {"query", "result", "stats"}. A Null result is
/// `"result": null`. Timings are left out so the document is reproducible. Graph
/// requests use every mesh vertex as a vertex site and ignore `at`. When `svg` is
/// given, the query geometry is added to it.
QueryOutcome RunQuery(const VisibilityEngine &eng, const QueryRequest &req, SvgScene *svg = nullptr);

} // namespace polyvis::io
