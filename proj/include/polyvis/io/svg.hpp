#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polyvis/environment.hpp"
#include "polyvis/radial.hpp"

namespace polyvis::io {

/// Accumulates overlays on top of an environment and renders them as one SVG document.
/// Output depends only on the inputs and the order of the Add calls.
class SvgScene {
public:
    explicit SvgScene(Environment env) : env_(std::move(env)) {}

    /// Arc edges of an unsampled region become circular-arc path commands.
    void AddRegion(const RadialVisibilityRegion &region);
    void AddPolygon(const Ring &ring);
    void AddSegments(const std::vector<std::pair<Point, Point>> &segments);
    void AddRay(Point from, Point to);
    void AddPoint(Point p);

    [[nodiscard]] std::string Render() const;
    void Save(const std::string &path) const;

private:
    Environment env_;
    std::vector<std::string> layers_;
    std::vector<Point> extra_; // overlay points that may lie outside the map box
};

} // namespace polyvis::io
