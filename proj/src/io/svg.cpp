#include "polyvis/io/svg.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "polyvis/format.hpp"

namespace polyvis::io {

namespace {

// SVG's y axis points down; every coordinate is written mirrored.
std::string XY(Point p) { return FormatDouble(p.x) + ',' + FormatDouble(p.y == 0.0 ? 0.0 : -p.y); }

std::string RingPath(const Ring &ring) {
    std::string d;
    for (std::size_t i = 0; i < ring.size(); ++i) d += (i == 0 ? "M" : "L") + XY(ring[i]);
    if (!ring.empty()) d += 'Z';
    return d;
}

std::string Arc(double r, double angle, Point to) {
    // Counter-clockwise in the map is sweep-flag 0 once mirrored.
    return "A" + FormatDouble(r) + ',' + FormatDouble(r) + " 0 " + (angle > std::numbers::pi ? "1" : "0") + " 0 " + XY(to);
}

} // namespace

void SvgScene::AddRegion(const RadialVisibilityRegion &region) {
    const auto &vs = region.vertices;
    if (vs.empty()) return;
    std::string d = "M" + XY(vs[0].point);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const RadialEdge &e = region.edges[i];
        Point to = vs[(i + 1) % vs.size()].point;
        if (e.kind == RadialEdge::Kind::Arc && region.radius) {
            double r = *region.radius;
            if (e.arc_angle >= 2 * std::numbers::pi - 1e-12) {
                Point from = vs[i].point;
                Point mid = 2.0 * region.seed - from;
                d += Arc(r, std::numbers::pi, mid) + Arc(r, std::numbers::pi, to);
            } else {
                d += Arc(r, e.arc_angle, to);
            }
        } else {
            d += "L" + XY(to);
        }
    }
    d += 'Z';
    layers_.push_back("<path class=\"region\" d=\"" + d + "\"/>");
    extra_.push_back(region.seed);
}

void SvgScene::AddPolygon(const Ring &ring) {
    layers_.push_back("<path class=\"region\" d=\"" + RingPath(ring) + "\"/>");
}

void SvgScene::AddSegments(const std::vector<std::pair<Point, Point>> &segments) {
    std::string d;
    for (const auto &[a, b] : segments) d += "M" + XY(a) + "L" + XY(b);
    layers_.push_back("<path class=\"graph\" d=\"" + d + "\"/>");
}

void SvgScene::AddRay(Point from, Point to) {
    layers_.push_back("<path class=\"ray\" d=\"M" + XY(from) + "L" + XY(to) + "\"/>");
    extra_.push_back(from);
    extra_.push_back(to);
}

void SvgScene::AddPoint(Point p) {
    layers_.push_back("<circle class=\"point\" cx=\"" + FormatDouble(p.x) + "\" cy=\"" +
                      FormatDouble(p.y == 0.0 ? 0.0 : -p.y) + "\" r=\"MARKER\"/>");
    extra_.push_back(p);
}

std::string SvgScene::Render() const {
    Box box = env_.bbox();
    for (Point p : extra_) box.Add(p);
    const double extent = std::max({box.Width(), box.Height(), 1e-9});
    const double m = 0.03 * extent;
    const std::string stroke = FormatDouble(extent / 400);
    const std::string marker = FormatDouble(extent / 150);

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + FormatDouble(box.lo.x - m) + ' ' +
                    FormatDouble(-(box.hi.y + m)) + ' ' + FormatDouble(box.Width() + 2 * m) + ' ' +
                    FormatDouble(box.Height() + 2 * m) + "\">\n";
    s += "<style>"
         ".env{fill:#e8e8e8;stroke:#202020;fill-rule:evenodd;stroke-width:" + stroke + "}"
         ".region{fill:#f0a020;fill-opacity:0.45;stroke:#c07010;stroke-width:" + stroke + "}"
         ".graph{fill:none;stroke:#2060c0;stroke-width:" + stroke + "}"
         ".ray{fill:none;stroke:#c02020;stroke-width:" + stroke + "}"
         ".point{fill:#c02020}"
         "</style>\n";
    std::string env;
    for (std::size_t r = 0; r < env_.ring_count(); ++r) env += RingPath(env_.ring(r));
    s += "<path class=\"env\" d=\"" + env + "\"/>\n";
    for (std::string layer : layers_) {
        if (auto k = layer.find("MARKER"); k != std::string::npos) layer.replace(k, 6, marker);
        s += layer + '\n';
    }
    s += "</svg>\n";
    return s;
}

void SvgScene::Save(const std::string &path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << Render();
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace polyvis::io
