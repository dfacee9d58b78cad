#include <gtest/gtest.h>

#include <set>

#include "polyvis/batch.hpp"
#include "polyvis/graph.hpp"
#include "polyvis/harness/mapgen.hpp"
#include "polyvis/harness/random.hpp"
#include "polyvis/oracle.hpp"
#include "support.hpp"

using namespace polyvis;

namespace {

Environment EmptySquare() { return ValidateAndNormalize({{{0, 0}, {10, 0}, {10, 10}, {0, 10}}}); }

std::vector<VertexId> AllVertices(const Mesh &m) {
    std::vector<VertexId> v(m.vertex_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<VertexId>(i);
    return v;
}

VertexId VertexAt(const Mesh &m, Point p) {
    for (VertexId v = 0; v < static_cast<VertexId>(m.vertex_count()); ++v)
        if (m.point(v) == p) return v;
    return kNone;
}

std::vector<Point> InteriorPoints(const oracle::Oracle &ref, harness::Rng &rng, int n) {
    const Box &bb = ref.environment().bbox();
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < n) {
        Point p{rng.Uniform(bb.lo.x, bb.hi.x), rng.Uniform(bb.lo.y, bb.hi.y)};
        if (ref.Classify(p) == oracle::Where::Inside) out.push_back(p);
    }
    return out;
}

} // namespace

TEST(Graph, DocumentedCases) {
    auto sq = VisibilityEngine::Build(EmptySquare());
    auto V = AllVertices(sq.mesh());
    auto vv = VertexVertexGraph(sq, V);
    EXPECT_EQ(vv.edges.size(), 6u);
    GraphOptions zero;
    zero.range = 0.0;
    EXPECT_TRUE(VertexVertexGraph(sq, V, zero).edges.empty());

    auto k3 = PointPointGraph(sq, {{1, 1}, {9, 9}, {1, 9}});
    EXPECT_EQ(k3.edges.size(), 3u);

    std::vector<Point> P{{5, 5}};
    auto pp = PointPointGraph(sq, P);
    auto vp = VertexPointGraph(sq, V, P);
    EXPECT_EQ(vp.edges.size(), 4u);
    auto all = MergeGraphs(vv, pp, vp);
    EXPECT_EQ(all.edges.size(), 10u);
    EXPECT_EQ(all.edges.size(), all.count(GraphEdge::Tag::VV) + all.count(GraphEdge::Tag::PP) + all.count(GraphEdge::Tag::VP));
    EXPECT_TRUE(VertexPointGraph(sq, V, {}).edges.empty());
    EXPECT_THROW(MergeGraphs(vv, PointPointGraph(sq, {{1, 1}}), vp), std::invalid_argument);
    EXPECT_THROW(VertexPointGraph(sq, V, {{0, 0}}), std::invalid_argument);

    auto h = VisibilityEngine::Build(testsupport::SquareWithHole());
    EXPECT_TRUE(PointPointGraph(h, {{2, 5}, {8, 5}}).edges.empty());
    std::vector<VertexId> hole_corners{VertexAt(h.mesh(), {4, 4}), VertexAt(h.mesh(), {4, 6}), VertexAt(h.mesh(), {6, 6}),
                                       VertexAt(h.mesh(), {6, 4})};
    auto hv = VertexPointGraph(h, hole_corners, {{2, 5}});
    ASSERT_EQ(hv.edges.size(), 2u);
    std::set<Point, bool (*)(Point, Point)> seen(LexLess);
    for (const GraphEdge &e : hv.edges) seen.insert(h.mesh().point(hole_corners[e.a]));
    EXPECT_TRUE(seen.count({4, 4}) && seen.count({4, 6}));
}

TEST(Graph, ExportIsSortedText) {
    auto sq = VisibilityEngine::Build(EmptySquare());
    auto g = BuildGraph(sq, AllVertices(sq.mesh()), {{5, 5}});
    std::string text = ExportText(g);
    EXPECT_EQ(text.substr(0, 9), "VV 0 1\nVV");
    EXPECT_NE(text.find("VP 0 4\n"), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 10);
}

TEST(Graph, MatchesOracleAndIdentities) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Environment env = harness::RandomMap(harness::DeskMapParams(seed));
        auto eng = VisibilityEngine::Build(env);
        oracle::Oracle ref(env);
        harness::Rng rng(seed + 100);
        std::vector<VertexId> V;
        for (VertexId v = 0; v < static_cast<VertexId>(eng.mesh().vertex_count()) && V.size() < 30; v += 2) V.push_back(v);
        auto P = InteriorPoints(ref, rng, 30);

        GraphOptions opt;
        opt.check_symmetry = true;
        auto vv = VertexVertexGraph(eng, V, opt);
        auto pp = PointPointGraph(eng, P, opt);
        auto vp = VertexPointGraph(eng, V, P, opt);
        auto g = MergeGraphs(vv, pp, vp);
        EXPECT_EQ(g.edges.size(), vv.edges.size() + pp.edges.size() + vp.edges.size());

        std::vector<Point> sites;
        for (VertexId v : V) sites.push_back(eng.mesh().point(v));
        sites.insert(sites.end(), P.begin(), P.end());
        auto want = ref.Graph(sites);
        std::vector<std::pair<int, int>> got;
        for (const GraphEdge &e : g.edges) got.emplace_back(e.a, e.b);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, want) << "seed " << seed;

        opt.parallel = false;
        EXPECT_EQ(BuildGraph(eng, V, P, opt).edges, g.edges);

        // Range monotonicity.
        std::vector<GraphEdge> prev;
        for (double d : {5.0, 20.0, 60.0, 200.0}) {
            GraphOptions lim;
            lim.range = d;
            auto e = BuildGraph(eng, V, P, lim).edges;
            EXPECT_TRUE(std::includes(e.begin(), e.end(), prev.begin(), prev.end()));
            prev = e;
        }
    }
}

TEST(Batch, ParallelMatchesSerial) {
    Environment env = harness::RandomMap(harness::DeskMapParams(3));
    auto eng = VisibilityEngine::Build(env);
    oracle::Oracle ref(env);
    harness::Rng rng(9);
    auto qs = InteriorPoints(ref, rng, 200);
    qs.push_back({-5, -5});
    EXPECT_EQ(RegionBatch(eng, qs, {}, true), RegionBatch(eng, qs, {}, false));
    EXPECT_EQ(RegionBatch(eng, qs, 15.0, true), RegionBatch(eng, qs, 15.0, false));
    EXPECT_EQ(VerticesBatch(eng, qs, {}, true), VerticesBatch(eng, qs, {}, false));
    std::vector<std::pair<Point, Point>> pairs;
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) pairs.emplace_back(qs[i], qs[i + 1]);
    EXPECT_EQ(TwoPointBatch(eng, pairs, {}, true), TwoPointBatch(eng, pairs, {}, false));
    EXPECT_FALSE(RegionBatch(eng, qs).back());
}
