#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "polyvis/harness/area.hpp"
#include "polyvis/harness/behavior.hpp"
#include "polyvis/harness/mapgen.hpp"
#include "polyvis/harness/query_sets.hpp"
#include "polyvis/harness/runner.hpp"
#include "polyvis/oracle.hpp"
#include "support.hpp"

using namespace polyvis;
using namespace polyvis::harness;

namespace {

Ring Square(double x0, double y0, double s) { return {{x0, y0}, {x0 + s, y0}, {x0 + s, y0 + s}, {x0, y0 + s}}; }

QueryPointSet Line(int n) {
    QueryPointSet set;
    for (int i = 0; i < n; ++i) set.points.push_back({{1.0 + i, 1.0}});
    return set;
}

BenchSubject Fake() {
    BenchSubject s;
    s.map_area = 100.0;
    s.engine = [](Point) { return EngineOutput{Square(0, 0, 10)}; };
    s.reference = [](Point) { return std::optional<Ring>(Square(0, 0, 10)); };
    return s;
}

} // namespace

TEST(QuerySets, SizesAndInvariants) {
    Environment env = RandomMap(DeskMapParams(4));
    Mesh mesh = Mesh::Build(env);
    oracle::Oracle ref(env);
    auto sets = GenerateQuerySets(env, mesh, 300, 11);
    ASSERT_EQ(sets.size(), 6u);
    const auto scales = NoiseScales();
    for (const QueryPointSet &s : sets) {
        ASSERT_EQ(s.points.size(), 300u);
        for (const QueryPoint &q : s.points) {
            switch (s.kind) {
            case SetKind::In: EXPECT_TRUE(ref.Contains(q.p)); break;
            case SetKind::BB: EXPECT_TRUE(env.bbox().Contains(q.p)); break;
            case SetKind::Ver: EXPECT_EQ(q.p, env.vertex(q.source)); break;
            case SetKind::Mid: {
                const MeshEdge &e = mesh.edge(q.source);
                Point a = mesh.point(e.a), b = mesh.point(e.b);
                EXPECT_EQ(q.p, (Point{(a.x + b.x) / 2, (a.y + b.y) / 2}));
                break;
            }
            case SetKind::NearV:
            case SetKind::NearM:
                EXPECT_NE(std::find(scales.begin(), scales.end(), q.sigma), scales.end());
                break;
            }
        }
    }
    EXPECT_EQ(scales.front(), 1e-15);
    EXPECT_EQ(scales.back(), 1e-1);
}

TEST(QuerySets, DeterministicPerSeed) {
    Environment env = RandomMap(DeskMapParams(2));
    Mesh mesh = Mesh::Build(env);
    auto a = GenerateQuerySets(env, mesh, 100, 5);
    auto b = GenerateQuerySets(env, mesh, 100, 5);
    auto c = GenerateQuerySets(env, mesh, 100, 6);
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t i = 0; i < a[k].points.size(); ++i) {
            EXPECT_EQ(a[k].points[i].p, b[k].points[i].p);
            EXPECT_EQ(a[k].points[i].sigma, b[k].points[i].sigma);
        }
        EXPECT_NE(a[k].points[0].p, c[k].points[0].p);
    }
    // A single set matches its counterpart from the full batch.
    auto mid = GenerateQuerySet(env, mesh, SetKind::Mid, 100, 5);
    EXPECT_EQ(mid.points[17].p, a[4].points[17].p);
    EXPECT_EQ(ParseSetKind("NearM"), SetKind::NearM);
    EXPECT_FALSE(ParseSetKind("near"));
}

TEST(Area, DocumentedCases) {
    Ring a = Square(0, 0, 1);
    EXPECT_TRUE(XorAreaSame(a, a, 100.0));
    EXPECT_NEAR(XorArea(a, Square(0.5, 0, 1)), 1.0, 1e-15);
    EXPECT_FALSE(XorAreaSame(a, Square(0.5, 0, 1), 100.0));
    Ring sliver{{0, 0}, {1, 0}, {1, 1 + 2e-8}, {0, 1}};
    EXPECT_NEAR(XorArea(a, sliver), 1e-8, 1e-15);
    EXPECT_TRUE(XorAreaSame(a, sliver, 100.0));
    // Symmetric.
    Ring tri{{0.2, -0.3}, {1.7, 0.4}, {0.1, 1.2}};
    EXPECT_EQ(XorArea(a, tri), XorArea(tri, a));
    EXPECT_NEAR(DifferenceArea(a, Square(0.5, 0, 1)), 0.5, 1e-15);
}

TEST(Classify, DocumentedCases) {
    ClassifyContext ctx;
    ctx.map_area = 100.0;
    Ring a = Square(0, 0, 1), b = Square(0.5, 0, 1);
    EXPECT_EQ(Classify({}, {}, ctx), Behavior::Null);
    EXPECT_EQ(Classify({}, a, ctx), Behavior::A0R1);
    EXPECT_EQ(Classify(a, {}, ctx), Behavior::A1R0);
    EXPECT_EQ(Classify(a, a, ctx), Behavior::Same);
    EXPECT_EQ(Classify(a, b, ctx), Behavior::Diff);
    ctx.snapped = true;
    EXPECT_EQ(Classify(a, b, ctx), Behavior::Snap);
    ctx.weakly_simple_query = true;
    EXPECT_EQ(Classify(a, b, ctx), Behavior::Weak);
    EXPECT_EQ(Classify(a, a, ctx), Behavior::Same);
    ctx.ref_available = false;
    EXPECT_EQ(Classify(a, a, ctx), Behavior::NoRef);
}

TEST(Classify, TotalAndDeterministic) {
    Ring a = Square(0, 0, 1), b = Square(0.5, 0, 1);
    std::vector<std::optional<Ring>> outs{std::nullopt, a, b};
    int seen[kBehaviorCount] = {};
    for (const auto &x : outs)
        for (const auto &y : outs)
            for (int bits = 0; bits < 8; ++bits) {
                ClassifyContext ctx{100.0, (bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
                Behavior r = Classify(x, y, ctx);
                EXPECT_EQ(r, Classify(x, y, ctx));
                EXPECT_NE(r, Behavior::Crash);
                EXPECT_NE(r, Behavior::Inf);
                ++seen[static_cast<int>(r)];
            }
    for (int k = 2; k < kBehaviorCount; ++k) EXPECT_GT(seen[k], 0) << ToString(static_cast<Behavior>(k));
    for (int k = 0; k < kBehaviorCount; ++k)
        EXPECT_EQ(ParseBehavior(ToString(static_cast<Behavior>(k))), static_cast<Behavior>(k));
}

TEST(WeaklySimple, DocumentedCases) {
    Environment hole = testsupport::SquareWithHole();
    for (VertexId v = 0; v < static_cast<VertexId>(hole.vertex_count()); ++v) EXPECT_FALSE(DetectWeaklySimple(hole, v));
    Ring outer{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    Environment touch = ValidateAndNormalize({outer, {{2, 2}, {5, 5}, {2, 5}}, {{5, 5}, {8, 8}, {8, 5}}});
    int weak = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(touch.vertex_count()); ++v) {
        if (DetectWeaklySimple(touch, v)) {
            ++weak;
            EXPECT_EQ(touch.vertex(v), (Point{5, 5}));
        }
    }
    EXPECT_EQ(weak, 2);
    EXPECT_TRUE(OnWeaklySimpleVertex(touch, {5, 5}));
    EXPECT_FALSE(OnWeaklySimpleVertex(touch, {2, 2}));
}

TEST(Runner, StallBecomesInfAndRunContinues) {
    BenchSubject s = Fake();
    auto base = s.engine;
    s.engine = [base](Point q) {
        if (q.x == 3.0)
            for (;;) std::this_thread::sleep_for(std::chrono::seconds(1));
        return base(q);
    };
    auto recs = RunSupervised(s, Line(5), {0.3});
    ASSERT_EQ(recs.size(), 5u);
    EXPECT_EQ(recs[2].behavior, Behavior::Inf);
    for (int i : {0, 1, 3, 4}) EXPECT_EQ(recs[i].behavior, Behavior::Same);
    EXPECT_EQ(recs[4].index, 4);
}

TEST(Runner, CrashAndNoRef) {
    BenchSubject s = Fake();
    auto base = s.engine;
    s.engine = [base](Point q) {
        if (q.x == 2.0) std::abort();
        return base(q);
    };
    s.reference = [](Point q) -> std::optional<Ring> {
        if (q.x == 4.0) throw std::bad_alloc();
        if (q.x == 5.0) std::abort();
        return Square(0, 0, 10);
    };
    auto recs = RunSupervised(s, Line(6), {5.0});
    ASSERT_EQ(recs.size(), 6u);
    EXPECT_EQ(recs[0].behavior, Behavior::Same);
    EXPECT_EQ(recs[1].behavior, Behavior::Crash);
    EXPECT_EQ(recs[2].behavior, Behavior::Same);
    EXPECT_EQ(recs[3].behavior, Behavior::NoRef);
    EXPECT_EQ(recs[4].behavior, Behavior::NoRef);
    EXPECT_EQ(recs[5].behavior, Behavior::Same);
}

TEST(Runner, BenchOnRandomMap) {
    Environment env = RandomMap(DeskMapParams(7));
    Mesh mesh = Mesh::Build(env);
    auto sets = GenerateQuerySets(env, mesh, 60, 3);
    BenchOptions opt;
    opt.build_repetitions = 2;
    auto rep = RunBench(env, sets, opt);
    ASSERT_EQ(rep.records.size(), 360u);
    auto c = CountBehaviors(rep.records);
    for (Behavior b : {Behavior::Crash, Behavior::Inf, Behavior::Diff, Behavior::A0R1, Behavior::NoRef})
        EXPECT_EQ(c[static_cast<int>(b)], 0) << ToString(b);
    for (const BehaviorRecord &r : rep.records)
        if (r.set == SetKind::In) {
            EXPECT_EQ(r.behavior, Behavior::Same);
        }
    ASSERT_EQ(rep.summary.size(), 2u);
    EXPECT_GT(rep.summary[0].prep_us_mean, 0.0);
    EXPECT_GT(rep.summary[0].pl_percent, 0.0);
    EXPECT_LT(rep.summary[0].pl_percent, 100.0);

    std::ostringstream csv, sum;
    WriteReportCsv(csv, "m", rep.records);
    WriteSummaryCsv(sum, rep.summary);
    const std::string text = csv.str();
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "map,set_kind,point_index,x,y,behavior,t_locate_us,t_query_us,triangles_traversed");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 361);
    EXPECT_EQ(sum.str().substr(0, 12), "impl,init_us");
}
