#include <gtest/gtest.h>

#include "polyvis/environment.hpp"
#include "polyvis/harness/mapgen.hpp"
#include "support.hpp"

using namespace polyvis;

namespace {

EnvironmentError::Kind KindOf(const std::vector<Ring> &rings) {
    try {
        ValidateAndNormalize(rings);
    } catch (const EnvironmentError &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected rejection";
    return EnvironmentError::Kind::Empty;
}

} // namespace

TEST(Environment, OrientationIsNormalized) {
    Ring outer_cw{{0, 0}, {0, 10}, {10, 10}, {10, 0}};
    Ring hole_ccw{{4, 4}, {6, 4}, {6, 6}, {4, 6}};
    NormalizeReport rep;
    Environment env = ValidateAndNormalize({hole_ccw, outer_cw}, &rep);
    EXPECT_GT(SignedArea(env.outer()), 0.0);
    ASSERT_EQ(env.holes().size(), 1u);
    EXPECT_LT(SignedArea(env.holes()[0]), 0.0);
    EXPECT_DOUBLE_EQ(env.area(), 96.0);
    EXPECT_EQ(env.vertex_count(), 8u);
    EXPECT_EQ(rep.diagnostics.size(), 2u);
}

TEST(Environment, Idempotent) {
    Environment a = testsupport::SquareWithHole();
    std::vector<Ring> rings{a.outer()};
    for (const Ring &h : a.holes()) rings.push_back(h);
    Environment b = ValidateAndNormalize(rings);
    EXPECT_EQ(a.vertices(), b.vertices());
}

TEST(Environment, DiscardsOutsideAndNestedRings) {
    Ring outer{{0, 0}, {20, 0}, {20, 20}, {0, 20}};
    Ring hole{{5, 5}, {5, 15}, {15, 15}, {15, 5}};
    Ring island{{8, 8}, {12, 8}, {12, 12}, {8, 12}};
    Ring far{{30, 30}, {31, 30}, {31, 31}};
    NormalizeReport rep;
    Environment env = ValidateAndNormalize({outer, hole, island, far}, &rep);
    EXPECT_EQ(env.holes().size(), 1u);
    EXPECT_EQ(rep.discarded, 2);
}

TEST(Environment, RejectsInvalidRings) {
    using K = EnvironmentError::Kind;
    EXPECT_EQ(KindOf({{{0, 0}, {1, 0}}}), K::TooFewVertices);
    EXPECT_EQ(KindOf({{{0, 0}, {1, 0}, {1, 0}, {0, 1}}}), K::RepeatedVertex);
    EXPECT_EQ(KindOf({{{0, 0}, {2, 0}, {1, 0}, {1, 1}}}), K::Spike);
    EXPECT_EQ(KindOf({{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}), K::SelfIntersection);
    Ring outer{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    EXPECT_EQ(KindOf({outer, {{8, 4}, {12, 4}, {12, 6}, {8, 6}}}), K::HoleOverlapsOuter);
    EXPECT_EQ(KindOf({outer, {{2, 2}, {5, 2}, {5, 5}, {2, 5}}, {{4, 4}, {7, 4}, {7, 7}, {4, 7}}}), K::HolesOverlap);
    // Hole vertex on an outer edge interior.
    EXPECT_EQ(KindOf({outer, {{5, 0}, {6, 2}, {4, 2}}}), K::HoleOverlapsOuter);
    EXPECT_EQ(KindOf({}), K::Empty);
}

TEST(Environment, WeaklySimpleTouchAllowedButPocketRejected) {
    Ring outer{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    Ring a{{2, 2}, {5, 5}, {2, 5}};
    Ring b{{5, 5}, {8, 8}, {8, 5}};
    Environment env = ValidateAndNormalize({outer, a, b});
    EXPECT_EQ(env.holes().size(), 2u);
    int weak = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(env.vertex_count()); ++v) weak += IsWeaklySimpleVertex(env, v);
    EXPECT_EQ(weak, 2);

    // Two holes touching twice enclose a pocket of W.
    Ring c{{2, 2}, {6, 2}, {6, 3}, {3, 3}, {3, 6}, {2, 6}};
    Ring d{{6, 3}, {7, 3}, {7, 7}, {2, 7}, {2, 6}, {6.5, 6.5}, {6.5, 3.5}};
    EXPECT_EQ(KindOf({outer, c, d}), EnvironmentError::Kind::DisconnectedInterior);
}

TEST(Environment, RandomMapsAreValidAndDeterministic) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto params = harness::DeskMapParams(seed);
        Environment a = harness::RandomMap(params);
        Environment b = harness::RandomMap(params);
        EXPECT_EQ(a.vertices(), b.vertices());
        EXPECT_GE(a.vertex_count(), 20u);
        EXPECT_LE(a.vertex_count(), 200u);
        EXPECT_LE(a.holes().size(), 5u);
    }
}
