#include <gtest/gtest.h>

#include <set>

#include "polyvis/harness/mapgen.hpp"
#include "polyvis/mesh.hpp"
#include "polyvis/predicates.hpp"
#include "support.hpp"

using namespace polyvis;

namespace {

void ExpectValidMesh(const Environment &env, const Mesh &m) {
    auto issues = m.CheckInvariants(env);
    for (const auto &s : issues) ADD_FAILURE() << s;
    // Exact Delaunay check with rational arithmetic, independent of the adaptive predicate.
    for (std::size_t t = 0; t < m.triangle_count(); ++t) {
        const Triangle &tr = m.triangle(static_cast<TriangleId>(t));
        auto c = m.corners(static_cast<TriangleId>(t));
        ASSERT_EQ(testsupport::ExactOrient(c[0], c[1], c[2]), 1);
        for (int i = 0; i < 3; ++i) {
            if (tr.n[i] == kNone) continue;
            const Triangle &u = m.triangle(tr.n[i]);
            for (VertexId w : u.v) ASSERT_LE(testsupport::ExactInCircle(c[0], c[1], c[2], m.point(w)), 0);
        }
    }
}

} // namespace

TEST(Mesh, SquareWithHole) {
    Environment env = testsupport::SquareWithHole();
    Mesh m = Mesh::Build(env);
    EXPECT_EQ(m.vertex_count(), 8u);
    EXPECT_EQ(m.triangle_count(), 8u); // n + 2h - 2
    ExpectValidMesh(env, m);
    for (VertexId v = 0; v < 8; ++v) {
        EXPECT_EQ(m.fans(v).size(), 1u);
        auto fan = m.OrderedFan(v);
        EXPECT_EQ(m.OuterFanEdges(v).size(), fan.size());
        // Open chain: first triangle's clockwise side and last triangle's counter-clockwise side are boundary.
        int i0 = m.corner_of(fan.front(), v);
        EXPECT_EQ(m.triangle(fan.front()).n[i0], kNone);
        int i1 = m.corner_of(fan.back(), v);
        EXPECT_EQ(m.triangle(fan.back()).n[(i1 + 2) % 3], kNone);
    }
}

TEST(Mesh, RandomMapsSatisfyInvariants) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Environment env = harness::RandomMap(harness::DeskMapParams(seed));
        Mesh m = Mesh::Build(env);
        EXPECT_EQ(m.vertex_count(), env.vertex_count());
        EXPECT_EQ(m.triangle_count(), env.vertex_count() + 2 * env.holes().size() - 2) << seed;
        ExpectValidMesh(env, m);
    }
}

TEST(Mesh, WeaklySimpleVertexHasTwoWedges) {
    Ring outer{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    Ring a{{2, 2}, {5, 5}, {2, 5}};
    Ring b{{5, 5}, {8, 8}, {8, 5}};
    Environment env = ValidateAndNormalize({outer, a, b});
    Mesh m = Mesh::Build(env);
    ExpectValidMesh(env, m);
    EXPECT_EQ(m.vertex_count(), env.vertex_count() - 1);
    VertexId shared = m.mesh_vertex_of(4 + 1);
    EXPECT_EQ(m.multiplicity(shared), 2);
    EXPECT_EQ(m.fans(shared).size(), 2u);
}

TEST(Mesh, CollinearBoundaryAndCocircularGrid) {
    Ring outer;
    for (int i = 0; i <= 6; ++i) outer.push_back({double(i), 0});
    for (int i = 1; i <= 6; ++i) outer.push_back({6, double(i)});
    for (int i = 5; i >= 0; --i) outer.push_back({double(i), 6});
    for (int i = 5; i >= 1; --i) outer.push_back({0, double(i)});
    Ring hole{{2, 2}, {2, 4}, {4, 4}, {4, 2}};
    Environment env = ValidateAndNormalize({outer, hole});
    Mesh m = Mesh::Build(env);
    ExpectValidMesh(env, m);
    EXPECT_EQ(m.triangle_count(), env.vertex_count() + 2 * 1 - 2);
}

TEST(Mesh, LargeMap) {
    Environment env = harness::RandomMap(harness::LargeMapParams(1));
    EXPECT_GE(env.vertex_count(), 2000u);
    EXPECT_GE(env.holes().size(), 50u);
    Mesh m = Mesh::Build(env);
    EXPECT_TRUE(m.CheckInvariants(env).empty());
    EXPECT_EQ(m.triangle_count(), env.vertex_count() + 2 * env.holes().size() - 2);
}
