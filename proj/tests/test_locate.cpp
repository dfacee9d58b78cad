#include <gtest/gtest.h>

#include <random>

#include "polyvis/harness/mapgen.hpp"
#include "polyvis/locate.hpp"
#include "polyvis/predicates.hpp"
#include "support.hpp"

using namespace polyvis;

namespace {

// Reference: scan every triangle in id order with the exact test.
std::optional<TriangleId> Exhaustive(const Mesh &m, Point q) {
    for (std::size_t t = 0; t < m.triangle_count(); ++t) {
        auto c = m.corners(static_cast<TriangleId>(t));
        if (q.x < std::min({c[0].x, c[1].x, c[2].x}) || q.x > std::max({c[0].x, c[1].x, c[2].x}) ||
            q.y < std::min({c[0].y, c[1].y, c[2].y}) || q.y > std::max({c[0].y, c[1].y, c[2].y}))
            continue;
        int s0 = testsupport::ExactOrient(c[0], c[1], q);
        int s1 = testsupport::ExactOrient(c[1], c[2], q);
        int s2 = testsupport::ExactOrient(c[2], c[0], q);
        if (s0 >= 0 && s1 >= 0 && s2 >= 0) return static_cast<TriangleId>(t);
    }
    return std::nullopt;
}

} // namespace

TEST(Locate, DocumentedCases) {
    Environment env = testsupport::SquareWithHole();
    Mesh m = Mesh::Build(env);
    BucketGrid g = BucketGrid::Build(m, 1.0);
    EpsilonConfig eps;

    auto in = Locate(m, g, {1.0, 1.0}, eps);
    ASSERT_TRUE(in);
    EXPECT_EQ(in->eps1_used, 0.0);
    EXPECT_FALSE(in->snapped());

    EXPECT_FALSE(Locate(m, g, {5.0, 5.0}, eps)); // inside the hole

    auto near = Locate(m, g, {4.0 + 1e-13, 5.0}, eps);
    ASSERT_TRUE(near);
    EXPECT_EQ(near->coincidence, Coincidence::OnEdge);

    auto snapped = Locate(m, g, {10.0 - 1e-13, 10.0}, eps);
    ASSERT_TRUE(snapped);
    ASSERT_TRUE(snapped->snapped());
    EXPECT_EQ(m.point(snapped->snapped_vertex), (Point{10, 10}));

    auto outside = Locate(m, g, {10.0 + 1e-12, 5.0}, eps);
    ASSERT_TRUE(outside);
    EXPECT_GT(outside->eps1_used, 0.0);
    EXPECT_LE(outside->eps1_used, 1e-11);
    EXPECT_FALSE(Locate(m, g, {10.0 + 1e-6, 5.0}, eps));

    auto vertex = Locate(m, g, {4.0, 4.0}, eps);
    ASSERT_TRUE(vertex);
    EXPECT_EQ(vertex->coincidence, Coincidence::OnVertex);
}

TEST(Locate, ExactPassEqualsExhaustiveScan) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Environment env = harness::RandomMap(harness::DeskMapParams(seed));
        Mesh m = Mesh::Build(env);
        BucketGrid g = BucketGrid::Build(m, 1.0);
        EpsilonConfig exact;
        exact.eps1.clear();
        exact.eps2 = 0.0;
        std::mt19937_64 rng(seed);
        const Box &b = env.bbox();
        std::uniform_real_distribution<double> ux(b.lo.x - 1, b.hi.x + 1), uy(b.lo.y - 1, b.hi.y + 1);
        for (int i = 0; i < 3000; ++i) {
            Point q{ux(rng), uy(rng)};
            if (i % 5 == 0) q = env.vertex(static_cast<VertexId>(i % env.vertex_count()));
            if (i % 5 == 1) {
                const MeshEdge &e = m.edge(static_cast<EdgeId>(i % m.edge_count()));
                q = 0.5 * (m.point(e.a) + m.point(e.b));
            }
            auto got = Locate(m, g, q, exact);
            auto ref = Exhaustive(m, q);
            ASSERT_EQ(got.has_value(), ref.has_value()) << q.x << " " << q.y;
            if (got) {
                EXPECT_EQ(got->triangle, *ref);
            }
        }
    }
}

TEST(Locate, EpsilonMonotoneInPrefix) {
    Environment env = testsupport::SquareWithHole();
    Mesh m = Mesh::Build(env);
    BucketGrid g = BucketGrid::Build(m, 1.0);
    EpsilonConfig full;
    for (double off : {1e-17, 1e-15, 1e-13, 1e-11, 1e-10}) {
        Point q{-off, 3.3};
        for (std::size_t k = 1; k <= full.eps1.size(); ++k) {
            EpsilonConfig prefix = full;
            prefix.eps1.resize(k);
            auto a = Locate(m, g, q, prefix);
            if (!a) continue;
            auto b = Locate(m, g, q, full);
            ASSERT_TRUE(b);
            EXPECT_EQ(a->triangle, b->triangle);
            EXPECT_EQ(a->eps1_used, b->eps1_used);
        }
    }
}
