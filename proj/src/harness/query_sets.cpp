#include "polyvis/harness/query_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polyvis/harness/random.hpp"
#include "polyvis/oracle.hpp"

namespace polyvis::harness {

const char *ToString(SetKind kind) {
    switch (kind) {
    case SetKind::In: return "In";
    case SetKind::BB: return "BB";
    case SetKind::Ver: return "Ver";
    case SetKind::NearV: return "NearV";
    case SetKind::Mid: return "Mid";
    case SetKind::NearM: return "NearM";
    }
    return "?";
}

std::optional<SetKind> ParseSetKind(std::string_view name) {
    for (SetKind k : kAllSetKinds)
        if (name == ToString(k)) return k;
    return std::nullopt;
}

std::vector<double> NoiseScales() {
    std::vector<double> s;
    for (int e = -15; e <= -1; ++e) s.push_back(std::pow(10.0, e));
    return s;
}

namespace {

std::uint64_t StreamSeed(std::uint64_t seed, SetKind kind) {
    // splitmix64 finalizer over (seed, kind)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(kind) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Point Midpoint(Point a, Point b) { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }

QueryPoint Perturb(Rng &rng, QueryPoint q, const std::vector<double> &scales) {
    q.sigma = scales[rng.Index(scales.size())];
    double dx = rng.Normal(), dy = rng.Normal();
    q.p = {q.p.x + q.sigma * dx, q.p.y + q.sigma * dy};
    return q;
}

} // namespace

double DistanceToBoundary(const Environment &env, Point p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Environment::Edge &e : env.edges()) {
        Point a = env.vertex(e.a), b = env.vertex(e.b);
        Point ab = b - a;
        double len2 = Dot(ab, ab);
        double t = len2 > 0 ? std::clamp(Dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, Distance(p, a + t * ab));
    }
    return best;
}

QueryPointSet GenerateQuerySet(const Environment &env, const Mesh &mesh, SetKind kind, int count, std::uint64_t seed) {
    if (count <= 0) throw std::invalid_argument("point count must be positive");
    QueryPointSet set;
    set.kind = kind;
    set.seed = seed;
    set.points.reserve(count);
    Rng rng(StreamSeed(seed, kind));
    const Box &bb = env.bbox();
    const auto scales = NoiseScales();

    switch (kind) {
    case SetKind::In: {
        oracle::Oracle ref(env);
        while (static_cast<int>(set.points.size()) < count) {
            Point p{rng.Uniform(bb.lo.x, bb.hi.x), rng.Uniform(bb.lo.y, bb.hi.y)};
            if (ref.Contains(p)) set.points.push_back({p});
        }
        break;
    }
    case SetKind::BB:
        for (int i = 0; i < count; ++i) set.points.push_back({{rng.Uniform(bb.lo.x, bb.hi.x), rng.Uniform(bb.lo.y, bb.hi.y)}});
        break;
    case SetKind::Ver:
    case SetKind::NearV:
        for (int i = 0; i < count; ++i) {
            auto v = static_cast<VertexId>(rng.Index(env.vertex_count()));
            QueryPoint q{env.vertex(v), v};
            set.points.push_back(kind == SetKind::Ver ? q : Perturb(rng, q, scales));
        }
        break;
    case SetKind::Mid:
    case SetKind::NearM:
        for (int i = 0; i < count; ++i) {
            auto e = static_cast<EdgeId>(rng.Index(mesh.edge_count()));
            const MeshEdge &me = mesh.edge(e);
            QueryPoint q{Midpoint(mesh.point(me.a), mesh.point(me.b)), e};
            set.points.push_back(kind == SetKind::Mid ? q : Perturb(rng, q, scales));
        }
        break;
    }
    return set;
}

std::vector<QueryPointSet> GenerateQuerySets(const Environment &env, const Mesh &mesh, int count, std::uint64_t seed) {
    std::vector<QueryPointSet> out;
    for (SetKind k : kAllSetKinds) out.push_back(GenerateQuerySet(env, mesh, k, count, seed));
    return out;
}

} // namespace polyvis::harness
