// Serial reference loops against the OpenMP batch kernels, plus single-query costs.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "polyvis/batch.hpp"
#include "polyvis/graph.hpp"
#include "polyvis/harness/mapgen.hpp"
#include "polyvis/harness/query_sets.hpp"
#include "polyvis/oracle.hpp"

using namespace polyvis;

namespace {

struct Scene {
    VisibilityEngine eng;
    std::vector<Point> queries;
    std::vector<std::pair<Point, Point>> pairs;
};

const Scene &Large() {
    static const Scene s = [] {
        Environment env = harness::RandomMap(harness::LargeMapParams(1));
        auto eng = VisibilityEngine::Build(env);
        auto in = harness::GenerateQuerySet(env, eng.mesh(), harness::SetKind::In, 512, 1);
        Scene sc{std::move(eng), {}, {}};
        for (const auto &q : in.points) sc.queries.push_back(q.p);
        for (std::size_t i = 0; i + 1 < sc.queries.size(); ++i) sc.pairs.emplace_back(sc.queries[i], sc.queries[i + 1]);
        return sc;
    }();
    return s;
}

void Region(benchmark::State &st, bool parallel) {
    const Scene &s = Large();
    for (auto _ : st) benchmark::DoNotOptimize(RegionBatch(s.eng, s.queries, {}, parallel));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * s.queries.size()));
    st.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}

void TwoPoint(benchmark::State &st, bool parallel) {
    const Scene &s = Large();
    for (auto _ : st) benchmark::DoNotOptimize(TwoPointBatch(s.eng, s.pairs, {}, parallel));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * s.pairs.size()));
}

void Vertices(benchmark::State &st, bool parallel) {
    const Scene &s = Large();
    for (auto _ : st) benchmark::DoNotOptimize(VerticesBatch(s.eng, s.queries, 50.0, parallel));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * s.queries.size()));
}

void Graph(benchmark::State &st, bool parallel) {
    Environment env = harness::RandomMap(harness::DeskMapParams(3));
    auto eng = VisibilityEngine::Build(env);
    std::vector<VertexId> V(eng.mesh().vertex_count());
    for (std::size_t i = 0; i < V.size(); ++i) V[i] = static_cast<VertexId>(i);
    std::vector<Point> P;
    for (const auto &q : harness::GenerateQuerySet(env, eng.mesh(), harness::SetKind::In, 100, 2).points) P.push_back(q.p);
    GraphOptions opt;
    opt.parallel = parallel;
    opt.check_symmetry = false;
    for (auto _ : st) benchmark::DoNotOptimize(BuildGraph(eng, V, P, opt));
}

void Preprocess(benchmark::State &st) {
    Environment env = harness::RandomMap(harness::LargeMapParams(1));
    for (auto _ : st) benchmark::DoNotOptimize(VisibilityEngine::Build(env));
}

void OracleRegion(benchmark::State &st) {
    const Scene &s = Large();
    oracle::Oracle ref(s.eng.environment());
    std::size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(ref.VisibilityPolygon(s.queries[i++ % 16]));
}

} // namespace

BENCHMARK_CAPTURE(Region, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(Region, omp, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(TwoPoint, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(TwoPoint, omp, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(Vertices, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(Vertices, omp, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(Graph, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(Graph, omp, true)->Unit(benchmark::kMillisecond);
BENCHMARK(Preprocess)->Unit(benchmark::kMillisecond);
BENCHMARK(OracleRegion)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
