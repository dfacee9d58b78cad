// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the CLI binary.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "polyvis/engine.hpp"
#include "polyvis/format.hpp"
#include "polyvis/graph.hpp"
#include "polyvis/harness/area.hpp"
#include "polyvis/harness/mapgen.hpp"
#include "polyvis/harness/query_sets.hpp"
#include "polyvis/harness/random.hpp"
#include "polyvis/harness/runner.hpp"
#include "polyvis/io/files.hpp"
#include "polyvis/oracle.hpp"
#include "polyvis/predicates.hpp"

using namespace polyvis;
using namespace polyvis::harness;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and sizes fixed by the acceptance criteria.
constexpr int kOracleMaps = 50;
constexpr int kOraclePoints = 200;
constexpr double kOracleBudgetSeconds = 300.0;
constexpr int kTaxonomyMaps = 10;
constexpr int kSetSize = 1000;
constexpr double kNearSigmaMax = 1e-12;
constexpr int kPairMaps = 20, kPairQueries = 100, kPairTargets = 50;
constexpr double kPairExempt = 1e-9; // largest location tolerance
constexpr double kPairExemptFraction = 0.01;
constexpr double kDiskTolerance = 1e-3;
constexpr int kGraphMaps = 20, kGraphSites = 50;
constexpr int kLocatePoints = 100000;
constexpr double kLocateMicros = 5.0;
constexpr double kQueryMicros = 1000.0, kSpeedup = 10.0, kPrepMillis = 500.0;
constexpr int kTwoPointQueries = 10000;

std::uint64_t AcceptanceSeed(int i) { return 1000 + static_cast<std::uint64_t>(i); }

double Seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void Report(int n, const char *name, const std::function<Outcome()> &run) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << o.detail << " ["
         << FormatDouble(std::round(Seconds(Clock::now() - t0) * 10) / 10) << " s]";
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failures;
}

std::vector<Point> Pts(const QueryPointSet &s) {
    std::vector<Point> out;
    for (const auto &q : s.points) out.push_back(q.p);
    return out;
}

std::string Counts(const BehaviorCounts &c) {
    std::string s;
    for (int b = 0; b < kBehaviorCount; ++b)
        if (c[b]) s += std::string(s.empty() ? "" : " ") + ToString(static_cast<Behavior>(b)) + "=" + std::to_string(c[b]);
    return s;
}

bool SegmentMeetsTriangle(Point a, Point b, const std::array<Point, 3> &t) {
    if (PointInTriangle(a, t).where != TriangleLocation::Outside) return true;
    if (PointInTriangle(b, t).where != TriangleLocation::Outside) return true;
    for (int i = 0; i < 3; ++i)
        if (ClassifySegments(a, b, t[i], t[(i + 1) % 3]) != SegmentContact::None) return true;
    return false;
}

Outcome OracleEquivalence() {
    auto t0 = Clock::now();
    int same = 0, total = 0;
    std::string first;
    for (int m = 0; m < kOracleMaps; ++m) {
        Environment env = RandomMap(DeskMapParams(AcceptanceSeed(m)));
        auto eng = VisibilityEngine::Build(env);
        oracle::Oracle ref(env);
        for (Point q : Pts(GenerateQuerySet(env, eng.mesh(), SetKind::In, kOraclePoints, AcceptanceSeed(m)))) {
            ++total;
            auto r = eng.Region(q);
            auto o = ref.VisibilityPolygon(q);
            if (r && o && XorAreaSame(r->polygon, *o, env.area())) {
                ++same;
            } else if (first.empty()) {
                first = " first miss map " + std::to_string(m) + " at " + FormatDouble(q.x) + "," + FormatDouble(q.y);
            }
        }
    }
    double secs = Seconds(Clock::now() - t0);
    return {same == total && secs < kOracleBudgetSeconds,
            std::to_string(same) + "/" + std::to_string(total) + " same in " + FormatDouble(std::round(secs)) +
                " s (limit 300)" + first};
}

struct TaxonomyRun {
    std::vector<std::vector<QueryPointSet>> sets;      // per map
    std::vector<std::vector<BehaviorRecord>> records;  // per map, all six sets in order
    std::vector<std::vector<bool>> mid_located;        // per map
};

const TaxonomyRun &Taxonomy() {
    static const TaxonomyRun run = [] {
        TaxonomyRun t;
        for (int m = 0; m < kTaxonomyMaps; ++m) {
            Environment env = RandomMap(DeskMapParams(AcceptanceSeed(100 + m)));
            auto eng = VisibilityEngine::Build(env);
            oracle::Oracle ref(env);
            BenchSubject subject = MakeSubject(eng, ref);
            auto sets = GenerateQuerySets(env, eng.mesh(), kSetSize, AcceptanceSeed(100 + m));
            std::vector<BehaviorRecord> recs;
            for (const auto &s : sets) {
                auto r = RunSupervised(subject, s, {10.0});
                recs.insert(recs.end(), r.begin(), r.end());
            }
            std::vector<bool> located;
            for (Point q : Pts(sets[4])) located.push_back(eng.Locate(q).has_value());
            t.sets.push_back(std::move(sets));
            t.records.push_back(std::move(recs));
            t.mid_located.push_back(std::move(located));
        }
        return t;
    }();
    return run;
}

Outcome Reliability() {
    const auto &t = Taxonomy();
    BehaviorCounts all{};
    for (const auto &recs : t.records) {
        auto c = CountBehaviors(recs);
        for (int b = 0; b < kBehaviorCount; ++b) all[b] += c[b];
    }
    int bad = 0;
    for (Behavior b : {Behavior::Crash, Behavior::Inf, Behavior::Diff, Behavior::A0R1}) bad += all[static_cast<int>(b)];
    return {bad == 0, Counts(all)};
}

Outcome AdversarialNumerics() {
    const auto &t = Taxonomy();
    int checked = 0, bad = 0, mid = 0, mid_bad = 0;
    BehaviorCounts seen{};
    for (std::size_t m = 0; m < t.records.size(); ++m) {
        for (const BehaviorRecord &r : t.records[m]) {
            const QueryPointSet &set = t.sets[m][static_cast<int>(r.set)];
            const QueryPoint &q = set.points[r.index];
            if (r.set == SetKind::Ver || (r.set == SetKind::NearV && q.sigma <= kNearSigmaMax)) {
                ++checked;
                ++seen[static_cast<int>(r.behavior)];
                // Oracle present: engine present and Same or Snap. Oracle absent: Null, or
                // A1R0 from tolerance-based location.
                bool ok = r.behavior == Behavior::Same || r.behavior == Behavior::Snap || r.behavior == Behavior::Null ||
                          r.behavior == Behavior::A1R0;
                bad += !ok;
            } else if (r.set == SetKind::Mid) {
                ++mid;
                bool ok = t.mid_located[m][r.index] && (r.behavior == Behavior::Same || r.behavior == Behavior::A1R0);
                mid_bad += !ok;
            }
        }
    }
    return {bad == 0 && mid_bad == 0, "Ver/NearV " + std::to_string(checked - bad) + "/" + std::to_string(checked) + " (" +
                                          Counts(seen) + "), Mid located " + std::to_string(mid - mid_bad) + "/" +
                                          std::to_string(mid)};
}

Outcome QueryTypeConsistency() {
    long pairs = 0, exempt = 0, wrong = 0;
    for (int m = 0; m < kPairMaps; ++m) {
        Environment env = RandomMap(DeskMapParams(AcceptanceSeed(200 + m)));
        auto eng = VisibilityEngine::Build(env);
        oracle::Oracle ref(env);
        auto qs = Pts(GenerateQuerySet(env, eng.mesh(), SetKind::In, kPairQueries, AcceptanceSeed(200 + m)));
        auto ts = Pts(GenerateQuerySet(env, eng.mesh(), SetKind::BB, kPairTargets, AcceptanceSeed(200 + m)));
        std::vector<double> tdist;
        for (Point p : ts) tdist.push_back(DistanceToBoundary(env, p));
        for (Point q : qs) {
            const bool q_near = DistanceToBoundary(env, q) <= kPairExempt;
            for (std::size_t j = 0; j < ts.size(); ++j) {
                ++pairs;
                if (q_near || tdist[j] <= kPairExempt) {
                    ++exempt;
                    continue;
                }
                auto v = eng.TwoPoint(q, ts[j]);
                wrong += !v || *v != ref.SegmentVisible(q, ts[j]);
            }
        }
    }
    double frac = static_cast<double>(exempt) / static_cast<double>(pairs);
    return {wrong == 0 && frac < kPairExemptFraction, std::to_string(pairs - exempt - wrong) + "/" +
                                                          std::to_string(pairs - exempt) + " agree, " +
                                                          std::to_string(exempt) + " exempt"};
}

Outcome RangeVisibility() {
    auto sq = VisibilityEngine::Build(ValidateAndNormalize({{{0, 0}, {10, 0}, {10, 10}, {0, 10}}}));
    const double d = 2.0;
    auto disk = sq.Region({5, 5}, d);
    double area = disk ? SignedArea(disk->polygon) : 0.0;
    double rel = std::fabs(area - std::numbers::pi * d * d) / (std::numbers::pi * d * d);
    int violations = 0, checks = 0;
    for (int m = 0; m < 10; ++m) {
        Environment env = RandomMap(DeskMapParams(AcceptanceSeed(300 + m)));
        auto eng = VisibilityEngine::Build(env);
        const double tol = kSameFraction * env.area();
        for (Point q : Pts(GenerateQuerySet(env, eng.mesh(), SetKind::In, 10, AcceptanceSeed(300 + m)))) {
            std::optional<Ring> prev;
            for (double r : {3.0, 7.5, 15.0, 30.0, 60.0}) {
                auto reg = eng.Region(q, r);
                if (!reg) {
                    ++violations;
                    break;
                }
                if (prev) {
                    ++checks;
                    violations += DifferenceArea(*prev, reg->polygon) > tol;
                }
                prev = reg->polygon;
            }
        }
    }
    return {rel <= kDiskTolerance && violations == 0, "disk area error " + FormatDouble(rel) + ", nesting " +
                                                          std::to_string(checks - violations) + "/" +
                                                          std::to_string(checks)};
}

Outcome GraphIdentities() {
    int equal = 0, partition = 0;
    for (int m = 0; m < kGraphMaps; ++m) {
        Environment env = RandomMap(DeskMapParams(AcceptanceSeed(400 + m)));
        auto eng = VisibilityEngine::Build(env);
        oracle::Oracle ref(env);
        std::vector<VertexId> V;
        const int nv = static_cast<int>(eng.mesh().vertex_count());
        for (int i = 0; i < kGraphSites && i < nv; ++i) V.push_back(static_cast<VertexId>(i * nv / std::min(nv, kGraphSites)));
        auto P = Pts(GenerateQuerySet(env, eng.mesh(), SetKind::In, kGraphSites, AcceptanceSeed(400 + m)));
        auto vv = VertexVertexGraph(eng, V), pp = PointPointGraph(eng, P), vp = VertexPointGraph(eng, V, P);
        auto g = MergeGraphs(vv, pp, vp);
        partition += g.edges.size() == vv.edges.size() + pp.edges.size() + vp.edges.size() &&
                     g.count(GraphEdge::Tag::VV) == vv.edges.size() && g.count(GraphEdge::Tag::PP) == pp.edges.size() &&
                     g.count(GraphEdge::Tag::VP) == vp.edges.size();
        std::vector<Point> sites;
        for (VertexId v : V) sites.push_back(eng.mesh().point(v));
        sites.insert(sites.end(), P.begin(), P.end());
        std::vector<std::pair<int, int>> got;
        for (const GraphEdge &e : g.edges) got.emplace_back(e.a, e.b);
        std::sort(got.begin(), got.end());
        equal += got == ref.Graph(sites);
    }
    return {equal == kGraphMaps && partition == kGraphMaps,
            "edge sets equal on " + std::to_string(equal) + "/" + std::to_string(kGraphMaps) + ", partition on " +
                std::to_string(partition) + "/" + std::to_string(kGraphMaps)};
}

// Exact scan: true when some triangle contains q in its closure.
bool ScanContains(const Mesh &mesh, Point q, TriangleId located) {
    if (located != kNone) return PointInTriangle(q, mesh.corners(located)).where != TriangleLocation::Outside;
    for (TriangleId t = 0; t < static_cast<TriangleId>(mesh.triangle_count()); ++t)
        if (PointInTriangle(q, mesh.corners(t)).where != TriangleLocation::Outside) return true;
    return false;
}

Outcome PointLocation() {
    long agree = 0, total = 0;
    double large_us = 0.0;
    std::vector<Environment> maps;
    for (int m = 0; m < 3; ++m) maps.push_back(RandomMap(DeskMapParams(AcceptanceSeed(500 + m))));
    maps.push_back(RandomMap(LargeMapParams(AcceptanceSeed(500))));
    for (std::size_t m = 0; m < maps.size(); ++m) {
        auto eng = VisibilityEngine::Build(maps[m]);
        auto pts = Pts(GenerateQuerySet(maps[m], eng.mesh(), SetKind::BB, kLocatePoints, AcceptanceSeed(500 + m)));
        std::vector<std::optional<PointLocationResult>> res(pts.size());
        auto t0 = Clock::now();
        for (std::size_t i = 0; i < pts.size(); ++i) res[i] = eng.Locate(pts[i]);
        auto t1 = Clock::now();
        if (m + 1 == maps.size()) large_us = Seconds(t1 - t0) * 1e6 / static_cast<double>(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            ++total;
            bool located_exactly = res[i] && res[i]->eps1_used == 0.0 && !res[i]->snapped();
            bool scan = located_exactly ? ScanContains(eng.mesh(), pts[i], res[i]->triangle)
                                        : ScanContains(eng.mesh(), pts[i], kNone);
            // Agreement: an exact hit lies in its triangle; otherwise the scan finds nothing.
            agree += located_exactly ? scan : !scan;
        }
    }
    return {agree == total && large_us <= kLocateMicros,
            std::to_string(agree) + "/" + std::to_string(total) + " agree, " + FormatDouble(std::round(large_us * 100) / 100) +
                " us per locate on " + std::to_string(maps.back().vertex_count()) + " vertices"};
}

Outcome Performance() {
    Environment env = RandomMap(LargeMapParams(AcceptanceSeed(600)));
    double prep_ms = 1e300;
    std::optional<VisibilityEngine> eng;
    for (int rep = 0; rep < 3; ++rep) {
        auto t0 = Clock::now();
        eng.emplace(VisibilityEngine::Build(env));
        prep_ms = std::min(prep_ms, Seconds(Clock::now() - t0) * 1e3);
    }
    auto pts = Pts(GenerateQuerySet(env, eng->mesh(), SetKind::In, 500, AcceptanceSeed(600)));
    auto t0 = Clock::now();
    for (Point q : pts) {
        auto r = eng->Region(q);
        if (!r) throw std::runtime_error("interior point not located");
    }
    double eng_us = Seconds(Clock::now() - t0) * 1e6 / static_cast<double>(pts.size());
    oracle::Oracle ref(env);
    const std::size_t n_ref = 10;
    t0 = Clock::now();
    for (std::size_t i = 0; i < n_ref; ++i) (void)ref.VisibilityPolygon(pts[i]);
    double ref_us = Seconds(Clock::now() - t0) * 1e6 / static_cast<double>(n_ref);
    t0 = Clock::now();
    for (std::size_t i = 0; i < n_ref; ++i) (void)eng->Region(pts[i]);
    double eng_same_us = Seconds(Clock::now() - t0) * 1e6 / static_cast<double>(n_ref);
    double speedup = ref_us / eng_same_us;
    bool ok = env.vertex_count() >= 2000 && env.holes().size() >= 50 && eng_us < kQueryMicros && speedup >= kSpeedup &&
              prep_ms < kPrepMillis;
    return {ok, std::to_string(env.vertex_count()) + " vertices, " + std::to_string(env.holes().size()) +
                    " holes: query " + FormatDouble(std::round(eng_us * 10) / 10) + " us, oracle " +
                    FormatDouble(std::round(speedup)) + "x slower, preprocessing " +
                    FormatDouble(std::round(prep_ms * 10) / 10) + " ms"};
}

Outcome TraversalBound() {
    long checked = 0, bad = 0;
    for (int m = 0; m < 5; ++m) {
        Environment env = m == 0 ? RandomMap(LargeMapParams(AcceptanceSeed(700))) : RandomMap(DeskMapParams(AcceptanceSeed(700 + m)));
        auto eng = VisibilityEngine::Build(env);
        const Mesh &mesh = eng.mesh();
        auto qs = Pts(GenerateQuerySet(env, mesh, SetKind::In, kTwoPointQueries / 5, AcceptanceSeed(700 + m)));
        auto ps = Pts(GenerateQuerySet(env, mesh, SetKind::BB, kTwoPointQueries / 5, AcceptanceSeed(750 + m)));
        for (std::size_t i = 0; i < qs.size(); ++i) {
            auto pl = eng.Locate(qs[i]);
            if (!pl) {
                ++bad;
                continue;
            }
            std::vector<TriangleId> trace;
            VisQueryStats stats;
            TwoPointVisible(mesh, *pl, qs[i], ps[i], {}, {&stats, &trace});
            ++checked;
            bool ok = stats.triangles_traversed <= mesh.triangle_count() && trace.size() == stats.triangles_traversed;
            for (TriangleId t : trace) ok = ok && SegmentMeetsTriangle(qs[i], ps[i], mesh.corners(t));
            bad += !ok;
        }
    }
    return {bad == 0 && checked == kTwoPointQueries, std::to_string(checked - bad) + "/" + std::to_string(checked) +
                                                         " queries within bound and on the segment"};
}

struct CliRun {
    int code;
    std::string out;
};

CliRun RunCli(const std::string &cli, const std::string &args) {
    std::string cmd = cli + " " + args + " 2>&1";
    FILE *p = ::popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
    int status = ::pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string Slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome Determinism(const std::string &cli) {
    fs::path dir = fs::temp_directory_path() / ("polyvis_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string map = (dir / "m.map").string();
    io::SaveMap(RandomMap(DeskMapParams(AcceptanceSeed(800))), map);
    int same = 0, total = 0;
    for (const char *sub : {"a", "b"}) {
        auto r = RunCli(cli, "genpoints " + map + " --seed 9 --count 300 --out " + (dir / sub).string());
        if (r.code != 0) throw std::runtime_error("genpoints failed: " + r.out);
    }
    for (SetKind k : kAllSetKinds) {
        std::string f = std::string(ToString(k)) + ".pts";
        ++total;
        std::string a = Slurp(dir / "a" / f);
        same += !a.empty() && a == Slurp(dir / "b" / f);
    }
    auto in = io::LoadPoints((dir / "a" / "In.pts").string());
    for (std::size_t i = 0; i < 5; ++i) {
        std::string at = FormatDouble(in.points[i].p.x) + "," + FormatDouble(in.points[i].p.y);
        for (const char *type : {"region --range 20", "vertices", "ray --dir 1,0.5"}) {
            std::string args = "query " + map + " --json --at " + at + " --type " + type;
            auto a = RunCli(cli, args), b = RunCli(cli, args);
            ++total;
            same += a.code == 0 && !a.out.empty() && a.out == b.out;
        }
    }
    fs::remove_all(dir);
    return {same == total, std::to_string(same) + "/" + std::to_string(total) + " outputs byte-identical"};
}

} // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli>\n";
        return 2;
    }
    const std::string cli = argv[1];
    Report(1, "oracle equivalence", OracleEquivalence);
    Report(2, "reliability taxonomy", Reliability);
    Report(3, "adversarial numerics", AdversarialNumerics);
    Report(4, "query-type consistency", QueryTypeConsistency);
    Report(5, "range visibility", RangeVisibility);
    Report(6, "visibility graph", GraphIdentities);
    Report(7, "point location", PointLocation);
    Report(8, "performance", Performance);
    Report(9, "two-point traversal", TraversalBound);
    Report(10, "determinism", [&] { return Determinism(cli); });
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
