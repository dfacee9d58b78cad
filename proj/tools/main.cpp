// polyvis command-line front end.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "polyvis/format.hpp"
#include "polyvis/harness/area.hpp"
#include "polyvis/harness/mapgen.hpp"
#include "polyvis/harness/query_sets.hpp"
#include "polyvis/harness/runner.hpp"
#include "polyvis/io/files.hpp"
#include "polyvis/io/query.hpp"
#include "polyvis/oracle.hpp"

using namespace polyvis;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kLoad = 3, kNull = 4, kInternal = 5 };

struct LoadFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string eps1;
    double eps2 = 1e-12;
    double bucket_size = 1.0;
    double arc_angle = kDefaultArcAngle;
};

double ParseDouble(const std::string &s, const char *what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError(std::string("bad ") + what + ": " + s);
    return v;
}

std::vector<double> ParseList(const std::string &s, const char *what) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(ParseDouble(item, what));
    return out;
}

Point ParsePoint(const std::string &s, const char *what) {
    auto v = ParseList(s, what);
    if (v.size() != 2) throw UsageError(std::string("expected x,y for ") + what + ": " + s);
    return {v[0], v[1]};
}

EngineConfig Config(const Globals &g) {
    EngineConfig cfg;
    if (!g.eps1.empty()) {
        cfg.eps.eps1 = ParseList(g.eps1, "--eps1");
        for (std::size_t i = 0; i < cfg.eps.eps1.size(); ++i)
            if (!(cfg.eps.eps1[i] > 0) || (i > 0 && !(cfg.eps.eps1[i] > cfg.eps.eps1[i - 1])))
                throw UsageError("--eps1 must be positive and increasing");
    }
    if (!(g.eps2 >= 0)) throw UsageError("--eps2 must be non-negative");
    if (!(g.bucket_size > 0)) throw UsageError("--bucket-size must be positive");
    if (!(g.arc_angle > 0)) throw UsageError("--arc-angle must be positive");
    cfg.eps.eps2 = g.eps2;
    cfg.bucket_size = g.bucket_size;
    cfg.arc_angle = g.arc_angle;
    return cfg;
}

Environment Load(const std::string &path, bool verbose = false) {
    try {
        NormalizeReport rep;
        Environment env = io::LoadMap(path, &rep);
        if (verbose)
            for (const auto &d : rep.diagnostics) std::cerr << path << ": " << d << '\n';
        return env;
    } catch (const io::FormatError &e) {
        throw LoadFailure(path + ": " + e.what());
    } catch (const EnvironmentError &e) {
        throw LoadFailure(path + ": invalid environment (" + ToString(e.kind()) + "): " + e.what());
    } catch (const std::runtime_error &e) {
        throw LoadFailure(e.what());
    }
}

double Millis(std::chrono::steady_clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); }

int Preprocess(const Globals &g, const std::string &map) {
    EngineConfig cfg = Config(g);
    Environment env = Load(map, true);
    auto t0 = std::chrono::steady_clock::now();
    auto eng = VisibilityEngine::Build(env, cfg);
    auto t1 = std::chrono::steady_clock::now();
    std::cout << "vertices " << env.vertex_count() << "\nholes " << env.holes().size() << "\nmesh_vertices "
              << eng.mesh().vertex_count() << "\ntriangles " << eng.mesh().triangle_count() << "\nedges "
              << eng.mesh().edge_count() << "\nbuckets " << eng.grid().nx() << 'x' << eng.grid().ny()
              << "\nbucket_size " << FormatDouble(eng.grid().cell_size()) << "\npreprocess_ms "
              << FormatDouble(Millis(t1 - t0)) << '\n';
    return kOk;
}

struct QueryArgs {
    std::string map, type, at, to, dir, sites, svg;
    double range = -1;
    bool json = false;
};

void PrintText(const nlohmann::ordered_json &doc) {
    const auto &r = doc["result"];
    if (r.is_null()) {
        std::cout << "null: query point is outside the environment\n";
        return;
    }
    const std::string kind = r["kind"];
    if (kind == "region") {
        std::cout << "region " << r["polygon"].size() << " vertices, area " << FormatDouble(r["area"].get<double>()) << '\n';
        for (const auto &p : r["polygon"])
            std::cout << FormatDouble(p[0].get<double>()) << ' ' << FormatDouble(p[1].get<double>()) << '\n';
    } else if (kind == "bool") {
        std::cout << (r["value"].get<bool>() ? "visible" : "not visible") << '\n';
    } else if (kind == "point") {
        if (r["value"].is_null()) {
            std::cout << "no hit within range\n";
        } else {
            std::cout << "hit " << FormatDouble(r["value"][0].get<double>()) << ' '
                      << FormatDouble(r["value"][1].get<double>()) << '\n';
        }
    } else if (kind == "ids") {
        std::cout << r["ids"].size() << " visible:";
        for (const auto &i : r["ids"]) std::cout << ' ' << i.get<int>();
        std::cout << '\n';
    } else if (kind == "graph") {
        std::cout << r["edges"].size() << " edges\n";
        for (const auto &e : r["edges"])
            std::cout << e[0].get<std::string>() << ' ' << e[1].get<int>() << ' ' << e[2].get<int>() << '\n';
    }
}

int Query(const Globals &g, const QueryArgs &a) {
    EngineConfig cfg = Config(g);
    io::QueryRequest req;
    auto type = io::ParseQueryType(a.type);
    if (!type) throw UsageError("unknown query type " + a.type);
    req.type = *type;
    if (req.type != io::QueryType::Graph) {
        if (a.at.empty()) throw UsageError("--at is required");
        req.at = ParsePoint(a.at, "--at");
    }
    if (req.type == io::QueryType::TwoPoint) {
        if (a.to.empty()) throw UsageError("2pt needs --to");
        req.to = ParsePoint(a.to, "--to");
    }
    if (req.type == io::QueryType::Ray) {
        if (a.dir.empty()) throw UsageError("ray needs --dir");
        Point d = ParsePoint(a.dir, "--dir");
        try {
            req.dir = DirVector(d.x, d.y);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    if (req.type == io::QueryType::Points && a.sites.empty()) throw UsageError("points needs --sites");
    if (a.range >= 0) req.range = a.range;

    Environment env = Load(a.map);
    if (!a.sites.empty()) {
        try {
            for (const auto &q : io::LoadPoints(a.sites).points) req.sites.push_back(q.p);
        } catch (const std::exception &e) {
            throw LoadFailure(a.sites + ": " + e.what());
        }
    }
    auto eng = VisibilityEngine::Build(std::move(env), cfg);
    std::optional<io::SvgScene> scene;
    if (!a.svg.empty()) scene.emplace(eng.environment());
    io::QueryOutcome out = io::RunQuery(eng, req, scene ? &*scene : nullptr);
    if (a.json) {
        std::cout << out.json.dump(2) << '\n';
    } else {
        PrintText(out.json);
    }
    if (scene) scene->Save(a.svg);
    return out.null ? kNull : kOk;
}

int GenPoints(const Globals &g, const std::string &map, std::uint64_t seed, int count, const std::string &dir) {
    Config(g);
    if (count <= 0) throw UsageError("--count must be positive");
    Environment env = Load(map);
    Mesh mesh = Mesh::Build(env);
    fs::create_directories(dir);
    for (const auto &set : harness::GenerateQuerySets(env, mesh, count, seed)) {
        std::string path = (fs::path(dir) / (std::string(harness::ToString(set.kind)) + ".pts")).string();
        io::SavePoints(set, path);
        std::cout << path << ' ' << set.points.size() << '\n';
    }
    return kOk;
}

int Bench(const Globals &g, const std::string &map, const std::string &dir, double watchdog, const std::string &report,
          std::string summary) {
    harness::BenchOptions opt;
    opt.config = Config(g);
    if (!(watchdog > 0)) throw UsageError("--watchdog must be positive");
    opt.watchdog_seconds = watchdog;
    Environment env = Load(map);
    std::vector<harness::QueryPointSet> sets;
    for (harness::SetKind k : harness::kAllSetKinds) {
        fs::path p = fs::path(dir) / (std::string(harness::ToString(k)) + ".pts");
        if (!fs::exists(p)) continue;
        try {
            sets.push_back(io::LoadPoints(p.string()));
        } catch (const std::exception &e) {
            throw LoadFailure(p.string() + ": " + e.what());
        }
        sets.back().kind = k;
    }
    if (sets.empty()) throw LoadFailure("no point sets (<Kind>.pts) in " + dir);

    auto rep = harness::RunBench(env, sets, opt);
    if (summary.empty()) summary = (fs::path(report).replace_extension("").string()) + ".summary.csv";
    std::ofstream out(report, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + report);
    harness::WriteReportCsv(out, fs::path(map).filename().string(), rep.records);
    std::ofstream sum(summary, std::ios::binary);
    if (!sum) throw std::runtime_error("cannot write " + summary);
    harness::WriteSummaryCsv(sum, rep.summary);
    if (!out || !sum) throw std::runtime_error("report write failed");

    for (const auto &set : sets) {
        harness::BehaviorCounts c{};
        for (const auto &r : rep.records)
            if (r.set == set.kind) ++c[static_cast<int>(r.behavior)];
        std::cout << harness::ToString(set.kind);
        for (int b = 0; b < harness::kBehaviorCount; ++b)
            if (c[b]) std::cout << ' ' << harness::ToString(static_cast<harness::Behavior>(b)) << '=' << c[b];
        std::cout << '\n';
    }
    harness::WriteSummaryCsv(std::cout, rep.summary);
    return kOk;
}

int SelfTest(const Globals &g, const std::string &map, std::uint64_t seed, int count) {
    EngineConfig cfg = Config(g);
    Environment env = Load(map);
    auto eng = VisibilityEngine::Build(env, cfg);
    oracle::Oracle ref(env);
    auto mismatches = eng.mesh().CheckInvariants(env);
    for (const auto &m : mismatches) std::cout << "mesh: " << m << '\n';
    int bad = static_cast<int>(mismatches.size());

    auto in = harness::GenerateQuerySet(env, eng.mesh(), harness::SetKind::In, count, seed);
    int region_bad = 0, pair_bad = 0, pair_exempt = 0;
    for (const auto &q : in.points) {
        auto r = eng.Region(q.p);
        auto o = ref.VisibilityPolygon(q.p);
        if (!r || !o || !harness::XorAreaSame(r->polygon, *o, env.area())) {
            ++region_bad;
            std::cout << "region mismatch at " << FormatDouble(q.p.x) << ',' << FormatDouble(q.p.y) << '\n';
        }
    }
    std::cout << "region " << in.points.size() - region_bad << '/' << in.points.size() << '\n';
    for (std::size_t i = 0; i + 1 < in.points.size(); ++i) {
        Point a = in.points[i].p, b = in.points[i + 1].p;
        auto v = eng.TwoPoint(a, b);
        if (!v) {
            ++pair_exempt;
            continue;
        }
        if (*v != ref.SegmentVisible(a, b)) {
            ++pair_bad;
            std::cout << "2pt mismatch " << FormatDouble(a.x) << ',' << FormatDouble(a.y) << " -> " << FormatDouble(b.x)
                      << ',' << FormatDouble(b.y) << '\n';
        }
    }
    std::cout << "2pt " << in.points.size() - 1 - pair_bad - pair_exempt << '/' << in.points.size() - 1 << '\n';
    bad += region_bad + pair_bad;
    std::cout << (bad == 0 ? "PASS" : "FAIL") << '\n';
    return bad == 0 ? kOk : kFailed;
}

int GenMap(std::uint64_t seed, bool large, int vertices, int holes, const std::string &out) {
    harness::RandomMapParams p = large ? harness::LargeMapParams(seed) : harness::DeskMapParams(seed);
    if (vertices > 0) p.outer_vertices = vertices;
    if (holes >= 0) p.holes = holes;
    Environment env = harness::RandomMap(p);
    if (out.empty()) {
        io::WriteMap(std::cout, env);
    } else {
        io::SaveMap(env, out);
    }
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Visibility queries in polygonal environments with holes"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--eps1", g.eps1, "Comma-separated increasing location tolerances");
    app.add_option("--eps2", g.eps2, "Vertex snapping radius")->capture_default_str();
    app.add_option("--bucket-size", g.bucket_size, "Bucket grid cell size")->capture_default_str();
    app.add_option("--arc-angle", g.arc_angle, "Largest angle per arc chord (radians)")->capture_default_str();

    std::string map;
    auto *pre = app.add_subcommand("preprocess", "Build the mesh and bucket grid and report their sizes");
    pre->add_option("map", map)->required();

    QueryArgs qa;
    auto *query = app.add_subcommand("query", "Run one visibility query");
    query->add_option("map", qa.map)->required();
    query->add_option("--type", qa.type, "region, 2pt, ray, vertices, points or graph")->required();
    query->add_option("--at", qa.at, "Query point x,y");
    query->add_option("--to", qa.to, "Target point x,y (2pt)");
    query->add_option("--dir", qa.dir, "Direction dx,dy (ray)");
    query->add_option("--sites", qa.sites, "POINTS file (points, graph)");
    query->add_option("--range", qa.range, "Range limit d");
    query->add_option("--svg", qa.svg, "Write an SVG picture");
    query->add_flag("--json", qa.json, "Print JSON");

    std::uint64_t seed = 1;
    int count = 1000;
    std::string out;
    auto *gen = app.add_subcommand("genpoints", "Write the six query point sets");
    gen->add_option("map", map)->required();
    gen->add_option("--seed", seed)->capture_default_str();
    gen->add_option("--count", count)->capture_default_str();
    gen->add_option("--out", out)->required();

    std::string points, report, summary;
    double watchdog = 10.0;
    auto *bench = app.add_subcommand("bench", "Classify engine behavior against the oracle");
    bench->add_option("map", map)->required();
    bench->add_option("--points", points)->required();
    bench->add_option("--watchdog", watchdog, "Seconds per query")->capture_default_str();
    bench->add_option("--report", report)->required();
    bench->add_option("--summary", summary, "Summary CSV (default <report>.summary.csv)");

    int self_count = 200;
    auto *self = app.add_subcommand("selftest", "Compare engine and oracle on random interior points");
    self->add_option("map", map)->required();
    self->add_option("--seed", seed)->capture_default_str();
    self->add_option("--count", self_count)->capture_default_str();

    bool large = false;
    int vertices = 0, holes = -1;
    auto *genmap = app.add_subcommand("genmap", "Write a seeded random map");
    genmap->add_option("--seed", seed)->capture_default_str();
    genmap->add_flag("--large", large, "At least 2000 vertices and 50 holes");
    genmap->add_option("--vertices", vertices, "Outer ring vertex count");
    genmap->add_option("--holes", holes, "Hole count");
    genmap->add_option("--out", out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*pre) return Preprocess(g, map);
        if (*query) return Query(g, qa);
        if (*gen) return GenPoints(g, map, seed, count, out);
        if (*bench) return Bench(g, map, points, watchdog, report, summary);
        if (*self) return SelfTest(g, map, seed, self_count);
        if (*genmap) return GenMap(seed, large, vertices, holes, out);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const LoadFailure &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kLoad;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
