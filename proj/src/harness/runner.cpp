#include "polyvis/harness/runner.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <ostream>
#include <set>
#include <stdexcept>
#include <type_traits>

#include "polyvis/format.hpp"
#include "polyvis/oracle.hpp"

namespace polyvis::harness {

namespace {

using Clock = std::chrono::steady_clock;

double Micros(Clock::duration d) { return std::chrono::duration<double, std::micro>(d).count(); }

constexpr char kEngineDone = 'E';

struct Wire {
    std::int32_t behavior;
    double t_locate_us;
    double t_query_us;
    double t_ref_us;
    std::uint64_t triangles;
};
static_assert(std::is_trivially_copyable_v<Wire>);

void WriteAll(int fd, const void *data, std::size_t n) {
    const char *p = static_cast<const char *>(data);
    while (n > 0) {
        ssize_t k = ::write(fd, p, n);
        if (k < 0 && errno == EINTR) continue;
        if (k <= 0) ::_exit(3);
        p += k;
        n -= static_cast<std::size_t>(k);
    }
}

[[noreturn]] void Worker(const BenchSubject &s, const QueryPointSet &set, int start, int fd) {
    for (std::size_t i = static_cast<std::size_t>(start); i < set.points.size(); ++i) {
        const Point q = set.points[i].p;
        EngineOutput out = s.engine(q);
        WriteAll(fd, &kEngineDone, 1);

        std::optional<Ring> ref;
        ClassifyContext ctx;
        ctx.map_area = s.map_area;
        ctx.snapped = out.snapped;
        ctx.weakly_simple_query = s.weakly_simple && s.weakly_simple(q);
        auto t0 = Clock::now();
        try {
            ref = s.reference(q);
        } catch (...) {
            ctx.ref_available = false;
        }
        Wire w{};
        w.t_ref_us = Micros(Clock::now() - t0);
        w.behavior = static_cast<std::int32_t>(Classify(out.region, ref, ctx));
        w.t_locate_us = out.t_locate_us;
        w.t_query_us = out.t_query_us;
        w.triangles = out.triangles_traversed;
        WriteAll(fd, &w, sizeof w);
    }
    ::close(fd);
    ::_exit(0);
}

enum class ReadStatus { Ok, Timeout, Eof };

ReadStatus ReadFull(int fd, void *data, std::size_t n, Clock::time_point deadline) {
    char *p = static_cast<char *>(data);
    while (n > 0) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
        if (left <= 0) return ReadStatus::Timeout;
        pollfd pfd{fd, POLLIN, 0};
        int r = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(left, 1 << 30)));
        if (r < 0 && errno == EINTR) continue;
        if (r < 0) throw std::runtime_error(std::string("poll: ") + std::strerror(errno));
        if (r == 0) return ReadStatus::Timeout;
        ssize_t k = ::read(fd, p, n);
        if (k < 0 && errno == EINTR) continue;
        if (k <= 0) return ReadStatus::Eof;
        p += k;
        n -= static_cast<std::size_t>(k);
    }
    return ReadStatus::Ok;
}

struct Child {
    pid_t pid = -1;
    int fd = -1;

    void Kill() {
        if (pid > 0) {
            ::kill(pid, SIGKILL);
            Reap();
        }
    }
    void Reap() {
        if (fd >= 0) ::close(fd);
        fd = -1;
        if (pid > 0) {
            int status;
            while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
            }
        }
        pid = -1;
    }
};

Child Spawn(const BenchSubject &s, const QueryPointSet &set, int start) {
    int fds[2];
    if (::pipe(fds) != 0) throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    pid_t pid = ::fork();
    if (pid < 0) throw std::runtime_error(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        ::close(fds[0]);
        Worker(s, set, start, fds[1]);
    }
    ::close(fds[1]);
    return {pid, fds[0]};
}

struct Stats {
    double mean = 0.0, std = 0.0;
};

Stats MeanStd(const std::vector<double> &v) {
    Stats s;
    if (v.empty()) return s;
    for (double x : v) s.mean += x;
    s.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double acc = 0.0;
        for (double x : v) acc += (x - s.mean) * (x - s.mean);
        s.std = std::sqrt(acc / static_cast<double>(v.size() - 1));
    }
    return s;
}

bool Completed(Behavior b) { return b != Behavior::Crash && b != Behavior::Inf && b != Behavior::NoRef; }

} // namespace

BenchSubject MakeSubject(const VisibilityEngine &eng, const oracle::Oracle &ref) {
    BenchSubject s;
    s.map_area = eng.environment().area();
    s.engine = [&eng](Point q) {
        EngineOutput out;
        auto t0 = Clock::now();
        auto pl = eng.Locate(q);
        auto t1 = Clock::now();
        if (pl) {
            RegionResult r = eng.RegionFrom(*pl, q);
            out.region = std::move(r.polygon);
            out.snapped = pl->snapped();
            out.triangles_traversed = r.stats.triangles_traversed;
        }
        auto t2 = Clock::now();
        out.t_locate_us = Micros(t1 - t0);
        out.t_query_us = Micros(t2 - t0);
        return out;
    };
    s.reference = [&ref](Point q) { return ref.VisibilityPolygon(q); };
    std::set<std::pair<double, double>> weak;
    const Environment &env = eng.environment();
    for (VertexId v = 0; v < static_cast<VertexId>(env.vertex_count()); ++v)
        if (DetectWeaklySimple(env, v)) weak.emplace(env.vertex(v).x, env.vertex(v).y);
    if (!weak.empty()) s.weakly_simple = [weak](Point q) { return weak.count({q.x, q.y}) > 0; };
    return s;
}

std::vector<BehaviorRecord> RunSupervised(const BenchSubject &subject, const QueryPointSet &set, const RunOptions &opt) {
    const auto watchdog = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opt.watchdog_seconds));
    const int n = static_cast<int>(set.points.size());
    std::vector<BehaviorRecord> records;
    records.reserve(n);
    auto push = [&](int i, Behavior b) {
        BehaviorRecord r;
        r.set = set.kind;
        r.index = i;
        r.q = set.points[i].p;
        r.behavior = b;
        records.push_back(r);
    };

    Child child;
    while (static_cast<int>(records.size()) < n) {
        const int i = static_cast<int>(records.size());
        if (child.pid < 0) child = Spawn(subject, set, i);

        char mark = 0;
        ReadStatus st = ReadFull(child.fd, &mark, 1, Clock::now() + watchdog);
        if (st != ReadStatus::Ok) {
            if (st == ReadStatus::Timeout) {
                child.Kill();
            } else {
                child.Reap();
            }
            push(i, st == ReadStatus::Timeout ? Behavior::Inf : Behavior::Crash);
            continue;
        }
        Wire w{};
        st = ReadFull(child.fd, &w, sizeof w, Clock::now() + watchdog);
        if (st != ReadStatus::Ok) {
            child.Kill();
            push(i, Behavior::NoRef);
            continue;
        }
        push(i, static_cast<Behavior>(w.behavior));
        BehaviorRecord &r = records.back();
        r.t_locate_us = w.t_locate_us;
        r.t_query_us = w.t_query_us;
        r.t_ref_us = w.t_ref_us;
        r.triangles_traversed = w.triangles;
    }
    child.Reap();
    return records;
}

BehaviorCounts CountBehaviors(const std::vector<BehaviorRecord> &records) {
    BehaviorCounts c{};
    for (const BehaviorRecord &r : records) ++c[static_cast<int>(r.behavior)];
    return c;
}

BenchReport RunBench(const Environment &env, const std::vector<QueryPointSet> &sets, const BenchOptions &opt) {
    std::vector<Ring> rings{env.outer()};
    rings.insert(rings.end(), env.holes().begin(), env.holes().end());

    std::vector<double> init, prep, ref_init;
    std::optional<VisibilityEngine> eng;
    for (int rep = 0; rep < std::max(1, opt.build_repetitions); ++rep) {
        auto t0 = Clock::now();
        Environment e = ValidateAndNormalize(rings);
        auto t1 = Clock::now();
        eng.emplace(VisibilityEngine::Build(std::move(e), opt.config));
        auto t2 = Clock::now();
        oracle::Oracle probe(env);
        auto t3 = Clock::now();
        init.push_back(Micros(t1 - t0));
        prep.push_back(Micros(t2 - t1));
        ref_init.push_back(Micros(t3 - t2));
    }
    oracle::Oracle ref(env);
    BenchSubject subject = MakeSubject(*eng, ref);

    BenchReport report;
    for (const QueryPointSet &set : sets) {
        auto recs = RunSupervised(subject, set, {opt.watchdog_seconds});
        report.records.insert(report.records.end(), recs.begin(), recs.end());
    }

    std::vector<double> q_eng, q_ref;
    double locate_sum = 0.0, query_sum = 0.0;
    for (const BehaviorRecord &r : report.records) {
        if (!Completed(r.behavior)) continue;
        q_eng.push_back(r.t_query_us);
        q_ref.push_back(r.t_ref_us);
        locate_sum += r.t_locate_us;
        query_sum += r.t_query_us;
    }
    BenchSummary a;
    a.impl = "engine";
    auto s = MeanStd(init);
    a.init_us_mean = s.mean;
    a.init_us_std = s.std;
    s = MeanStd(prep);
    a.prep_us_mean = s.mean;
    a.prep_us_std = s.std;
    s = MeanStd(q_eng);
    a.query_us_mean = s.mean;
    a.query_us_std = s.std;
    a.pl_percent = query_sum > 0 ? 100.0 * locate_sum / query_sum : 0.0;

    BenchSummary b;
    b.impl = "oracle";
    s = MeanStd(ref_init);
    b.init_us_mean = s.mean;
    b.init_us_std = s.std;
    s = MeanStd(q_ref);
    b.query_us_mean = s.mean;
    b.query_us_std = s.std;
    report.summary = {a, b};
    return report;
}

void WriteReportCsv(std::ostream &out, std::string_view map, const std::vector<BehaviorRecord> &records, bool header) {
    if (header) out << "map,set_kind,point_index,x,y,behavior,t_locate_us,t_query_us,triangles_traversed\n";
    for (const BehaviorRecord &r : records) {
        out << map << ',' << ToString(r.set) << ',' << r.index << ',' << FormatDouble(r.q.x) << ','
            << FormatDouble(r.q.y) << ',' << ToString(r.behavior) << ',' << FormatDouble(r.t_locate_us) << ','
            << FormatDouble(r.t_query_us) << ',' << r.triangles_traversed << '\n';
    }
}

void WriteSummaryCsv(std::ostream &out, const std::vector<BenchSummary> &summary) {
    out << "impl,init_us_mean,init_us_std,prep_us_mean,prep_us_std,query_us_mean,query_us_std,pl_percent\n";
    for (const BenchSummary &s : summary) {
        out << s.impl << ',' << FormatDouble(s.init_us_mean) << ',' << FormatDouble(s.init_us_std) << ','
            << FormatDouble(s.prep_us_mean) << ',' << FormatDouble(s.prep_us_std) << ','
            << FormatDouble(s.query_us_mean) << ',' << FormatDouble(s.query_us_std) << ','
            << FormatDouble(s.pl_percent) << '\n';
    }
}

} // namespace polyvis::harness
