#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyvis/engine.hpp"
#include "polyvis/harness/behavior.hpp"
#include "polyvis/harness/query_sets.hpp"

namespace polyvis::oracle {
class Oracle;
}

namespace polyvis::harness {

struct EngineOutput {
    std::optional<Ring> region;
    bool snapped = false;
    double t_locate_us = 0.0;
    double t_query_us = 0.0; ///< locate included
    std::size_t triangles_traversed = 0;
};

/// What a run compares. Both callbacks execute inside a worker process; an engine that
/// never returns is recorded as Inf, one that dies as Crash. A reference that throws,
/// dies or stalls yields NoRef.
struct BenchSubject {
    std::function<EngineOutput(Point)> engine;
    std::function<std::optional<Ring>(Point)> reference;
    std::function<bool(Point)> weakly_simple; ///< optional
    double map_area = 1.0;
};

/// Subject comparing `eng` region queries against `ref` visibility polygons.
BenchSubject MakeSubject(const VisibilityEngine &eng, const oracle::Oracle &ref);

struct BehaviorRecord {
    SetKind set = SetKind::In;
    int index = 0;
    Point q;
    Behavior behavior = Behavior::Null;
    double t_locate_us = 0.0;
    double t_query_us = 0.0;
    double t_ref_us = 0.0;
    std::size_t triangles_traversed = 0;
};

struct RunOptions {
    double watchdog_seconds = 10.0;
};

/// Runs every point of `set` under a watchdog. One record per point, in point order.
std::vector<BehaviorRecord> RunSupervised(const BenchSubject &subject, const QueryPointSet &set,
                                          const RunOptions &opt = {});

using BehaviorCounts = std::array<int, kBehaviorCount>;
BehaviorCounts CountBehaviors(const std::vector<BehaviorRecord> &records);

struct BenchSummary {
    std::string impl;
    double init_us_mean = 0.0, init_us_std = 0.0;
    double prep_us_mean = 0.0, prep_us_std = 0.0;
    double query_us_mean = 0.0, query_us_std = 0.0;
    double pl_percent = 0.0;
};

struct BenchOptions {
    double watchdog_seconds = 10.0;
    int build_repetitions = 3;
    EngineConfig config;
};

struct BenchReport {
    std::vector<BehaviorRecord> records;
    std::vector<BenchSummary> summary; ///< engine row, then oracle row
};

/// Times environment setup and preprocessing, then runs every set against the oracle.
BenchReport RunBench(const Environment &env, const std::vector<QueryPointSet> &sets, const BenchOptions &opt = {});

void WriteReportCsv(std::ostream &out, std::string_view map, const std::vector<BehaviorRecord> &records,
                    bool header = true);
void WriteSummaryCsv(std::ostream &out, const std::vector<BenchSummary> &summary);

} // namespace polyvis::harness
