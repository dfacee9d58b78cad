#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "polyvis/environment.hpp"
#include "polyvis/mesh.hpp"

namespace polyvis::harness {

enum class SetKind { In, BB, Ver, NearV, Mid, NearM };

inline constexpr std::array<SetKind, 6> kAllSetKinds{SetKind::In,    SetKind::BB,  SetKind::Ver,
                                                     SetKind::NearV, SetKind::Mid, SetKind::NearM};

const char *ToString(SetKind kind);
std::optional<SetKind> ParseSetKind(std::string_view name);

struct QueryPoint {
    Point p;
    std::int32_t source = kNone; ///< environment vertex id (Ver, NearV) or mesh edge id (Mid, NearM)
    double sigma = 0.0;          ///< noise scale for NearV and NearM
};

struct QueryPointSet {
    SetKind kind = SetKind::In;
    std::uint64_t seed = 0;
    std::vector<QueryPoint> points;
};

/// Noise scales for the Near sets: 1e-15, 1e-14, ..., 1e-1.
std::vector<double> NoiseScales();

/// One set of `count` points. Each kind draws from its own stream derived from `seed`,
/// so a set does not depend on which other sets were generated.
QueryPointSet GenerateQuerySet(const Environment &env, const Mesh &mesh, SetKind kind, int count, std::uint64_t seed);

/// Euclidean distance from p to the nearest edge of W.
double DistanceToBoundary(const Environment &env, Point p);

/// The six sets, in kAllSetKinds order.
std::vector<QueryPointSet> GenerateQuerySets(const Environment &env, const Mesh &mesh, int count = 1000,
                                             std::uint64_t seed = 1);

} // namespace polyvis::harness
