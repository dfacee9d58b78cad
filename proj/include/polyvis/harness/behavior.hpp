#pragma once

#include <optional>
#include <string_view>

#include "polyvis/environment.hpp"

namespace polyvis::harness {

enum class Behavior { Crash, Inf, NoRef, Null, A0R1, A1R0, Same, Weak, Snap, Diff };

inline constexpr int kBehaviorCount = 10;

const char *ToString(Behavior b);
std::optional<Behavior> ParseBehavior(std::string_view name);

struct ClassifyContext {
    double map_area = 1.0;
    bool snapped = false;
    bool weakly_simple_query = false;
    bool ref_available = true;
};

/// Outcome of one comparison between the engine output and the reference output.
/// Crash and Inf are assigned by the runner, never here.
Behavior Classify(const std::optional<Ring> &engine, const std::optional<Ring> &ref, const ClassifyContext &ctx);

/// True when two or more pairs of boundary edges meet at the location of v.
inline bool DetectWeaklySimple(const Environment &env, VertexId v) { return IsWeaklySimpleVertex(env, v); }

/// True when q is bit-identical to the location of a weakly simple vertex.
bool OnWeaklySimpleVertex(const Environment &env, Point q);

} // namespace polyvis::harness
