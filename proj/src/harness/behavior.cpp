#include "polyvis/harness/behavior.hpp"

#include <array>

#include "polyvis/harness/area.hpp"

namespace polyvis::harness {

namespace {

constexpr std::array<const char *, kBehaviorCount> kNames{"Crash", "Inf", "NoRef", "Null", "A0R1",
                                                          "A1R0",  "Same", "Weak", "Snap", "Diff"};

} // namespace

const char *ToString(Behavior b) { return kNames[static_cast<int>(b)]; }

std::optional<Behavior> ParseBehavior(std::string_view name) {
    for (int i = 0; i < kBehaviorCount; ++i)
        if (name == kNames[i]) return static_cast<Behavior>(i);
    return std::nullopt;
}

Behavior Classify(const std::optional<Ring> &engine, const std::optional<Ring> &ref, const ClassifyContext &ctx) {
    if (!ctx.ref_available) return Behavior::NoRef;
    if (!engine && !ref) return Behavior::Null;
    if (!engine) return Behavior::A0R1;
    if (!ref) return Behavior::A1R0;
    if (XorAreaSame(*engine, *ref, ctx.map_area)) return Behavior::Same;
    if (ctx.weakly_simple_query) return Behavior::Weak;
    if (ctx.snapped) return Behavior::Snap;
    return Behavior::Diff;
}

bool OnWeaklySimpleVertex(const Environment &env, Point q) {
    for (VertexId v = 0; v < static_cast<VertexId>(env.vertex_count()); ++v)
        if (env.vertex(v) == q && IsWeaklySimpleVertex(env, v)) return true;
    return false;
}

} // namespace polyvis::harness
