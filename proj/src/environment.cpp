#include "polyvis/environment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "polyvis/predicates.hpp"

namespace polyvis {

const char *ToString(EnvironmentError::Kind kind) {
    switch (kind) {
    case EnvironmentError::Kind::Empty: return "empty";
    case EnvironmentError::Kind::NonFinite: return "non-finite coordinate";
    case EnvironmentError::Kind::TooFewVertices: return "ring with fewer than 3 vertices";
    case EnvironmentError::Kind::RepeatedVertex: return "repeated consecutive vertex";
    case EnvironmentError::Kind::Spike: return "zero-area spike";
    case EnvironmentError::Kind::ZeroArea: return "zero-area ring";
    case EnvironmentError::Kind::SelfIntersection: return "self-intersecting ring";
    case EnvironmentError::Kind::HoleOverlapsOuter: return "hole overlaps outer boundary";
    case EnvironmentError::Kind::HolesOverlap: return "holes overlap";
    case EnvironmentError::Kind::DisconnectedInterior: return "disconnected interior";
    }
    return "unknown";
}

int Environment::ring_of(VertexId v) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
    return static_cast<int>(it - offsets_.begin()) - 1;
}

VertexId Environment::next_in_ring(VertexId v) const {
    int r = ring_of(v);
    VertexId lo = offsets_[r], hi = offsets_[r + 1];
    return v + 1 == hi ? lo : v + 1;
}

VertexId Environment::prev_in_ring(VertexId v) const {
    int r = ring_of(v);
    VertexId lo = offsets_[r], hi = offsets_[r + 1];
    return v == lo ? hi - 1 : v - 1;
}

Environment Environment::FromNormalized(Ring outer, std::vector<Ring> holes) {
    Environment env;
    env.outer_ = std::move(outer);
    env.holes_ = std::move(holes);
    env.offsets_.push_back(0);
    env.area_ = 0.0;
    for (std::size_t r = 0; r < env.ring_count(); ++r) {
        const Ring &ring = env.ring(r);
        VertexId base = static_cast<VertexId>(env.vertices_.size());
        for (std::size_t i = 0; i < ring.size(); ++i) {
            env.vertices_.push_back(ring[i]);
            env.bbox_.Add(ring[i]);
            VertexId a = base + static_cast<VertexId>(i);
            VertexId b = base + static_cast<VertexId>((i + 1) % ring.size());
            env.edges_.push_back({a, b, static_cast<int>(r)});
        }
        env.offsets_.push_back(static_cast<VertexId>(env.vertices_.size()));
        double a = SignedArea(ring);
        env.area_ += a; // holes are clockwise, so they subtract
    }
    return env;
}

bool IsWeaklySimpleVertex(const Environment &env, VertexId v) {
    Point p = env.vertex(v);
    for (std::size_t i = 0; i < env.vertex_count(); ++i) {
        if (static_cast<VertexId>(i) != v && env.vertices()[i] == p) return true;
    }
    return false;
}

namespace {

struct Segment {
    Point a, b;
    int ring;
    int index; // edge index within the ring
};

enum class RingSide { Inside, Boundary, Outside };

// Crossing-number test with exact predicates; boundary detected first.
RingSide LocateInRing(Point p, const Ring &ring) {
    const std::size_t n = ring.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        Point a = ring[j], b = ring[i];
        if (OnSegment(a, b, p)) return RingSide::Boundary;
        bool a_above = a.y > p.y;
        bool b_above = b.y > p.y;
        if (a_above != b_above) {
            // Edge crosses the horizontal line through p; test which side p is on.
            Orientation o = Orient(a, b, p);
            bool upward = b_above;
            if ((upward && o == Orientation::CCW) || (!upward && o == Orientation::CW)) inside = !inside;
        }
    }
    return inside ? RingSide::Inside : RingSide::Outside;
}

template <typename Fn>
void ForEachCandidatePair(std::vector<Segment> &segs, Fn &&fn) {
    std::sort(segs.begin(), segs.end(), [](const Segment &s, const Segment &t) {
        return std::min(s.a.x, s.b.x) < std::min(t.a.x, t.b.x);
    });
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        double lo = std::min(segs[i].a.x, segs[i].b.x);
        std::size_t keep = 0;
        for (std::size_t k = 0; k < active.size(); ++k) {
            const Segment &s = segs[active[k]];
            if (std::max(s.a.x, s.b.x) >= lo) active[keep++] = active[k];
        }
        active.resize(keep);
        for (std::size_t k : active) fn(segs[k], segs[i]);
        active.push_back(i);
    }
}

void CheckRingLocal(const Ring &ring, int r) {
    if (ring.size() < 3) {
        throw EnvironmentError(EnvironmentError::Kind::TooFewVertices, r,
                               "ring " + std::to_string(r) + " has " + std::to_string(ring.size()) + " vertices");
    }
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!IsFinite(ring[i])) {
            throw EnvironmentError(EnvironmentError::Kind::NonFinite, r,
                                   "ring " + std::to_string(r) + " vertex " + std::to_string(i) + " is not finite");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        Point a = ring[(i + n - 1) % n], b = ring[i], c = ring[(i + 1) % n];
        if (b == c) {
            throw EnvironmentError(EnvironmentError::Kind::RepeatedVertex, r,
                                   "ring " + std::to_string(r) + " repeats vertex " + std::to_string(i));
        }
        if (Orient(a, b, c) == Orientation::Collinear && Dot(b - a, c - b) < 0.0) {
            throw EnvironmentError(EnvironmentError::Kind::Spike, r,
                                   "ring " + std::to_string(r) + " has a spike at vertex " + std::to_string(i));
        }
    }
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < n; ++i) segs.push_back({ring[i], ring[(i + 1) % n], r, static_cast<int>(i)});
    ForEachCandidatePair(segs, [&](const Segment &s, const Segment &t) {
        int d = std::abs(s.index - t.index);
        bool adjacent = d == 1 || d == static_cast<int>(n) - 1;
        SegmentContact c = ClassifySegments(s.a, s.b, t.a, t.b);
        if (c == SegmentContact::None) return;
        if (adjacent && c == SegmentContact::SharedEndpoint) return;
        throw EnvironmentError(EnvironmentError::Kind::SelfIntersection, r,
                               "ring " + std::to_string(r) + " edges " + std::to_string(s.index) + " and " +
                                   std::to_string(t.index) + " intersect");
    });
    if (SignedArea(ring) == 0.0) {
        throw EnvironmentError(EnvironmentError::Kind::ZeroArea, r, "ring " + std::to_string(r) + " has zero area");
    }
}

// Any contact other than an exact shared vertex is an overlap.
void CheckRingsApart(const std::vector<const Ring *> &rings, const std::vector<int> &ids, int outer_slot) {
    std::vector<Segment> segs;
    for (std::size_t k = 0; k < rings.size(); ++k) {
        const Ring &ring = *rings[k];
        for (std::size_t i = 0; i < ring.size(); ++i) {
            segs.push_back({ring[i], ring[(i + 1) % ring.size()], static_cast<int>(k), static_cast<int>(i)});
        }
    }
    ForEachCandidatePair(segs, [&](const Segment &s, const Segment &t) {
        if (s.ring == t.ring) return;
        SegmentContact c = ClassifySegments(s.a, s.b, t.a, t.b);
        if (c == SegmentContact::None || c == SegmentContact::SharedEndpoint) return;
        bool with_outer = s.ring == outer_slot || t.ring == outer_slot;
        int culprit = ids[s.ring == outer_slot ? t.ring : s.ring];
        if (with_outer) {
            throw EnvironmentError(EnvironmentError::Kind::HoleOverlapsOuter, culprit,
                                   "ring " + std::to_string(culprit) + " crosses the outer boundary");
        }
        throw EnvironmentError(EnvironmentError::Kind::HolesOverlap, culprit,
                               "rings " + std::to_string(ids[s.ring]) + " and " + std::to_string(ids[t.ring]) +
                                   " overlap");
    });
}

// A vertex of `ring` that is not a vertex of `other`, or nullptr.
const Point *FreeVertex(const Ring &ring, const Ring &other) {
    for (const Point &p : ring) {
        if (std::find(other.begin(), other.end(), p) == other.end()) return &p;
    }
    return nullptr;
}

struct DisjointSet {
    std::vector<int> parent;
    int Add() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int Find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool Union(int a, int b) {
        a = Find(a);
        b = Find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

} // namespace

Environment ValidateAndNormalize(const std::vector<Ring> &raw, NormalizeReport *report) {
    NormalizeReport local;
    NormalizeReport &rep = report ? *report : local;
    if (raw.empty()) throw EnvironmentError(EnvironmentError::Kind::Empty, -1, "no rings");

    for (std::size_t r = 0; r < raw.size(); ++r) CheckRingLocal(raw[r], static_cast<int>(r));

    int outer = 0;
    for (std::size_t r = 1; r < raw.size(); ++r) {
        if (std::fabs(SignedArea(raw[r])) > std::fabs(SignedArea(raw[outer]))) outer = static_cast<int>(r);
    }
    const Ring &outer_ring = raw[outer];
    Box outer_box = BoundingBox(outer_ring);

    // Contact with the outer ring is checked before any containment test.
    for (std::size_t r = 0; r < raw.size(); ++r) {
        if (static_cast<int>(r) == outer) continue;
        CheckRingsApart({&outer_ring, &raw[r]}, {outer, static_cast<int>(r)}, 0);
    }

    std::vector<int> candidates;
    for (std::size_t r = 0; r < raw.size(); ++r) {
        if (static_cast<int>(r) == outer) continue;
        const Point *p = FreeVertex(raw[r], outer_ring);
        if (!p) {
            throw EnvironmentError(EnvironmentError::Kind::DisconnectedInterior, static_cast<int>(r),
                                   "ring " + std::to_string(r) + " lies on the outer boundary");
        }
        if (!outer_box.Contains(*p) || LocateInRing(*p, outer_ring) == RingSide::Outside) {
            rep.diagnostics.push_back("ring " + std::to_string(r) + " discarded: outside the outer boundary");
            ++rep.discarded;
            continue;
        }
        candidates.push_back(static_cast<int>(r));
    }

    {
        std::vector<const Ring *> rings;
        for (int r : candidates) rings.push_back(&raw[r]);
        CheckRingsApart(rings, candidates, -1);
    }

    std::vector<Box> boxes;
    for (int r : candidates) boxes.push_back(BoundingBox(raw[r]));
    std::vector<int> holes;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool nested = false;
        for (std::size_t j = 0; j < candidates.size() && !nested; ++j) {
            if (i == j) continue;
            const Point *p = FreeVertex(raw[candidates[i]], raw[candidates[j]]);
            if (!p) continue;
            if (boxes[j].Contains(*p) && LocateInRing(*p, raw[candidates[j]]) == RingSide::Inside) nested = true;
        }
        if (nested) {
            rep.diagnostics.push_back("ring " + std::to_string(candidates[i]) + " discarded: inside a hole");
            ++rep.discarded;
        } else {
            holes.push_back(candidates[i]);
        }
    }

    // Rings touching at vertices must not close a loop, otherwise they enclose a pocket.
    {
        DisjointSet ds;
        std::vector<int> ring_node;
        std::vector<int> kept{outer};
        kept.insert(kept.end(), holes.begin(), holes.end());
        for (std::size_t k = 0; k < kept.size(); ++k) ring_node.push_back(ds.Add());
        std::map<std::pair<double, double>, std::vector<int>> owners;
        for (std::size_t k = 0; k < kept.size(); ++k) {
            for (const Point &p : raw[kept[k]]) owners[{p.x, p.y}].push_back(static_cast<int>(k));
        }
        for (auto &[pt, rs] : owners) {
            if (rs.size() < 2) continue;
            int node = ds.Add();
            for (int k : rs) {
                if (!ds.Union(ring_node[k], node)) {
                    throw EnvironmentError(EnvironmentError::Kind::DisconnectedInterior, kept[k],
                                           "touching rings enclose a region near (" + std::to_string(pt.first) +
                                               ", " + std::to_string(pt.second) + ")");
                }
            }
        }
    }

    Ring out = outer_ring;
    if (SignedArea(out) < 0.0) {
        std::reverse(out.begin(), out.end());
        rep.diagnostics.push_back("ring " + std::to_string(outer) + " reoriented counter-clockwise");
    }
    std::vector<Ring> hole_rings;
    for (int r : holes) {
        Ring h = raw[r];
        if (SignedArea(h) > 0.0) {
            std::reverse(h.begin(), h.end());
            rep.diagnostics.push_back("ring " + std::to_string(r) + " reoriented clockwise");
        }
        hole_rings.push_back(std::move(h));
    }
    return Environment::FromNormalized(std::move(out), std::move(hole_rings));
}

} // namespace polyvis
