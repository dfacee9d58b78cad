#include "polyvis/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "polyvis/predicates.hpp"

namespace polyvis {

namespace {

inline int Next(int i) { return i == 2 ? 0 : i + 1; }
inline int Prev(int i) { return i == 0 ? 2 : i - 1; }

struct WorkTri {
    std::array<int, 3> v;
    std::array<int, 3> n{-1, -1, -1};
    std::array<bool, 3> c{false, false, false};
    bool alive = true;
};

} // namespace

class MeshBuilder {
public:
    explicit MeshBuilder(const Environment &env) : env_(env) {}

    Mesh Run() {
        CollectPoints();
        MakeSuperTriangle();
        InsertPoints();
        for (const auto &[a, b] : constraints_) InsertConstraint(a, b);
        ClassifyInterior();
        RestoreDelaunay();
        return Compact();
    }

private:
    const Environment &env_;
    std::vector<Point> pts_;
    std::vector<VertexId> env_to_mesh_;
    std::vector<int> multiplicity_;
    std::vector<std::pair<int, int>> constraints_;
    std::vector<WorkTri> tris_;
    std::vector<int> vt_; // some triangle incident to each vertex
    std::vector<bool> keep_;
    int real_count_ = 0;
    int last_ = 0;

    void CollectPoints() {
        std::map<std::pair<double, double>, int> index;
        for (const Point &p : env_.vertices()) {
            auto [it, inserted] = index.try_emplace({p.x, p.y}, static_cast<int>(pts_.size()));
            if (inserted) {
                pts_.push_back(p);
                multiplicity_.push_back(0);
            }
            env_to_mesh_.push_back(it->second);
            ++multiplicity_[it->second];
        }
        real_count_ = static_cast<int>(pts_.size());
        for (const auto &e : env_.edges()) constraints_.emplace_back(env_to_mesh_[e.a], env_to_mesh_[e.b]);
    }

    void MakeSuperTriangle() {
        const Box &b = env_.bbox();
        double cx = 0.5 * (b.lo.x + b.hi.x), cy = 0.5 * (b.lo.y + b.hi.y);
        double s = std::max({b.Width(), b.Height(), 1.0});
        pts_.push_back({cx - 64.0 * s, cy - 64.0 * s});
        pts_.push_back({cx + 64.0 * s, cy - 64.0 * s});
        pts_.push_back({cx, cy + 64.0 * s});
        vt_.assign(pts_.size(), 0);
        WorkTri t;
        t.v = {real_count_, real_count_ + 1, real_count_ + 2};
        tris_.push_back(t);
    }

    [[nodiscard]] Point P(int v) const { return pts_[v]; }

    void SetNeighbor(int t, int old_n, int new_n) {
        if (t < 0) return;
        for (int i = 0; i < 3; ++i) {
            if (tris_[t].n[i] == old_n) {
                tris_[t].n[i] = new_n;
                return;
            }
        }
    }

    // Flips edge i of t. Afterwards t = (c, a, d) and u = (d, b, c) where the old
    // edge was (a, b), c its apex in t and d its apex in u.
    void Flip(int t, int i) {
        WorkTri &T = tris_[t];
        int u = T.n[i];
        WorkTri &U = tris_[u];
        int a = T.v[i], b = T.v[Next(i)], c = T.v[Prev(i)];
        int j = 0;
        while (U.n[j] != t) ++j;
        int d = U.v[Prev(j)];

        int n_bc = T.n[Next(i)], n_ca = T.n[Prev(i)];
        bool c_bc = T.c[Next(i)], c_ca = T.c[Prev(i)];
        int n_ad = U.n[Next(j)], n_db = U.n[Prev(j)];
        bool c_ad = U.c[Next(j)], c_db = U.c[Prev(j)];

        T.v = {c, a, d};
        T.n = {n_ca, n_ad, u};
        T.c = {c_ca, c_ad, false};
        U.v = {d, b, c};
        U.n = {n_db, n_bc, t};
        U.c = {c_db, c_bc, false};
        SetNeighbor(n_ad, u, t);
        SetNeighbor(n_bc, t, u);
        vt_[a] = t;
        vt_[c] = t;
        vt_[d] = t;
        vt_[b] = u;
    }

    void Legalize(int t, int i) {
        std::vector<std::pair<int, int>> stack{{t, i}};
        while (!stack.empty()) {
            auto [tt, k] = stack.back();
            stack.pop_back();
            const WorkTri &T = tris_[tt];
            int u = T.n[k];
            if (u < 0 || T.c[k]) continue;
            const WorkTri &U = tris_[u];
            int j = 0;
            while (U.n[j] != tt) ++j;
            int d = U.v[Prev(j)];
            if (InCircle(P(T.v[0]), P(T.v[1]), P(T.v[2]), P(d)) <= 0) continue;
            Flip(tt, k);
            // New point sits at corner 0 of tt and corner 2 of u.
            stack.emplace_back(tt, 1);
            stack.emplace_back(u, 0);
        }
    }

    int Locate(Point p, int &edge) {
        int t = last_;
        std::uint32_t turn = 0;
        for (std::size_t steps = 0; steps < 4 * tris_.size() + 16; ++steps) {
            const WorkTri &T = tris_[t];
            int moved = -1;
            int start = static_cast<int>(turn++ % 3);
            int zero = -1;
            for (int s = 0; s < 3; ++s) {
                int i = (start + s) % 3;
                Orientation o = Orient(P(T.v[i]), P(T.v[Next(i)]), p);
                if (o == Orientation::CW) {
                    moved = T.n[i];
                    break;
                }
                if (o == Orientation::Collinear) zero = i;
            }
            if (moved < 0) {
                edge = zero;
                return t;
            }
            t = moved;
        }
        throw std::logic_error("point location walk did not terminate");
    }

    int NewTri() {
        tris_.emplace_back();
        return static_cast<int>(tris_.size()) - 1;
    }

    void InsertInTriangle(int t, int p) {
        WorkTri old = tris_[t];
        int a = old.v[0], b = old.v[1], c = old.v[2];
        int t1 = NewTri(), t2 = NewTri();
        tris_[t].v = {a, b, p};
        tris_[t].n = {old.n[0], t1, t2};
        tris_[t1].v = {b, c, p};
        tris_[t1].n = {old.n[1], t2, t};
        tris_[t2].v = {c, a, p};
        tris_[t2].n = {old.n[2], t, t1};
        SetNeighbor(old.n[1], t, t1);
        SetNeighbor(old.n[2], t, t2);
        vt_[a] = t;
        vt_[b] = t1;
        vt_[c] = t2;
        vt_[p] = t;
        last_ = t;
        Legalize(t, 0);
        Legalize(t1, 0);
        Legalize(t2, 0);
    }

    void InsertOnEdge(int t, int i, int p) {
        WorkTri T = tris_[t];
        int u = T.n[i];
        WorkTri U = tris_[u];
        int a = T.v[i], b = T.v[Next(i)], c = T.v[Prev(i)];
        int j = 0;
        while (U.n[j] != t) ++j;
        int d = U.v[Prev(j)];
        int n_bc = T.n[Next(i)], n_ca = T.n[Prev(i)];
        int n_ad = U.n[Next(j)], n_db = U.n[Prev(j)];

        int t1 = t, t2 = NewTri(), u1 = u, u2 = NewTri();
        tris_[t1].v = {c, a, p};
        tris_[t1].n = {n_ca, u2, t2};
        tris_[t2].v = {c, p, b};
        tris_[t2].n = {t1, u1, n_bc};
        tris_[u1].v = {d, b, p};
        tris_[u1].n = {n_db, t2, u2};
        tris_[u2].v = {d, p, a};
        tris_[u2].n = {u1, t1, n_ad};
        for (int k : {t1, t2, u1, u2}) tris_[k].c = {false, false, false};
        SetNeighbor(n_bc, t, t2);
        SetNeighbor(n_ad, u, u2);
        vt_[a] = t1;
        vt_[c] = t1;
        vt_[b] = t2;
        vt_[d] = u1;
        vt_[p] = t1;
        last_ = t1;
        Legalize(t1, 0);
        Legalize(t2, 2);
        Legalize(u1, 0);
        Legalize(u2, 2);
    }

    void InsertPoints() {
        std::vector<int> order(real_count_);
        for (int i = 0; i < real_count_; ++i) order[i] = i;
        // Deterministic shuffle: std::shuffle is not portable across libraries.
        std::mt19937_64 rng(0x5eed);
        for (int i = real_count_ - 1; i > 0; --i) {
            int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
            std::swap(order[i], order[j]);
        }
        for (int p : order) {
            int edge = -1;
            int t = Locate(P(p), edge);
            if (edge < 0) {
                InsertInTriangle(t, p);
            } else {
                InsertOnEdge(t, edge, p);
            }
        }
    }

    // Triangle holding directed or reversed edge {a, b}; returns index of edge in t.
    bool FindEdge(int a, int b, int &t_out, int &i_out) {
        int start = vt_[a];
        int t = start;
        // Full rotation around a; every real vertex is interior to the super triangle.
        for (std::size_t guard = 0; guard < tris_.size(); ++guard) {
            const WorkTri &T = tris_[t];
            int i = 0;
            while (T.v[i] != a) ++i;
            if (T.v[Next(i)] == b) {
                t_out = t;
                i_out = i;
                return true;
            }
            if (T.v[Prev(i)] == b) {
                t_out = t;
                i_out = Prev(i);
                return true;
            }
            t = T.n[Prev(i)];
            if (t < 0 || t == start) return false;
        }
        return false;
    }

    void MarkConstrained(int t, int i) {
        tris_[t].c[i] = true;
        int u = tris_[t].n[i];
        if (u < 0) return;
        for (int j = 0; j < 3; ++j)
            if (tris_[u].n[j] == t) tris_[u].c[j] = true;
    }

    bool ProperCross(int a, int b, int c, int d) const {
        return ClassifySegments(P(a), P(b), P(c), P(d)) == SegmentContact::Proper;
    }

    void InsertConstraint(int a, int b) {
        int t, i;
        if (FindEdge(a, b, t, i)) {
            MarkConstrained(t, i);
            return;
        }
        // Collect edges crossed by segment a b.
        std::deque<std::pair<int, int>> crossing;
        int start = vt_[a];
        int cur = start;
        int r = -1, l = -1, tri = -1;
        for (std::size_t guard = 0; guard < tris_.size(); ++guard) {
            const WorkTri &T = tris_[cur];
            int k = 0;
            while (T.v[k] != a) ++k;
            int x = T.v[Next(k)], y = T.v[Prev(k)];
            if (Orient(P(a), P(x), P(b)) == Orientation::CCW && Orient(P(a), P(b), P(y)) == Orientation::CCW) {
                r = x;
                l = y;
                tri = cur;
                break;
            }
            cur = T.n[Prev(k)];
            if (cur == start) break;
        }
        if (tri < 0) throw std::logic_error("constraint segment has no starting triangle");
        crossing.emplace_back(r, l);
        for (std::size_t guard = 0; guard < tris_.size(); ++guard) {
            const WorkTri &T = tris_[tri];
            int k = 0;
            while (!(T.v[k] == r && T.v[Next(k)] == l)) ++k;
            int nt = T.n[k];
            const WorkTri &N = tris_[nt];
            int j = 0;
            while (N.n[j] != tri) ++j;
            int z = N.v[Prev(j)];
            if (z == b) break;
            Orientation o = Orient(P(a), P(b), P(z));
            if (o == Orientation::Collinear) throw std::logic_error("vertex on constraint segment");
            if (o == Orientation::CCW) {
                l = z;
            } else {
                r = z;
            }
            crossing.emplace_back(r, l);
            tri = nt;
        }

        std::size_t budget = 64 * (crossing.size() + 4) * (crossing.size() + 4);
        while (!crossing.empty()) {
            if (budget-- == 0) throw std::logic_error("constraint recovery did not converge");
            auto [u, w] = crossing.front();
            crossing.pop_front();
            int et, ei;
            if (!FindEdge(u, w, et, ei)) continue; // already flipped away
            const WorkTri &T = tris_[et];
            int nt = T.n[ei];
            const WorkTri &N = tris_[nt];
            int j = 0;
            while (N.n[j] != et) ++j;
            int c = T.v[Prev(ei)];
            int d = N.v[Prev(j)];
            if (!ProperCross(c, d, T.v[ei], T.v[Next(ei)])) {
                crossing.emplace_back(u, w);
                continue;
            }
            Flip(et, ei);
            if (ProperCross(c, d, a, b)) crossing.emplace_back(c, d);
        }
        if (!FindEdge(a, b, t, i)) throw std::logic_error("constraint edge missing after recovery");
        MarkConstrained(t, i);
    }

    void ClassifyInterior() {
        std::vector<int> depth(tris_.size(), -1);
        std::vector<int> frontier;
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            for (int v : tris_[t].v)
                if (v >= real_count_) {
                    frontier.push_back(static_cast<int>(t));
                    break;
                }
        }
        int level = 0;
        while (!frontier.empty()) {
            std::vector<int> next;
            std::vector<int> stack;
            for (int t : frontier) {
                if (depth[t] < 0) {
                    depth[t] = level;
                    stack.push_back(t);
                }
            }
            while (!stack.empty()) {
                int t = stack.back();
                stack.pop_back();
                for (int i = 0; i < 3; ++i) {
                    int u = tris_[t].n[i];
                    if (u < 0 || depth[u] >= 0) continue;
                    if (tris_[t].c[i]) {
                        next.push_back(u);
                    } else {
                        depth[u] = level;
                        stack.push_back(u);
                    }
                }
            }
            frontier.swap(next);
            ++level;
        }
        keep_.assign(tris_.size(), false);
        for (std::size_t t = 0; t < tris_.size(); ++t) keep_[t] = depth[t] % 2 == 1;
    }

    void RestoreDelaunay() {
        std::vector<std::pair<int, int>> stack;
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            if (!keep_[t]) continue;
            for (int i = 0; i < 3; ++i) {
                int u = tris_[t].n[i];
                if (!tris_[t].c[i] && u > static_cast<int>(t)) stack.emplace_back(static_cast<int>(t), i);
            }
        }
        while (!stack.empty()) {
            auto [t, i] = stack.back();
            stack.pop_back();
            const WorkTri &T = tris_[t];
            int u = T.n[i];
            if (u < 0 || T.c[i] || !keep_[u]) continue;
            const WorkTri &U = tris_[u];
            int j = 0;
            while (U.n[j] != t) ++j;
            int d = U.v[Prev(j)];
            if (InCircle(P(T.v[0]), P(T.v[1]), P(T.v[2]), P(d)) <= 0) continue;
            Flip(t, i);
            for (int k = 0; k < 3; ++k) {
                stack.emplace_back(t, k);
                stack.emplace_back(u, k);
            }
        }
    }

    Mesh Compact() {
        Mesh m;
        m.points_.assign(pts_.begin(), pts_.begin() + real_count_);
        m.env_to_mesh_ = env_to_mesh_;
        m.multiplicity_ = multiplicity_;
        m.hole_count_ = env_.holes().size();
        for (const Point &p : m.points_) m.bbox_.Add(p);

        std::vector<int> id(tris_.size(), -1);
        for (std::size_t t = 0; t < tris_.size(); ++t)
            if (keep_[t]) {
                id[t] = static_cast<int>(m.triangles_.size());
                m.triangles_.emplace_back();
            }
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            if (id[t] < 0) continue;
            Triangle &out = m.triangles_[id[t]];
            for (int i = 0; i < 3; ++i) {
                out.v[i] = tris_[t].v[i];
                int u = tris_[t].n[i];
                out.n[i] = (u >= 0 && !tris_[t].c[i] && id[u] >= 0) ? id[u] : kNone;
            }
        }
        for (std::size_t t = 0; t < m.triangles_.size(); ++t) {
            Triangle &tr = m.triangles_[t];
            for (int i = 0; i < 3; ++i) {
                TriangleId u = tr.n[i];
                if (u != kNone && u < static_cast<TriangleId>(t)) continue;
                EdgeId e = static_cast<EdgeId>(m.edges_.size());
                m.edges_.push_back({tr.v[i], tr.v[Next(i)], static_cast<TriangleId>(t), u});
                tr.e[i] = e;
                if (u != kNone) {
                    Triangle &ut = m.triangles_[u];
                    for (int j = 0; j < 3; ++j)
                        if (ut.n[j] == static_cast<TriangleId>(t)) ut.e[j] = e;
                }
            }
        }
        BuildFans(m);
        return m;
    }

    static void BuildFans(Mesh &m) {
        const std::size_t nv = m.points_.size();
        std::vector<std::vector<std::pair<TriangleId, int>>> corners(nv);
        for (std::size_t t = 0; t < m.triangles_.size(); ++t)
            for (int i = 0; i < 3; ++i) corners[m.triangles_[t].v[i]].emplace_back(static_cast<TriangleId>(t), i);
        m.fan_offsets_.assign(nv + 1, 0);
        for (std::size_t v = 0; v < nv; ++v) {
            std::vector<std::pair<double, Mesh::Fan>> wedges;
            for (auto [t, i] : corners[v]) {
                if (m.triangles_[t].n[i] != kNone) continue; // not the clockwise-most triangle
                Mesh::Fan f;
                f.begin = static_cast<std::uint32_t>(m.fan_tris_.size());
                TriangleId cur = t;
                int ci = i;
                std::size_t guard = 0;
                while (cur != kNone && guard++ <= corners[v].size()) {
                    m.fan_tris_.push_back(cur);
                    TriangleId nx = m.triangles_[cur].n[Prev(ci)];
                    if (nx == kNone) break;
                    cur = nx;
                    ci = m.corner_of(cur, static_cast<VertexId>(v));
                }
                f.end = static_cast<std::uint32_t>(m.fan_tris_.size());
                Point d = m.points_[m.triangles_[t].v[Next(i)]] - m.points_[v];
                wedges.emplace_back(std::atan2(d.y, d.x), f);
            }
            std::sort(wedges.begin(), wedges.end(),
                      [](const auto &x, const auto &y) { return x.first < y.first; });
            for (auto &w : wedges) m.fans_.push_back(w.second);
            m.fan_offsets_[v + 1] = static_cast<std::uint32_t>(m.fans_.size());
        }
    }
};

Mesh Mesh::Build(const Environment &env) {
    MeshBuilder builder(env);
    return builder.Run();
}

std::vector<TriangleId> Mesh::OrderedFan(VertexId v) const {
    std::vector<TriangleId> out;
    for (const Fan &f : fans(v)) {
        auto tris = fan_triangles(f);
        out.insert(out.end(), tris.begin(), tris.end());
    }
    return out;
}

std::vector<std::pair<EdgeId, TriangleId>> Mesh::OuterFanEdges(VertexId v) const {
    std::vector<std::pair<EdgeId, TriangleId>> out;
    for (TriangleId t : OrderedFan(v)) {
        int i = corner_of(t, v);
        out.emplace_back(triangles_[t].e[Next(i)], t);
    }
    return out;
}

std::vector<std::string> Mesh::CheckInvariants(const Environment &env) const {
    std::vector<std::string> issues;
    auto tri_name = [](std::size_t t) { return "triangle " + std::to_string(t); };
    double area = 0.0;
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const Triangle &tr = triangles_[t];
        auto c = corners(static_cast<TriangleId>(t));
        if (Orient(c[0], c[1], c[2]) != Orientation::CCW) issues.push_back(tri_name(t) + " is not counter-clockwise");
        area += 0.5 * Cross(c[1] - c[0], c[2] - c[0]);
        for (int i = 0; i < 3; ++i) {
            TriangleId u = tr.n[i];
            if (u == kNone) continue;
            const Triangle &ut = triangles_[u];
            int j = edge_towards(u, static_cast<TriangleId>(t));
            if (j < 0) {
                issues.push_back(tri_name(t) + " neighbor not symmetric");
                continue;
            }
            if (ut.v[j] != tr.v[Next(i)] || ut.v[Next(j)] != tr.v[i]) issues.push_back(tri_name(t) + " shared edge mismatch");
            VertexId d = ut.v[Prev(j)];
            if (InCircle(c[0], c[1], c[2], points_[d]) > 0) issues.push_back(tri_name(t) + " violates the Delaunay condition");
        }
    }
    std::set<std::pair<VertexId, VertexId>> boundary, expected;
    for (const MeshEdge &e : edges_)
        if (e.boundary()) boundary.emplace(e.a, e.b);
    for (const auto &e : env.edges()) expected.emplace(env_to_mesh_[e.a], env_to_mesh_[e.b]);
    if (boundary != expected) issues.push_back("boundary edges differ from environment edges");
    double rel = std::fabs(area - env.area()) / std::max(1.0, std::fabs(env.area()));
    if (rel > 1e-9) issues.push_back("triangle area does not match environment area");
    return issues;
}

} // namespace polyvis
