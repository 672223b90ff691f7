#include "tcb/trimesh2.hpp"
#include "tcb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tcb {

double TriMesh2::total_area() const {
    double a = 0.0;
    for (const auto& t : tris) a += oriented_area(points[t[0]], points[t[1]], points[t[2]]);
    return a;
}

int TriMesh2::locate_closed(Vec2 p) const {
    if (tris.empty()) return -1;
    // Remembering walk from an arbitrary start, falling back to a scan if the
    // walk stalls (possible when p is outside the covered region).
    int t = int(tris.size()) / 2;
    int prev = -1;
    for (int step = 0; step < int(tris.size()) + 8; ++step) {
        const auto& tr = tris[t];
        int next = -1;
        bool inside = true;
        for (int e = 0; e < 3; ++e) {
            int nb = adj[t][e];
            if (nb == prev && nb != -1) continue;
            if (orient_sign(points[tr[e]], points[tr[(e + 1) % 3]], p) < 0) {
                inside = false;
                if (nb == -1) { next = -1; break; }
                next = nb;
                break;
            }
        }
        if (inside) {
            // Verify all three (the skipped prev edge included).
            bool ok = true;
            for (int e = 0; e < 3; ++e)
                if (orient_sign(points[tr[e]], points[tr[(e + 1) % 3]], p) < 0) { ok = false; break; }
            if (ok) return t;
        }
        if (next == -1) break;
        prev = t;
        t = next;
    }
    for (int i = 0; i < int(tris.size()); ++i) {
        const auto& tr = tris[i];
        if (orient_sign(points[tr[0]], points[tr[1]], p) >= 0 &&
            orient_sign(points[tr[1]], points[tr[2]], p) >= 0 &&
            orient_sign(points[tr[2]], points[tr[0]], p) >= 0)
            return i;
    }
    return -1;
}

int TriMesh2::locate(Vec2 p, HalfOpenDir dir) const {
    int t = locate_closed(p);
    if (t == -1) return -1;
    if (half_open_contains(points[tris[t][0]], points[tris[t][1]], points[tris[t][2]], p, dir))
        return t;
    // p sits on an edge/vertex of t but the half-open rule assigns it to a
    // neighboring triangle; search the local star.
    std::vector<int> stack{t};
    std::unordered_set<int> seen{t};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int e = 0; e < 3; ++e) {
            const auto& tr = tris[cur];
            if (orient_sign(points[tr[e]], points[tr[(e + 1) % 3]], p) != 0) continue;
            int nb = adj[cur][e];
            if (nb == -1 || seen.count(nb)) continue;
            seen.insert(nb);
            const auto& nt = tris[nb];
            if (half_open_contains(points[nt[0]], points[nt[1]], points[nt[2]], p, dir)) return nb;
            stack.push_back(nb);
        }
    }
    return -1;
}

namespace {

// Incremental Bowyer-Watson with a super-triangle, then constraint
// enforcement by edge flipping. All orientation/incircle decisions go
// through the filtered exact predicates, so ties are resolved consistently.
class Triangulator {
public:
    explicit Triangulator(const std::vector<Vec2>& pts) : pts_(pts) {
        double scale = bbox_scale(pts);
        if (scale == 0.0) scale = 1.0;
        Vec2 lo = pts.empty() ? Vec2{0, 0} : pts[0];
        Vec2 hi = lo;
        for (Vec2 p : pts) {
            lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
            hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
        }
        Vec2 c = (lo + hi) * 0.5;
        double r = 64.0 * scale + 1.0;
        super_ = int(pts.size());
        all_ = pts;
        all_.push_back({c.x - 2.0 * r, c.y - r});
        all_.push_back({c.x + 2.0 * r, c.y - r});
        all_.push_back({c.x, c.y + 2.0 * r});
        add_tri(super_, super_ + 1, super_ + 2, -1, -1, -1);
        for (int i = 0; i < int(pts.size()); ++i) insert(i);
    }

    void force_segment(int a, int b, bool boundary_flag) {
        if (a == b) fail(Err::CrossingConstraints, "triangulate", "zero-length constraint");
        force(a, b, boundary_flag);
    }

    TriMesh2 take(bool drop_super) {
        TriMesh2 m;
        m.points.assign(all_.begin(), all_.begin() + super_);
        std::vector<int> remap(tris_.size(), -1);
        int count = 0;
        for (int t = 0; t < int(tris_.size()); ++t) {
            if (!alive_[t]) continue;
            if (drop_super && uses_super(t)) continue;
            remap[t] = count++;
        }
        m.tris.reserve(count);
        m.adj.reserve(count);
        m.constrained.reserve(count);
        for (int t = 0; t < int(tris_.size()); ++t) {
            if (remap[t] == -1) continue;
            m.tris.push_back(tris_[t]);
            std::array<int, 3> a{};
            std::array<bool, 3> c{};
            for (int e = 0; e < 3; ++e) {
                int nb = adj_[t][e];
                a[e] = (nb >= 0 && remap[nb] >= 0) ? remap[nb] : -1;
                c[e] = cons_[t][e];
            }
            m.adj.push_back(a);
            m.constrained.push_back(c);
        }
        return m;
    }

    int live_triangle_with_edge(int a, int b) const {
        auto it = edge_map_.find(key(a, b));
        return it == edge_map_.end() ? -1 : it->second.first;
    }

private:
    using EdgeKey = std::uint64_t;
    static EdgeKey key(int a, int b) {
        return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
    }

    bool uses_super(int t) const {
        return tris_[t][0] >= super_ || tris_[t][1] >= super_ || tris_[t][2] >= super_;
    }

    int add_tri(int a, int b, int c, int na, int nb, int nc) {
        int id = int(tris_.size());
        tris_.push_back({a, b, c});
        adj_.push_back({na, nb, nc});
        cons_.push_back({false, false, false});
        alive_.push_back(true);
        edge_map_[key(a, b)] = {id, 0};
        edge_map_[key(b, c)] = {id, 1};
        edge_map_[key(c, a)] = {id, 2};
        return id;
    }

    void kill(int t) {
        alive_[t] = false;
        for (int e = 0; e < 3; ++e) {
            auto it = edge_map_.find(key(tris_[t][e], tris_[t][(e + 1) % 3]));
            if (it != edge_map_.end() && it->second.first == t) edge_map_.erase(it);
        }
    }

    void link(int t, int e, int nb) {
        if (t >= 0) adj_[t][e] = nb;
    }

    int edge_index(int t, int a, int b) const {
        for (int e = 0; e < 3; ++e)
            if (tris_[t][e] == a && tris_[t][(e + 1) % 3] == b) return e;
        return -1;
    }

    int locate_walk(Vec2 p, int hint) const {
        int t = hint;
        if (t < 0 || !alive_[t]) {
            for (int i = int(tris_.size()) - 1; i >= 0; --i)
                if (alive_[i]) { t = i; break; }
        }
        int prev = -1;
        for (int step = 0; step < int(tris_.size()) * 2 + 16; ++step) {
            int next = -1;
            for (int e = 0; e < 3; ++e) {
                int nb = adj_[t][e];
                if (nb == prev && nb != -1) continue;
                if (orient_sign(all_[tris_[t][e]], all_[tris_[t][(e + 1) % 3]], p) < 0) {
                    next = nb;
                    break;
                }
            }
            if (next == -1) {
                bool inside = true;
                for (int e = 0; e < 3; ++e)
                    if (orient_sign(all_[tris_[t][e]], all_[tris_[t][(e + 1) % 3]], p) < 0) { inside = false; break; }
                if (inside) return t;
                break;
            }
            prev = t;
            t = next;
        }
        for (int i = 0; i < int(tris_.size()); ++i) {
            if (!alive_[i]) continue;
            bool inside = true;
            for (int e = 0; e < 3; ++e)
                if (orient_sign(all_[tris_[i][e]], all_[tris_[i][(e + 1) % 3]], p) < 0) { inside = false; break; }
            if (inside) return i;
        }
        fail(Err::NonConformingMesh, "triangulate", "point location failed");
    }

    void insert(int pi) {
        Vec2 p = all_[pi];
        int t0 = locate_walk(p, last_);
        for (int v : tris_[t0])
            if (all_[v] == p)
                fail(Err::DuplicatePoints, "triangulate", "duplicate point in input");

        // Grow the cavity of triangles whose circumcircle strictly contains p.
        std::vector<int> cavity;
        std::unordered_set<int> in_cavity;
        std::deque<int> queue{t0};
        in_cavity.insert(t0);
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            cavity.push_back(t);
            for (int e = 0; e < 3; ++e) {
                int nb = adj_[t][e];
                if (nb == -1 || in_cavity.count(nb)) continue;
                const auto& tr = tris_[nb];
                if (incircle_sign(all_[tr[0]], all_[tr[1]], all_[tr[2]], p) > 0) {
                    in_cavity.insert(nb);
                    queue.push_back(nb);
                }
            }
        }

        // Prune until every cavity boundary edge is strictly visible from p,
        // which keeps the replacement fan non-degenerate.
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = cavity.begin(); it != cavity.end(); ++it) {
                int t = *it;
                if (t == t0) continue;
                for (int e = 0; e < 3; ++e) {
                    int nb = adj_[t][e];
                    bool bnd = (nb == -1) || !in_cavity.count(nb);
                    if (!bnd) continue;
                    if (orient_sign(all_[tris_[t][e]], all_[tris_[t][(e + 1) % 3]], p) <= 0) {
                        in_cavity.erase(t);
                        cavity.erase(it);
                        changed = true;
                        break;
                    }
                }
                if (changed) break;
            }
        }

        // Collect boundary edges (a,b) with their outside neighbor.
        struct Bedge { int a, b, outside; bool cons; };
        std::vector<Bedge> ring;
        for (int t : cavity) {
            for (int e = 0; e < 3; ++e) {
                int nb = adj_[t][e];
                if (nb != -1 && in_cavity.count(nb)) continue;
                ring.push_back({tris_[t][e], tris_[t][(e + 1) % 3], nb, cons_[t][e]});
            }
        }
        // Chain the ring CCW around the cavity.
        std::unordered_map<int, int> next_of;
        for (int i = 0; i < int(ring.size()); ++i) next_of[ring[i].a] = i;
        std::vector<Bedge> ordered;
        ordered.reserve(ring.size());
        int cur = 0;
        for (size_t i = 0; i < ring.size(); ++i) {
            ordered.push_back(ring[cur]);
            auto it = next_of.find(ring[cur].b);
            if (it == next_of.end()) fail(Err::NonConformingMesh, "triangulate", "open insertion cavity");
            cur = it->second;
        }
        for (int t : cavity) kill(t);

        std::vector<int> fresh(ordered.size());
        for (size_t i = 0; i < ordered.size(); ++i) {
            fresh[i] = add_tri(ordered[i].a, ordered[i].b, pi, -1, -1, -1);
            cons_[fresh[i]][0] = ordered[i].cons;
        }
        for (size_t i = 0; i < ordered.size(); ++i) {
            int t = fresh[i];
            int out = ordered[i].outside;
            adj_[t][0] = out;
            if (out != -1) {
                int oe = edge_index(out, ordered[i].b, ordered[i].a);
                adj_[out][oe] = t;
            }
            adj_[t][1] = fresh[(i + 1) % ordered.size()];
            adj_[t][2] = fresh[(i + ordered.size() - 1) % ordered.size()];
        }
        last_ = fresh[0];
    }

    // Flip the edge shared by t (at local edge e) and its neighbor; returns
    // the new diagonal's triangle and local index.
    std::pair<int, int> flip(int t, int e) {
        int nb = adj_[t][e];
        int u = tris_[t][e], v = tris_[t][(e + 1) % 3];
        int w = tris_[t][(e + 2) % 3];
        int oe = edge_index(nb, v, u);
        int z = tris_[nb][(oe + 2) % 3];

        int t_adj_vw = adj_[t][(e + 1) % 3];
        int t_adj_wu = adj_[t][(e + 2) % 3];
        bool t_c_vw = cons_[t][(e + 1) % 3], t_c_wu = cons_[t][(e + 2) % 3];
        int n_adj_uz = adj_[nb][(oe + 1) % 3];
        int n_adj_zv = adj_[nb][(oe + 2) % 3];
        bool n_c_uz = cons_[nb][(oe + 1) % 3], n_c_zv = cons_[nb][(oe + 2) % 3];

        kill(t);
        kill(nb);
        int t1 = add_tri(u, z, w, -1, -1, -1); // (u,z) from nb, (z,w) new diag, (w,u) from t
        int t2 = add_tri(z, v, w, -1, -1, -1);
        cons_[t1][0] = n_c_uz;
        cons_[t1][2] = t_c_wu;
        cons_[t2][0] = n_c_zv;
        cons_[t2][1] = t_c_vw;

        adj_[t1][0] = n_adj_uz;
        if (n_adj_uz != -1) adj_[n_adj_uz][edge_index(n_adj_uz, z, u)] = t1;
        adj_[t1][1] = t2;
        adj_[t1][2] = t_adj_wu;
        if (t_adj_wu != -1) adj_[t_adj_wu][edge_index(t_adj_wu, u, w)] = t1;
        adj_[t2][0] = n_adj_zv;
        if (n_adj_zv != -1) adj_[n_adj_zv][edge_index(n_adj_zv, v, z)] = t2;
        adj_[t2][1] = t_adj_vw;
        if (t_adj_vw != -1) adj_[t_adj_vw][edge_index(t_adj_vw, w, v)] = t2;
        adj_[t2][2] = t1;
        last_ = t1;
        return {t1, 1}; // edge (z,w) of t1
    }

    void set_constrained(int a, int b, bool boundary_flag) {
        (void)boundary_flag;
        auto it = edge_map_.find(key(a, b));
        if (it != edge_map_.end()) cons_[it->second.first][it->second.second] = true;
        it = edge_map_.find(key(b, a));
        if (it != edge_map_.end()) cons_[it->second.first][it->second.second] = true;
    }

    void force(int a, int b, bool boundary_flag) {
        if (edge_map_.count(key(a, b)) || edge_map_.count(key(b, a))) {
            set_constrained(a, b, boundary_flag);
            return;
        }
        Vec2 pa = all_[a], pb = all_[b];

        // Find the triangle at a whose wedge contains the direction a->b;
        // a vertex lying exactly on (a,b) splits the constraint instead.
        int t_start = -1, e_start = -1;
        for (int t = 0; t < int(tris_.size()); ++t) {
            if (!alive_[t]) continue;
            int ia = -1;
            for (int e = 0; e < 3; ++e)
                if (tris_[t][e] == a) ia = e;
            if (ia == -1) continue;
            int u = tris_[t][(ia + 1) % 3], v = tris_[t][(ia + 2) % 3];
            if (orient_sign(pa, pb, all_[u]) == 0 && (all_[u] - pa).dot(all_[u] - pb) < 0) {
                force(a, u, boundary_flag);
                force(u, b, boundary_flag);
                return;
            }
            if (orient_sign(pa, pb, all_[v]) == 0 && (all_[v] - pa).dot(all_[v] - pb) < 0) {
                force(a, v, boundary_flag);
                force(v, b, boundary_flag);
                return;
            }
            if (orient_sign(pa, all_[u], pb) >= 0 && orient_sign(pa, pb, all_[v]) >= 0 &&
                segments_properly_cross(pa, pb, all_[u], all_[v])) {
                t_start = t;
                e_start = (ia + 1) % 3;
                break;
            }
        }
        if (t_start == -1)
            fail(Err::NonConformingMesh, "triangulate", "constraint start wedge not found");

        // Sloan-style: queue of crossing edges, flip convex ones until the
        // constraint edge materializes. Queued edges are vertex pairs: flips
        // relabel triangle slots, so (tri, local edge) handles go stale.
        std::deque<std::pair<int, int>> crossing;
        crossing.push_back({tris_[t_start][e_start], tris_[t_start][(e_start + 1) % 3]});
        // March across to collect all crossing edges.
        {
            int ct = t_start, ce = e_start;
            while (true) {
                int nb = adj_[ct][ce];
                if (nb == -1) fail(Err::NonConformingMesh, "triangulate", "constraint crossed hull");
                if (cons_[ct][ce])
                    fail(Err::CrossingConstraints, "triangulate", "two constraints properly cross");
                int u = tris_[ct][ce], v = tris_[ct][(ce + 1) % 3];
                int oe = edge_index(nb, v, u);
                int z = tris_[nb][(oe + 2) % 3];
                if (z == b) break;
                int sz = orient_sign(pa, pb, all_[z]);
                if (sz == 0 && (all_[z] - pa).dot(all_[z] - pb) < 0) {
                    // vertex on segment: split constraint around it
                    force(a, z, boundary_flag);
                    force(z, b, boundary_flag);
                    return;
                }
                // Exit edge of nb straddles line (a,b): it joins z with
                // whichever of u,v lies on the other side of the line.
                int su = orient_sign(pa, pb, all_[u]);
                int ne = (sz * su < 0) ? (oe + 1) % 3 : (oe + 2) % 3;
                crossing.push_back({tris_[nb][ne], tris_[nb][(ne + 1) % 3]});
                ct = nb;
                ce = ne;
            }
        }

        int guard2 = 0;
        while (!crossing.empty()) {
            if (++guard2 > 64 * (int(crossing.size()) + 4) * (int(crossing.size()) + 4) + 4096)
                fail(Err::NonConformingMesh, "triangulate", "constraint flipping stalled");
            auto [u, v] = crossing.front();
            crossing.pop_front();
            // Edge may have been flipped away already.
            auto it = edge_map_.find(key(u, v));
            if (it == edge_map_.end()) it = edge_map_.find(key(v, u));
            if (it == edge_map_.end()) continue;
            if (!segments_properly_cross(pa, pb, all_[u], all_[v])) continue;
            auto [t1, e1] = it->second;
            u = tris_[t1][e1]; // align with t1's directed edge
            v = tris_[t1][(e1 + 1) % 3];
            int nb = adj_[t1][e1];
            if (nb == -1) continue;
            int oe = edge_index(nb, v, u);
            int w = tris_[t1][(e1 + 2) % 3];
            int z = tris_[nb][(oe + 2) % 3];
            // Flip only strictly convex quads (w,u,z,v).
            if (orient_sign(all_[w], all_[u], all_[z]) <= 0 ||
                orient_sign(all_[z], all_[v], all_[w]) <= 0) {
                crossing.push_back({u, v});
                continue;
            }
            auto [nt, ne] = flip(t1, e1);
            int p = tris_[nt][ne], q = tris_[nt][(ne + 1) % 3];
            if (segments_properly_cross(pa, pb, all_[p], all_[q]))
                crossing.push_back({p, q});
        }
        if (!edge_map_.count(key(a, b)) && !edge_map_.count(key(b, a)))
            fail(Err::NonConformingMesh, "triangulate", "failed to recover constraint edge");
        set_constrained(a, b, boundary_flag);

        // Restore local Delaunay around the new edge (constraint kept).
        std::deque<std::pair<int, int>> check;
        for (auto k : {key(a, b), key(b, a)}) {
            auto it = edge_map_.find(k);
            if (it != edge_map_.end()) {
                int t2 = it->second.first;
                for (int e = 0; e < 3; ++e)
                    if (!cons_[t2][e]) check.push_back({t2, e});
            }
        }
        int guard3 = 0;
        while (!check.empty() && ++guard3 < 10000) {
            auto [t2, e2] = check.front();
            check.pop_front();
            if (!alive_[t2] || cons_[t2][e2]) continue;
            int nb = adj_[t2][e2];
            if (nb == -1) continue;
            int u = tris_[t2][e2], v = tris_[t2][(e2 + 1) % 3];
            int oe = edge_index(nb, v, u);
            int z = tris_[nb][(oe + 2) % 3];
            if (incircle_sign(all_[tris_[t2][0]], all_[tris_[t2][1]], all_[tris_[t2][2]], all_[z]) > 0) {
                int w = tris_[t2][(e2 + 2) % 3];
                if (orient_sign(all_[w], all_[u], all_[z]) > 0 &&
                    orient_sign(all_[z], all_[v], all_[w]) > 0) {
                    auto [nt, ne] = flip(t2, e2);
                    for (int tt : {nt, adj_[nt][ne]})
                        if (tt != -1)
                            for (int e = 0; e < 3; ++e)
                                if (!cons_[tt][e]) check.push_back({tt, e});
                }
            }
        }
    }

    const std::vector<Vec2>& pts_;
    std::vector<Vec2> all_;
    int super_ = 0;
    int last_ = -1;
    std::vector<std::array<int, 3>> tris_;
    std::vector<std::array<int, 3>> adj_;
    std::vector<std::array<bool, 3>> cons_;
    std::vector<char> alive_;
    std::unordered_map<EdgeKey, std::pair<int, int>> edge_map_; // directed edge -> (tri, local)
};

} // namespace

TriMesh2 delaunay(const std::vector<Vec2>& points) {
    if (points.size() < 3) fail(Err::EmptyDomain, "triangulate", "need at least 3 points");
    Triangulator tr(points);
    return tr.take(true);
}

TriMesh2 constrained_delaunay(const std::vector<Vec2>& points,
                              const std::vector<std::array<int, 2>>& segments) {
    if (points.size() < 3) fail(Err::EmptyDomain, "triangulate", "need at least 3 points");
    Triangulator tr(points);
    for (const auto& s : segments) tr.force_segment(s[0], s[1], false);
    return tr.take(true);
}

DomainTriangulation triangulate_domain(const PolygonDomain& domain,
                                       const std::vector<Vec2>& interior_points,
                                       const std::vector<std::array<int, 2>>& extra_segments,
                                       const std::vector<Vec2>& extra_points) {
    domain.check("triangulate");
    DomainTriangulation out;
    std::vector<Vec2> pts;
    std::vector<std::array<int, 2>> segs;
    for (size_t li = 0; li < domain.loops.size(); ++li) {
        const auto& loop = domain.loops[li];
        int base = int(pts.size());
        for (size_t i = 0; i < loop.size(); ++i) {
            pts.push_back(loop[i]);
            out.loop_of.push_back(int(li));
            out.pos_in_loop.push_back(int(i));
            segs.push_back({base + int(i), base + int((i + 1) % loop.size())});
        }
    }
    out.boundary_count = int(pts.size());
    int extra_base = out.boundary_count;
    for (Vec2 p : interior_points) {
        pts.push_back(p);
        out.loop_of.push_back(-1);
        out.pos_in_loop.push_back(-1);
    }
    for (Vec2 p : extra_points) {
        pts.push_back(p);
        out.loop_of.push_back(-1);
        out.pos_in_loop.push_back(-1);
    }
    for (auto s : extra_segments) segs.push_back({s[0] + extra_base, s[1] + extra_base});

    Triangulator tr(pts);
    for (const auto& s : segs) tr.force_segment(s[0], s[1], true);
    TriMesh2 mesh = tr.take(true);

    // Keep triangles whose centroid lies inside the domain.
    TriMesh2 kept;
    kept.points = mesh.points;
    std::vector<int> remap(mesh.tris.size(), -1);
    for (size_t t = 0; t < mesh.tris.size(); ++t) {
        const auto& tri = mesh.tris[t];
        Vec2 c = (mesh.points[tri[0]] + mesh.points[tri[1]] + mesh.points[tri[2]]) / 3.0;
        if (domain.contains(c)) {
            remap[t] = int(kept.tris.size());
            kept.tris.push_back(tri);
        }
    }
    for (size_t t = 0; t < mesh.tris.size(); ++t) {
        if (remap[t] == -1) continue;
        std::array<int, 3> a{};
        std::array<bool, 3> c{};
        for (int e = 0; e < 3; ++e) {
            int nb = mesh.adj[t][e];
            a[e] = (nb >= 0 && remap[nb] >= 0) ? remap[nb] : -1;
            c[e] = mesh.constrained[t][e];
        }
        kept.adj.push_back(a);
        kept.constrained.push_back(c);
    }
    if (kept.tris.empty()) fail(Err::EmptyDomain, "triangulate", "no interior triangles");
    out.mesh = std::move(kept);
    return out;
}

TriMesh2 triangulate_polygon(const std::vector<Vec2>& polygon,
                             const std::vector<std::array<int, 2>>& forced_chords) {
    if (polygon.size() < 3) fail(Err::EmptyDomain, "triangulate", "polygon too small");
    PolygonDomain d;
    d.loops.push_back(polygon);
    if (polygon_area(polygon) <= 0.0)
        fail(Err::EmptyDomain, "triangulate", "polygon must be CCW");
    std::vector<std::array<int, 2>> chords;
    Triangulator tr(polygon);
    std::vector<std::array<int, 2>> segs;
    int n = int(polygon.size());
    for (int i = 0; i < n; ++i) segs.push_back({i, (i + 1) % n});
    for (const auto& s : segs) tr.force_segment(s[0], s[1], true);
    for (const auto& s : forced_chords) tr.force_segment(s[0], s[1], true);
    TriMesh2 mesh = tr.take(true);
    TriMesh2 kept;
    kept.points = mesh.points;
    std::vector<int> remap(mesh.tris.size(), -1);
    for (size_t t = 0; t < mesh.tris.size(); ++t) {
        const auto& tri = mesh.tris[t];
        Vec2 c = (mesh.points[tri[0]] + mesh.points[tri[1]] + mesh.points[tri[2]]) / 3.0;
        if (point_in_polygon(polygon, c)) {
            remap[t] = int(kept.tris.size());
            kept.tris.push_back(tri);
        }
    }
    for (size_t t = 0; t < mesh.tris.size(); ++t) {
        if (remap[t] == -1) continue;
        std::array<int, 3> a{};
        std::array<bool, 3> c{};
        for (int e = 0; e < 3; ++e) {
            int nb = mesh.adj[t][e];
            a[e] = (nb >= 0 && remap[nb] >= 0) ? remap[nb] : -1;
            c[e] = mesh.constrained[t][e];
        }
        kept.adj.push_back(a);
        kept.constrained.push_back(c);
    }
    if (kept.tris.empty()) fail(Err::EmptyDomain, "triangulate", "polygon triangulation empty");
    return kept;
}

SegmentSoup split_segments_at_intersections(const std::vector<Vec2>& points,
                                            const std::vector<std::array<int, 2>>& segments) {
    SegmentSoup soup;
    double tol = 1e-9 * bbox_scale(points);

    // Snapping point store: coarse grid buckets keyed at tol resolution.
    std::map<std::pair<long long, long long>, std::vector<int>> grid;
    auto cell_of = [&](Vec2 p) {
        return std::make_pair((long long)std::floor(p.x / (tol * 16.0)),
                              (long long)std::floor(p.y / (tol * 16.0)));
    };
    auto snap = [&](Vec2 p) -> int {
        auto [cx, cy] = cell_of(p);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({cx + dx, cy + dy});
                if (it == grid.end()) continue;
                for (int i : it->second)
                    if ((soup.points[i] - p).norm() <= tol) return i;
            }
        int i = int(soup.points.size());
        soup.points.push_back(p);
        grid[{cx, cy}].push_back(i);
        return i;
    };

    std::vector<int> pmap(points.size());
    for (size_t i = 0; i < points.size(); ++i) pmap[i] = snap(points[i]);

    // Deduplicate input segments (as unordered point-id pairs).
    std::set<std::pair<int, int>> seen;
    std::vector<std::array<int, 2>> segs;
    for (const auto& s : segments) {
        int a = pmap[s[0]], b = pmap[s[1]];
        if (a == b) continue;
        auto key = std::minmax(a, b);
        if (seen.insert({key.first, key.second}).second) segs.push_back({a, b});
    }

    // Cut points per segment, found by a bbox grid over segments.
    double cell = 0.0;
    for (const auto& s : segs)
        cell = std::max(cell, (soup.points[s[0]] - soup.points[s[1]]).norm());
    cell = std::max(cell, tol * 1e6);
    auto seg_cells = [&](const std::array<int, 2>& s) {
        Vec2 a = soup.points[s[0]], b = soup.points[s[1]];
        long long x0 = (long long)std::floor(std::min(a.x, b.x) / cell);
        long long x1 = (long long)std::floor(std::max(a.x, b.x) / cell);
        long long y0 = (long long)std::floor(std::min(a.y, b.y) / cell);
        long long y1 = (long long)std::floor(std::max(a.y, b.y) / cell);
        std::vector<std::pair<long long, long long>> out;
        for (long long x = x0; x <= x1; ++x)
            for (long long y = y0; y <= y1; ++y) out.push_back({x, y});
        return out;
    };
    std::map<std::pair<long long, long long>, std::vector<int>> seg_grid;
    for (size_t i = 0; i < segs.size(); ++i)
        for (auto c : seg_cells(segs[i])) seg_grid[c].push_back(int(i));

    std::vector<std::set<int>> cuts(segs.size());
    auto consider_point = [&](size_t si, int pi) {
        Vec2 a = soup.points[segs[si][0]], b = soup.points[segs[si][1]];
        Vec2 p = soup.points[pi];
        if (pi == segs[si][0] || pi == segs[si][1]) return;
        if (orient_sign(a, b, p) != 0) {
            // Near-miss snap: computed crossings may sit within tol of the line.
            Vec2 q = closest_on_segment(a, b, p);
            if ((q - p).norm() > tol) return;
        }
        double t = (p - a).dot(b - a) / (b - a).norm2();
        if (t <= 0.0 || t >= 1.0) return;
        cuts[si].insert(pi);
    };

    for (size_t si = 0; si < segs.size(); ++si) {
        std::set<int> nearby;
        for (auto c : seg_cells(segs[si])) {
            auto it = seg_grid.find(c);
            if (it == seg_grid.end()) continue;
            for (int j : it->second)
                if (j != int(si)) nearby.insert(j);
        }
        Vec2 a = soup.points[segs[si][0]], b = soup.points[segs[si][1]];
        for (int j : nearby) {
            if (j < int(si)) continue; // each pair once
            Vec2 c = soup.points[segs[j][0]], d = soup.points[segs[j][1]];
            // Endpoints lying inside the other segment.
            consider_point(si, segs[j][0]);
            consider_point(si, segs[j][1]);
            consider_point(size_t(j), segs[si][0]);
            consider_point(size_t(j), segs[si][1]);
            Vec2 x;
            if (segments_properly_cross(a, b, c, d) && segment_intersection(a, b, c, d, x)) {
                int pi = snap(x);
                consider_point(si, pi);
                consider_point(size_t(j), pi);
            }
        }
    }

    std::set<std::pair<int, int>> out_seen;
    for (size_t si = 0; si < segs.size(); ++si) {
        Vec2 a = soup.points[segs[si][0]];
        Vec2 ab = soup.points[segs[si][1]] - a;
        std::vector<std::pair<double, int>> order;
        order.push_back({0.0, segs[si][0]});
        order.push_back({1.0, segs[si][1]});
        for (int pi : cuts[si])
            order.push_back({(soup.points[pi] - a).dot(ab) / ab.norm2(), pi});
        std::sort(order.begin(), order.end());
        for (size_t i = 0; i + 1 < order.size(); ++i) {
            int u = order[i].second, v = order[i + 1].second;
            if (u == v) continue;
            auto key = std::minmax(u, v);
            if (out_seen.insert({key.first, key.second}).second)
                soup.segments.push_back({u, v});
        }
    }
    return soup;
}

} // namespace tcb
