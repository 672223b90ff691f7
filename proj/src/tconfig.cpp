#include "tcb/tconfig.hpp"
#include "tcb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace tcb {

namespace {

double loop_arc_of(const std::vector<Vec2>& loop, Vec2 p) {
    // Arclength of the closest boundary point to p; orders stations along a loop.
    double arc = 0.0, best_d = -1.0, best_arc = 0.0;
    size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = loop[i], b = loop[(i + 1) % n];
        Vec2 q = closest_on_segment(a, b, p);
        double d = (q - p).norm2();
        if (best_d < 0.0 || d < best_d) {
            best_d = d;
            best_arc = arc + (q - a).norm();
        }
        arc += (b - a).norm();
    }
    return best_arc;
}

void rebuild_station_of(KnotLayout& L) {
    L.station_of.assign(L.knots.size(), {-1, -1});
    for (size_t l = 0; l < L.stations.size(); ++l)
        for (size_t s = 0; s < L.stations[l].size(); ++s)
            for (int k : L.stations[l][s].copies)
                L.station_of[k] = {int(l), int(s)};
}

} // namespace

const KnotLayout::Station* KnotLayout::station_for(int knot) const {
    auto [l, s] = station_of[knot];
    return l < 0 ? nullptr : &stations[l][s];
}

std::vector<int> KnotLayout::mesh_knots() const {
    std::vector<int> out;
    for (const auto& loop : stations)
        for (const auto& st : loop) out.push_back(st.copies.front());
    for (int k = 0; k < int(knots.size()); ++k)
        if (station_of[k].first < 0) out.push_back(k);
    return out;
}

KnotLayout make_layout(const PolygonDomain& domain, const std::vector<Vec2>& interior, int degree) {
    domain.check("make_layout");
    KnotLayout L;
    L.domain = domain;
    L.degree = degree;
    int mult = degree + 1;
    for (size_t l = 0; l < domain.loops.size(); ++l) {
        const auto& loop = domain.loops[l];
        std::vector<KnotLayout::Station> sts;
        double arc = 0.0;
        for (size_t i = 0; i < loop.size(); ++i) {
            KnotLayout::Station s;
            s.loop = int(l);
            s.arc = arc;
            s.pos = loop[i];
            s.corner = true;
            for (int c = 0; c < mult; ++c) {
                s.copies.push_back(int(L.knots.size()));
                L.knots.push_back(loop[i]);
            }
            sts.push_back(std::move(s));
            arc += (loop[(i + 1) % loop.size()] - loop[i]).norm();
            Vec2 prev = loop[(i + loop.size() - 1) % loop.size()];
            Vec2 next = loop[(i + 1) % loop.size()];
            if (orient_sign(prev, loop[i], next) < 0) L.reflex.push_back(loop[i]);
        }
        L.stations.push_back(std::move(sts));
    }
    for (Vec2 p : interior) {
        if (L.domain.signed_distance(p) >= 0.0)
            fail(Err::OutOfDomain, "make_layout", "interior knot not strictly inside the domain");
        L.knots.push_back(p);
    }
    rebuild_station_of(L);
    return L;
}

int add_interior_knot(KnotLayout& L, Vec2 p) {
    if (L.domain.signed_distance(p) >= 0.0)
        fail(Err::OutOfDomain, "add_interior_knot", "point not strictly inside the domain");
    int idx = int(L.knots.size());
    L.knots.push_back(p);
    L.station_of.push_back({-1, -1});
    return idx;
}

int add_boundary_knot(KnotLayout& L, int loop, Vec2 p) {
    if (loop < 0 || loop >= int(L.stations.size()))
        fail(Err::OutOfDomain, "add_boundary_knot", "no such boundary loop");
    double arc = loop_arc_of(L.domain.loops[loop], p);
    double tol = 1e-12 * L.domain.scale();
    auto& sts = L.stations[loop];
    int idx = int(L.knots.size());
    for (auto& s : sts) {
        if ((s.pos - p).norm() <= tol) {
            // Same position as an existing station: extend its copy list.
            L.knots.push_back(s.pos);
            s.copies.push_back(idx);
            rebuild_station_of(L);
            return idx;
        }
    }
    L.knots.push_back(p);
    KnotLayout::Station s;
    s.loop = loop;
    s.arc = arc;
    s.pos = p;
    s.copies = {idx};
    s.corner = false;
    auto it = std::upper_bound(sts.begin(), sts.end(), arc,
                               [](double a, const KnotLayout::Station& st) { return a < st.arc; });
    sts.insert(it, std::move(s));
    rebuild_station_of(L);
    return idx;
}

std::map<std::vector<int>, std::vector<std::pair<int, int>>> TConfigFamily::vertex_index() const {
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> m;
    for (int ci = 0; ci < int(configs.size()); ++ci) {
        for (int slot = 0; slot < 3; ++slot) {
            std::vector<int> key = configs[ci].I;
            key.push_back(configs[ci].T[slot]);
            std::sort(key.begin(), key.end());
            m[key].push_back({ci, slot});
        }
    }
    return m;
}

TConfigFamily initial_family(std::shared_ptr<const KnotLayout> layout) {
    if (!layout) fail(Err::EmptyDomain, "initial_family", "missing knot layout");
    const KnotLayout& L = *layout;
    // The knot mesh treats every boundary station as a polygon vertex, so
    // refined boundary knots become mesh vertices too (collinear corners are
    // fine for the triangulation).
    PolygonDomain md;
    for (const auto& loop : L.stations) {
        std::vector<Vec2> lp;
        for (const auto& s : loop) lp.push_back(s.pos);
        md.loops.push_back(std::move(lp));
    }
    std::vector<int> m2k = L.mesh_knots();
    size_t reps = 0;
    for (const auto& loop : L.stations) reps += loop.size();
    std::vector<Vec2> interior;
    for (size_t i = reps; i < m2k.size(); ++i) interior.push_back(L.knots[m2k[i]]);

    DomainTriangulation dt = triangulate_domain(md, interior);
    TConfigFamily F;
    F.degree = 0;
    F.layout = std::move(layout);
    for (const auto& t : dt.mesh.tris) {
        TConfig c;
        c.T = {m2k[t[0]], m2k[t[1]], m2k[t[2]]};
        if (cross2(L.knots[c.T[0]], L.knots[c.T[1]], L.knots[c.T[2]]) < 0.0)
            std::swap(c.T[1], c.T[2]);
        F.configs.push_back(std::move(c));
    }
    if (F.configs.empty())
        fail(Err::EmptyDomain, "initial_family", "knot mesh has no triangles");
    return F;
}

namespace {

// Chain the directed edges opposite `key` and close open chains along the
// domain boundary. Each edge keeps the star of the vertex on its left, so
// the correct boundary closure is the one producing a counter-clockwise
// simple polygon; a flat result means the polygon is degenerate and the
// vertex contributes nothing to the elevated family.
LinkPolygon build_link(const TConfigFamily& fam, const std::vector<int>& key,
                       const std::vector<std::pair<int, int>>& uses) {
    const KnotLayout& L = *fam.layout;
    // A pocket piece and a facing positive piece traverse a shared edge in
    // opposite directions; such pairs enclose no area and cancel out of the
    // chain before it is walked.
    std::map<std::pair<int, int>, int> mult;
    for (auto [ci, slot] : uses) {
        const auto& T = fam.configs[ci].T;
        ++mult[{T[(slot + 1) % 3], T[(slot + 2) % 3]}];
    }
    for (auto& [e, m] : mult) {
        auto rev = mult.find({e.second, e.first});
        if (rev == mult.end()) continue;
        int c = std::min(m, rev->second);
        m -= c;
        rev->second -= c;
    }
    std::map<int, int> next;
    std::map<int, int> indeg;
    for (const auto& [e, m] : mult) {
        if (m == 0) continue;
        if (m > 1 || next.count(e.first))
            fail(Err::NonChainableEdges, "link_polygon", "two link edges leave one knot");
        next[e.first] = e.second;
        indeg[e.first];
        ++indeg[e.second];
    }
    LinkPolygon P;
    if (next.empty()) { // every edge cancelled: the link encloses nothing
        P.degenerate = true;
        return P;
    }
    int start = -1;
    for (const auto& [node, d] : indeg) {
        if (d > 1) fail(Err::NonChainableEdges, "link_polygon", "two link edges enter one knot");
        if (d == 0) {
            if (start >= 0) fail(Err::NonChainableEdges, "link_polygon", "link chain is disconnected");
            start = node;
        }
    }

    double tol = 1e-14 * L.domain.scale() * L.domain.scale();
    if (start < 0) {
        int s0 = next.begin()->first, u = s0;
        do {
            P.verts.push_back(u);
            auto it = next.find(u);
            if (it == next.end())
                fail(Err::NonChainableEdges, "link_polygon", "link cycle is broken");
            u = it->second;
        } while (u != s0 && P.verts.size() <= next.size());
        if (P.verts.size() != next.size())
            fail(Err::NonChainableEdges, "link_polygon", "link edges form several cycles");
        P.was_closed = true;
        std::vector<Vec2> poly;
        for (int v : P.verts) poly.push_back(L.knots[v]);
        // A chain closing clockwise bounds a negatively wound region (all its
        // pieces subtract); orientation is resolved during triangulation.
        if (std::abs(polygon_area(poly)) <= tol) P.degenerate = true;
        return P;
    }

    // Open chain start -> ... -> end; both ends must be boundary knots.
    std::vector<int> chain;
    int u = start;
    while (true) {
        chain.push_back(u);
        auto it = next.find(u);
        if (it == next.end()) break;
        u = it->second;
        if (chain.size() > next.size() + 1)
            fail(Err::NonChainableEdges, "link_polygon", "open link chain loops back");
    }
    if (chain.size() != next.size() + 1)
        fail(Err::NonChainableEdges, "link_polygon", "link chain is disconnected");

    auto [l_end, s_end] = L.station_of[chain.back()];
    auto [l_beg, s_beg] = L.station_of[chain.front()];
    if (l_end < 0 || l_beg < 0)
        fail(Err::NonChainableEdges, "link_polygon", "open chain ends away from the boundary");
    if (l_end != l_beg)
        fail(Err::NonChainableEdges, "link_polygon", "open chain spans two boundary loops");
    const auto& sts = L.stations[l_end];
    int n = int(sts.size());

    std::set<int> base_used(chain.begin(), chain.end());
    base_used.insert(key.begin(), key.end());

    // A closing edge (u, w) only contributes triangles whose splines vanish
    // identically, and it does so exactly when u, w and every vertex knot sit
    // on one line (their flat hull supports no area). Any other closing edge
    // would change the function the elevated configs sum to, so a candidate
    // using one is not a closure at all.
    double lin_tol = 1e-12 * L.domain.scale() * L.domain.scale();
    auto closing_edge_flat = [&](Vec2 u, Vec2 w) {
        std::vector<Vec2> pts = {u, w};
        for (int v : key) pts.push_back(L.knots[v]);
        Vec2 a = pts[0], b = pts[0];
        for (Vec2 p : pts) { // farthest pair from the first point spans the line
            if ((p - pts[0]).norm() > (b - pts[0]).norm()) b = p;
        }
        for (Vec2 p : pts)
            if (std::abs(oriented_area(a, b, p)) > lin_tol) return false;
        return true;
    };

    struct Candidate {
        std::vector<int> verts;
        double area = 0.0;
        bool valid = false;
    };
    std::vector<Candidate> cands;
    for (int dir : {+1, -1}) {
        Candidate c;
        c.verts = chain;
        std::set<int> used = base_used;
        // Walk boundary stations strictly between the chain's end and start,
        // inserting the first unused copy at each; exhausted stations are
        // skipped (the closing edge passes through them collinearly).
        for (int i = (s_end + dir + n) % n, guard = 0; i != s_beg && guard < n;
             i = (i + dir + n) % n, ++guard) {
            int pick = -1;
            for (int k : sts[i].copies)
                if (!used.count(k)) {
                    pick = k;
                    break;
                }
            if (pick < 0) continue;
            c.verts.push_back(pick);
            used.insert(pick);
        }
        std::vector<Vec2> poly;
        for (int v : c.verts) poly.push_back(L.knots[v]);
        std::set<std::pair<double, double>> uniq;
        bool dup = false;
        for (Vec2 p : poly) dup = dup || !uniq.insert({p.x, p.y}).second;
        c.area = polygon_area(poly);
        c.valid = !dup && polygon_is_simple(poly);
        for (size_t i = chain.size() - 1; c.valid && i < c.verts.size(); ++i)
            c.valid = closing_edge_flat(L.knots[c.verts[i]],
                                        L.knots[c.verts[(i + 1) % c.verts.size()]]);
        cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return std::abs(a.area) < std::abs(b.area); });
    for (const auto& c : cands) {
        if (!c.valid) continue;
        if (std::abs(c.area) <= tol) { // chain and closure share one line
            P.degenerate = true;
            return P;
        }
        if (c.area > 0.0) {
            P.verts = c.verts;
            return P;
        }
    }
    // A flat best candidate is a self-cancelling figure-eight closure, which
    // only arises when stations sit exactly on a line through the domain.
    if (!cands.empty() && std::abs(cands.front().area) <= tol)
        fail(Err::DegenerateKnotSet, "link_polygon",
             "boundary closure self-cancels: collinear knot stations");
    fail(Err::NonChainableEdges, "link_polygon", "no counter-clockwise simple closure exists");
}

// Chords forced into a link-polygon triangulation so that every crease at a
// concave corner lies on the corner's angle bisector.
std::vector<std::array<int, 2>> reflex_chords(const KnotLayout& L, const std::vector<int>& verts,
                                              const std::vector<Vec2>& poly) {
    std::vector<std::array<int, 2>> out;
    if (L.reflex.empty()) return out;
    int n = int(verts.size());
    for (int i = 0; i < n; ++i) {
        Vec2 c = poly[i];
        bool is_reflex = false;
        for (Vec2 r : L.reflex) is_reflex = is_reflex || (r.x == c.x && r.y == c.y);
        if (!is_reflex) continue;

        // Inward bisector of the reflex corner.
        Vec2 bis{0.0, 0.0};
        for (const auto& loop : L.domain.loops) {
            size_t m = loop.size();
            for (size_t j = 0; j < m; ++j) {
                if (loop[j].x != c.x || loop[j].y != c.y) continue;
                Vec2 u1 = (loop[(j + m - 1) % m] - c).normalized();
                Vec2 u2 = (loop[(j + 1) % m] - c).normalized();
                Vec2 s = u1 + u2;
                if (s.norm() > 1e-12) bis = (s * -1.0).normalized();
            }
        }
        if (bis.norm() == 0.0) continue;

        // Best-aligned polygon vertex reachable by an interior chord.
        std::vector<std::pair<double, int>> ranked;
        for (int j = 0; j < n; ++j) {
            if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
            Vec2 w = poly[j];
            Vec2 d = w - c;
            if (d.norm() == 0.0) continue;
            ranked.push_back({d.normalized().dot(bis), j});
        }
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [align, j] : ranked) {
            if (align <= 0.0) break;
            Vec2 a = poly[i], b = poly[j];
            bool crosses = false;
            for (int e = 0; e < n && !crosses; ++e)
                crosses = segments_properly_cross(a, b, poly[e], poly[(e + 1) % n]);
            if (crosses) continue;
            if (!point_in_polygon(poly, (a + b) * 0.5)) continue;
            out.push_back({i, j});
            break;
        }
    }
    return out;
}

} // namespace

LinkPolygon link_polygon(const TConfigFamily& fam, const std::vector<int>& vertex) {
    std::vector<int> key = vertex;
    std::sort(key.begin(), key.end());
    auto vidx = fam.vertex_index();
    auto it = vidx.find(key);
    if (it == vidx.end()) fail(Err::VertexNotFound, "link_polygon", "vertex is not in the family");
    return build_link(fam, key, it->second);
}

TConfigFamily elevate(const TConfigFamily& fam) {
    if (!fam.layout) fail(Err::EmptyFamily, "elevate", "family has no knot layout");
    const KnotLayout& L = *fam.layout;
    auto vidx = fam.vertex_index();
    TConfigFamily out;
    out.degree = fam.degree + 1;
    out.layout = fam.layout;
    double tol = 1e-14 * L.domain.scale() * L.domain.scale();
    for (const auto& [key, uses] : vidx) {
        LinkPolygon P = build_link(fam, key, uses);
        if (P.degenerate) continue;
        std::vector<int> verts = P.verts;

        auto emit = [&](int a, int b, int c) {
            double w = oriented_area(L.knots[a], L.knots[b], L.knots[c]);
            if (std::abs(w) <= tol) return;
            TConfig cfg;
            cfg.T = {a, b, c};
            cfg.I = key;
            out.configs.push_back(std::move(cfg));
        };

        // A sibling copy of a convex corner that already appears among the
        // vertex knots (or again in the polygon) is cut off as an ear with
        // its two polygon neighbours, which sit on the corner's boundary
        // edges. Left to the plain triangulation below, the doubled corner
        // could instead pair with knots off those edges, and every function
        // derived from such a config would kink along an interior line
        // through the corner. Concave corners kink regardless (their edge
        // lines extend into the domain), so they keep the plain triangulation
        // with bisector-aligned creases and are repaired by merging instead.
        auto pos_of = [&](int v) { return std::make_pair(L.knots[v].x, L.knots[v].y); };
        std::map<std::pair<double, double>, int> count;
        for (int v : key) ++count[pos_of(v)];
        for (int v : verts) ++count[pos_of(v)];
        auto needs_ear = [&](int v) {
            const KnotLayout::Station* st = L.station_for(v);
            if (!st || !st->corner || count[pos_of(v)] < 2) return false;
            for (Vec2 r : L.reflex)
                if (r.x == L.knots[v].x && r.y == L.knots[v].y) return false;
            return true;
        };
        for (bool found = true; found && verts.size() >= 3;) {
            found = false;
            for (size_t i = 0; i < verts.size(); ++i) {
                if (!needs_ear(verts[i])) continue;
                size_t n = verts.size();
                emit(verts[(i + n - 1) % n], verts[i], verts[(i + 1) % n]);
                --count[pos_of(verts[i])];
                verts.erase(verts.begin() + ptrdiff_t(i));
                found = true;
                break;
            }
        }

        if (verts.size() < 3) continue;
        std::vector<Vec2> poly;
        for (int v : verts) poly.push_back(L.knots[v]);
        double area = polygon_area(poly);
        if (std::abs(area) <= tol) continue;
        // Ears around a dented polygon can leave the rest wound clockwise;
        // triangulating the mirror and emitting every triangle reversed keeps
        // the signed pieces summing to the link region.
        bool flip = area < 0.0;
        if (flip) {
            std::reverse(verts.begin(), verts.end());
            std::reverse(poly.begin(), poly.end());
        }
        if (polygon_is_simple(poly)) {
            TriMesh2 m = triangulate_polygon(poly, reflex_chords(L, verts, poly));
            for (const auto& t : m.tris) {
                if (flip)
                    emit(verts[t[2]], verts[t[1]], verts[t[0]]);
                else
                    emit(verts[t[0]], verts[t[1]], verts[t[2]]);
            }
        } else {
            // Signed fan: a valid decomposition of any closed polyline.
            if (flip) {
                std::reverse(verts.begin(), verts.end());
            }
            for (size_t i = 1; i + 1 < verts.size(); ++i) emit(verts[0], verts[i], verts[i + 1]);
        }
    }
    if (out.configs.empty()) fail(Err::EmptyFamily, "elevate", "elevation produced no configs");
    return out;
}

void save_family(std::ostream& os, const TConfigFamily& fam) {
    if (!fam.layout) fail(Err::EmptyFamily, "save_family", "family has no knot layout");
    const KnotLayout& L = *fam.layout;
    char buf[128];
    os << "tcb-family 1\n";
    os << "degree " << fam.degree << " " << L.degree << "\n";
    os << "loops " << L.domain.loops.size() << "\n";
    for (const auto& loop : L.domain.loops) {
        os << "loop " << loop.size() << "\n";
        for (Vec2 p : loop) {
            std::snprintf(buf, sizeof buf, "%a %a\n", p.x, p.y);
            os << buf;
        }
    }
    os << "knots " << L.knots.size() << "\n";
    for (int k = 0; k < int(L.knots.size()); ++k) {
        auto [l, s] = L.station_of[k];
        double arc = l < 0 ? 0.0 : L.stations[l][s].arc;
        std::snprintf(buf, sizeof buf, "%a %a %d %a\n", L.knots[k].x, L.knots[k].y, l, arc);
        os << buf;
    }
    os << "configs " << fam.configs.size() << "\n";
    for (const auto& c : fam.configs) {
        os << "T: " << c.T[0] << " " << c.T[1] << " " << c.T[2] << " | I:";
        for (int i : c.I) os << " " << i;
        os << "\n";
    }
}

TConfigFamily load_family(std::istream& is) {
    auto bad = [](const char* why) -> void { fail(Err::IoError, "load_family", why); };
    std::string word;
    int version = 0;
    if (!(is >> word >> version) || word != "tcb-family" || version != 1) bad("not a tcb-family file");

    auto L = std::make_shared<KnotLayout>();
    int fam_degree = 0;
    if (!(is >> word >> fam_degree >> L->degree) || word != "degree") bad("missing degree line");

    size_t nloops = 0;
    if (!(is >> word >> nloops) || word != "loops") bad("missing loops line");
    for (size_t l = 0; l < nloops; ++l) {
        size_t nv = 0;
        if (!(is >> word >> nv) || word != "loop") bad("missing loop line");
        std::vector<Vec2> loop(nv);
        for (auto& p : loop)
            if (!(is >> p.x >> p.y)) bad("truncated loop vertices");
        L->domain.loops.push_back(std::move(loop));
    }
    L->domain.check("load_family");

    size_t nk = 0;
    if (!(is >> word >> nk) || word != "knots") bad("missing knots line");
    struct Row {
        Vec2 p;
        int loop;
        double arc;
    };
    std::vector<Row> rows(nk);
    for (auto& r : rows)
        if (!(is >> r.p.x >> r.p.y >> r.loop >> r.arc)) bad("truncated knot rows");

    L->knots.resize(nk);
    L->stations.resize(L->domain.loops.size());
    std::map<std::pair<int, std::pair<double, double>>, int> st_at; // (loop,pos) -> station slot
    for (size_t k = 0; k < nk; ++k) {
        L->knots[k] = rows[k].p;
        if (rows[k].loop < 0) continue;
        if (rows[k].loop >= int(L->stations.size())) bad("knot references a missing loop");
        auto keypos = std::make_pair(rows[k].loop, std::make_pair(rows[k].p.x, rows[k].p.y));
        auto it = st_at.find(keypos);
        if (it == st_at.end()) {
            KnotLayout::Station s;
            s.loop = rows[k].loop;
            s.arc = rows[k].arc;
            s.pos = rows[k].p;
            s.corner = false;
            for (Vec2 v : L->domain.loops[s.loop])
                if (v.x == s.pos.x && v.y == s.pos.y) s.corner = true;
            st_at[keypos] = int(L->stations[s.loop].size());
            L->stations[s.loop].push_back(s);
        }
        auto& st = L->stations[rows[k].loop][st_at[keypos]];
        st.copies.push_back(int(k));
    }
    for (auto& sts : L->stations)
        std::sort(sts.begin(), sts.end(),
                  [](const KnotLayout::Station& a, const KnotLayout::Station& b) { return a.arc < b.arc; });
    rebuild_station_of(*L);
    for (size_t l = 0; l < L->domain.loops.size(); ++l) {
        const auto& loop = L->domain.loops[l];
        for (size_t i = 0; i < loop.size(); ++i) {
            Vec2 prev = loop[(i + loop.size() - 1) % loop.size()];
            Vec2 next = loop[(i + 1) % loop.size()];
            if (orient_sign(prev, loop[i], next) < 0) L->reflex.push_back(loop[i]);
        }
    }

    size_t nc = 0;
    if (!(is >> word >> nc) || word != "configs") bad("missing configs line");
    TConfigFamily F;
    F.degree = fam_degree;
    F.layout = L;
    F.configs.resize(nc);
    for (auto& c : F.configs) {
        std::string t_tag, bar, i_tag;
        if (!(is >> t_tag >> c.T[0] >> c.T[1] >> c.T[2] >> bar >> i_tag) || t_tag != "T:" ||
            bar != "|" || i_tag != "I:")
            bad("malformed config line");
        c.I.resize(fam_degree);
        for (auto& i : c.I)
            if (!(is >> i)) bad("truncated config I-list");
        for (int v : c.T)
            if (v < 0 || v >= int(nk)) bad("config knot index out of range");
        for (int v : c.I)
            if (v < 0 || v >= int(nk)) bad("config knot index out of range");
    }
    return F;
}

} // namespace tcb
