#include "tcb/tcb_basis.hpp"
#include "tcb/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace tcb {

namespace {

// Converts the unit-integral simplex splines into the partition-of-unity
// combination: B_I = sum_T Area(T)/C * M(.|T cup I).
double degree_constant(int k) { return 0.5 * double(k + 1) * double(k + 2); }

std::vector<double> position_key(const std::vector<Vec2>& pos) {
    std::vector<double> key;
    key.reserve(2 * pos.size());
    for (Vec2 p : pos) {
        key.push_back(p.x);
        key.push_back(p.y);
    }
    return key;
}

} // namespace

BasisSet build_basis(const TConfigFamily& fam) {
    if (fam.configs.empty()) fail(Err::EmptyFamily, "basis", "family has no configs");
    BasisSet bs;
    bs.degree = fam.degree;
    bs.layout = fam.layout;
    const auto& kn = fam.knots();

    std::map<std::vector<int>, std::vector<int>> groups; // I -> config indices
    for (size_t c = 0; c < fam.configs.size(); ++c) groups[fam.configs[c].I].push_back(int(c));

    double area_tol = 1e-14 * fam.layout->domain.scale() * fam.layout->domain.scale();
    std::map<std::vector<double>, int> spline_of; // sorted position multiset -> index
    for (const auto& [I, members] : groups) {
        BasisFunction f;
        f.I = I;
        std::vector<Vec2> support;
        for (int ci : members) {
            const TConfig& cfg = fam.configs[size_t(ci)];
            // The traversal orientation carries the sign: clockwise configs
            // are pocket pieces that subtract their spline.
            double w = oriented_area(kn[cfg.T[0]], kn[cfg.T[1]], kn[cfg.T[2]]);
            if (std::abs(w) <= area_tol) continue;
            std::vector<Vec2> pos;
            pos.reserve(I.size() + 3);
            for (int v : cfg.T) pos.push_back(kn[v]);
            for (int v : I) pos.push_back(kn[v]);
            std::sort(pos.begin(), pos.end(),
                      [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
            auto [it, fresh] = spline_of.try_emplace(position_key(pos), int(bs.splines.size()));
            if (fresh) bs.splines.push_back(std::make_shared<SimplexSpline>(pos));
            f.terms.push_back({cfg.T, w, it->second});
            support.insert(support.end(), pos.begin(), pos.end());
        }
        if (f.terms.empty()) continue; // every piece degenerate: nothing to add
        if (!I.empty()) {
            Vec2 g{0.0, 0.0};
            for (int v : I) g += kn[v];
            f.greville = g / double(I.size());
        } else {
            f.greville = polygon_centroid(fam.layout->domain.loops[0]);
        }
        f.hull = convex_hull(std::move(support));
        bs.funcs.push_back(std::move(f));
    }
    return bs;
}

void merge_concave(BasisSet& basis, const std::vector<Vec2>& corners) {
    // Below quadratic the spline space is not C1 to begin with, so there is
    // no smoothness to restore by merging.
    if (basis.degree < 2) return;
    const PolygonDomain& dom = basis.layout->domain;

    for (Vec2 c : corners) {
        // The two boundary directions at the corner, for the collinearity
        // count: a spline whose knot line along a boundary edge reaches the
        // corner with full multiplicity kinks across its extension into the
        // domain wedge.
        Vec2 prev, next;
        bool found = false;
        for (const auto& loop : dom.loops) {
            size_t n = loop.size();
            for (size_t i = 0; i < n && !found; ++i)
                if (loop[i] == c) {
                    prev = loop[(i + n - 1) % n];
                    next = loop[(i + 1) % n];
                    found = true;
                }
            if (found) break;
        }
        if (!found) fail(Err::BadConfig, "merge", "corner is not a domain vertex");

        auto breaks_smoothness = [&](const BasisFunction& f) {
            for (const auto& term : f.terms) {
                const auto& pos = basis.splines[size_t(term.spline)]->knots();
                int copies = 0;
                for (Vec2 q : pos) copies += (q == c);
                if (copies >= 2) return true;
                if (copies == 0) continue;
                for (Vec2 nb : {prev, next}) {
                    int on_line = 0;
                    for (Vec2 q : pos) on_line += (orient_sign(c, nb, q) == 0);
                    if (on_line >= basis.degree + 1) return true;
                }
            }
            return false;
        };

        std::vector<char> in_group(basis.funcs.size(), 0);
        int count = 0;
        for (size_t i = 0; i < basis.funcs.size(); ++i)
            if (breaks_smoothness(basis.funcs[i])) {
                in_group[i] = 1;
                ++count;
            }
        if (count <= 1) continue; // a lone function is already its own sum

        BasisFunction m;
        m.merged = true;
        m.greville = c;
        std::vector<Vec2> support;
        std::set<int> iset;
        std::vector<BasisFunction> next_funcs;
        next_funcs.reserve(basis.funcs.size() - size_t(count) + 1);
        size_t slot = size_t(-1);
        for (size_t i = 0; i < basis.funcs.size(); ++i) {
            if (!in_group[i]) {
                next_funcs.push_back(std::move(basis.funcs[i]));
                continue;
            }
            BasisFunction& f = basis.funcs[i];
            if (slot == size_t(-1)) { // merged function takes the first member's place
                slot = next_funcs.size();
                next_funcs.emplace_back();
            }
            m.terms.insert(m.terms.end(), f.terms.begin(), f.terms.end());
            iset.insert(f.I.begin(), f.I.end());
            support.insert(support.end(), f.hull.begin(), f.hull.end());
        }
        m.I.assign(iset.begin(), iset.end());
        m.hull = convex_hull(std::move(support));
        next_funcs[slot] = std::move(m);
        basis.funcs = std::move(next_funcs);
    }
}

namespace {

TriMesh2 filter_triangles(const TriMesh2& in, const std::vector<char>& keep) {
    TriMesh2 out;
    out.points = in.points;
    std::vector<int> newid(in.tris.size(), -1);
    for (size_t i = 0; i < in.tris.size(); ++i)
        if (keep[i]) {
            newid[i] = int(out.tris.size());
            out.tris.push_back(in.tris[i]);
            out.constrained.push_back(in.constrained[i]);
        }
    out.adj.reserve(out.tris.size());
    for (size_t i = 0; i < in.tris.size(); ++i) {
        if (!keep[i]) continue;
        std::array<int, 3> a;
        for (int e = 0; e < 3; ++e) {
            int nb = in.adj[i][e];
            a[e] = nb >= 0 ? newid[size_t(nb)] : -1;
        }
        out.adj.push_back(a);
    }
    return out;
}

struct BBox {
    double xlo = 0.0, ylo = 0.0, xhi = 0.0, yhi = 0.0;
    static BBox of(const std::vector<Vec2>& pts) {
        BBox b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
        for (Vec2 p : pts) {
            b.xlo = std::min(b.xlo, p.x);
            b.ylo = std::min(b.ylo, p.y);
            b.xhi = std::max(b.xhi, p.x);
            b.yhi = std::max(b.yhi, p.y);
        }
        return b;
    }
    bool overlaps(const BBox& o) const {
        return xlo <= o.xhi && o.xlo <= xhi && ylo <= o.yhi && o.ylo <= yhi;
    }
};

// Closed intersection test for convex polygons (separating-axis over the
// edges of both, exact orientation predicate). Touching counts as overlap.
bool convex_overlap(const std::vector<Vec2>& A, const std::vector<Vec2>& B) {
    auto separates = [](const std::vector<Vec2>& P, const std::vector<Vec2>& Q) {
        size_t n = P.size();
        for (size_t i = 0; i < n; ++i) {
            Vec2 a = P[i], b = P[(i + 1) % n];
            if (a == b) continue;
            bool all_out = true;
            for (Vec2 q : Q)
                if (orient_sign(a, b, q) >= 0) {
                    all_out = false;
                    break;
                }
            if (all_out) return true;
        }
        return false;
    };
    return !separates(A, B) && !separates(B, A);
}

} // namespace

CellPartition cell_partition(const BasisSet& basis, const PolygonDomain& domain) {
    // Segment soup: within one simplex spline every knot pair spans a
    // potential break line, and the domain boundary clips the cells; the
    // constrained triangulation of the split soup then yields cells on which
    // every basis function is a single polynomial.
    std::map<std::pair<double, double>, int> pid;
    std::vector<Vec2> pts;
    auto idx_of = [&](Vec2 p) {
        auto [it, fresh] = pid.try_emplace({p.x, p.y}, int(pts.size()));
        if (fresh) pts.push_back(p);
        return it->second;
    };
    std::set<std::array<int, 2>> segset;
    auto add_seg = [&](int a, int b) {
        if (a != b) segset.insert({std::min(a, b), std::max(a, b)});
    };
    for (const auto& sp : basis.splines) {
        const auto& pos = sp->knots();
        std::vector<int> ids;
        ids.reserve(pos.size());
        for (Vec2 p : pos) ids.push_back(idx_of(p));
        for (size_t i = 0; i < ids.size(); ++i)
            for (size_t j = i + 1; j < ids.size(); ++j) add_seg(ids[i], ids[j]);
    }
    for (const auto& loop : domain.loops) {
        size_t n = loop.size();
        for (size_t i = 0; i < n; ++i) add_seg(idx_of(loop[i]), idx_of(loop[(i + 1) % n]));
    }

    SegmentSoup soup = split_segments_at_intersections(
        pts, std::vector<std::array<int, 2>>(segset.begin(), segset.end()));
    TriMesh2 cdt = constrained_delaunay(soup.points, soup.segments);

    std::vector<char> keep(cdt.tris.size(), 0);
    for (size_t i = 0; i < cdt.tris.size(); ++i) {
        const auto& tr = cdt.tris[i];
        Vec2 cen = (cdt.points[tr[0]] + cdt.points[tr[1]] + cdt.points[tr[2]]) / 3.0;
        keep[i] = domain.contains(cen) ? 1 : 0;
    }

    CellPartition cells;
    cells.mesh = filter_triangles(cdt, keep);
    if (cells.mesh.tris.empty()) fail(Err::EmptyDomain, "cells", "no cells inside the domain");

    size_t nc = cells.mesh.tris.size();
    cells.active.resize(nc);
    cells.plan.resize(nc);

    std::vector<BBox> fbox;
    fbox.reserve(basis.funcs.size());
    for (const auto& f : basis.funcs) fbox.push_back(BBox::of(f.hull));

    // Activity by closed support-hull overlap. The snapped soup lets cell
    // edges deviate from the true support lines by slivers, so activity must
    // over-include rather than probe: an extra spline only evaluates to zero,
    // while a missing one would truncate its one-sided value on the sliver.
    std::vector<std::vector<Vec2>> sp_hull(basis.splines.size());
    for (size_t s = 0; s < basis.splines.size(); ++s)
        sp_hull[s] = convex_hull(basis.splines[s]->knots());
    std::vector<int> sp_state(basis.splines.size(), 0);
    std::vector<int> sp_stamp(basis.splines.size(), -1);

    for (size_t c = 0; c < nc; ++c) {
        const auto& tr = cells.mesh.tris[c];
        Vec2 a = cells.mesh.points[tr[0]], b = cells.mesh.points[tr[1]],
             d = cells.mesh.points[tr[2]];
        const std::vector<Vec2> cellpoly = {a, b, d};
        BBox cbox = BBox::of(cellpoly);

        auto spline_active = [&](int si) {
            if (sp_stamp[size_t(si)] == int(c)) return sp_state[size_t(si)] != 0;
            int on = convex_overlap(sp_hull[size_t(si)], cellpoly) ? 1 : 0;
            sp_stamp[size_t(si)] = int(c);
            sp_state[size_t(si)] = on;
            return on != 0;
        };

        std::map<int, std::vector<std::pair<int, double>>> fan; // spline -> (func, coeff)
        const double C = degree_constant(basis.degree);
        for (size_t fi = 0; fi < basis.funcs.size(); ++fi) {
            if (!fbox[fi].overlaps(cbox)) continue;
            const BasisFunction& f = basis.funcs[fi];
            bool on = false;
            for (const auto& term : f.terms)
                if (spline_active(term.spline)) {
                    on = true;
                    break;
                }
            if (!on) continue;
            cells.active[c].push_back(int(fi));
            for (const auto& term : f.terms)
                if (spline_active(term.spline))
                    fan[term.spline].push_back({int(fi), term.weight / C});
        }
        cells.plan[c].reserve(fan.size());
        for (auto& [si, out] : fan) cells.plan[c].push_back({si, std::move(out)});
    }
    return cells;
}

std::vector<std::pair<int, Jet2>> eval_active(const CellPartition& cells, const BasisSet& basis,
                                              Vec2 t, int* hint) {
    const TriMesh2& mesh = cells.mesh;
    int c = -1;
    if (hint && *hint >= 0 && *hint < int(mesh.tris.size())) {
        const auto& tr = mesh.tris[size_t(*hint)];
        if (orient_sign(mesh.points[tr[0]], mesh.points[tr[1]], t) >= 0 &&
            orient_sign(mesh.points[tr[1]], mesh.points[tr[2]], t) >= 0 &&
            orient_sign(mesh.points[tr[2]], mesh.points[tr[0]], t) >= 0)
            c = *hint;
    }
    if (c < 0) c = mesh.locate_closed(t);
    if (c < 0) fail(Err::OutOfDomain, "eval", "query point outside every cell");
    if (hint) *hint = c;

    // Evaluate the one-sided limit from inside this cell: membership tests in
    // the spline recursion resolve toward the cell interior, so points on
    // knot lines and on the domain boundary take their cell's polynomial.
    const auto& tr = mesh.tris[size_t(c)];
    Vec2 cen = (mesh.points[tr[0]] + mesh.points[tr[1]] + mesh.points[tr[2]]) / 3.0;
    HalfOpenDir dir;
    Vec2 inward = cen - t;
    if (inward.norm2() > 0.0) {
        dir.d1 = inward;
        dir.d2 = inward.perp();
    }

    const auto& act = cells.active[size_t(c)];
    std::vector<std::pair<int, Jet2>> out;
    out.reserve(act.size());
    for (int fi : act) out.push_back({fi, Jet2{}});
    for (const auto& use : cells.plan[size_t(c)]) {
        Jet2 jet = basis.splines[size_t(use.spline)]->eval_jet(t, dir);
        for (auto [fi, coef] : use.out) {
            auto it = std::lower_bound(act.begin(), act.end(), fi);
            Jet2& dst = out[size_t(it - act.begin())].second;
            dst.value += coef * jet.value;
            dst.gradient += coef * jet.gradient;
            dst.hxx += coef * jet.hxx;
            dst.hxy += coef * jet.hxy;
            dst.hyy += coef * jet.hyy;
        }
    }
    return out;
}

SurfaceJet TcbSurface::eval(Vec2 t, int* hint) const {
    SurfaceJet j;
    for (const auto& [fi, jet] : eval_active(cells, basis, t, hint)) {
        const Vec3& p = control[size_t(fi)];
        j.S += jet.value * p;
        j.S1 += jet.gradient.x * p;
        j.S2 += jet.gradient.y * p;
        j.S11 += jet.hxx * p;
        j.S12 += jet.hxy * p;
        j.S22 += jet.hyy * p;
    }
    return j;
}

Vec3 TcbSurface::position(Vec2 t, int* hint) const {
    Vec3 s;
    for (const auto& [fi, jet] : eval_active(cells, basis, t, hint))
        s += jet.value * control[size_t(fi)];
    return s;
}

TcbSurface make_surface(TConfigFamily fam, std::vector<Vec3> control, bool merge_corners) {
    TcbSurface s;
    s.family = std::move(fam);
    s.basis = build_basis(s.family);
    if (merge_corners) merge_concave(s.basis, s.basis.layout->reflex);
    if (control.size() != s.basis.funcs.size())
        fail(Err::BadConfig, "surface",
             "control count " + std::to_string(control.size()) + " != basis size " +
                 std::to_string(s.basis.funcs.size()));
    s.control = std::move(control);
    s.cells = cell_partition(s.basis, s.basis.layout->domain);
    return s;
}

namespace {

std::string hex_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hex(const std::string& s) {
    const char* p = s.c_str();
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p || *end != '\0') fail(Err::IoError, "surface-io", "bad float literal: " + s);
    return v;
}

} // namespace

void save_surface(std::ostream& os, const TcbSurface& s) {
    nlohmann::json j;
    j["format"] = "tcb-surface";
    j["version"] = 1;
    bool merged = false;
    for (const auto& f : s.basis.funcs) merged = merged || f.merged;
    j["merged"] = merged;
    std::ostringstream fam;
    save_family(fam, s.family);
    j["family"] = fam.str();
    nlohmann::json ctrl = nlohmann::json::array();
    for (const Vec3& p : s.control)
        ctrl.push_back({hex_double(p.x), hex_double(p.y), hex_double(p.z)});
    j["control"] = std::move(ctrl);
    os << j.dump(1) << "\n";
}

TcbSurface load_surface(std::istream& is) {
    std::string famtext;
    std::vector<Vec3> control;
    bool merged = true;
    try {
        nlohmann::json j;
        is >> j;
        if (j.value("format", "") != std::string("tcb-surface"))
            fail(Err::IoError, "surface-io", "not a surface snapshot");
        merged = j.value("merged", true);
        famtext = j.at("family").get<std::string>();
        for (const auto& row : j.at("control"))
            control.push_back({parse_hex(row.at(0).get<std::string>()),
                               parse_hex(row.at(1).get<std::string>()),
                               parse_hex(row.at(2).get<std::string>())});
    } catch (const nlohmann::json::exception& e) {
        fail(Err::IoError, "surface-io", e.what());
    }
    std::istringstream fs(famtext);
    TConfigFamily fam = load_family(fs);
    return make_surface(std::move(fam), std::move(control), merged);
}

} // namespace tcb
