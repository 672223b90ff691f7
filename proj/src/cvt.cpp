#include "tcb/cvt.hpp"
#include "tcb/errors.hpp"
#include "tcb/trimesh2.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace tcb {

namespace {

// Area, first moment and second moment (about s) of a convex polygon.
struct Moments {
    double area = 0.0;
    Vec2 first{0, 0};
    double second = 0.0;
};

Moments polygon_moments(const std::vector<Vec2>& poly, Vec2 s) {
    Moments m;
    if (poly.size() < 3) return m;
    Vec2 v0 = poly[0] - s;
    for (size_t i = 1; i + 1 < poly.size(); ++i) {
        Vec2 v1 = poly[i] - s, v2 = poly[i + 1] - s;
        double a = 0.5 * (v1 - v0).cross(v2 - v0);
        m.area += a;
        m.first += (v0 + v1 + v2) * (a / 3.0);
        m.second += a / 6.0 *
            (v0.dot(v0) + v1.dot(v1) + v2.dot(v2) + v0.dot(v1) + v0.dot(v2) + v1.dot(v2));
    }
    m.first += s * m.area;
    return m;
}

} // namespace

LloydResult lloyd_cvt(const PolygonDomain& domain, std::vector<Vec2> sites,
                      int max_iters, double rel_tol) {
    domain.check("cvt");
    LloydResult res;
    res.sites = std::move(sites);
    int n = int(res.sites.size());
    if (n == 0) return res;

    DomainTriangulation dt = triangulate_domain(domain, {});
    std::vector<std::vector<Vec2>> cover;
    for (const auto& t : dt.mesh.tris)
        cover.push_back({dt.mesh.points[t[0]], dt.mesh.points[t[1]], dt.mesh.points[t[2]]});

    std::vector<int> order(n);
    double prev_energy = -1.0;
    for (int it = 0; it < max_iters; ++it) {
        double energy = 0.0;
        std::vector<Vec2> next(res.sites);
        for (int i = 0; i < n; ++i) {
            Vec2 s = res.sites[i];
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                double da = (res.sites[a] - s).norm2(), db = (res.sites[b] - s).norm2();
                return da != db ? da < db : a < b;
            });
            double area = 0.0, sec = 0.0;
            Vec2 first{0, 0};
            for (const auto& tri : cover) {
                std::vector<Vec2> cell = tri;
                for (int oi : order) {
                    if (oi == i) continue;
                    Vec2 o = res.sites[oi];
                    double d2 = (o - s).norm2();
                    if (d2 == 0.0) continue;
                    // Security radius: no farther site can cut the cell.
                    double reach = 0.0;
                    for (Vec2 v : cell) reach = std::max(reach, (v - s).norm2());
                    if (d2 > 4.0 * reach) break;
                    cell = clip_halfplane(cell, (s + o) * 0.5, o - s);
                    if (cell.size() < 3) break;
                }
                if (cell.size() < 3) continue;
                Moments m = polygon_moments(cell, s);
                area += m.area;
                first += m.first;
                sec += m.second;
            }
            energy += sec;
            if (area > 0.0) next[i] = first / area;
        }
        res.sites = std::move(next);
        res.energy.push_back(energy);
        res.iterations = it + 1;
        if (prev_energy >= 0.0 && std::abs(prev_energy - energy) <= rel_tol * std::abs(prev_energy))
            break;
        prev_energy = energy;
    }
    return res;
}

std::vector<Vec2> sample_interior(const PolygonDomain& domain, int n, std::uint64_t seed) {
    domain.check("cvt");
    std::vector<Vec2> all;
    for (const auto& loop : domain.loops) all.insert(all.end(), loop.begin(), loop.end());
    double xmin = all[0].x, xmax = all[0].x, ymin = all[0].y, ymax = all[0].y;
    for (Vec2 p : all) {
        xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
    }
    double margin = 1e-3 * std::max(xmax - xmin, ymax - ymin);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax);
    std::vector<Vec2> out;
    out.reserve(n);
    int guard = 0;
    while (int(out.size()) < n) {
        if (++guard > 100000 * (n + 1))
            fail(Err::EmptyDomain, "cvt", "rejection sampling failed; domain too thin?");
        Vec2 p{ux(rng), uy(rng)};
        if (domain.signed_distance(p) < -margin) out.push_back(p);
    }
    return out;
}

int jitter_collinear(std::vector<Vec2>& pts, double bbox, std::uint64_t seed) {
    int n = int(pts.size());
    if (n < 3) return 0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    // Near-neighbor triples only: collinearity between distant knots does not
    // reduce spline continuity because no knot set contains all three.
    const int K = 12;
    int moved = 0;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) {
        std::iota(idx.begin(), idx.end(), 0);
        std::partial_sort(idx.begin(), idx.begin() + std::min(n, K + 1), idx.end(),
                          [&](int a, int b) {
                              double da = (pts[a] - pts[i]).norm2(), db = (pts[b] - pts[i]).norm2();
                              return da != db ? da < db : a < b;
                          });
        int kk = std::min(n, K + 1);
        for (int a = 0; a < kk; ++a) {
            for (int b = a + 1; b < kk; ++b) {
                int ia = idx[a], ib = idx[b];
                if (ia == i || ib == i) continue;
                if (orient_sign(pts[i], pts[ia], pts[ib]) == 0) {
                    double th = angle(rng);
                    pts[i] += Vec2{std::cos(th), std::sin(th)} * (1e-9 * bbox);
                    ++moved;
                    goto next_i;
                }
            }
        }
    next_i:;
    }
    return moved;
}

} // namespace tcb
