#include "tcb/polygon.hpp"
#include "tcb/errors.hpp"

#include <algorithm>
#include <limits>

namespace tcb {

double polygon_area(const std::vector<Vec2>& poly) {
    double twice = 0.0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) twice += poly[i].cross(poly[(i + 1) % n]);
    return 0.5 * twice;
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
    double twice = 0.0;
    Vec2 acc{0, 0};
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 p = poly[i], q = poly[(i + 1) % n];
        double c = p.cross(q);
        twice += c;
        acc += (p + q) * c;
    }
    if (twice == 0.0) {
        // Degenerate: fall back to vertex average.
        Vec2 m{0, 0};
        for (Vec2 p : poly) m += p;
        return m / double(n);
    }
    return acc / (3.0 * twice);
}

bool polygon_is_simple(const std::vector<Vec2>& poly) {
    size_t n = poly.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = poly[i], b = poly[(i + 1) % n];
        if (a == b) return false;
        for (size_t j = i + 1; j < n; ++j) {
            Vec2 c = poly[j], d = poly[(j + 1) % n];
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_properly_cross(a, b, c, d)) return false;
            // Overlapping collinear contacts also break simplicity; an
            // endpoint lying strictly inside the other edge is enough to
            // reject for our purposes.
            if (orient_sign(c, d, a) == 0 && (a - c).dot(a - d) < 0) return false;
            if (orient_sign(c, d, b) == 0 && (b - c).dot(b - d) < 0) return false;
            if (orient_sign(a, b, c) == 0 && (c - a).dot(c - b) < 0) return false;
            if (orient_sign(a, b, d) == 0 && (d - a).dot(d - b) < 0) return false;
        }
    }
    return true;
}

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
    bool in = false;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        Vec2 a = poly[j], b = poly[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            double xc = b.x + (p.y - b.y) / (a.y - b.y) * (a.x - b.x);
            if (p.x < xc) in = !in;
        }
    }
    return in;
}

double PolygonDomain::area() const {
    double a = 0.0;
    for (const auto& loop : loops) a += polygon_area(loop);
    return a;
}

double PolygonDomain::scale() const {
    std::vector<Vec2> all;
    for (const auto& loop : loops) all.insert(all.end(), loop.begin(), loop.end());
    return bbox_scale(all);
}

bool PolygonDomain::contains(Vec2 p, double boundary_tol) const {
    if (boundary_tol > 0.0) {
        double d = signed_distance(p);
        return d <= boundary_tol;
    }
    if (loops.empty()) return false;
    if (!point_in_polygon(loops[0], p)) return false;
    for (size_t i = 1; i < loops.size(); ++i)
        if (point_in_polygon(loops[i], p)) return false;
    return true;
}

double PolygonDomain::signed_distance(Vec2 p) const {
    double best = std::numeric_limits<double>::max();
    for (const auto& loop : loops) {
        size_t n = loop.size();
        for (size_t i = 0; i < n; ++i) {
            Vec2 q = closest_on_segment(loop[i], loop[(i + 1) % n], p);
            best = std::min(best, (p - q).norm());
        }
    }
    return contains(p) ? -best : best;
}

Vec2 PolygonDomain::project_to_boundary(Vec2 p) const {
    double best = std::numeric_limits<double>::max();
    Vec2 proj = p;
    for (const auto& loop : loops) {
        size_t n = loop.size();
        for (size_t i = 0; i < n; ++i) {
            Vec2 q = closest_on_segment(loop[i], loop[(i + 1) % n], p);
            double d = (p - q).norm();
            if (d < best) { best = d; proj = q; }
        }
    }
    return proj;
}

void PolygonDomain::check(const char* stage) const {
    if (loops.empty() || loops[0].size() < 3)
        fail(Err::EmptyDomain, stage, "domain has no outer loop");
    if (polygon_area(loops[0]) <= 0.0)
        fail(Err::EmptyDomain, stage, "outer loop must be CCW with positive area");
    for (size_t i = 1; i < loops.size(); ++i) {
        if (loops[i].size() < 3 || polygon_area(loops[i]) >= 0.0)
            fail(Err::EmptyDomain, stage, "hole loops must be CW with negative area");
    }
    if (area() <= 0.0) fail(Err::EmptyDomain, stage, "domain area is not positive");
}

PolygonDomain PolygonDomain::rectangle(Vec2 lo, Vec2 hi) {
    PolygonDomain d;
    d.loops.push_back({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
    return d;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(),
              [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec2> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && orient_sign(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, lo = k + 1; i-- > 0;) { // upper chain
        while (k >= lo && orient_sign(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1); // collinear input leaves the 2-point hull
    return h;
}

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, Vec2 a, Vec2 n) {
    std::vector<Vec2> out;
    size_t m = poly.size();
    if (m == 0) return out;
    out.reserve(m + 2);
    for (size_t i = 0; i < m; ++i) {
        Vec2 p = poly[i], q = poly[(i + 1) % m];
        double dp = (p - a).dot(n), dq = (q - a).dot(n);
        if (dp <= 0.0) {
            out.push_back(p);
            if (dq > 0.0) out.push_back(p + (q - p) * (dp / (dp - dq)));
        } else if (dq <= 0.0) {
            out.push_back(p + (q - p) * (dp / (dp - dq)));
        }
    }
    return out;
}

} // namespace tcb
