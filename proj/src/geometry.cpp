#include "tcb/geometry.hpp"

#include <algorithm>
#include <gmpxx.h>

namespace tcb {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

int orient_exact(Vec2 a, Vec2 b, Vec2 c) {
    mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    mpq_class det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return sgn(det);
}

int incircle_exact(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    mpq_class adx = mpq_class(a.x) - mpq_class(d.x);
    mpq_class ady = mpq_class(a.y) - mpq_class(d.y);
    mpq_class bdx = mpq_class(b.x) - mpq_class(d.x);
    mpq_class bdy = mpq_class(b.y) - mpq_class(d.y);
    mpq_class cdx = mpq_class(c.x) - mpq_class(d.x);
    mpq_class cdy = mpq_class(c.y) - mpq_class(d.y);
    mpq_class alift = adx * adx + ady * ady;
    mpq_class blift = bdx * bdx + bdy * bdy;
    mpq_class clift = cdx * cdx + cdy * cdy;
    mpq_class det = alift * (bdx * cdy - bdy * cdx)
                  + blift * (cdx * ady - cdy * adx)
                  + clift * (adx * bdy - ady * bdx);
    return sgn(det);
}

} // namespace

int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
    double detleft = (b.x - a.x) * (c.y - a.y);
    double detright = (b.y - a.y) * (c.x - a.x);
    double det = detleft - detright;
    double detsum = std::abs(detleft) + std::abs(detright);
    // 4 ulps of slack on the summed magnitudes covers the worst cancellation.
    if (std::abs(det) > 8.9e-16 * detsum) return sign_of(det);
    if (detsum == 0.0) return 0; // all differences vanished exactly
    return orient_exact(a, b, c);
}

int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    double adx = a.x - d.x, ady = a.y - d.y;
    double bdx = b.x - d.x, bdy = b.y - d.y;
    double cdx = c.x - d.x, cdy = c.y - d.y;
    double alift = adx * adx + ady * ady;
    double blift = bdx * bdx + bdy * bdy;
    double clift = cdx * cdx + cdy * cdy;
    double det = alift * (bdx * cdy - bdy * cdx)
               + blift * (cdx * ady - cdy * adx)
               + clift * (adx * bdy - ady * bdx);
    double perm = alift * (std::abs(bdx * cdy) + std::abs(bdy * cdx))
                + blift * (std::abs(cdx * ady) + std::abs(cdy * adx))
                + clift * (std::abs(adx * bdy) + std::abs(ady * bdx));
    if (std::abs(det) > 1.2e-14 * perm) return sign_of(det);
    if (perm == 0.0) return 0;
    return incircle_exact(a, b, c, d);
}

std::array<double, 3> barycentric(Vec2 a, Vec2 b, Vec2 c, Vec2 t) {
    double area2 = cross2(a, b, c);
    return {cross2(t, b, c) / area2, cross2(a, t, c) / area2, cross2(a, b, t) / area2};
}

std::array<double, 3> direction_coords(Vec2 a, Vec2 b, Vec2 c, Vec2 v) {
    double area2 = cross2(a, b, c);
    // Solve mu_b (b-a) + mu_c (c-a) = v, mu_a = -(mu_b + mu_c).
    double mu_b = v.cross(c - a) / area2;
    double mu_c = (b - a).cross(v) / area2;
    return {-(mu_b + mu_c), mu_b, mu_c};
}

bool half_open_contains(Vec2 a, Vec2 b, Vec2 c, Vec2 t, HalfOpenDir dir) {
    int orient = orient_sign(a, b, c);
    if (orient == 0) return false; // degenerate: empty half-open hull
    const Vec2 v[3] = {a, b, c};
    for (int i = 0; i < 3; ++i) {
        Vec2 p = v[i], q = v[(i + 1) % 3];
        int s = orient_sign(p, q, t) * orient;
        if (s < 0) return false;
        if (s == 0) {
            // On the edge line: step along d1 (then d2) must enter the
            // positive side. The inward normal of edge (p,q) is perp(q-p)
            // for CCW triangles, its negation for CW.
            Vec2 n = (q - p).perp() * double(orient);
            double e1 = n.dot(dir.d1);
            if (e1 > 0) continue;
            if (e1 < 0) return false;
            double e2 = n.dot(dir.d2);
            if (e2 > 0) continue;
            return false;
        }
    }
    return true;
}

Vec2 closest_on_segment(Vec2 a, Vec2 b, Vec2 p) {
    Vec2 ab = b - a;
    double len2 = ab.norm2();
    if (len2 == 0.0) return a;
    double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return a + ab * s;
}

bool segments_properly_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    int o1 = orient_sign(a, b, c);
    int o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a);
    int o4 = orient_sign(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segment_intersection(Vec2 a, Vec2 b, Vec2 c, Vec2 d, Vec2& out) {
    Vec2 r = b - a, s = d - c;
    double denom = r.cross(s);
    if (denom == 0.0) return false;
    double u = (c - a).cross(s) / denom;
    double v = (c - a).cross(r) / denom;
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return false;
    out = a + r * u;
    return true;
}

double bbox_scale(const std::vector<Vec2>& pts) {
    if (pts.empty()) return 1.0;
    double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (Vec2 p : pts) {
        xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
    }
    return std::max(xmax - xmin, ymax - ymin);
}

} // namespace tcb
