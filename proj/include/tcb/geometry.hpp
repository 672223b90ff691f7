#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace tcb {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    bool operator==(Vec2 o) const { return x == o.x && y == o.y; }
    bool operator!=(Vec2 o) const { return !(*this == o); }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    Vec2 perp() const { return {-y, x}; } // rotate +90 degrees
    Vec2 normalized() const { double n = norm(); return n > 0.0 ? *this / n : Vec2{0.0, 0.0}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(Vec3 o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(Vec3 o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(Vec3 o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const { double n = norm(); return n > 0.0 ? *this / n : Vec3{}; }
};

inline Vec3 operator*(double s, Vec3 v) { return v * s; }

// Twice the signed area of (a,b,c); positive when CCW.
inline double cross2(Vec2 a, Vec2 b, Vec2 c) {
    return (b - a).cross(c - a);
}

inline double oriented_area(Vec2 a, Vec2 b, Vec2 c) {
    return 0.5 * cross2(a, b, c);
}

// Sign of the orientation determinant. The double evaluation is accepted when
// it clears a forward error bound; otherwise the determinant is recomputed in
// rational arithmetic (exact: doubles convert to rationals losslessly).
int orient_sign(Vec2 a, Vec2 b, Vec2 c);

// Sign of the incircle determinant for CCW (a,b,c): positive when d lies
// strictly inside the circumcircle. Same filter + rational fallback scheme.
int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// Barycentric coordinates of t w.r.t. (a,b,c). Requires nonzero area.
std::array<double, 3> barycentric(Vec2 a, Vec2 b, Vec2 c, Vec2 t);

// Direction coordinates: mu with sum(mu) = 0 and sum(mu_i * p_i) = v.
std::array<double, 3> direction_coords(Vec2 a, Vec2 b, Vec2 c, Vec2 v);

// Membership in the half-open convex hull of a triangle (orientation may be
// CW or CCW). A point on the triangle boundary counts as inside exactly when
// an infinitesimal step along d1 (then d2 to break ties) enters the interior,
// so the triangles of any conforming mesh partition the plane region they
// cover: every point belongs to exactly one of them. The default step
// direction is +y, tie-broken by +x.
struct HalfOpenDir {
    Vec2 d1{0.0, 1.0};
    Vec2 d2{1.0, 0.0};
};

bool half_open_contains(Vec2 a, Vec2 b, Vec2 c, Vec2 t, HalfOpenDir dir = {});

// Closest point on segment [a,b] to p.
Vec2 closest_on_segment(Vec2 a, Vec2 b, Vec2 p);

// Proper + improper segment intersection test helpers used by the
// triangulator and the cell partition.
bool segments_properly_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d);
bool segment_intersection(Vec2 a, Vec2 b, Vec2 c, Vec2 d, Vec2& out);

// Diameter-squared style scale of a point set, used for relative tolerances.
double bbox_scale(const std::vector<Vec2>& pts);

} // namespace tcb
