#pragma once

#include "tcb/geometry.hpp"

#include <vector>

namespace tcb {

// Planar domain bounded by polygonal loops. Loop 0 is the outer boundary
// (CCW); any further loops are holes (CW), so the interior always lies to
// the left of each directed loop edge.
struct PolygonDomain {
    std::vector<std::vector<Vec2>> loops;

    double area() const;
    double scale() const; // bbox extent, for relative tolerances

    bool contains(Vec2 p, double boundary_tol = 0.0) const;
    double signed_distance(Vec2 p) const; // negative inside
    Vec2 project_to_boundary(Vec2 p) const;

    // Validates orientation/simplicity enough for downstream use.
    void check(const char* stage) const;

    static PolygonDomain rectangle(Vec2 lo, Vec2 hi);
};

// Convex polygon clipped against the half-plane { p : (p-a).dot(n) <= 0 }.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, Vec2 a, Vec2 n);

double polygon_area(const std::vector<Vec2>& poly);
// CCW convex hull without duplicate or collinear vertices; degenerate input
// collapses to the 1- or 2-point hull.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);
Vec2 polygon_centroid(const std::vector<Vec2>& poly);
bool polygon_is_simple(const std::vector<Vec2>& poly);
bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p); // crossing number; boundary unspecified

} // namespace tcb
