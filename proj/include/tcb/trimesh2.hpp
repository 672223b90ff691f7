#pragma once

#include "tcb/geometry.hpp"
#include "tcb/polygon.hpp"

#include <array>
#include <optional>
#include <vector>

namespace tcb {

// Triangle mesh over a shared point set. Triangles are CCW; adj[t][e] is the
// neighbor across edge e = (tri[t][e], tri[t][(e+1)%3]) or -1 on the hull.
struct TriMesh2 {
    std::vector<Vec2> points;
    std::vector<std::array<int, 3>> tris;
    std::vector<std::array<int, 3>> adj;
    std::vector<std::array<bool, 3>> constrained;

    double total_area() const;
    // Triangle whose half-open hull contains p, or -1.
    int locate(Vec2 p, HalfOpenDir dir = {}) const;
    // Any triangle whose closed hull contains p, or -1.
    int locate_closed(Vec2 p) const;
};

// Delaunay triangulation of the point set (convex hull covered).
// Duplicate points raise DuplicatePoints.
TriMesh2 delaunay(const std::vector<Vec2>& points);

// Constrained Delaunay triangulation: every segment (pair of point indices)
// appears as an edge, locally Delaunay elsewhere. Constraints that properly
// cross each other raise CrossingConstraints; points lying in the interior
// of a constraint simply split it.
TriMesh2 constrained_delaunay(const std::vector<Vec2>& points,
                              const std::vector<std::array<int, 2>>& segments);

// CDT of a polygonal domain (loop vertices become the first points, in loop
// order) plus optional interior points and extra constraints; triangles
// outside the domain or inside holes are dropped.
struct DomainTriangulation {
    TriMesh2 mesh;
    // points[i] for i < boundary_count lie on the domain boundary; loop_of[i]
    // and pos_in_loop[i] identify their place on the input loops.
    int boundary_count = 0;
    std::vector<int> loop_of;
    std::vector<int> pos_in_loop;
};

DomainTriangulation triangulate_domain(const PolygonDomain& domain,
                                       const std::vector<Vec2>& interior_points,
                                       const std::vector<std::array<int, 2>>& extra_segments = {},
                                       const std::vector<Vec2>& extra_points = {});

// Triangulation of one simple polygon (CCW) with optional forced chords,
// given as index pairs into the polygon. Only interior triangles are kept.
TriMesh2 triangulate_polygon(const std::vector<Vec2>& polygon,
                             const std::vector<std::array<int, 2>>& forced_chords = {});

// Segment soup split so that segments meet only at shared endpoints: cut at
// pairwise proper crossings and at points lying in segment interiors.
// Computed crossing points snap to existing points within 1e-9*bbox.
struct SegmentSoup {
    std::vector<Vec2> points;
    std::vector<std::array<int, 2>> segments;
};
SegmentSoup split_segments_at_intersections(const std::vector<Vec2>& points,
                                            const std::vector<std::array<int, 2>>& segments);

} // namespace tcb
