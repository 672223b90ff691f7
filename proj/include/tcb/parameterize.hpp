#pragma once

#include "tcb/polygon.hpp"
#include "tcb/trimesh3.hpp"

#include <array>
#include <vector>

namespace tcb {

// Planar image of a TriMesh3: same connectivity, 2D vertex positions.
struct FlatMesh {
    std::vector<Vec2> points;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::vector<int>> loops; // copied from the source mesh

    int flipped_count() const; // triangles with non-positive area
    // Total symmetric-Dirichlet energy against the 3D mesh's intrinsic
    // triangle shapes; the isometric minimum is 4 * total area.
    double sym_dirichlet(const TriMesh3& ref) const;
};

// Free-boundary flattening: a Tutte embedding (holes filled by virtual fans,
// outer loop on a circle) followed by symmetric-Dirichlet descent with free
// boundary. The line search caps every step short of the first triangle
// inversion, so the flip-free invariant of the start is preserved.
FlatMesh free_boundary_param(const TriMesh3& mesh, int max_iters = 200);

// Corner subset of one closed polyline: vertices whose turning angle exceeds
// delta1, recursive splits while a segment's interior turning accumulates
// gamma or more, then pruning of short segments (fewer than m vertices) and
// of nearly collinear corners (opening angle within delta2 of straight).
// Angles in radians. Returns ascending indices into q.
std::vector<int> select_corners(const std::vector<Vec2>& q, double delta1, double gamma,
                                int m, double delta2);

struct DomainCorners {
    PolygonDomain domain;
    std::vector<std::vector<int>> corners; // per domain loop: positions into the mesh loop
    std::vector<int> mesh_loop;            // per domain loop: index into FlatMesh::loops
};

// Polygonal parametric domain from the flat mesh's boundary: corner selection
// per loop, outer loop first. Throws TooFewCorners when a loop prunes below 3.
DomainCorners generate_domain(const FlatMesh& flat, double delta1, double gamma, int m,
                              double delta2);

struct Parameterization {
    std::vector<Vec2> points; // per mesh vertex
    PolygonDomain domain;
};

// Maps the flat mesh onto the domain: boundary vertices by chord length
// between corresponding corners, interior vertices by a mean-value solve.
// On foldover the map is composed through interpolated intermediate domains;
// if that still folds, throws FoldoverUnresolved.
Parameterization reparameterize(const FlatMesh& flat, const DomainCorners& dc);

} // namespace tcb
