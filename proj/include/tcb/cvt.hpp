#pragma once

#include "tcb/polygon.hpp"

#include <cstdint>
#include <vector>

namespace tcb {

struct LloydResult {
    std::vector<Vec2> sites;
    std::vector<double> energy; // one entry per completed iteration
    int iterations = 0;
};

// Lloyd relaxation toward a centroidal Voronoi tessellation of the domain
// interior. Cells are computed exactly by clipping the triangulated domain
// against perpendicular bisectors (nearest sites first, stopping once the
// security radius guarantees no further cuts). Stops after max_iters or when
// the relative energy drop falls below rel_tol. Deterministic.
LloydResult lloyd_cvt(const PolygonDomain& domain, std::vector<Vec2> sites,
                      int max_iters = 100, double rel_tol = 1e-8);

// Seeded blue-noise-ish initialization: rejection-sampled interior points.
std::vector<Vec2> sample_interior(const PolygonDomain& domain, int n, std::uint64_t seed);

// Nudges any exactly-collinear triple among near neighbors apart by
// 1e-9 * bbox so downstream spline continuity keeps its generic order.
// Returns the number of points moved.
int jitter_collinear(std::vector<Vec2>& pts, double bbox, std::uint64_t seed);

} // namespace tcb
