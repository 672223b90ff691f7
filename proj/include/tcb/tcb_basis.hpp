#pragma once

#include "tcb/simplex_spline.hpp"
#include "tcb/tconfig.hpp"

#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

namespace tcb {

// One spline basis function: the weighted sum of the simplex splines of all
// configs sharing the knot subset I. Weights store Area(T); evaluation
// divides by the degree constant (k+1)(k+2)/2 that converts unit-integral
// simplex splines back to the partition-of-unity combination.
struct BasisFunction {
    struct Term {
        std::array<int, 3> T;
        double weight = 0.0; // Area(T) > 0
        int spline = -1;     // index into BasisSet::splines
    };
    std::vector<int> I;
    std::vector<Term> terms;
    Vec2 greville;
    std::vector<Vec2> hull; // convex hull of all participating knots
    bool merged = false;    // reflex-corner group, see merge_concave
};

struct BasisSet {
    int degree = 0;
    std::shared_ptr<const KnotLayout> layout;
    std::vector<BasisFunction> funcs;
    // Distinct simplex splines, deduplicated by knot multiset T∪I.
    std::vector<std::shared_ptr<const SimplexSpline>> splines;

    const std::vector<Vec2>& knots() const { return layout->knots; }
};

BasisSet build_basis(const TConfigFamily& fam);

// Replaces, per concave corner, the group of merely-C⁰ functions (those whose
// configs hold two or more copies of the corner knot) by their sum.
void merge_concave(BasisSet& basis, const std::vector<Vec2>& corners);

// Triangulation of the domain restricted to every knot line, so each basis
// function restricted to a cell is one polynomial.
struct CellPartition {
    TriMesh2 mesh;
    std::vector<std::vector<int>> active; // per cell: basis indices, ascending
    // Per cell: distinct splines with their (basis, scaled weight) fan-out.
    struct SplineUse {
        int spline;
        std::vector<std::pair<int, double>> out;
    };
    std::vector<std::vector<SplineUse>> plan;

    double total_area() const { return mesh.total_area(); }
};

CellPartition cell_partition(const BasisSet& basis, const PolygonDomain& domain);

// Jets of every basis function active at t (all others are exactly zero).
// `hint` carries the previous cell between calls along a coherent point
// sequence; pass nullptr for one-off queries.
std::vector<std::pair<int, Jet2>> eval_active(const CellPartition& cells, const BasisSet& basis,
                                              Vec2 t, int* hint = nullptr);

// 3D spline surface over the basis: position and parametric derivatives.
struct SurfaceJet {
    Vec3 S, S1, S2;      // position, first derivatives
    Vec3 S11, S12, S22;  // second derivatives
};

// Carries its defining config family so snapshots can rebuild the basis
// (and so refinement can keep elevating from the stored knots).
struct TcbSurface {
    TConfigFamily family;
    BasisSet basis;
    CellPartition cells;
    std::vector<Vec3> control;

    SurfaceJet eval(Vec2 t, int* hint = nullptr) const;
    Vec3 position(Vec2 t, int* hint = nullptr) const;
};

// merge_corners: apply merge_concave with the layout's reflex corners.
TcbSurface make_surface(TConfigFamily fam, std::vector<Vec3> control, bool merge_corners = true);

// JSON snapshot (hex-float doubles, bit-exact round trip).
void save_surface(std::ostream& os, const TcbSurface& s);
TcbSurface load_surface(std::istream& is);

} // namespace tcb
