#pragma once

#include "tcb/polygon.hpp"
#include "tcb/trimesh2.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace tcb {

// All knot copies of a spline space over one polygonal domain, plus the
// boundary bookkeeping needed to close open link polygons along the domain
// boundary. Corner knots carry degree+1 copies (separate indices sharing one
// position); boundary knots between corners and interior knots carry one.
struct KnotLayout {
    struct Station {
        int loop = 0;
        double arc = 0.0;        // arclength along the loop, for walk order
        Vec2 pos;
        std::vector<int> copies; // knot indices here, in allocation order
        bool corner = false;
    };

    PolygonDomain domain;
    int degree = 0;
    std::vector<Vec2> knots;                      // one entry per copy
    std::vector<std::vector<Station>> stations;   // per loop, in walk order
    std::vector<std::pair<int, int>> station_of;  // knot -> (loop, station), (-1,-1) interior
    std::vector<Vec2> reflex;                     // concave corner positions

    const Station* station_for(int knot) const;
    // Positions that seed the knot mesh: one representative per station,
    // then every interior knot, in index order.
    std::vector<int> mesh_knots() const;
};

// Corner copies for every domain vertex plus single-copy interior knots.
KnotLayout make_layout(const PolygonDomain& domain, const std::vector<Vec2>& interior, int degree);

// Refinement entry points; both return the new knot's index.
int add_interior_knot(KnotLayout& layout, Vec2 p);
int add_boundary_knot(KnotLayout& layout, int loop, Vec2 p);

struct TConfig {
    // Knot-index triple in traversal order; the orientation carries the sign
    // of the triangle's area weight. Clockwise configs are pocket pieces of a
    // signed link decomposition and subtract their spline from the function.
    std::array<int, 3> T;
    std::vector<int> I; // sorted knot indices, size = degree
};

struct LinkPolygon {
    std::vector<int> verts;  // knot indices; clockwise winding means the region subtracts
    bool was_closed = false; // true when the config edges already formed a cycle
    bool degenerate = false; // flat polygon; elevation skips it
};

struct TConfigFamily {
    int degree = 0;
    std::vector<TConfig> configs;
    std::shared_ptr<const KnotLayout> layout;

    const std::vector<Vec2>& knots() const { return layout->knots; }

    // vertex {v}∪I -> (config index, slot of v in T), key sorted.
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> vertex_index() const;
};

// Degree-0 family: one config per triangle of the knot mesh.
TConfigFamily initial_family(std::shared_ptr<const KnotLayout> layout);

// The closed simple polygon chained from the edges opposite `vertex`.
LinkPolygon link_polygon(const TConfigFamily& fam, const std::vector<int>& vertex);

// One link-triangulation step: degree k -> k+1.
TConfigFamily elevate(const TConfigFamily& fam);

// Text snapshot: knot/station header plus one `T: i j k | I: a b c` line per
// config. Round-trips exactly (hex floats), so a reloaded family can be
// elevated and evaluated bit-identically.
void save_family(std::ostream& os, const TConfigFamily& fam);
TConfigFamily load_family(std::istream& is);

} // namespace tcb
