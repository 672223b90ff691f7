#pragma once

#include "tcb/geometry.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace tcb {

// Triangle mesh of a mid-surface in model units. Boundary loops are stored
// explicitly, one vertex cycle per boundary component, walked with the
// surface interior on the left (outer loop counter-clockwise after a
// orientation-preserving flattening, holes clockwise).
struct TriMesh3 {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::vector<int>> loops;

    double bbox_diagonal() const;
    double total_area() const;
};

// Checks that the mesh is a manifold with boundary, consistently oriented,
// connected, and topologically a disk with holes (genus 0, at least one
// boundary component), then rebuilds `loops` from the triangle data.
// Throws NonConformingMesh for local defects, NonDiskTopology for global ones.
void validate_disk_topology(TriMesh3& mesh);

// OBJ subset: `v x y z` and triangular `f` lines (index suffixes after `/`
// are ignored, negative indices count from the end). Loops are derived.
TriMesh3 load_obj(std::istream& is);
void save_obj(std::ostream& os, const TriMesh3& mesh);

// Internal text format with explicit boundary-loop lists. Coordinates are
// hex floats, so save/load round-trips bit-exactly.
TriMesh3 load_trimesh(std::istream& is);
void save_trimesh(std::ostream& os, const TriMesh3& mesh);

// Reads a mesh file, dispatching on the .obj extension, and validates it.
TriMesh3 read_mesh_file(const std::string& path);

} // namespace tcb
