#include "tcb/trimesh3.hpp"

#include "tcb/errors.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace tcb {

double TriMesh3::bbox_diagonal() const {
    if (vertices.empty()) return 0.0;
    Vec3 lo = vertices[0], hi = vertices[0];
    for (const Vec3& v : vertices) {
        lo.x = std::min(lo.x, v.x); hi.x = std::max(hi.x, v.x);
        lo.y = std::min(lo.y, v.y); hi.y = std::max(hi.y, v.y);
        lo.z = std::min(lo.z, v.z); hi.z = std::max(hi.z, v.z);
    }
    return (hi - lo).norm();
}

double TriMesh3::total_area() const {
    double acc = 0.0;
    for (const auto& t : triangles) {
        Vec3 a = vertices[t[0]], b = vertices[t[1]], c = vertices[t[2]];
        acc += 0.5 * (b - a).cross(c - a).norm();
    }
    return acc;
}

void validate_disk_topology(TriMesh3& mesh) {
    const char* stage = "mesh_topology";
    int nv = int(mesh.vertices.size());
    int nf = int(mesh.triangles.size());
    if (nv < 3 || nf < 1) fail(Err::EmptyDomain, stage, "mesh has no triangles");

    std::vector<char> used(nv, 0);
    std::map<std::pair<int, int>, int> directed; // (a,b) -> triangle
    for (int f = 0; f < nf; ++f) {
        const auto& t = mesh.triangles[f];
        for (int k = 0; k < 3; ++k) {
            int a = t[k], b = t[(k + 1) % 3];
            if (a < 0 || a >= nv || b < 0 || b >= nv)
                fail(Err::NonConformingMesh, stage, "triangle index out of range");
            if (a == b)
                fail(Err::NonConformingMesh, stage, "triangle repeats a vertex");
            if (!directed.emplace(std::make_pair(a, b), f).second)
                fail(Err::NonConformingMesh, stage,
                     "directed edge shared by two triangles: inconsistent orientation or fin");
            used[a] = 1;
        }
    }
    for (int v = 0; v < nv; ++v)
        if (!used[v]) fail(Err::NonConformingMesh, stage, "unreferenced vertex");

    // Undirected edge census: every edge carries one or two triangles, and a
    // pair must use opposite directions (guaranteed above via directed keys).
    int ne = 0, nbe = 0;
    for (const auto& [e, f] : directed) {
        (void)f;
        auto twin = directed.find({e.second, e.first});
        if (twin == directed.end()) {
            ++ne;
            ++nbe;
        } else if (e.first < e.second) {
            ++ne;
        }
    }

    // Umbrella test: the triangles around each vertex, glued across shared
    // edges, must form one fan (cycle for interior vertices, path otherwise).
    {
        std::vector<std::vector<int>> out(nv); // outgoing neighbor per wedge: v -> next corner
        std::vector<std::vector<int>> in(nv);
        for (const auto& t : mesh.triangles)
            for (int k = 0; k < 3; ++k) {
                out[t[k]].push_back(t[(k + 1) % 3]);
                in[t[k]].push_back(t[(k + 2) % 3]);
            }
        for (int v = 0; v < nv; ++v) {
            // Each wedge at v maps in-neighbor -> out-neighbor... walk wedges
            // by following out[v][i] == in[v][j] adjacency.
            int deg = int(out[v].size());
            std::map<int, int> next; // wedge entered from neighbor a exits to neighbor b
            for (int i = 0; i < deg; ++i)
                if (!next.emplace(in[v][i], out[v][i]).second)
                    fail(Err::NonConformingMesh, stage, "non-manifold vertex");
            // Start from a neighbor that is no wedge's exit (boundary start),
            // or anywhere if all are (interior cycle).
            std::map<int, int> exits;
            for (int i = 0; i < deg; ++i) exits[out[v][i]] = 1;
            int start = -1;
            for (int i = 0; i < deg; ++i)
                if (!exits.count(in[v][i])) start = in[v][i];
            if (start < 0) start = in[v][0];
            int walked = 0, cur = start;
            while (walked < deg) {
                auto it = next.find(cur);
                if (it == next.end()) break;
                cur = it->second;
                next.erase(it);
                ++walked;
            }
            if (walked != deg)
                fail(Err::NonConformingMesh, stage, "vertex umbrella splits into several fans");
        }
    }

    // Connectivity over shared edges.
    {
        std::vector<int> comp(nf, -1);
        std::vector<int> stack = {0};
        comp[0] = 0;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            const auto& t = mesh.triangles[f];
            for (int k = 0; k < 3; ++k) {
                auto twin = directed.find({t[(k + 1) % 3], t[k]});
                if (twin != directed.end() && comp[twin->second] < 0) {
                    comp[twin->second] = 0;
                    stack.push_back(twin->second);
                }
            }
        }
        for (int f = 0; f < nf; ++f)
            if (comp[f] < 0) fail(Err::NonDiskTopology, stage, "mesh has several components");
    }

    // Boundary loops: chain the directed edges whose reverse is absent. Such
    // an edge (a,b) keeps the interior on its left, matching the domain
    // convention downstream.
    std::map<int, int> bnext;
    for (const auto& [e, f] : directed) {
        (void)f;
        if (!directed.count({e.second, e.first}))
            if (!bnext.emplace(e.first, e.second).second)
                fail(Err::NonConformingMesh, stage, "boundary forks at a vertex");
    }
    mesh.loops.clear();
    std::map<int, char> seen;
    for (const auto& [a, b] : bnext) {
        (void)b;
        if (seen.count(a)) continue;
        std::vector<int> loop;
        int cur = a;
        do {
            loop.push_back(cur);
            seen[cur] = 1;
            auto it = bnext.find(cur);
            if (it == bnext.end())
                fail(Err::NonConformingMesh, stage, "open boundary chain");
            cur = it->second;
        } while (cur != a);
        mesh.loops.push_back(std::move(loop));
    }
    int b = int(mesh.loops.size());
    if (b == 0) fail(Err::NonDiskTopology, stage, "closed surface: no boundary to parameterize");

    int euler = nv - ne + nf;
    if (euler + b != 2) {
        std::ostringstream msg;
        msg << "not a disk with holes: V-E+F = " << euler << " with " << b << " boundary loops";
        fail(Err::NonDiskTopology, stage, msg.str());
    }
}

TriMesh3 load_obj(std::istream& is) {
    TriMesh3 mesh;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z))
                fail(Err::IoError, "load_obj", "malformed vertex at line " + std::to_string(lineno));
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                size_t slash = tok.find('/');
                int i = 0;
                try {
                    i = std::stoi(tok.substr(0, slash));
                } catch (...) {
                    fail(Err::IoError, "load_obj", "malformed face at line " + std::to_string(lineno));
                }
                int n = int(mesh.vertices.size());
                i = i < 0 ? n + i : i - 1;
                idx.push_back(i);
            }
            if (idx.size() != 3)
                fail(Err::IoError, "load_obj",
                     "face with " + std::to_string(idx.size()) + " vertices at line " +
                         std::to_string(lineno) + "; triangles only");
            mesh.triangles.push_back({idx[0], idx[1], idx[2]});
        }
        // Other tags (vn, vt, usemtl, ...) are ignored.
    }
    validate_disk_topology(mesh);
    return mesh;
}

void save_obj(std::ostream& os, const TriMesh3& mesh) {
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        os << buf;
    }
    for (const auto& t : mesh.triangles)
        os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

TriMesh3 load_trimesh(std::istream& is) {
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "trimesh3" || version != 1)
        fail(Err::IoError, "load_trimesh", "not a trimesh3 file");
    auto expect = [&](const char* word) {
        std::string w;
        is >> w;
        if (w != word) fail(Err::IoError, "load_trimesh", std::string("expected '") + word + "'");
    };
    TriMesh3 mesh;
    int n = 0;
    expect("vertices");
    is >> n;
    mesh.vertices.resize(n);
    for (Vec3& v : mesh.vertices) {
        std::string sx, sy, sz;
        is >> sx >> sy >> sz;
        v = {std::strtod(sx.c_str(), nullptr), std::strtod(sy.c_str(), nullptr),
             std::strtod(sz.c_str(), nullptr)};
    }
    expect("triangles");
    is >> n;
    mesh.triangles.resize(n);
    for (auto& t : mesh.triangles) is >> t[0] >> t[1] >> t[2];
    expect("loops");
    is >> n;
    mesh.loops.resize(n);
    for (auto& loop : mesh.loops) {
        int len = 0;
        is >> len;
        loop.resize(len);
        for (int& v : loop) is >> v;
    }
    if (!is) fail(Err::IoError, "load_trimesh", "truncated file");
    std::vector<std::vector<int>> declared = mesh.loops;
    validate_disk_topology(mesh);
    // Rotate each declared loop to start at its smallest vertex and order the
    // loops, matching the canonical form validate_disk_topology emits.
    for (auto& loop : declared) {
        if (loop.empty()) continue;
        auto lo = std::min_element(loop.begin(), loop.end());
        std::rotate(loop.begin(), lo, loop.end());
    }
    std::sort(declared.begin(), declared.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    if (declared != mesh.loops)
        fail(Err::NonConformingMesh, "load_trimesh",
             "declared boundary loops disagree with the triangle data");
    return mesh;
}

void save_trimesh(std::ostream& os, const TriMesh3& mesh) {
    os << "trimesh3 1\n";
    os << "vertices " << mesh.vertices.size() << '\n';
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%a %a %a\n", v.x, v.y, v.z);
        os << buf;
    }
    os << "triangles " << mesh.triangles.size() << '\n';
    for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    os << "loops " << mesh.loops.size() << '\n';
    for (const auto& loop : mesh.loops) {
        os << loop.size();
        for (int v : loop) os << ' ' << v;
        os << '\n';
    }
}

TriMesh3 read_mesh_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(Err::IoError, "read_mesh_file", "cannot open " + path);
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".obj") == 0) return load_obj(is);
    return load_trimesh(is);
}

} // namespace tcb
