#include "tcb/parameterize.hpp"

#include "tcb/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tcb {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Local isometric frame of a 3D triangle: edge matrix [x1-x0, x2-x0] in 2D.
Eigen::Matrix2d local_frame(Vec3 a, Vec3 b, Vec3 c) {
    Vec3 e1 = b - a, e2 = c - a;
    double l1 = e1.norm();
    Vec3 u = e1 / l1;
    Vec3 n = e1.cross(e2);
    double area2 = n.norm();
    Eigen::Matrix2d R;
    R << l1, e2.dot(u), 0.0, area2 / l1;
    return R;
}

Eigen::Matrix2d uv_frame(Vec2 a, Vec2 b, Vec2 c) {
    Eigen::Matrix2d U;
    U << b.x - a.x, c.x - a.x, b.y - a.y, c.y - a.y;
    return U;
}

// Mean-value weight triplets (i, j, w_ij) over the mesh at the given planar
// positions; every corner of every triangle contributes tan(angle/2)/r to its
// two wing edges. Weights are positive for non-degenerate triangles.
template <class PointAt>
std::vector<Eigen::Triplet<double>> mean_value_weights(int nv,
                                                       const std::vector<std::array<int, 3>>& tris,
                                                       PointAt&& at) {
    std::vector<Eigen::Triplet<double>> w;
    w.reserve(tris.size() * 6);
    for (const auto& t : tris)
        for (int k = 0; k < 3; ++k) {
            int v = t[k], a = t[(k + 1) % 3], b = t[(k + 2) % 3];
            auto ea = at(a) - at(v);
            auto eb = at(b) - at(v);
            double ra = ea.norm(), rb = eb.norm();
            if (ra <= 0.0 || rb <= 0.0) continue;
            double cosang = std::clamp(ea.dot(eb) / (ra * rb), -1.0, 1.0);
            double th = std::max(std::tan(std::acos(cosang) * 0.5), 1e-12);
            w.emplace_back(v, a, th / ra);
            w.emplace_back(v, b, th / rb);
        }
    (void)nv;
    return w;
}

// Solves the barycentric system: free vertex = weighted mean of neighbors,
// fixed vertices pinned at `pos`. Overwrites the free entries of pos.
void solve_barycentric(int nv, const std::vector<Eigen::Triplet<double>>& weights,
                       const std::vector<char>& fixed, std::vector<Vec2>& pos,
                       const char* stage) {
    std::vector<int> index(nv, -1);
    int nfree = 0;
    for (int v = 0; v < nv; ++v)
        if (!fixed[v]) index[v] = nfree++;
    if (nfree == 0) return;

    std::vector<double> rowsum(nv, 0.0);
    for (const auto& t : weights)
        if (!fixed[t.row()]) rowsum[t.row()] += t.value();

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(weights.size() + nfree);
    Eigen::MatrixX2d rhs = Eigen::MatrixX2d::Zero(nfree, 2);
    for (int v = 0; v < nv; ++v)
        if (!fixed[v]) trips.emplace_back(index[v], index[v], rowsum[v]);
    for (const auto& t : weights) {
        int i = t.row(), j = t.col();
        if (fixed[i]) continue;
        if (fixed[j]) {
            rhs(index[i], 0) += t.value() * pos[j].x;
            rhs(index[i], 1) += t.value() * pos[j].y;
        } else {
            trips.emplace_back(index[i], index[j], -t.value());
        }
    }
    Eigen::SparseMatrix<double> A(nfree, nfree);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        fail(Err::SingularSystem, stage, "barycentric system is singular");
    Eigen::MatrixX2d x = lu.solve(rhs);
    for (int v = 0; v < nv; ++v)
        if (!fixed[v]) pos[v] = {x(index[v], 0), x(index[v], 1)};
}

double tri_area(const std::vector<Vec2>& p, const std::array<int, 3>& t) {
    return oriented_area(p[t[0]], p[t[1]], p[t[2]]);
}

} // namespace

int FlatMesh::flipped_count() const {
    int n = 0;
    for (const auto& t : triangles)
        if (tri_area(points, t) <= 0.0) ++n;
    return n;
}

double FlatMesh::sym_dirichlet(const TriMesh3& ref) const {
    double e = 0.0;
    for (size_t f = 0; f < triangles.size(); ++f) {
        const auto& t = triangles[f];
        Eigen::Matrix2d R = local_frame(ref.vertices[t[0]], ref.vertices[t[1]], ref.vertices[t[2]]);
        Eigen::Matrix2d J = uv_frame(points[t[0]], points[t[1]], points[t[2]]) * R.inverse();
        double det = J.determinant();
        double area = 0.5 * R.determinant();
        if (det <= 0.0) return std::numeric_limits<double>::infinity();
        e += area * J.squaredNorm() * (1.0 + 1.0 / (det * det));
    }
    return e;
}

FlatMesh free_boundary_param(const TriMesh3& mesh, int max_iters) {
    const char* stage = "free_boundary_param";
    int nv = int(mesh.vertices.size());
    if (mesh.loops.empty()) fail(Err::NonDiskTopology, stage, "mesh has no boundary loops");

    FlatMesh flat;
    flat.triangles = mesh.triangles;
    flat.loops = mesh.loops;
    flat.points.assign(nv, Vec2{});

    // Planar input: the isometric embedding is the optimum, so return the
    // in-plane coordinates directly when every vertex sits on one plane.
    {
        Vec3 ctr{};
        for (const Vec3& v : mesh.vertices) ctr += v;
        ctr = ctr / double(nv);
        Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
        for (const Vec3& v : mesh.vertices) {
            Eigen::Vector3d d(v.x - ctr.x, v.y - ctr.y, v.z - ctr.z);
            cov += d * d.transpose();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
        Eigen::Vector3d n = eig.eigenvectors().col(0);
        double dev = 0.0;
        for (const Vec3& v : mesh.vertices)
            dev = std::max(dev, std::abs(n.dot(Eigen::Vector3d(v.x - ctr.x, v.y - ctr.y, v.z - ctr.z))));
        if (dev <= 1e-9 * mesh.bbox_diagonal()) {
            Eigen::Vector3d e1 = eig.eigenvectors().col(2), e2 = eig.eigenvectors().col(1);
            for (int v = 0; v < nv; ++v) {
                Eigen::Vector3d d(mesh.vertices[v].x - ctr.x, mesh.vertices[v].y - ctr.y,
                                  mesh.vertices[v].z - ctr.z);
                flat.points[v] = {e1.dot(d), e2.dot(d)};
            }
            double total = 0.0;
            for (const auto& t : flat.triangles) total += tri_area(flat.points, t);
            if (total < 0.0)
                for (Vec2& p : flat.points) p.y = -p.y;
            if (flat.flipped_count() == 0) return flat;
            // A flat but self-overlapping immersion falls through to the
            // general path (and will fail the final bijectivity check there).
        }
    }

    // Identify the outer loop: the longest boundary in 3D arc length.
    int outer = 0;
    double best = -1.0;
    for (size_t l = 0; l < mesh.loops.size(); ++l) {
        const auto& loop = mesh.loops[l];
        double len = 0.0;
        for (size_t i = 0; i < loop.size(); ++i)
            len += (mesh.vertices[loop[(i + 1) % loop.size()]] - mesh.vertices[loop[i]]).norm();
        if (len > best) {
            best = len;
            outer = int(l);
        }
    }

    // Tutte initialization on the hole-filled mesh: virtual center vertices
    // close every hole so the interior system has a convex outer boundary.
    {
        std::vector<Vec3> verts = mesh.vertices;
        std::vector<std::array<int, 3>> tris = mesh.triangles;
        for (size_t l = 0; l < mesh.loops.size(); ++l) {
            if (int(l) == outer) continue;
            const auto& loop = mesh.loops[l];
            Vec3 c{};
            for (int v : loop) c += mesh.vertices[v];
            c = c / double(loop.size());
            int ci = int(verts.size());
            verts.push_back(c);
            for (size_t i = 0; i < loop.size(); ++i)
                tris.push_back({loop[(i + 1) % loop.size()], loop[i], ci});
        }
        int na = int(verts.size());
        std::vector<Vec2> pos(na, Vec2{});
        std::vector<char> fixed(na, 0);

        const auto& loop = mesh.loops[outer];
        double len = 0.0;
        std::vector<double> arc(loop.size(), 0.0);
        for (size_t i = 0; i < loop.size(); ++i) {
            arc[i] = len;
            len += (mesh.vertices[loop[(i + 1) % loop.size()]] - mesh.vertices[loop[i]]).norm();
        }
        double radius = std::sqrt(mesh.total_area() / kPi);
        for (size_t i = 0; i < loop.size(); ++i) {
            double ang = 2.0 * kPi * arc[i] / len;
            pos[loop[i]] = {radius * std::cos(ang), radius * std::sin(ang)};
            fixed[loop[i]] = 1;
        }
        auto w = mean_value_weights(na, tris, [&](int v) { return verts[v]; });
        solve_barycentric(na, w, fixed, pos, stage);
        for (int v = 0; v < nv; ++v) flat.points[v] = pos[v];
    }
    if (flat.flipped_count() > 0)
        fail(Err::FoldoverUnresolved, stage, "initial embedding has inverted triangles");

    // Symmetric-Dirichlet descent. Precompute per-triangle reference inverses,
    // start from the energy-optimal uniform scale of the Tutte solution.
    size_t nf = flat.triangles.size();
    std::vector<Eigen::Matrix2d> Rinv(nf);
    std::vector<double> area(nf);
    for (size_t f = 0; f < nf; ++f) {
        const auto& t = flat.triangles[f];
        Eigen::Matrix2d R =
            local_frame(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
        Rinv[f] = R.inverse();
        area[f] = 0.5 * R.determinant();
    }
    {
        double num = 0.0, den = 0.0;
        for (size_t f = 0; f < nf; ++f) {
            const auto& t = flat.triangles[f];
            Eigen::Matrix2d J = uv_frame(flat.points[t[0]], flat.points[t[1]], flat.points[t[2]]) *
                                Rinv[f];
            double det = J.determinant();
            num += area[f] * J.squaredNorm() / (det * det);
            den += area[f] * J.squaredNorm();
        }
        double s = std::pow(num / den, 0.25);
        for (Vec2& p : flat.points) p *= s;
    }

    auto energy = [&](const std::vector<Vec2>& pts) {
        double e = 0.0;
        for (size_t f = 0; f < nf; ++f) {
            const auto& t = flat.triangles[f];
            Eigen::Matrix2d J = uv_frame(pts[t[0]], pts[t[1]], pts[t[2]]) * Rinv[f];
            double det = J.determinant();
            if (det <= 0.0) return std::numeric_limits<double>::infinity();
            e += area[f] * J.squaredNorm() * (1.0 + 1.0 / (det * det));
        }
        return e;
    };

    double e0 = energy(flat.points);
    std::vector<Vec2> grad(nv), dir(nv), trial(nv);
    for (int iter = 0; iter < max_iters; ++iter) {
        std::fill(grad.begin(), grad.end(), Vec2{});
        for (size_t f = 0; f < nf; ++f) {
            const auto& t = flat.triangles[f];
            Eigen::Matrix2d U = uv_frame(flat.points[t[0]], flat.points[t[1]], flat.points[t[2]]);
            Eigen::Matrix2d J = U * Rinv[f];
            double det = J.determinant();
            double fro = J.squaredNorm();
            Eigen::Matrix2d Jit = J.inverse().transpose();
            Eigen::Matrix2d dJ =
                2.0 * area[f] * ((1.0 + 1.0 / (det * det)) * J - (fro / (det * det)) * Jit);
            Eigen::Matrix2d dU = dJ * Rinv[f].transpose();
            grad[t[1]] += Vec2{dU(0, 0), dU(1, 0)};
            grad[t[2]] += Vec2{dU(0, 1), dU(1, 1)};
            grad[t[0]] -= Vec2{dU(0, 0) + dU(0, 1), dU(1, 0) + dU(1, 1)};
        }
        double gmax = 0.0;
        for (const Vec2& g : grad) gmax = std::max(gmax, g.norm());
        if (gmax == 0.0) break;
        for (int v = 0; v < nv; ++v) dir[v] = grad[v] * -1.0;

        // Largest step keeping every triangle positively oriented: smallest
        // positive root of the per-triangle quadratic det(U + s dU) = 0.
        double smax = std::numeric_limits<double>::infinity();
        for (size_t f = 0; f < nf; ++f) {
            const auto& t = flat.triangles[f];
            Vec2 u1 = flat.points[t[1]] - flat.points[t[0]];
            Vec2 u2 = flat.points[t[2]] - flat.points[t[0]];
            Vec2 d1 = dir[t[1]] - dir[t[0]];
            Vec2 d2 = dir[t[2]] - dir[t[0]];
            double a = d1.cross(d2);
            double b = u1.cross(d2) + d1.cross(u2);
            double c = u1.cross(u2);
            double roots[2];
            int nr = 0;
            if (std::abs(a) > 1e-300) {
                double disc = b * b - 4 * a * c;
                if (disc >= 0.0) {
                    double sq = std::sqrt(disc);
                    roots[nr++] = (-b - sq) / (2 * a);
                    roots[nr++] = (-b + sq) / (2 * a);
                }
            } else if (std::abs(b) > 1e-300) {
                roots[nr++] = -c / b;
            }
            for (int r = 0; r < nr; ++r)
                if (roots[r] > 0.0) smax = std::min(smax, roots[r]);
        }
        double scale = 0.0;
        for (const Vec2& p : flat.points) scale = std::max(scale, p.norm());
        double step = std::min(0.8 * smax, 0.25 * scale / gmax);
        bool accepted = false;
        for (int bt = 0; bt < 30 && !accepted; ++bt, step *= 0.5) {
            for (int v = 0; v < nv; ++v) trial[v] = flat.points[v] + dir[v] * step;
            double e1 = energy(trial);
            if (e1 < e0) {
                double drop = (e0 - e1) / e0;
                flat.points.swap(trial);
                e0 = e1;
                accepted = true;
                if (drop < 1e-9) iter = max_iters; // converged
            }
        }
        if (!accepted) break;
    }
    if (flat.flipped_count() > 0)
        fail(Err::FoldoverUnresolved, stage, "descent left inverted triangles");
    return flat;
}

std::vector<int> select_corners(const std::vector<Vec2>& q, double delta1, double gamma, int m,
                                double delta2) {
    const char* stage = "generate_domain";
    int n = int(q.size());
    if (n < 3) fail(Err::TooFewCorners, stage, "boundary loop with fewer than 3 vertices");

    std::vector<double> theta(n);
    for (int i = 0; i < n; ++i) {
        Vec2 a = q[(i + n - 1) % n] - q[i];
        Vec2 b = q[(i + 1) % n] - q[i];
        double la = a.norm(), lb = b.norm();
        if (la == 0.0 || lb == 0.0) fail(Err::DuplicatePoints, stage, "repeated boundary vertex");
        double ang = std::acos(std::clamp(a.dot(b) / (la * lb), -1.0, 1.0));
        theta[i] = std::abs(kPi - ang);
    }
    // Prefix sums of turning angle; the accumulated change-of-curvature of a
    // segment is the total turning of its strictly interior vertices.
    std::vector<double> pre(n + 1, 0.0);
    for (int i = 0; i < n; ++i) pre[i + 1] = pre[i] + theta[i];
    double total = pre[n];
    auto turn_between = [&](int a, int b) { // unwrapped a < b <= a + n, exclusive ends
        double s = 0.0;
        int lo = a + 1, hi = b - 1;
        if (lo > hi) return 0.0;
        auto cum = [&](int i) { // sum of theta[0..i mod] over unwrapped index
            return (i / n) * total + pre[i % n];
        };
        s = cum(hi + 1) - cum(lo);
        return s;
    };

    std::vector<char> corner(n, 0);
    for (int i = 0; i < n; ++i)
        if (theta[i] > delta1) corner[i] = 1;
    if (std::count(corner.begin(), corner.end(), char(1)) == 0)
        corner[int(std::max_element(theta.begin(), theta.end()) - theta.begin())] = 1;

    // Recursive curvature splitting of every segment between corners.
    {
        std::vector<std::pair<int, int>> work; // unwrapped (a, b)
        int first = -1, prev = -1;
        for (int i = 0; i < n; ++i)
            if (corner[i]) {
                if (first < 0)
                    first = i;
                else
                    work.push_back({prev, i});
                prev = i;
            }
        work.push_back({prev, first + n});
        while (!work.empty()) {
            auto [a, b] = work.back();
            work.pop_back();
            if (b - a < 2 || turn_between(a, b) < gamma) continue;
            int bests = -1;
            double bestd = std::numeric_limits<double>::infinity();
            for (int s = a + 1; s < b; ++s) {
                double d = std::abs(turn_between(a, s) - turn_between(s, b));
                if (d < bestd) {
                    bestd = d;
                    bests = s;
                }
            }
            corner[bests % n] = 1;
            work.push_back({a, bests});
            work.push_back({bests, b});
        }
    }

    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
        if (corner[i]) idx.push_back(i);

    // Short segments: drop the flatter endpoint until every span holds at
    // least m vertices (endpoints included).
    while (idx.size() >= 2) {
        int k = int(idx.size());
        int worst = -1, wgap = n;
        for (int t = 0; t < k; ++t) {
            int gap = (idx[(t + 1) % k] - idx[t] + n) % n;
            if (gap == 0) gap = n;
            if (gap + 1 < m && gap < wgap) {
                wgap = gap;
                worst = t;
            }
        }
        if (worst < 0) break;
        int a = idx[worst], b = idx[(worst + 1) % k];
        int drop = theta[a] < theta[b] ? a : b;
        idx.erase(std::find(idx.begin(), idx.end(), drop));
    }

    // Nearly collinear corner triples: drop the middle corner.
    for (bool changed = true; changed && idx.size() >= 3;) {
        changed = false;
        int k = int(idx.size());
        for (int t = 0; t < k; ++t) {
            Vec2 a = q[idx[(t + k - 1) % k]], b = q[idx[t]], c = q[idx[(t + 1) % k]];
            double ang = std::acos(
                std::clamp((a - b).dot(c - b) / ((a - b).norm() * (c - b).norm()), -1.0, 1.0));
            if (std::abs(kPi - ang) < delta2) {
                idx.erase(idx.begin() + t);
                changed = true;
                break;
            }
        }
    }

    if (idx.size() < 3)
        fail(Err::TooFewCorners, stage,
             "corner pruning left " + std::to_string(idx.size()) + " corners");
    return idx;
}

DomainCorners generate_domain(const FlatMesh& flat, double delta1, double gamma, int m,
                              double delta2) {
    const char* stage = "generate_domain";
    if (flat.loops.empty()) fail(Err::EmptyDomain, stage, "flat mesh has no boundary");

    // The outer loop is the one walked counter-clockwise (positive area).
    int outer = -1;
    for (size_t l = 0; l < flat.loops.size(); ++l) {
        std::vector<Vec2> poly;
        for (int v : flat.loops[l]) poly.push_back(flat.points[v]);
        if (polygon_area(poly) > 0.0) {
            if (outer >= 0) fail(Err::NonDiskTopology, stage, "two counter-clockwise loops");
            outer = int(l);
        }
    }
    if (outer < 0) fail(Err::NonDiskTopology, stage, "no counter-clockwise outer loop");

    DomainCorners dc;
    std::vector<int> order = {outer};
    for (size_t l = 0; l < flat.loops.size(); ++l)
        if (int(l) != outer) order.push_back(int(l));
    for (int l : order) {
        std::vector<Vec2> poly;
        for (int v : flat.loops[l]) poly.push_back(flat.points[v]);
        std::vector<int> corners = select_corners(poly, delta1, gamma, m, delta2);
        std::vector<Vec2> loop;
        for (int c : corners) loop.push_back(poly[c]);
        dc.domain.loops.push_back(std::move(loop));
        dc.corners.push_back(std::move(corners));
        dc.mesh_loop.push_back(l);
    }
    dc.domain.check(stage);
    return dc;
}

namespace {

// One mean-value mapping step: boundary vertices pinned at `targets`,
// interior solved. Returns false when the image has an inverted triangle.
bool mv_step(const FlatMesh& cur, const std::vector<char>& fixed,
             const std::vector<Vec2>& targets, std::vector<Vec2>& out) {
    int nv = int(cur.points.size());
    auto w = mean_value_weights(nv, cur.triangles, [&](int v) { return cur.points[v]; });
    out = targets;
    solve_barycentric(nv, w, fixed, out, "reparameterize");
    for (const auto& t : cur.triangles)
        if (tri_area(out, t) <= 0.0) return false;
    return true;
}

} // namespace

Parameterization reparameterize(const FlatMesh& flat, const DomainCorners& dc) {
    const char* stage = "reparameterize";
    int nv = int(flat.points.size());
    std::vector<char> fixed(nv, 0);
    std::vector<Vec2> target(nv, Vec2{});

    // Chord-length boundary correspondence between consecutive corners.
    for (size_t dl = 0; dl < dc.corners.size(); ++dl) {
        const auto& loop = flat.loops[dc.mesh_loop[dl]];
        const auto& corners = dc.corners[dl];
        const auto& poly = dc.domain.loops[dl];
        int nl = int(loop.size());
        int k = int(corners.size());
        for (int t = 0; t < k; ++t) {
            int s = corners[t], e = corners[(t + 1) % k];
            int span = (e - s + nl) % nl;
            if (span == 0) span = nl;
            double len = 0.0;
            std::vector<double> arc(span + 1, 0.0);
            for (int i = 0; i < span; ++i) {
                Vec2 a = flat.points[loop[(s + i) % nl]];
                Vec2 b = flat.points[loop[(s + i + 1) % nl]];
                len += (b - a).norm();
                arc[i + 1] = len;
            }
            Vec2 pa = poly[t], pb = poly[(t + 1) % k];
            for (int i = 0; i < span; ++i) {
                int v = loop[(s + i) % nl];
                double u = len > 0.0 ? arc[i] / len : 0.0;
                target[v] = pa + (pb - pa) * u;
                fixed[v] = 1;
            }
        }
    }

    Parameterization param;
    param.domain = dc.domain;
    if (mv_step(flat, fixed, target, param.points)) return param;

    // Foldover: compose mean-value maps through interpolated intermediate
    // boundaries, doubling their count until the chain stays flip-free.
    double distortion = 1.0;
    for (int v = 0; v < nv; ++v) {
        if (!fixed[v]) continue;
        double h = std::numeric_limits<double>::infinity();
        for (const auto& loop : flat.loops) {
            int nl = int(loop.size());
            for (int i = 0; i < nl; ++i)
                if (loop[i] == v) {
                    h = std::min({h,
                                  (flat.points[loop[(i + 1) % nl]] - flat.points[v]).norm(),
                                  (flat.points[loop[(i + nl - 1) % nl]] - flat.points[v]).norm()});
                }
        }
        if (h > 0.0 && std::isfinite(h))
            distortion = std::max(distortion, (target[v] - flat.points[v]).norm() / h);
    }
    for (int steps = std::min(64, int(std::ceil(distortion)) + 1); steps <= 256; steps *= 2) {
        FlatMesh cur = flat;
        bool ok = true;
        for (int s = 1; s <= steps && ok; ++s) {
            double u = double(s) / steps;
            std::vector<Vec2> tstep(nv);
            for (int v = 0; v < nv; ++v)
                if (fixed[v]) tstep[v] = flat.points[v] + (target[v] - flat.points[v]) * u;
            std::vector<Vec2> next;
            ok = mv_step(cur, fixed, tstep, next);
            if (ok) cur.points.swap(next);
        }
        if (ok) {
            param.points = std::move(cur.points);
            return param;
        }
    }
    fail(Err::FoldoverUnresolved, stage,
         "mean-value mapping keeps folding through 256 intermediate domains");
}

} // namespace tcb
