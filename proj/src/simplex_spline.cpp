#include "tcb/simplex_spline.hpp"
#include "tcb/errors.hpp"

#include <algorithm>
#include <bit>

namespace tcb {

namespace {

inline int popcount(std::uint32_t m) { return std::popcount(m); }

} // namespace

// Per-evaluation cache of sub-spline values, indexed by knot mask. Sized for
// the 9-knot (degree 6) ceiling so it lives on the stack.
struct SimplexSpline::Scratch {
    std::array<double, 512> val;
    std::array<std::uint8_t, 512> have;
    explicit Scratch(std::size_t n) { std::fill(have.begin(), have.begin() + n, 0); }
};

SimplexSpline::SimplexSpline(std::vector<Vec2> knots) : knots_(std::move(knots)) {
    int m = int(knots_.size());
    if (m < 3 || m > 9)
        fail(Err::DegenerateKnotSet, "simplex_spline", "knot count must be degree+3 in [3,9]");
    full_ = (Mask(1) << m) - 1;
    info_.resize(std::size_t(1) << m);

    // Pivot choice per sub-multiset: scan index triples lexicographically,
    // keep the largest |area| among the first 10 non-degenerate candidates.
    // The choice is per-mask and point-independent, so every evaluation of
    // the same sub-spline splits identically.
    for (Mask mask = 0; mask <= full_; ++mask) {
        int c = popcount(mask);
        if (c < 3) continue;
        MaskInfo& mi = info_[mask];
        int idx[12];
        int k = 0;
        for (int i = 0; i < m; ++i)
            if (mask & (Mask(1) << i)) idx[k++] = i;
        int found = 0;
        double best = -1.0;
        for (int a = 0; a < c && found < 10; ++a)
            for (int b = a + 1; b < c && found < 10; ++b)
                for (int d = b + 1; d < c && found < 10; ++d) {
                    Vec2 pa = knots_[idx[a]], pb = knots_[idx[b]], pc = knots_[idx[d]];
                    if (orient_sign(pa, pb, pc) == 0) continue;
                    ++found;
                    double area = std::abs(cross2(pa, pb, pc));
                    if (area > best) {
                        best = area;
                        mi.piv = {std::uint8_t(idx[a]), std::uint8_t(idx[b]), std::uint8_t(idx[d])};
                    }
                }
        mi.valid = found > 0;
        if (mi.valid && c >= 4) {
            Vec2 p0 = knots_[mi.piv[0]], p1 = knots_[mi.piv[1]], p2 = knots_[mi.piv[2]];
            auto mx = direction_coords(p0, p1, p2, {1.0, 0.0});
            auto my = direction_coords(p0, p1, p2, {0.0, 1.0});
            mi.mux = mx;
            mi.muy = my;
        }
    }
}

bool SimplexSpline::degenerate() const { return !info_[full_].valid; }

std::array<int, 3> SimplexSpline::pivot() const {
    const auto& p = info_[full_].piv;
    return {int(p[0]), int(p[1]), int(p[2])};
}

double SimplexSpline::eval_mask(Mask mask, Vec2 t, HalfOpenDir dir, Scratch& s) const {
    if (s.have[mask]) return s.val[mask];
    const MaskInfo& mi = info_[mask];
    double v = 0.0;
    if (mi.valid) {
        Vec2 p0 = knots_[mi.piv[0]], p1 = knots_[mi.piv[1]], p2 = knots_[mi.piv[2]];
        int m = popcount(mask);
        if (m == 3) {
            if (half_open_contains(p0, p1, p2, t, dir))
                v = 2.0 / std::abs(cross2(p0, p1, p2));
        } else {
            auto z = barycentric(p0, p1, p2, t);
            for (int j = 0; j < 3; ++j) {
                if (z[j] == 0.0) continue;
                Mask sub = mask & ~(Mask(1) << mi.piv[j]);
                v += z[j] * eval_mask(sub, t, dir, s);
            }
            // Keep the unit-integral normalization at every level: the plain
            // barycentric combination of m-1 knot splines integrates to
            // (m-3)/(m-1) of its parts, so scale by (m-1)/(m-3).
            v *= double(m - 1) / double(m - 3);
        }
    }
    s.have[mask] = 1;
    s.val[mask] = v;
    return v;
}

double SimplexSpline::eval(Vec2 t, HalfOpenDir dir) const {
    Scratch s(info_.size());
    return eval_mask(full_, t, dir, s);
}

double SimplexSpline::eval_with_pivot(Vec2 t, std::array<int, 3> piv, HalfOpenDir dir) const {
    Vec2 p0 = knots_[piv[0]], p1 = knots_[piv[1]], p2 = knots_[piv[2]];
    if (orient_sign(p0, p1, p2) == 0)
        fail(Err::DegenerateKnotSet, "simplex_spline", "requested pivot is collinear");
    Scratch s(info_.size());
    auto z = barycentric(p0, p1, p2, t);
    double v = 0.0;
    for (int j = 0; j < 3; ++j) {
        if (z[j] == 0.0) continue;
        Mask sub = full_ & ~(Mask(1) << piv[j]);
        v += z[j] * eval_mask(sub, t, dir, s);
    }
    int m = int(knots_.size());
    if (m > 3) v *= double(m - 1) / double(m - 3);
    return v;
}

// First derivative along mu of the sub-spline `mask`, with mu given in the
// direction coordinates of that mask's own pivot.
double SimplexSpline::grad_component(Mask mask, Vec2 t, HalfOpenDir dir,
                                     const std::array<double, 3>& mu, Scratch& s) const {
    const MaskInfo& mi = info_[mask];
    if (!mi.valid) return 0.0;
    int k = popcount(mask) - 3;
    if (k == 0) return 0.0;
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        Mask sub = mask & ~(Mask(1) << mi.piv[j]);
        acc += mu[j] * eval_mask(sub, t, dir, s);
    }
    // Unit-integral convention: the derivative factor is k+2, not k.
    return double(k + 2) * acc;
}

Jet2 SimplexSpline::eval_jet(Vec2 t, HalfOpenDir dir) const {
    Jet2 jet;
    Scratch s(info_.size());
    jet.value = eval_mask(full_, t, dir, s);
    const MaskInfo& mi = info_[full_];
    if (!mi.valid) return jet;
    int k = degree();
    if (k == 0) return jet;

    jet.gradient.x = grad_component(full_, t, dir, mi.mux, s);
    jet.gradient.y = grad_component(full_, t, dir, mi.muy, s);

    if (k >= 2) {
        // Second derivatives: differentiate the degree-(k-1) terms once more
        // with each sub-spline's own pivot. The mixed entry is computed once
        // and mirrored, so the stored Hessian is symmetric by construction.
        double dxx = 0.0, dxy = 0.0, dyy = 0.0;
        for (int j = 0; j < 3; ++j) {
            Mask sub = full_ & ~(Mask(1) << mi.piv[j]);
            const MaskInfo& si = info_[sub];
            double gx = si.valid ? grad_component(sub, t, dir, si.mux, s) : 0.0;
            double gy = si.valid ? grad_component(sub, t, dir, si.muy, s) : 0.0;
            dxx += mi.mux[j] * gx;
            dxy += mi.mux[j] * gy;
            dyy += mi.muy[j] * gy;
        }
        jet.hxx = double(k + 2) * dxx;
        jet.hxy = double(k + 2) * dxy;
        jet.hyy = double(k + 2) * dyy;
    }
    return jet;
}

} // namespace tcb
