#pragma once

#include "tcb/geometry.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace tcb {

// Value, gradient and (symmetric) Hessian of a bivariate function.
struct Jet2 {
    double value = 0.0;
    Vec2 gradient{0.0, 0.0};
    double hxx = 0.0, hxy = 0.0, hyy = 0.0;
};

// Normalized bivariate simplex spline M(t | V) over a knot multiset V of
// k+3 points (degree k = |V| - 3, unit integral). Evaluation runs the
// area-coordinate recursion down to the half-open indicator base case;
// derivatives use the direction-coordinate recursion, one degree down per
// differentiation. Coincident knots are allowed (multiset semantics); a
// fully collinear multiset evaluates to zero everywhere, matching its
// measure-zero support.
class SimplexSpline {
public:
    explicit SimplexSpline(std::vector<Vec2> knots);

    int degree() const { return int(knots_.size()) - 3; }
    const std::vector<Vec2>& knots() const { return knots_; }
    bool degenerate() const; // true when the full multiset admits no pivot

    double eval(Vec2 t, HalfOpenDir dir = {}) const;
    Jet2 eval_jet(Vec2 t, HalfOpenDir dir = {}) const;

    // Pivot triple the recursion uses for the full knot set (exposed so tests
    // can force alternatives and check pivot independence).
    std::array<int, 3> pivot() const;
    // Evaluate with an explicit pivot for the top-level split only.
    double eval_with_pivot(Vec2 t, std::array<int, 3> piv, HalfOpenDir dir = {}) const;

private:
    struct MaskInfo {
        std::array<std::uint8_t, 3> piv{}; // knot indices of the pivot triple
        bool valid = false;                // has a non-degenerate pivot / base triangle
        std::array<double, 3> mux{}, muy{}; // direction coords of e_x, e_y (popcount >= 4)
    };

    using Mask = std::uint32_t;
    struct Scratch; // per-evaluation value cache, stack-allocated
    double eval_mask(Mask mask, Vec2 t, HalfOpenDir dir, Scratch& s) const;
    double grad_component(Mask mask, Vec2 t, HalfOpenDir dir, const std::array<double, 3>& mu,
                          Scratch& s) const;

    std::vector<Vec2> knots_;
    std::vector<MaskInfo> info_; // indexed by mask
    Mask full_ = 0;
};

} // namespace tcb
