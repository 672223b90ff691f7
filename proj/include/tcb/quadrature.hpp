#pragma once

#include "tcb/geometry.hpp"

#include <array>
#include <vector>

namespace tcb {

// Quadrature rule on the reference triangle, stored in barycentric
// coordinates with weights summing to 1/2 (the reference area).
struct TriangleRule {
    struct Node {
        std::array<double, 3> bary;
        double w;
    };
    std::vector<Node> nodes;
    int degree = 0;
};

// Rule exact for polynomials of total degree >= `degree`.
// degree <= 1 returns the one-point centroid rule; higher degrees come from
// a conical-product Gauss rule (Gauss-Legendre x Gauss-Jacobi(1,0)), whose
// n x n instance integrates degree 2n-1 exactly with all-positive weights.
const TriangleRule& triangle_rule(int degree);

// Integrate f over triangle (a,b,c) with the given rule.
template <class F>
double integrate_triangle(const TriangleRule& rule, Vec2 a, Vec2 b, Vec2 c, F&& f) {
    double scale = 2.0 * std::abs(oriented_area(a, b, c));
    double acc = 0.0;
    for (const auto& n : rule.nodes) {
        Vec2 p = a * n.bary[0] + b * n.bary[1] + c * n.bary[2];
        acc += n.w * f(p);
    }
    return acc * scale;
}

} // namespace tcb
