#include "tcb/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>

namespace tcb {

namespace {

struct Rule1D {
    std::vector<double> x, w;
};

// Nodes/weights from the symmetric tridiagonal Jacobi matrix (Golub-Welsch).
Rule1D golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                    double mu0) {
    int n = int(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) J(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = J(i + 1, i) = offdiag[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule1D r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        r.w[i] = mu0 * v0 * v0;
    }
    return r;
}

// Gauss-Legendre on [-1,1].
Rule1D gauss_legendre(int n) {
    std::vector<double> d(n, 0.0), e(n - 1);
    for (int k = 1; k < n; ++k) e[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    return golub_welsch(d, e, 2.0);
}

// Gauss-Jacobi with weight (1-x) on [-1,1].
Rule1D gauss_jacobi10(int n) {
    std::vector<double> d(n), e(n - 1);
    d[0] = -1.0 / 3.0;
    for (int k = 1; k < n; ++k) d[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
    for (int k = 1; k < n; ++k) {
        double b = k * (k + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 1.0));
        e[k - 1] = std::sqrt(b);
    }
    return golub_welsch(d, e, 2.0);
}

TriangleRule build_rule(int degree) {
    TriangleRule rule;
    rule.degree = degree;
    if (degree <= 1) {
        rule.nodes.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.5});
        return rule;
    }
    int n = (degree + 2) / 2; // 2n-1 >= degree
    Rule1D gl = gauss_legendre(n);
    Rule1D gj = gauss_jacobi10(n);
    // Duffy map x = u(1-v), y = v with Jacobian (1-v) absorbed by the Jacobi
    // weight; both 1D rules live on [-1,1].
    for (int i = 0; i < n; ++i) {
        double v = 0.5 * (1.0 + gj.x[i]);
        double wv = 0.25 * gj.w[i];
        for (int j = 0; j < n; ++j) {
            double u = 0.5 * (1.0 + gl.x[j]);
            double wu = 0.5 * gl.w[j];
            double x = u * (1.0 - v), y = v;
            rule.nodes.push_back({{1.0 - x - y, x, y}, wu * wv});
        }
    }
    return rule;
}

} // namespace

const TriangleRule& triangle_rule(int degree) {
    static std::map<int, TriangleRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    int key = degree <= 1 ? 1 : degree;
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_rule(key)).first;
    return it->second;
}

} // namespace tcb
