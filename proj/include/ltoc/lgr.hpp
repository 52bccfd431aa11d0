// Legendre-Gauss-Radau quadrature rules and the associated
// differentiation matrix for collocation on [-1, 1).
//
// The n nodes are the roots of P_{n-1} + P_n, which always include -1;
// the interior nodes are the roots of the Jacobi polynomial
// P_{n-1}^{(0,1)} and are computed from the symmetric tridiagonal Jacobi
// matrix (Golub-Welsch). The differentiation matrix acts on values at
// the n nodes plus the right endpoint +1 and is exact for polynomials of
// degree n.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace ltoc {

struct LgrRule {
    int order = 0;                 ///< number of collocation nodes n
    Eigen::VectorXd nodes;         ///< n points in [-1, 1), first is exactly -1
    Eigen::VectorXd weights;       ///< n quadrature weights, sum to 2
    Eigen::MatrixXd diff_matrix;   ///< n x (n+1), columns over nodes + right endpoint
    Eigen::VectorXd support;       ///< the n+1 support points (nodes, then +1)
    Eigen::VectorXd barycentric;   ///< barycentric weights of the support points
};

namespace detail {

inline double legendre_p(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return p0;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

inline Eigen::VectorXd barycentric_weights(const Eigen::VectorXd& pts) {
    const Eigen::Index m = pts.size();
    Eigen::VectorXd w(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        double prod = 1.0;
        for (Eigen::Index l = 0; l < m; ++l)
            if (l != j) prod *= (pts[j] - pts[l]);
        w[j] = 1.0 / prod;
    }
    return w;
}

}  // namespace detail

inline LgrRule lgr_rule(int n) {
    if (n < 1) throw std::invalid_argument("lgr_rule: order must be >= 1");
    LgrRule rule;
    rule.order = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.nodes[0] = -1.0;
    rule.weights[0] = 2.0 / (static_cast<double>(n) * n);

    if (n > 1) {
        // Jacobi matrix of the (0,1) Jacobi polynomials, order n-1
        const int m = n - 1;
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
        for (int k = 0; k < m; ++k) {
            J(k, k) = 1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
            if (k > 0) {
                const double b = std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
                J(k, k - 1) = b;
                J(k - 1, k) = b;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("lgr_rule: Jacobi eigensolve failed");
        rule.nodes.tail(m) = es.eigenvalues();
        for (int i = 1; i < n; ++i) {
            const double x = rule.nodes[i];
            const double pn1 = detail::legendre_p(n - 1, x);
            rule.weights[i] = (1.0 - x) / (static_cast<double>(n) * n * pn1 * pn1);
        }
    }

    rule.support.resize(n + 1);
    rule.support.head(n) = rule.nodes;
    rule.support[n] = 1.0;
    rule.barycentric = detail::barycentric_weights(rule.support);

    rule.diff_matrix.resize(n, n + 1);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (j == i) continue;
            const double d = (rule.barycentric[j] / rule.barycentric[i]) /
                             (rule.support[i] - rule.support[j]);
            rule.diff_matrix(i, j) = d;
            diag -= d;
        }
        rule.diff_matrix(i, i) = diag;
    }
    return rule;
}

/// Barycentric Lagrange evaluation on arbitrary support points.
inline double barycentric_eval(const Eigen::VectorXd& pts, const Eigen::VectorXd& bw,
                               const Eigen::VectorXd& values, double x) {
    double num = 0.0, den = 0.0;
    for (Eigen::Index j = 0; j < pts.size(); ++j) {
        const double dx = x - pts[j];
        if (std::abs(dx) < 1e-14) return values[j];
        const double c = bw[j] / dx;
        num += c * values[j];
        den += c;
    }
    return num / den;
}

}  // namespace ltoc
