/// @file gll.hpp
/// @brief Gauss-Lobatto-Legendre nodes, weights and differentiation matrices
///        on the reference interval [-1, 1].
#pragma once

#include <Eigen/Dense>

#include "chanlab/common.hpp"

namespace chanlab {

struct GllRule {
    Eigen::ArrayXd nodes;    ///< p+1 nodes, ascending, endpoints -1 and 1
    Eigen::ArrayXd weights;  ///< quadrature weights, sum = 2
    Eigen::MatrixXd deriv;   ///< nodal differentiation matrix
};

namespace detail {

/// Legendre P_n(x) and P_n'(x) by recurrence.
inline void legendre_eval(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = p0; dp = 0.0; return; }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace detail

/// GLL rule of order p (p+1 nodes). Interior nodes are the roots of P_p',
/// found by Newton iteration from Chebyshev-Lobatto estimates.
inline GllRule gll_rule(int p) {
    if (p < 1) throw ConfigError("gll_rule: order must be >= 1");
    const int n = p + 1;
    Eigen::ArrayXd x(n), w(n);
    x(0) = -1.0;
    x(n - 1) = 1.0;
    for (int i = 1; i < n - 1; ++i) {
        double xi = -std::cos(pi * i / p);  // Chebyshev-Lobatto start
        for (int it = 0; it < 100; ++it) {
            double pp, dpp;
            detail::legendre_eval(p, xi, pp, dpp);
            // Root of (1-x^2) P_p'(x): Newton on q = dpp, q' from Legendre ODE
            double ddpp = (2.0 * xi * dpp - p * (p + 1.0) * pp) / (1.0 - xi * xi);
            double dx = dpp / ddpp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x(i) = xi;
    }
    for (int i = 0; i < n; ++i) {
        double pp, dpp;
        detail::legendre_eval(p, x(i), pp, dpp);
        w(i) = 2.0 / (p * (p + 1.0) * pp * pp);
    }

    // Barycentric weights, then the differentiation matrix.
    Eigen::ArrayXd bw = Eigen::ArrayXd::Ones(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) bw(i) /= (x(i) - x(j));
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            d(i, j) = (bw(j) / bw(i)) / (x(i) - x(j));
            rowsum += d(i, j);
        }
        d(i, i) = -rowsum;  // rows of D annihilate constants
    }
    return {x, w, d};
}

/// Barycentric interpolation weights for arbitrary nodes.
inline Eigen::ArrayXd barycentric_weights(const Eigen::ArrayXd& x) {
    const int n = static_cast<int>(x.size());
    Eigen::ArrayXd bw = Eigen::ArrayXd::Ones(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) bw(i) /= (x(i) - x(j));
    return bw;
}

/// Evaluate the interpolant of (x, f) at point t (barycentric form).
inline double barycentric_eval(const Eigen::ArrayXd& x, const Eigen::ArrayXd& bw,
                               const Eigen::Ref<const Eigen::ArrayXd>& f, double t) {
    const int n = static_cast<int>(x.size());
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        double dx = t - x(i);
        if (std::abs(dx) < 1e-300) return f(i);
        double c = bw(i) / dx;
        num += c * f(i);
        den += c;
    }
    return num / den;
}

}  // namespace chanlab
