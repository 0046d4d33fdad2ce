#pragma once

// Regularized Lagrange-Laguerre mesh for radial problems on [0, inf).
//
// Nodes are the zeros x_i of the Laguerre polynomial L_N. The basis
// f_i(x) ~ x L_N(x) / (x - x_i) e^{-x/2} vanishes at the origin, and in the
// Gauss approximation the matrix of -d^2/dx^2 is
//
//   T_ii = -(x_i^2 - 2(2N+1) x_i - 4) / (12 x_i^2)
//   T_ij = (-1)^{i-j} (x_i + x_j) / (sqrt(x_i x_j) (x_i - x_j)^2)
//
// while any local potential is diagonal, evaluated at the nodes.

#include "sqrtwell/core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace sqrtwell::mesh {

/// Zeros of L_n in increasing order (Golub-Welsch, then Newton polish).
inline std::vector<double> laguerre_zeros(int n)
{
    detail::require(n >= 1, "Laguerre order must be positive");
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
    for (int k = 0; k < n; ++k) {
        diag[k] = 2.0 * k + 1.0;
        if (k + 1 < n) {
            sub[k] = k + 1.0;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numerical_failure("Laguerre node computation failed");
    }

    std::vector<double> zeros(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    for (double& x : zeros) {
        for (int iter = 0; iter < 3; ++iter) {
            // L_n(x) and L_{n-1}(x) from the three-term recurrence
            double p0 = 1.0;
            double p1 = 1.0 - x;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            // x L_n'(x) = n (L_n - L_{n-1})
            const double deriv = n * (p1 - p0) / x;
            if (deriv == 0.0 || !std::isfinite(deriv)) {
                break;
            }
            x -= p1 / deriv;
        }
    }
    return zeros;
}

/// Kinetic matrix of -d^2/dx^2 in the regularized Laguerre basis.
inline Eigen::MatrixXd kinetic_matrix(const std::vector<double>& x)
{
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd t(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[i];
        t(i, i) = -(xi * xi - 2.0 * (2.0 * n + 1.0) * xi - 4.0) / (12.0 * xi * xi);
        for (Eigen::Index j = 0; j < i; ++j) {
            const double xj = x[j];
            const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
            const double d = xi - xj;
            t(i, j) = sign * (xi + xj) / (std::sqrt(xi * xj) * d * d);
            t(j, i) = t(i, j);
        }
    }
    return t;
}

/// Nodes and kinetic matrix, reusable across potentials and scalings.
struct LaguerreMesh {
    std::vector<double> nodes;
    Eigen::MatrixXd kinetic;

    explicit LaguerreMesh(int size)
        : nodes(laguerre_zeros(size))
        , kinetic(kinetic_matrix(nodes))
    {}

    int size() const { return static_cast<int>(nodes.size()); }
    double outermost() const { return nodes.back(); }
};

} // namespace sqrtwell::mesh
