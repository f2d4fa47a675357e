#ifndef KNOT_ROOTS_HPP
#define KNOT_ROOTS_HPP

#include <Eigen/Dense>
#include <vector>

#include "knot/laurent.hpp"

namespace knot {

/// All roots of a Laurent polynomial in C \ {0}: companion-matrix
/// eigenvalues of the shifted ordinary polynomial, polished by Newton
/// to relative residual <= polish_tol.
template <class Scalar>
inline std::vector<Complex> polynomial_roots(const LaurentPolynomial<Scalar>& p,
                                             double polish_tol = 1e-12) {
    if (p.is_zero()) throw error("polynomial_roots: zero polynomial");
    const std::size_t deg = p.coeffs().size() - 1;
    if (deg == 0) return {};

    std::vector<Complex> c(p.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<Complex>(p.coeffs()[i]);

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<Complex> roots;
    roots.reserve(deg);

    auto eval_with_scale = [&](Complex x, Complex& value, Complex& deriv, double& scale) {
        value = 0.0;
        deriv = 0.0;
        scale = 0.0;
        const double ax = std::abs(x);
        for (std::size_t i = 0; i < c.size(); ++i) {
            deriv = deriv * x + value;
            value = value * x + c[c.size() - 1 - i];
            scale = scale * ax + std::abs(c[c.size() - 1 - i]);
        }
    };

    for (Eigen::Index e = 0; e < solver.eigenvalues().size(); ++e) {
        Complex x = solver.eigenvalues()(e);
        for (int iter = 0; iter < 50; ++iter) {
            Complex value, deriv;
            double scale;
            eval_with_scale(x, value, deriv, scale);
            if (std::abs(value) <= polish_tol * std::max(scale, 1e-300)) break;
            if (deriv == Complex(0.0)) break;
            x -= value / deriv;
        }
        roots.push_back(x);
    }
    return roots;
}

} // namespace knot

#endif
