#ifndef KNOT_ALEXANDER_HPP
#define KNOT_ALEXANDER_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "knot/fox.hpp"
#include "knot/laurent.hpp"
#include "knot/laurent_matrix.hpp"
#include "knot/presentation.hpp"
#include "knot/roots.hpp"

namespace knot {

struct AlexanderRoot {
    Complex value;
    bool simple = false;
    Complex z0; // principal half-log of the root
};

/// Normalized Alexander polynomial with its root data.  Invariants:
/// delta(t) = delta(1/t), delta(1) = 1, and the root set is closed
/// under r -> 1/r.
struct AlexanderData {
    IntLaurent delta;
    std::vector<AlexanderRoot> roots;
    double simple_threshold = 1e-6; // relative to max |delta'| coefficient
};

/// Image of a group-ring element under the abelianization character
/// x_i -> t^{n_i}.
inline IntLaurent abelianized(const GroupRingElement& e, const Presentation& p) {
    IntLaurent acc;
    for (const auto& [w, c] : e.terms()) acc = acc + IntLaurent::monomial(p.alpha(w), c);
    return acc;
}

/// The (k-1)x(k-1) integer Fox matrix with column `deleted_generator`
/// removed: rows are relators, columns the remaining generators.
inline IntLaurentMatrix alexander_fox_matrix(const Presentation& p, int deleted_generator = 1) {
    const int k = p.generator_count;
    if (deleted_generator < 1 || deleted_generator > k)
        throw error("alexander_fox_matrix: deleted generator out of range");
    IntLaurentMatrix m(k - 1, k - 1);
    for (int i = 0; i < k - 1; ++i) {
        int col = 0;
        for (int j = 1; j <= k; ++j) {
            if (j == deleted_generator) continue;
            m.at(i, col++) = abelianized(fox_derivative(p.relators[i], j), p);
        }
    }
    return m;
}

inline Complex principal_half_log(Complex r) {
    return 0.5 * Complex(std::log(std::abs(r)), std::arg(r));
}

/// Alexander polynomial of a meridional deficiency-1 presentation:
/// determinant of the Fox minor, normalized to delta(t) = delta(1/t),
/// delta(1) = 1, with companion-matrix roots polished by Newton.
inline AlexanderData alexander_polynomial(const Presentation& p, double simple_threshold = 1e-6,
                                          double polish_tol = 1e-12,
                                          int deleted_generator = 1) {
    if (!p.is_meridional())
        throw error("alexander_polynomial: presentation is not meridional; normalize it first");

    const IntLaurent d = det(alexander_fox_matrix(p, deleted_generator));
    if (d.is_zero()) throw numeric_error("alexander_polynomial: Fox minor determinant is zero");

    AlexanderData data;
    data.delta = normalize_symmetric(d);
    data.simple_threshold = simple_threshold;

    const IntLaurent dprime = derivative(data.delta);
    const double dprime_norm = max_abs_coeff(dprime);
    for (Complex r : polynomial_roots(data.delta, polish_tol)) {
        AlexanderRoot root;
        root.value = r;
        root.simple = std::abs(evaluate(dprime, r)) > simple_threshold * dprime_norm;
        root.z0 = principal_half_log(r);
        data.roots.push_back(root);
    }

    // Symmetry pairs every root with its inverse.
    for (const AlexanderRoot& r : data.roots) {
        double best = 1e300;
        bool simple_match = false;
        for (const AlexanderRoot& s : data.roots) {
            double dist = std::abs(s.value - 1.0 / r.value);
            if (dist < best) {
                best = dist;
                simple_match = s.simple;
            }
        }
        if (best > 1e-8 * std::max(1.0, std::abs(1.0 / r.value)) || simple_match != r.simple)
            throw numeric_error("alexander_polynomial: root set not closed under inversion");
    }
    return data;
}

/// The torsion function on the abelian part: delta(e^{2z}) / (e^z - e^{-z}).
inline Complex abelian_torsion(Complex z, const AlexanderData& a) {
    const Complex den = std::exp(z) - std::exp(-z);
    if (std::abs(den) < 1e-12)
        throw numeric_error("abelian_torsion: e^z - e^{-z} vanishes (z = 0 mod i*pi)");
    return evaluate(a.delta, std::exp(2.0 * z)) / den;
}

/// Residual of the derivative symmetry delta'(1/r) = -delta'(r) r^2 at a
/// root r, relative to the larger of the two sides.
inline double symmetry_check(const AlexanderData& a, Complex r) {
    const IntLaurent dprime = derivative(a.delta);
    const Complex lhs = evaluate(dprime, 1.0 / r);
    const Complex rhs = -evaluate(dprime, r) * r * r;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

/// Limit value predicted at a bifurcation point: the squared half
/// derivative of abelian_torsion at z0.  Computed both in closed form,
/// (delta'(e^{2 z0}) e^{2 z0})^2 / (e^{2 z0} + e^{-2 z0} - 2), and by
/// Richardson-refined central differences; the two must agree.
inline Complex rhs_limit(Complex z0, const AlexanderData& a, double agree_tol = 1e-6,
                         double fd_step = 1e-6) {
    const Complex r = std::exp(2.0 * z0);
    if (std::abs(evaluate(a.delta, r)) > 1e-8 * std::max(1.0, max_abs_coeff(a.delta)))
        throw numeric_error("rhs_limit: e^{2 z0} is not a root of delta");

    const AlexanderRoot* root = nullptr;
    double best = 1e300;
    for (const AlexanderRoot& cand : a.roots) {
        double dist = std::abs(cand.value - r);
        if (dist < best) {
            best = dist;
            root = &cand;
        }
    }
    if (root && !root->simple)
        throw numeric_error("rhs_limit: root is not simple, the limit formula does not apply");

    const Complex dprime = evaluate(derivative(a.delta), r);
    const Complex closed = (dprime * r) * (dprime * r) / (r + 1.0 / r - 2.0);

    auto f = [&](Complex z) { return abelian_torsion(z, a); };
    auto central = [&](double h) { return (f(z0 + h) - f(z0 - h)) / (2.0 * h); };
    const Complex d1 = central(fd_step);
    const Complex d2 = central(fd_step / 2.0);
    const Complex deriv_fd = (4.0 * d2 - d1) / 3.0;
    const Complex fd = (0.5 * deriv_fd) * (0.5 * deriv_fd);

    const double scale = std::max({std::abs(closed), std::abs(fd), 1e-300});
    if (std::abs(closed - fd) / scale > agree_tol)
        throw numeric_error("rhs_limit: closed form and finite differences disagree by " +
                            std::to_string(std::abs(closed - fd) / scale));
    return closed;
}

} // namespace knot

#endif
