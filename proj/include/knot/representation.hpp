#ifndef KNOT_REPRESENTATION_HPP
#define KNOT_REPRESENTATION_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "knot/alexander.hpp"
#include "knot/laurent.hpp"
#include "knot/presentation.hpp"
#include "knot/sl2.hpp"

namespace knot {

/// An SL2(C) representation of a presented group: one image per
/// generator, plus the relator residual max_j || rho(r_j) - I ||_max.
struct Representation {
    Presentation presentation;
    std::vector<SL2Value> images;
    double residual = 0.0;
};

inline SL2Value evaluate_word(const std::vector<SL2Value>& images, const Word& w) {
    SL2Value acc = SL2Value::Identity();
    for (int l : w.letters()) {
        const SL2Value& g = images[static_cast<std::size_t>(std::abs(l)) - 1];
        acc *= (l > 0) ? g : sl2_inverse(g);
    }
    return acc;
}

inline double relator_residual(const Presentation& p, const std::vector<SL2Value>& images) {
    double worst = 0.0;
    for (const Word& r : p.relators) {
        const SL2Value m = evaluate_word(images, r) - SL2Value::Identity();
        worst = std::max(worst, m.cwiseAbs().maxCoeff());
    }
    return worst;
}

inline Representation make_representation(Presentation p, std::vector<SL2Value> images) {
    if (images.size() != static_cast<std::size_t>(p.generator_count))
        throw error("representation needs one image per generator");
    Representation rep;
    rep.residual = relator_residual(p, images);
    rep.presentation = std::move(p);
    rep.images = std::move(images);
    return rep;
}

inline Complex trace_of(const Representation& rep, const Word& w) {
    return evaluate_word(rep.images, w).trace();
}

inline Representation conjugated(const Representation& rep, const SL2Value& g) {
    std::vector<SL2Value> images;
    images.reserve(rep.images.size());
    const SL2Value ginv = sl2_inverse(g);
    for (const SL2Value& m : rep.images) images.push_back(g * m * ginv);
    return make_representation(rep.presentation, std::move(images));
}

/// The diagonal abelian representation phi_z: every meridional
/// generator maps to diag(e^z, e^{-z}).
inline Representation abelian_rep(Complex z, const Presentation& p) {
    if (!p.is_meridional())
        throw error("abelian_rep: presentation is not meridional");
    SL2Value d = SL2Value::Zero();
    d(0, 0) = std::exp(z);
    d(1, 1) = std::exp(-z);
    return make_representation(p, std::vector<SL2Value>(p.generator_count, d));
}

/// The eigenvalue parameter alpha with e^{2 alpha} - trace e^{alpha} + 1 = 0,
/// on the branch |e^alpha| >= 1, ties broken toward Im(alpha) >= 0.
inline Complex eigenvalue_parameter(Complex trace) {
    const Complex disc = std::sqrt(trace * trace - 4.0);
    const Complex lp = (trace + disc) / 2.0;
    const Complex lm = (trace - disc) / 2.0;
    Complex lambda;
    if (std::abs(std::abs(lp) - std::abs(lm)) > 1e-12 * std::max(std::abs(lp), 1.0))
        lambda = std::abs(lp) >= std::abs(lm) ? lp : lm;
    else
        lambda = std::imag(std::log(lp)) >= 0 ? lp : lm;
    return std::log(lambda);
}

/// Reducible non-abelian representation rho_{z0} sharing the character
/// of phi_{z0}: x_i -> [[e^{z0}, a_i], [0, e^{-z0}]] with (a_i) a kernel
/// vector of the relator linearization, chosen off the coboundary
/// direction (1,...,1) and scaled so its first nonzero entry is 1.
/// Requires delta(e^{2 z0}) ~ 0.
inline Representation reducible_nonabelian(Complex z0, const Presentation& p,
                                           double delta_tol = 1e-8,
                                           double residual_tol = 1e-8) {
    if (!p.is_meridional())
        throw error("reducible_nonabelian: presentation is not meridional");
    const int k = p.generator_count;
    const Complex c = std::exp(z0), cinv = std::exp(-z0);

    const AlexanderData alex = alexander_polynomial(p);
    const double delta_val = std::abs(evaluate(alex.delta, std::exp(2.0 * z0)));
    if (delta_val > delta_tol * std::max(1.0, max_abs_coeff(alex.delta)))
        throw numeric_error("reducible_nonabelian: delta(e^{2 z0}) = " +
                            std::to_string(delta_val) + ", not a root");

    // Upper-right entry of rho(r_j) is linear in the vector a; track the
    // coefficient row through the letter products.
    Eigen::MatrixXcd system(k - 1, k);
    for (int j = 0; j < k - 1; ++j) {
        Complex d1 = 1.0;
        Eigen::RowVectorXcd coeff = Eigen::RowVectorXcd::Zero(k);
        for (int l : p.relators[j].letters()) {
            const int g = std::abs(l) - 1;
            Complex m1, m2, entry_coeff;
            if (l > 0) {
                m1 = c;
                m2 = cinv;
                entry_coeff = 1.0;
            } else {
                m1 = cinv;
                m2 = c;
                entry_coeff = -1.0;
            }
            Eigen::RowVectorXcd next = m2 * coeff;
            next(g) += d1 * entry_coeff;
            coeff = next;
            d1 *= m1;
        }
        system.row(j) = coeff;
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
    const double sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-8 * std::max(sigma_max, 1.0)) ++rank;

    const Eigen::VectorXcd coboundary = Eigen::VectorXcd::Ones(k) / std::sqrt(double(k));
    Eigen::VectorXcd best;
    double best_norm = 0.0;
    for (int col = rank; col < k; ++col) {
        Eigen::VectorXcd v = svd.matrixV().col(col);
        v -= (coboundary.adjoint() * v)(0) * coboundary;
        if (v.norm() > best_norm) {
            best_norm = v.norm();
            best = v;
        }
    }
    if (best_norm < 1e-8)
        throw numeric_error("reducible_nonabelian: kernel contains only coboundary directions "
                            "(non-simple root or numerical failure)");

    const double peak = best.cwiseAbs().maxCoeff();
    Complex first;
    for (Eigen::Index i = 0; i < best.size(); ++i)
        if (std::abs(best(i)) > 1e-10 * peak) {
            first = best(i);
            break;
        }
    best /= first;

    std::vector<SL2Value> images(k);
    for (int i = 0; i < k; ++i) {
        images[i] << c, best(i), 0.0, cinv;
    }
    Representation rep = make_representation(p, std::move(images));
    if (rep.residual > residual_tol)
        throw numeric_error("reducible_nonabelian: relator residual " +
                            std::to_string(rep.residual) + " above tolerance");
    return rep;
}

/// Riley family for 2-generator meridional presentations:
/// x1 -> [[s, 1], [0, 1/s]], x2 -> [[s, 0], [-u, 1/s]].  The residual is
/// reported, not enforced; vanishing of riley_residual is the equation
/// the continuation solves.
inline Representation riley_family(const Presentation& p, Complex s, Complex u) {
    if (p.generator_count != 2 || !p.is_meridional())
        throw error("riley_family: needs a 2-generator meridional presentation");
    std::vector<SL2Value> images(2);
    images[0] << s, 1.0, 0.0, 1.0 / s;
    images[1] << s, 0.0, -u, 1.0 / s;
    return make_representation(p, std::move(images));
}

namespace detail {

/// 2x2 matrix with entries polynomial in the Riley parameter u.
using UPolyMatrix = std::array<CxLaurent, 4>; // row major: a b / c d

inline UPolyMatrix upoly_mul(const UPolyMatrix& x, const UPolyMatrix& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

} // namespace detail

/// Entries of rho(r_1) - I for the Riley family, as polynomials in u
/// (row major a-1, b, c, d-1).
inline std::array<CxLaurent, 4> riley_relator_entries(const Presentation& p, Complex s) {
    if (p.generator_count != 2 || p.relators.size() != 1)
        throw error("riley_relator_entries: needs a 2-generator presentation");
    using detail::UPolyMatrix;
    auto constant = [](Complex v) { return CxLaurent::constant(v); };
    const CxLaurent zero, u_poly = CxLaurent::monomial(1, 1.0);

    const UPolyMatrix x1{constant(s), constant(1.0), zero, constant(1.0 / s)};
    const UPolyMatrix x1i{constant(1.0 / s), constant(-1.0), zero, constant(s)};
    const UPolyMatrix x2{constant(s), zero, Complex(-1.0) * u_poly, constant(1.0 / s)};
    const UPolyMatrix x2i{constant(1.0 / s), zero, u_poly, constant(s)};

    UPolyMatrix acc{constant(1.0), zero, zero, constant(1.0)};
    for (int l : p.relators[0].letters()) {
        const UPolyMatrix& m = (l == 1) ? x1 : (l == -1) ? x1i : (l == 2) ? x2 : x2i;
        acc = detail::upoly_mul(acc, m);
    }
    acc[0] = acc[0] - constant(1.0);
    acc[3] = acc[3] - constant(1.0);
    return acc;
}

/// The scalar Riley residual as a polynomial in u: the (2,1) entry of
/// rho(r_1) - I divided by u.  Every entry of rho(r_1) - I vanishes on
/// the reducible line u = 0 except the upper-right one, so (2,1) is the
/// documented primary choice; if it is identically zero the diagonal
/// entries (also u-divisible) stand in, largest norm first.
inline CxLaurent riley_residual_poly(const Presentation& p, Complex s) {
    const auto entries = riley_relator_entries(p, s);
    auto u_quotient = [](const CxLaurent& e) -> CxLaurent {
        if (e.is_zero()) return {};
        if (e.min_degree() < 1) {
            // trim already removed any tiny constant term; a surviving one
            // means the entry is not u-divisible
            throw numeric_error("riley_residual: entry not divisible by u");
        }
        return e.shifted(-1);
    };
    const CxLaurent primary = u_quotient(entries[2]);
    if (!primary.is_zero()) return primary;
    const CxLaurent d0 = u_quotient(entries[0]), d3 = u_quotient(entries[3]);
    return max_abs_coeff(d0) >= max_abs_coeff(d3) ? d0 : d3;
}

inline Complex riley_residual(const Presentation& p, Complex s, Complex u) {
    return evaluate(riley_residual_poly(p, s), u);
}

} // namespace knot

#endif
