#ifndef KNOT_TORSION_HPP
#define KNOT_TORSION_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "knot/alexander.hpp"
#include "knot/chain_complex.hpp"
#include "knot/group_ring.hpp"
#include "knot/laurent_matrix.hpp"
#include "knot/representation.hpp"

namespace knot {

/// Matrix of the right-module action of a word: v . w = Ad_{rho(w)^{-1}}(v)
/// in the basis {E, H, F}.  Anti-homomorphic in w, which matches the
/// column-block composition of the twisted boundary maps.
inline Ad3Value module_action(const Representation& rep, const Word& w) {
    return adjoint(sl2_inverse(evaluate_word(rep.images, w)));
}

/// Phi = alpha (x) (Ad o rho) applied to a group-ring element: a 3x3
/// matrix over C[t, 1/t], where a term c*w contributes c * t^{alpha(w)}
/// times the module-action matrix of w.
inline void phi_block(const GroupRingElement& e, const Representation& rep,
                      CxLaurentMatrix& out, int row0, int col0) {
    std::map<int, Eigen::Matrix3cd> by_degree;
    for (const auto& [w, c] : e.terms()) {
        const int deg = rep.presentation.alpha(w);
        auto [it, inserted] = by_degree.try_emplace(deg, Eigen::Matrix3cd::Zero());
        it->second += static_cast<double>(c) * module_action(rep, w);
    }
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            CxLaurent entry;
            for (const auto& [deg, m] : by_degree)
                entry = entry + CxLaurent::monomial(deg, m(r, c));
            out.at(row0 + r, col0 + c) = entry;
        }
}

/// Phi of a group-ring element evaluated at a numeric t.
inline Eigen::Matrix3cd phi_at(const GroupRingElement& e, const Representation& rep, Complex t) {
    Eigen::Matrix3cd acc = Eigen::Matrix3cd::Zero();
    for (const auto& [w, c] : e.terms())
        acc += static_cast<double>(c) * cpow_int(t, rep.presentation.alpha(w)) *
               module_action(rep, w);
    return acc;
}

/// The 3(k-1) x 3(k-1) twisted Fox matrix: block (j, i) = Phi(dr_i/dx_j)
/// with the column block of the deleted generator removed (row blocks
/// run over the remaining generators, column blocks over relators).
inline CxLaurentMatrix build_A1(const Presentation& p, const Representation& rep,
                                int deleted_generator = 1, double residual_tol = 1e-8) {
    if (!p.is_meridional()) throw error("build_A1: presentation is not meridional");
    if (rep.residual > residual_tol)
        throw error("build_A1: representation residual " + std::to_string(rep.residual) +
                    " above tolerance");
    const int k = p.generator_count;
    if (deleted_generator < 1 || deleted_generator > k)
        throw error("build_A1: deleted generator out of range");
    CxLaurentMatrix a(3 * (k - 1), 3 * (k - 1));
    int block_row = 0;
    for (int j = 1; j <= k; ++j) {
        if (j == deleted_generator) continue;
        for (int i = 0; i < k - 1; ++i)
            phi_block(fox_derivative(p.relators[i], j), rep, a, 3 * block_row, 3 * i);
        ++block_row;
    }
    return a;
}

/// Wada's twisted Alexander invariant as a (numerator, denominator)
/// pair, defined up to a unit +-t^m.
struct WadaInvariant {
    CxLaurent numerator;        // det A^1
    CxLaurent denominator;      // closed form (t-1)(t^2 - Tr rho(x_d^2) t + 1)
    CxLaurent denominator_det;  // computed det Phi(x_d - 1)
    Complex trace_x_squared;
    int deleted_generator = 1;
};

inline Complex wada_value(const WadaInvariant& w, Complex t0) {
    return evaluate(w.numerator, t0) / evaluate(w.denominator, t0);
}

inline WadaInvariant wada_invariant(const Presentation& p, const Representation& rep,
                                    int deleted_generator = 1, double check_tol = 1e-9) {
    WadaInvariant result;
    result.deleted_generator = deleted_generator;
    result.numerator = det(build_A1(p, rep, deleted_generator));

    const Word xd = Word::generator(deleted_generator);
    result.trace_x_squared = trace_of(rep, xd * xd);

    // (t - 1)(t^2 - Tr(rho(x_d^2)) t + 1)
    const CxLaurent t_minus_1(0, {-1.0, 1.0});
    const CxLaurent quadratic(0, {1.0, -result.trace_x_squared, 1.0});
    result.denominator = t_minus_1 * quadratic;
    if (result.denominator.is_zero())
        throw numeric_error("wada_invariant: denominator is identically zero");

    GroupRingElement xd_minus_1 = GroupRingElement::of(xd) - GroupRingElement::one();
    CxLaurentMatrix phi_xd(3, 3);
    phi_block(xd_minus_1, rep, phi_xd, 0, 0);
    result.denominator_det = det(phi_xd);

    const double dev = coefficient_deviation(result.denominator_det, result.denominator);
    if (dev > check_tol * std::max(1.0, max_abs_coeff(result.denominator)))
        throw numeric_error("wada_invariant: det Phi(x_d - 1) deviates from the closed form by " +
                            std::to_string(dev));
    return result;
}

/// The non-acyclic torsion value at a lambda-regular representation, up
/// to overall sign: G(1) / (2 - Tr rho(x_1^2)) with G = det A^1 / (t-1)^2.
/// Divisibility by (t-1)^2 is the operational lambda-regularity proxy.
inline Complex lambda_torsion_up_to_sign(const Presentation& p, const Representation& rep,
                                         int deleted_generator = 1, double div_tol = 1e-8) {
    const WadaInvariant w = wada_invariant(p, rep, deleted_generator);
    const CxLaurent t_minus_1(0, {-1.0, 1.0});
    CxLaurent g;
    try {
        g = divide_exact(w.numerator, t_minus_1 * t_minus_1, div_tol);
    } catch (const numeric_error& e) {
        throw numeric_error(std::string("lambda_torsion: representation fails the (t-1)^2 "
                                        "divisibility proxy for lambda-regularity: ") +
                            e.what());
    }
    const Complex den = 2.0 - w.trace_x_squared;
    if (std::abs(den) < 1e-12)
        throw numeric_error("lambda_torsion: 2 - Tr rho(x_1^2) vanishes (trace +-2 boundary)");
    return evaluate(g, 1.0) / den;
}

/// A fitted unit eps * t^m making reference match candidate.
struct UnitFit {
    int eps = 1;
    int power = 0;
};

/// Fits eps * t^m so that candidate ~ eps * t^m * reference, matching
/// leading degrees and coefficients; phases matter, magnitudes alone
/// are never used.
inline UnitFit fit_unit(const CxLaurent& candidate, const CxLaurent& reference,
                        double tol = 1e-6) {
    if (candidate.is_zero() || reference.is_zero())
        throw numeric_error("fit_unit: zero polynomial");
    UnitFit fit;
    fit.power = candidate.max_degree() - reference.max_degree();
    const Complex ratio = candidate.coefficient(candidate.max_degree()) /
                          reference.coefficient(reference.max_degree());
    fit.eps = (std::abs(ratio - 1.0) <= std::abs(ratio + 1.0)) ? 1 : -1;
    if (std::abs(ratio - static_cast<double>(fit.eps)) > tol * std::max(1.0, std::abs(ratio)))
        throw numeric_error("fit_unit: no +-t^m unit matches, leading ratio " +
                            std::to_string(ratio.real()) + (ratio.imag() < 0 ? "-" : "+") +
                            std::to_string(std::abs(ratio.imag())) + "i");
    return fit;
}

/// Factorization check at the reducible non-abelian representation:
/// det A^1 against delta(t) delta(t e^{2 z0}) delta(t e^{-2 z0}) up to a
/// fitted unit.  Reports the worst coefficient deviation relative to the
/// largest coefficient of det A^1.
struct FactorizationReport {
    Complex z0;
    Representation rep;
    CxLaurent det_a1;
    CxLaurent triple_product; // before unit fit
    UnitFit unit;
    double max_rel_deviation = 0.0;
};

inline FactorizationReport factorization_at_reducible(const Presentation& p, Complex z0,
                                                      int deleted_generator = 1) {
    FactorizationReport report;
    report.z0 = z0;
    report.rep = reducible_nonabelian(z0, p);
    report.det_a1 = det(build_A1(p, report.rep, deleted_generator));

    const AlexanderData alex = alexander_polynomial(p);
    const Complex r = std::exp(2.0 * z0);
    report.triple_product = to_complex(alex.delta) * scale_argument(alex.delta, r) *
                            scale_argument(alex.delta, 1.0 / r);

    report.unit = fit_unit(report.det_a1, report.triple_product);
    const CxLaurent fitted =
        Complex(static_cast<double>(report.unit.eps)) *
        report.triple_product.shifted(report.unit.power);
    report.max_rel_deviation =
        coefficient_deviation(report.det_a1, fitted) / std::max(max_abs_coeff(report.det_a1), 1e-300);
    return report;
}

/// The twisted chain complex of the presentation 2-complex, evaluated at
/// a numeric t0:
///   C_2 = C^{3(k-1)} --d2--> C_1 = C^{3k} --d1--> C_0 = C^3,
/// d2 blocks Phi(dr_i/dx_j), d1 blocks Phi(x_j - 1).
inline BasedChainComplex twisted_presentation_complex(const Presentation& p,
                                                      const Representation& rep, Complex t0) {
    const int k = p.generator_count;
    BasedChainComplex c;
    c.dims = {3, 3 * k, 3 * (k - 1)};
    Eigen::MatrixXcd d1(3, 3 * k);
    for (int j = 0; j < k; ++j) {
        GroupRingElement xj = GroupRingElement::of(Word::generator(j + 1)) - GroupRingElement::one();
        d1.block<3, 3>(0, 3 * j) = phi_at(xj, rep, t0);
    }
    Eigen::MatrixXcd d2(3 * k, 3 * (k - 1));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k - 1; ++i)
            d2.block<3, 3>(3 * j, 3 * i) = phi_at(fox_derivative(p.relators[i], j + 1), rep, t0);
    c.boundaries = {std::move(d1), std::move(d2)};
    return c;
}

} // namespace knot

#endif
