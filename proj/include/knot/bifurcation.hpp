#ifndef KNOT_BIFURCATION_HPP
#define KNOT_BIFURCATION_HPP

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "knot/alexander.hpp"
#include "knot/representation.hpp"
#include "knot/roots.hpp"
#include "knot/torsion.hpp"

namespace knot {

/// A root of delta together with the reducible non-abelian
/// representation sitting over it and the predicted limit value.
struct BifurcationPoint {
    AlexanderRoot root;
    std::optional<Representation> rho; // absent when construction failed
    Complex rhs = 0.0;                 // rhs_limit at z0 (simple roots only)
    std::string failure;               // nonempty when a construction step failed

    bool ok() const { return failure.empty(); }
};

/// One bifurcation point per root of delta (inverse pairs both listed).
/// Construction failures are reported per point, not propagated.
inline std::vector<BifurcationPoint> bifurcation_points(const Presentation& p,
                                                        const AlexanderData& alex) {
    std::vector<BifurcationPoint> points;
    for (const AlexanderRoot& root : alex.roots) {
        BifurcationPoint b;
        b.root = root;
        try {
            b.rho = reducible_nonabelian(root.z0, p);
            // the character must match the diagonal representation phi_{z0}
            const Representation diag = abelian_rep(root.z0, p);
            std::mt19937 rng(1234);
            std::uniform_int_distribution<int> gen(1, p.generator_count);
            std::uniform_int_distribution<int> sign(0, 1);
            for (int i = 0; i < 25; ++i) {
                std::vector<int> letters;
                for (int l = 0; l < 8; ++l) letters.push_back(gen(rng) * (sign(rng) ? 1 : -1));
                const Word w{letters};
                if (std::abs(trace_of(*b.rho, w) - trace_of(diag, w)) > 1e-8)
                    throw numeric_error("character of rho_{z0} deviates from phi_{z0}");
            }
            if (root.simple) b.rhs = rhs_limit(root.z0, alex);
        } catch (const error& e) {
            b.failure = e.what();
        }
        points.push_back(std::move(b));
    }
    return points;
}

inline std::vector<BifurcationPoint> bifurcation_points(const Presentation& p) {
    return bifurcation_points(p, alexander_polynomial(p));
}

/// |delta(e^{2 z0}) / (e^{z0} - e^{-z0})|: the abelian torsion magnitude
/// at the bifurcation parameter, which must vanish there.
inline double abelian_zero_check(const BifurcationPoint& b, const AlexanderData& a) {
    return std::abs(abelian_torsion(b.root.z0, a));
}

struct LimitStep {
    double offset = 0.0;       // relative distance along the ray in s
    Complex s;
    Complex u;
    double distance = 0.0;     // |s - s0|
    double rep_residual = 0.0;
    double commutator_margin = 0.0; // |Tr rho([x1,x2]) - 2|, irreducibility witness
    double torsion_mag = 0.0;  // |T^K_lambda| up to sign
};

struct LimitExperiment {
    Complex z0;
    Complex rhs = 0.0;
    double rhs_mag = 0.0;
    std::vector<LimitStep> steps;
    double extrapolated = 0.0; // Richardson limit of |T| from the last three steps
    double rel_error = 0.0;    // against |rhs|
    bool monotone = true;      // successive-difference diagnostic over the final 4 steps
};

namespace detail {

/// Safeguarded Newton iteration on a polynomial in u: tolerance on the
/// residual, damping by halves on overshoot.
inline std::optional<Complex> newton_on_poly(const CxLaurent& q, Complex seed, double tol = 1e-12,
                                             int max_iter = 50) {
    const CxLaurent dq = derivative(q);
    Complex u = seed;
    double best = std::abs(evaluate(q, u));
    const double scale = std::max(max_abs_coeff(q), 1e-300);
    for (int iter = 0; iter < max_iter; ++iter) {
        const Complex f = evaluate(q, u);
        if (std::abs(f) <= tol * scale) return u;
        const Complex df = evaluate(dq, u);
        if (std::abs(df) < 1e-300) return std::nullopt;
        Complex step = f / df;
        for (int damp = 0; damp < 8; ++damp) {
            const double trial = std::abs(evaluate(q, u - step));
            if (trial <= best || damp == 7) {
                u -= step;
                best = std::min(best, trial);
                break;
            }
            step *= 0.5;
        }
    }
    return std::abs(evaluate(q, u)) <= 1e3 * tol * scale ? std::optional<Complex>(u) : std::nullopt;
}

} // namespace detail

/// Continuation of irreducible representations into a bifurcation point
/// along the ray s_j = s0 (1 + start_offset 2^{-j}), solving the Riley
/// residual in u by Newton at each step and extrapolating |T^K_lambda|
/// by Richardson from the last three steps.
inline LimitExperiment verify_limit(const Presentation& p, const BifurcationPoint& b,
                                    int steps = 12, double start_offset = 2.048e-2,
                                    double newton_tol = 1e-12, double residual_tol = 1e-8) {
    if (p.generator_count != 2)
        throw error("verify_limit: continuation requires a 2-generator presentation");
    if (!b.ok()) throw error("verify_limit: bifurcation point carries a failure: " + b.failure);
    if (!b.root.simple)
        throw error("verify_limit: root is not simple; the limit theorem does not apply");
    if (steps < 3) throw error("verify_limit: need at least 3 steps");
    if (start_offset * std::pow(2.0, -(steps - 1)) < 1e-6)
        throw error("verify_limit: offset floor below 1e-6; the Jacobian degenerates at u = 0");

    LimitExperiment exp;
    exp.z0 = b.root.z0;
    exp.rhs = b.rhs;
    exp.rhs_mag = std::abs(b.rhs);

    const Complex s0 = std::exp(b.root.z0);
    Complex u_prev;
    bool have_prev = false;

    for (int j = 0; j < steps; ++j) {
        LimitStep step;
        step.offset = start_offset * std::pow(2.0, -j);
        step.s = s0 * (1.0 + step.offset);
        step.distance = std::abs(step.s - s0);

        const CxLaurent q = riley_residual_poly(p, step.s);
        std::optional<Complex> u;
        if (have_prev) {
            u = detail::newton_on_poly(q, u_prev, newton_tol);
        } else {
            // Linearization seed -q(0)/q'(0); branch selection falls back to
            // the smallest |u| root away from the reducible locus u = 0.
            const Complex q0 = evaluate(q, 0.0);
            const Complex dq0 = evaluate(derivative(q), 0.0);
            if (std::abs(dq0) > 1e-300) u = detail::newton_on_poly(q, -q0 / dq0, newton_tol);
            if (!u || std::abs(*u) < 1e-10) {
                u.reset();
                double best = 1e300;
                for (Complex cand : polynomial_roots(q, newton_tol)) {
                    if (std::abs(cand) < 1e-10) continue;
                    if (std::abs(cand) < best) {
                        best = std::abs(cand);
                        u = cand;
                    }
                }
            }
        }
        if (!u) {
            // one retry from the nearest companion-matrix root before failing
            double best = 1e300;
            std::optional<Complex> retry;
            for (Complex cand : polynomial_roots(q, newton_tol)) {
                const double dist = have_prev ? std::abs(cand - u_prev) : std::abs(cand);
                if (dist < best && std::abs(cand) > 1e-10) {
                    best = dist;
                    retry = cand;
                }
            }
            if (retry) u = detail::newton_on_poly(q, *retry, newton_tol);
            if (!u)
                throw numeric_error("verify_limit: Newton diverged at step " + std::to_string(j) +
                                    " (offset " + std::to_string(step.offset) + ")");
        }
        step.u = *u;
        u_prev = *u;
        have_prev = true;

        Representation rep = riley_family(p, step.s, step.u);
        step.rep_residual = rep.residual;
        if (rep.residual > residual_tol)
            throw numeric_error("verify_limit: relator residual " + std::to_string(rep.residual) +
                                " at step " + std::to_string(j) +
                                "; scalar residual zero did not force rho(r) = I");

        const Word commutator = parse_word("x1*x2*X1*X2");
        step.commutator_margin = std::abs(trace_of(rep, commutator) - 2.0);

        step.torsion_mag = std::abs(lambda_torsion_up_to_sign(p, rep));
        exp.steps.push_back(step);
    }

    const auto& v = exp.steps;
    const double a1 = 2.0 * v[v.size() - 2].torsion_mag - v[v.size() - 3].torsion_mag;
    const double a2 = 2.0 * v[v.size() - 1].torsion_mag - v[v.size() - 2].torsion_mag;
    exp.extrapolated = (4.0 * a2 - a1) / 3.0;
    exp.rel_error = std::abs(exp.extrapolated - exp.rhs_mag) / std::max(exp.rhs_mag, 1e-300);

    // successive relative differences should shrink over the last 4 steps
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        diffs.push_back(std::abs(v[i + 1].torsion_mag - v[i].torsion_mag) /
                        std::max(v[i + 1].torsion_mag, 1e-300));
    for (std::size_t i = diffs.size() >= 4 ? diffs.size() - 4 : 0; i + 1 < diffs.size(); ++i)
        if (diffs[i + 1] >= diffs[i]) exp.monotone = false;

    return exp;
}

} // namespace knot

#endif
