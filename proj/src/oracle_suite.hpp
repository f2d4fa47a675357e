// Helpers for the bundled selftest: random-word sampling and the
// chain-complex vs Wada cross check.
#ifndef KNOT_SRC_ORACLE_SUITE_HPP
#define KNOT_SRC_ORACLE_SUITE_HPP

#include <cmath>
#include <random>

#include "knot/chain_complex.hpp"
#include "knot/torsion.hpp"
#include "knot/word.hpp"

namespace knot::cli {

inline Word selftest_random_word(std::mt19937& rng, int generator_count, int max_length) {
    std::uniform_int_distribution<int> len(0, max_length);
    std::uniform_int_distribution<int> gen(1, generator_count);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<int> letters;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) letters.push_back(gen(rng) * (sign(rng) ? 1 : -1));
    return Word(std::move(letters));
}

/// Worst relative error of generic_acyclic_torsion against the Wada
/// rational value over sample points off the unit circle, after fitting
/// one unit +-t^m at the first point.
inline double cross_oracle_worst_error(const Presentation& p, const Representation& rep,
                                       const WadaInvariant& wada, int point_count) {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> radius(1.1, 1.8);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<int> inside(0, 1);

    bool fitted = false;
    int eps = 1, power = 0;
    double worst = 0.0;
    int checked = 0;
    int guard = 0;
    while (checked < point_count && ++guard < 100 * point_count) {
        double r = radius(rng);
        if (inside(rng)) r = 1.0 / r;
        const double a = angle(rng);
        const Complex t0 = r * Complex(std::cos(a), std::sin(a));
        if (std::abs(evaluate(wada.denominator, t0)) < 1e-3) continue;
        if (std::abs(evaluate(wada.numerator, t0)) < 1e-3) continue;

        const Complex oracle = generic_acyclic_torsion(twisted_presentation_complex(p, rep, t0));
        const Complex ratio = oracle / wada_value(wada, t0);
        if (!fitted) {
            power = static_cast<int>(std::lround(std::log(std::abs(ratio)) / std::log(std::abs(t0))));
            const Complex unit = ratio / cpow_int(t0, power);
            eps = (std::abs(unit - 1.0) <= std::abs(unit + 1.0)) ? 1 : -1;
            fitted = true;
        }
        const Complex expected = double(eps) * cpow_int(t0, power);
        worst = std::max(worst, std::abs(ratio - expected) / std::abs(expected));
        ++checked;
    }
    return worst;
}

} // namespace knot::cli

#endif
