#ifndef KNOT_FOX_HPP
#define KNOT_FOX_HPP

#include "knot/group_ring.hpp"
#include "knot/word.hpp"

namespace knot {

/// Fox free derivative d w / d x_j.
///
/// Prefix-sum rule: for w = l_1 ... l_m the derivative is
/// sum_i (l_1 ... l_{i-1}) * d l_i / d x_j, where d x_j / d x_j = 1,
/// d x_j^{-1} / d x_j = -x_j^{-1} and every other letter contributes 0.
/// Satisfies the product rule d(uv) = du + u dv.
inline GroupRingElement fox_derivative(const Word& w, int j) {
    if (j <= 0) throw error("fox_derivative: generator index must be >= 1");
    GroupRingElement result;
    Word prefix;
    for (int l : w.letters()) {
        if (l == j) {
            result += GroupRingElement::of(prefix);
        } else if (l == -j) {
            result += GroupRingElement::of(prefix * Word::generator(j, -1), -1);
        }
        prefix = prefix * Word(std::vector<int>{l});
    }
    return result;
}

} // namespace knot

#endif
