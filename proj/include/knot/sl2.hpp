#ifndef KNOT_SL2_HPP
#define KNOT_SL2_HPP

#include <Eigen/Dense>
#include <complex>

#include "knot/errors.hpp"
#include "knot/laurent.hpp"

namespace knot {

using SL2Value = Eigen::Matrix2cd; // unimodular 2x2 complex matrix
using Ad3Value = Eigen::Matrix3cd; // adjoint image in the ordered basis {E, H, F}

inline bool is_unimodular(const SL2Value& g, double tol = 1e-10) {
    return std::abs(g.determinant() - 1.0) <= tol;
}

/// Inverse of a unimodular matrix, [[d,-b],[-c,a]].
inline SL2Value sl2_inverse(const SL2Value& g) {
    SL2Value inv;
    inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    return inv;
}

/// Coordinates of a traceless matrix [[h, e], [f, -h]] in {E, H, F}.
inline Eigen::Vector3cd sl2_coordinates(const Eigen::Matrix2cd& m) {
    return Eigen::Vector3cd(m(0, 1), m(0, 0), m(1, 0));
}

/// Matrix of x -> g x g^{-1} on sl2(C) in the ordered basis {E, H, F}.
/// Kills the center: adjoint(-I) is the identity.
inline Ad3Value adjoint(const SL2Value& g) {
    static const Eigen::Matrix2cd E = (Eigen::Matrix2cd() << 0, 1, 0, 0).finished();
    static const Eigen::Matrix2cd H = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    static const Eigen::Matrix2cd F = (Eigen::Matrix2cd() << 0, 0, 1, 0).finished();
    const SL2Value ginv = sl2_inverse(g);
    Ad3Value ad;
    ad.col(0) = sl2_coordinates(g * E * ginv);
    ad.col(1) = sl2_coordinates(g * H * ginv);
    ad.col(2) = sl2_coordinates(g * F * ginv);
    return ad;
}

} // namespace knot

#endif
