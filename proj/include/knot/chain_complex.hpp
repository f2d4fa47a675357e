#ifndef KNOT_CHAIN_COMPLEX_HPP
#define KNOT_CHAIN_COMPLEX_HPP

#include <Eigen/Dense>
#include <vector>

#include "knot/errors.hpp"
#include "knot/laurent.hpp"

namespace knot {

/// A based chain complex of finite-dimensional complex vector spaces
/// C_n -> ... -> C_0 with the coordinate bases preferred.
struct BasedChainComplex {
    std::vector<int> dims;                     // dims[i] = dim C_i
    std::vector<Eigen::MatrixXcd> boundaries;  // boundaries[i] : C_{i+1} -> C_i

    int top() const { return static_cast<int>(dims.size()) - 1; }

    /// d_i : C_i -> C_{i-1} for i in 1..top(); zero maps outside.
    const Eigen::MatrixXcd& d(int i) const { return boundaries[static_cast<std::size_t>(i) - 1]; }

    void validate(double tol = 1e-10) const {
        if (dims.empty()) throw error("chain complex has no terms");
        if (boundaries.size() + 1 != dims.size())
            throw error("chain complex needs one boundary map per adjacent pair");
        for (int i = 1; i <= top(); ++i) {
            if (d(i).rows() != dims[i - 1] || d(i).cols() != dims[i])
                throw error("boundary map dimensions do not match the chain groups");
        }
        for (int i = 1; i + 1 <= top(); ++i) {
            const double scale =
                std::max({d(i).cwiseAbs().maxCoeff(), d(i + 1).cwiseAbs().maxCoeff(), 1.0});
            if ((d(i) * d(i + 1)).cwiseAbs().maxCoeff() > tol * scale * scale)
                throw error("d_i o d_{i+1} != 0: not a chain complex");
        }
    }
};

namespace detail {

inline int numeric_rank(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(tol);
    return static_cast<int>(qr.rank());
}

/// Column indices whose restriction of m has full rank (QR pivots).
inline std::vector<int> pivot_columns(const Eigen::MatrixXcd& m, int rank) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    std::vector<int> cols(rank);
    for (int i = 0; i < rank; ++i)
        cols[i] = static_cast<int>(qr.colsPermutation().indices()(i));
    return cols;
}

} // namespace detail

inline std::vector<int> boundary_ranks(const BasedChainComplex& c, double tol = 1e-8) {
    std::vector<int> r(c.dims.size() + 1, 0); // r[i] = rank d_i, r[0] = r[n+1] = 0
    for (int i = 1; i <= c.top(); ++i) r[i] = detail::numeric_rank(c.d(i), tol);
    return r;
}

inline bool is_acyclic(const BasedChainComplex& c, double tol = 1e-8) {
    const auto r = boundary_ranks(c, tol);
    for (int i = 0; i <= c.top(); ++i)
        if (r[i] + r[i + 1] != c.dims[i]) return false;
    return true;
}

/// Sign-determined torsion of an acyclic based complex: the alternating
/// product of the transition determinants [d_{i+1}(b^{i+1}) b^i / c^i]
/// with exponents (-1)^{i+1}.  With no homology the extra sign exponent
/// |C_*| vanishes, so the leading sign is +1.  The b^i may be supplied
/// explicitly (as column selections); the value does not depend on any
/// admissible choice.
inline Complex generic_acyclic_torsion(const BasedChainComplex& c,
                                       const std::vector<std::vector<int>>* b_columns = nullptr,
                                       double tol = 1e-8) {
    c.validate();
    const auto r = boundary_ranks(c, tol);
    for (int i = 0; i <= c.top(); ++i)
        if (r[i] + r[i + 1] != c.dims[i])
            throw numeric_error("generic_acyclic_torsion: complex is not acyclic at degree " +
                                std::to_string(i));

    const int n = c.top();
    std::vector<std::vector<int>> b(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        if (b_columns) {
            b[i] = (*b_columns)[i];
            if (static_cast<int>(b[i].size()) != r[i])
                throw error("generic_acyclic_torsion: b^" + std::to_string(i) +
                            " must select rank-many columns");
            Eigen::MatrixXcd sub(c.dims[i - 1], r[i]);
            for (int j = 0; j < r[i]; ++j) sub.col(j) = c.d(i).col(b[i][j]);
            if (detail::numeric_rank(sub, tol) != r[i])
                throw numeric_error("generic_acyclic_torsion: selected b^" + std::to_string(i) +
                                    " does not span the boundary image");
        } else {
            b[i] = detail::pivot_columns(c.d(i), r[i]);
        }
    }

    Complex torsion = 1.0;
    for (int i = 0; i <= n; ++i) {
        const int dim = c.dims[i];
        if (dim == 0) continue;
        Eigen::MatrixXcd s(dim, dim);
        int col = 0;
        if (i + 1 <= n)
            for (int j : b[i + 1]) s.col(col++) = c.d(i + 1).col(j);
        if (i >= 1)
            for (int j : b[i]) {
                s.col(col) = Eigen::VectorXcd::Zero(dim);
                s(j, col) = 1.0;
                ++col;
            }
        if (col != dim)
            throw numeric_error("generic_acyclic_torsion: transition matrix is not square");
        const Complex det_i = s.partialPivLu().determinant();
        if (det_i == Complex(0.0))
            throw numeric_error("generic_acyclic_torsion: singular transition matrix");
        if ((i + 1) % 2 == 0)
            torsion *= det_i;
        else
            torsion /= det_i;
    }
    return torsion;
}

} // namespace knot

#endif
