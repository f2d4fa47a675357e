#ifndef KNOT_LAURENT_MATRIX_HPP
#define KNOT_LAURENT_MATRIX_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "knot/laurent.hpp"

namespace knot {

/// Rectangular matrix with Laurent-polynomial entries (row major).
template <class Scalar>
class LaurentMatrix {
public:
    LaurentMatrix() = default;
    LaurentMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    LaurentPolynomial<Scalar>& at(int i, int j) {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const LaurentPolynomial<Scalar>& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    /// Pointwise evaluation to a dense complex matrix.
    Eigen::MatrixXcd evaluated(Complex t) const {
        Eigen::MatrixXcd m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(i, j) = evaluate(at(i, j), t);
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<LaurentPolynomial<Scalar>> entries_;
};

using IntLaurentMatrix = LaurentMatrix<std::int64_t>;
using CxLaurentMatrix = LaurentMatrix<Complex>;

namespace detail {

/// Fraction-free Bareiss determinant over the integer polynomial ring.
/// Rows are first shifted so every entry has nonnegative degrees; the
/// accumulated monomial shift is restored at the end.
inline IntLaurent det_exact(const IntLaurentMatrix& m) {
    const int n = m.rows();
    if (n == 0) return IntLaurent::constant(1);
    std::vector<std::vector<IntLaurent>> a(n, std::vector<IntLaurent>(n));
    int total_shift = 0;
    for (int i = 0; i < n; ++i) {
        bool all_zero = true;
        int row_min = 0;
        for (int j = 0; j < n; ++j) {
            if (!m.at(i, j).is_zero()) {
                row_min = all_zero ? m.at(i, j).min_degree()
                                   : std::min(row_min, m.at(i, j).min_degree());
                all_zero = false;
            }
        }
        if (all_zero) return {};
        total_shift += row_min;
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j).shifted(-row_min);
    }

    std::int64_t sign = 1;
    IntLaurent prev = IntLaurent::constant(1);
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            int swap_row = k + 1;
            while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return {};
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = divide_exact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return (sign * a[n - 1][n - 1]).shifted(total_shift);
}

struct InterpDiagnostic {
    double radius = 1.0;
    int nodes = 0;
    double residual = 0.0;
};

/// Evaluation-interpolation determinant for the complex-float domain.
/// Degree bounds come from per-row entry extremes; nodes are scaled
/// roots of unity, recombined by an inverse DFT.
inline CxLaurent det_float_at_radius(const CxLaurentMatrix& m, double radius, double trim_threshold,
                                     double check_tol, InterpDiagnostic* diag) {
    const int n = m.rows();
    if (n == 0) return CxLaurent::constant(1.0);
    long lo = 0, hi = 0;
    for (int i = 0; i < n; ++i) {
        bool all_zero = true;
        int rmin = 0, rmax = 0;
        for (int j = 0; j < n; ++j) {
            const auto& e = m.at(i, j);
            if (e.is_zero()) continue;
            rmin = all_zero ? e.min_degree() : std::min(rmin, e.min_degree());
            rmax = all_zero ? e.max_degree() : std::max(rmax, e.max_degree());
            all_zero = false;
        }
        if (all_zero) return {};
        lo += rmin;
        hi += rmax;
    }
    const int count = static_cast<int>(hi - lo + 1);

    std::vector<Complex> values(count);
    double value_scale = 0;
    for (int k = 0; k < count; ++k) {
        const double angle = 2.0 * M_PI * k / count;
        const Complex node = radius * Complex(std::cos(angle), std::sin(angle));
        const Complex d = m.evaluated(node).partialPivLu().determinant();
        values[k] = d / cpow_int(node, static_cast<int>(lo));
        value_scale = std::max(value_scale, std::abs(d));
    }

    std::vector<Complex> coeffs(count);
    for (int j = 0; j < count; ++j) {
        Complex acc = 0.0;
        for (int k = 0; k < count; ++k) {
            const double angle = -2.0 * M_PI * j * k / count;
            acc += values[k] * Complex(std::cos(angle), std::sin(angle));
        }
        coeffs[j] = acc / (static_cast<double>(count) * std::pow(radius, j));
    }
    CxLaurent result(static_cast<int>(lo), std::move(coeffs), trim_threshold);

    // Verify at probe points away from the interpolation nodes.
    double worst = 0;
    for (Complex probe : {Complex(1.37, 0.41), Complex(-0.23, 0.86)}) {
        probe *= radius;
        const Complex direct = m.evaluated(probe).partialPivLu().determinant();
        const Complex recon = evaluate(result, probe);
        const double scale = std::max({std::abs(direct), value_scale, 1e-300});
        worst = std::max(worst, std::abs(direct - recon) / scale);
    }
    if (diag) {
        diag->radius = radius;
        diag->nodes = count;
        diag->residual = worst;
    }
    if (worst > check_tol)
        throw numeric_error("determinant interpolation residual " + std::to_string(worst) +
                            " above tolerance (radius " + std::to_string(radius) + ", " +
                            std::to_string(count) + " nodes)");
    return result;
}

} // namespace detail

/// Determinant of a square Laurent matrix.  The exact domain uses
/// fraction-free Bareiss elimination; the float domain evaluates at
/// scaled roots of unity and interpolates, retrying with a different
/// radius when the interpolation check fails.
inline IntLaurent det(const IntLaurentMatrix& m) {
    if (m.rows() != m.cols()) throw error("det: matrix is not square");
    return detail::det_exact(m);
}

inline CxLaurent det(const CxLaurentMatrix& m, double check_tol = 1e-8,
                     double trim_threshold = kDefaultTrimThreshold) {
    if (m.rows() != m.cols()) throw error("det: matrix is not square");
    std::string last;
    for (double radius : {1.0, 1.25, 0.8, 1.5}) {
        try {
            detail::InterpDiagnostic diag;
            return detail::det_float_at_radius(m, radius, trim_threshold, check_tol, &diag);
        } catch (const numeric_error& e) {
            last = e.what();
        }
    }
    throw numeric_error("det: interpolation failed at all radii; " + last);
}

} // namespace knot

#endif
