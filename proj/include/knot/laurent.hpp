#ifndef KNOT_LAURENT_HPP
#define KNOT_LAURENT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "knot/errors.hpp"

namespace knot {

using Complex = std::complex<double>;

/// Integer power of a complex number (negative exponents allowed).
inline Complex cpow_int(Complex z, int m) {
    if (m < 0) return 1.0 / cpow_int(z, -m);
    Complex r = 1.0;
    while (m > 0) {
        if (m & 1) r *= z;
        z *= z;
        m >>= 1;
    }
    return r;
}

template <class Scalar>
struct laurent_traits {
    static constexpr bool is_exact = std::is_integral_v<Scalar>;
};

inline constexpr double kDefaultTrimThreshold = 1e-10;

/// Laurent polynomial with dense coefficients from min_degree upward.
///
/// Two coefficient domains share this interface: exact 64-bit integers
/// and complex doubles.  Canonical form: the zero polynomial has an
/// empty coefficient vector, otherwise the first and last coefficients
/// are nonzero (exact) or above the trim threshold relative to the
/// largest coefficient magnitude (float).
template <class Scalar>
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;

    LaurentPolynomial(int min_degree, std::vector<Scalar> coeffs,
                      double trim_threshold = kDefaultTrimThreshold)
        : min_degree_(min_degree), coeffs_(std::move(coeffs)) {
        trim(trim_threshold);
    }

    static LaurentPolynomial monomial(int degree, Scalar coeff = Scalar(1)) {
        return LaurentPolynomial(degree, {coeff});
    }
    static LaurentPolynomial constant(Scalar c) { return monomial(0, c); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    int min_degree() const noexcept { return min_degree_; }
    int max_degree() const noexcept { return min_degree_ + static_cast<int>(coeffs_.size()) - 1; }
    int span() const noexcept { return is_zero() ? 0 : max_degree() - min_degree(); }
    const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }

    Scalar coefficient(int degree) const {
        if (is_zero() || degree < min_degree_ || degree > max_degree()) return Scalar(0);
        return coeffs_[static_cast<std::size_t>(degree - min_degree_)];
    }

    /// Multiplication by t^m.
    LaurentPolynomial shifted(int m) const {
        LaurentPolynomial r = *this;
        if (!r.is_zero()) r.min_degree_ += m;
        return r;
    }

    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int lo = std::min(a.min_degree(), b.min_degree());
        int hi = std::max(a.max_degree(), b.max_degree());
        std::vector<Scalar> c(static_cast<std::size_t>(hi - lo + 1), Scalar(0));
        for (int d = a.min_degree(); d <= a.max_degree(); ++d) c[d - lo] += a.coefficient(d);
        for (int d = b.min_degree(); d <= b.max_degree(); ++d) c[d - lo] += b.coefficient(d);
        return LaurentPolynomial(lo, std::move(c));
    }

    friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a + (Scalar(-1) * b);
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return LaurentPolynomial();
        std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return LaurentPolynomial(a.min_degree_ + b.min_degree_, std::move(c));
    }

    friend LaurentPolynomial operator*(Scalar s, const LaurentPolynomial& p) {
        std::vector<Scalar> c = p.coeffs_;
        for (Scalar& v : c) v *= s;
        return LaurentPolynomial(p.min_degree_, std::move(c));
    }

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return (a.is_zero() && b.is_zero()) ||
               (a.min_degree_ == b.min_degree_ && a.coeffs_ == b.coeffs_);
    }
    friend bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return !(a == b);
    }

private:
    static double magnitude(const Scalar& v) {
        if constexpr (laurent_traits<Scalar>::is_exact)
            return static_cast<double>(v < 0 ? -v : v);
        else
            return std::abs(v);
    }

    void trim(double threshold) {
        if constexpr (laurent_traits<Scalar>::is_exact) {
            (void)threshold;
            std::size_t lo = 0, hi = coeffs_.size();
            while (lo < hi && coeffs_[lo] == Scalar(0)) ++lo;
            while (hi > lo && coeffs_[hi - 1] == Scalar(0)) --hi;
            min_degree_ += static_cast<int>(lo);
            coeffs_ = std::vector<Scalar>(coeffs_.begin() + lo, coeffs_.begin() + hi);
        } else {
            double peak = 0;
            for (const Scalar& v : coeffs_) peak = std::max(peak, magnitude(v));
            const double cut = peak * threshold;
            std::size_t lo = 0, hi = coeffs_.size();
            while (lo < hi && magnitude(coeffs_[lo]) <= cut) ++lo;
            while (hi > lo && magnitude(coeffs_[hi - 1]) <= cut) --hi;
            min_degree_ += static_cast<int>(lo);
            coeffs_ = std::vector<Scalar>(coeffs_.begin() + lo, coeffs_.begin() + hi);
        }
        if (coeffs_.empty()) min_degree_ = 0;
    }

    int min_degree_ = 0;
    std::vector<Scalar> coeffs_;
};

using IntLaurent = LaurentPolynomial<std::int64_t>;
using CxLaurent = LaurentPolynomial<Complex>;

inline CxLaurent to_complex(const IntLaurent& p) {
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    return CxLaurent(p.min_degree(), std::move(c));
}

template <class Scalar>
inline Complex evaluate(const LaurentPolynomial<Scalar>& p, Complex t) {
    if (p.is_zero()) return 0.0;
    Complex acc = 0.0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * t + static_cast<Complex>(*it);
    return acc * cpow_int(t, p.min_degree());
}

/// d/dt.
template <class Scalar>
inline LaurentPolynomial<Scalar> derivative(const LaurentPolynomial<Scalar>& p) {
    if (p.is_zero()) return {};
    std::vector<Scalar> c(p.coeffs().size(), Scalar(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        c[i] = p.coeffs()[i] * Scalar(p.min_degree() + static_cast<int>(i));
    return LaurentPolynomial<Scalar>(p.min_degree() - 1, std::move(c));
}

/// p(s*t) as a complex Laurent polynomial in t.
template <class Scalar>
inline CxLaurent scale_argument(const LaurentPolynomial<Scalar>& p, Complex s) {
    if (p.is_zero()) return {};
    std::vector<Complex> c(p.coeffs().size());
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        c[i] = static_cast<Complex>(p.coeffs()[i]) * cpow_int(s, p.min_degree() + static_cast<int>(i));
    return CxLaurent(p.min_degree(), std::move(c));
}

template <class Scalar>
inline double max_abs_coeff(const LaurentPolynomial<Scalar>& p) {
    double m = 0;
    for (const Scalar& v : p.coeffs()) m = std::max(m, std::abs(static_cast<Complex>(v)));
    return m;
}

/// Largest coefficient deviation |a_d - b_d| over all degrees.
template <class Scalar>
inline double coefficient_deviation(const LaurentPolynomial<Scalar>& a,
                                    const LaurentPolynomial<Scalar>& b) {
    const LaurentPolynomial<Scalar> diff = a - b;
    double m = 0;
    for (const Scalar& v : diff.coeffs()) m = std::max(m, std::abs(static_cast<Complex>(v)));
    return m;
}

/// Exact quotient num/den.  Integer domain: remainder must vanish
/// exactly.  Float domain: the remainder's max coefficient must stay
/// below rel_tol times the numerator's.  Failure signals
/// non-divisibility (used upstream as the lambda-regularity proxy).
template <class Scalar>
inline LaurentPolynomial<Scalar> divide_exact(const LaurentPolynomial<Scalar>& num,
                                              const LaurentPolynomial<Scalar>& den,
                                              double rel_tol = 1e-8) {
    if (den.is_zero()) throw error("divide_exact: division by zero polynomial");
    if (num.is_zero()) return {};
    if (num.span() < den.span())
        throw numeric_error("divide_exact: numerator degree span below denominator's");

    std::vector<Scalar> rem = num.coeffs();
    const std::vector<Scalar>& d = den.coeffs();
    const std::size_t qsize = rem.size() - d.size() + 1;
    std::vector<Scalar> quot(qsize, Scalar(0));
    for (std::size_t step = 0; step < qsize; ++step) {
        const std::size_t top = rem.size() - 1 - step;
        Scalar lead = rem[top];
        Scalar q;
        if constexpr (laurent_traits<Scalar>::is_exact) {
            if (d.back() == Scalar(0)) throw error("divide_exact: denominator not canonical");
            if (lead % d.back() != Scalar(0))
                throw numeric_error("divide_exact: not divisible (leading coefficient)");
            q = lead / d.back();
        } else {
            q = lead / d.back();
        }
        quot[qsize - 1 - step] = q;
        for (std::size_t i = 0; i < d.size(); ++i) rem[top - (d.size() - 1) + i] -= q * d[i];
    }
    double rem_norm = 0;
    for (const Scalar& v : rem) rem_norm = std::max(rem_norm, std::abs(static_cast<Complex>(v)));
    if constexpr (laurent_traits<Scalar>::is_exact) {
        if (rem_norm != 0) throw numeric_error("divide_exact: nonzero remainder");
    } else {
        if (rem_norm > rel_tol * std::max(max_abs_coeff(num), 1e-300))
            throw numeric_error("divide_exact: remainder " + std::to_string(rem_norm) +
                                " above tolerance");
    }
    return LaurentPolynomial<Scalar>(num.min_degree() - den.min_degree(), std::move(quot));
}

/// Returns eps * t^m * p with result(t) = result(1/t) and result(1) = 1,
/// or throws when no such unit multiple exists.
inline IntLaurent normalize_symmetric(const IntLaurent& p) {
    if (p.is_zero()) throw numeric_error("normalize_symmetric: zero polynomial");
    const int lo = p.min_degree(), hi = p.max_degree();
    if ((lo + hi) % 2 != 0)
        throw numeric_error("normalize_symmetric: odd degree span, no integer monomial shift");
    const auto& c = p.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != c[c.size() - 1 - i])
            throw numeric_error("normalize_symmetric: coefficients not palindromic");
    std::int64_t at_one = 0;
    for (std::int64_t v : c) at_one += v;
    if (at_one != 1 && at_one != -1)
        throw numeric_error("normalize_symmetric: p(1) = " + std::to_string(at_one) +
                            ", not a unit");
    const int m = -(lo + hi) / 2;
    return (at_one < 0 ? std::int64_t(-1) : std::int64_t(1)) * p.shifted(m);
}

template <class Scalar>
inline std::string to_string(const LaurentPolynomial<Scalar>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.min_degree(); d <= p.max_degree(); ++d) {
        Scalar v = p.coefficient(d);
        if (v == Scalar(0)) continue;
        if (!out.empty()) out += " + ";
        if constexpr (laurent_traits<Scalar>::is_exact)
            out += std::to_string(v);
        else
            out += "(" + std::to_string(v.real()) + (v.imag() < 0 ? "-" : "+") +
                   std::to_string(std::abs(v.imag())) + "i)";
        if (d != 0) out += "*t^" + std::to_string(d);
    }
    return out;
}

} // namespace knot

#endif
