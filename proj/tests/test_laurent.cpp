#include <doctest.h>

#include <complex>
#include <random>

#include "knot/laurent.hpp"
#include "knot/laurent_matrix.hpp"
#include "knot/roots.hpp"

using knot::Complex;
using knot::CxLaurent;
using knot::CxLaurentMatrix;
using knot::IntLaurent;
using knot::IntLaurentMatrix;

namespace {

IntLaurent t_minus_1() { return IntLaurent(0, {-1, 1}); }

std::mt19937 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::string(tag).size());
    return std::mt19937(seq);
}

IntLaurent random_int_poly(std::mt19937& rng, int max_span = 4) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> span(0, max_span);
    std::uniform_int_distribution<int> shift(-3, 3);
    std::vector<std::int64_t> c(span(rng) + 1);
    for (auto& v : c) v = coeff(rng);
    if (c.back() == 0) c.back() = 1;
    return IntLaurent(shift(rng), std::move(c));
}

CxLaurent random_cx_poly(std::mt19937& rng, int max_span = 4) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> span(0, max_span);
    std::uniform_int_distribution<int> shift(-3, 3);
    std::vector<Complex> c(span(rng) + 1);
    for (auto& v : c) v = Complex(coeff(rng), coeff(rng));
    return CxLaurent(shift(rng), std::move(c));
}

} // namespace

TEST_CASE("canonical form trims ends and keeps zero canonical") {
    CHECK(IntLaurent(2, {0, 0}).is_zero());
    const IntLaurent p(-2, {0, 3, 0, 5, 0});
    CHECK(p.min_degree() == -1);
    CHECK(p.max_degree() == 1);
    CHECK(p.coefficient(-1) == 3);
    CHECK(p.coefficient(0) == 0);
    CHECK(p.coefficient(1) == 5);

    const CxLaurent q(0, {Complex(1e-14), Complex(1.0), Complex(1e-14)});
    CHECK(q.min_degree() == 1);
    CHECK(q.coeffs().size() == 1);
}

TEST_CASE("determinant, exact domain") {
    IntLaurentMatrix one(1, 1);
    one.at(0, 0) = t_minus_1();
    CHECK(det(one) == t_minus_1());

    IntLaurentMatrix diag(2, 2);
    diag.at(0, 0) = IntLaurent::monomial(1);
    diag.at(1, 1) = IntLaurent::monomial(-1);
    CHECK(det(diag) == IntLaurent::constant(1));

    // [[1-t, 1], [-t, 1-t]] -> (1-t)^2 + t = t^2 - t + 1
    IntLaurentMatrix m(2, 2);
    m.at(0, 0) = IntLaurent(0, {1, -1});
    m.at(0, 1) = IntLaurent::constant(1);
    m.at(1, 0) = IntLaurent(1, {-1});
    m.at(1, 1) = IntLaurent(0, {1, -1});
    CHECK(det(m) == IntLaurent(0, {1, -1, 1}));

    IntLaurentMatrix rect(1, 2);
    CHECK_THROWS_AS(det(rect), knot::error);
}

TEST_CASE("determinant, float domain via interpolation") {
    CxLaurentMatrix diag(2, 2);
    diag.at(0, 0) = CxLaurent::monomial(1);
    diag.at(1, 1) = CxLaurent::monomial(-1);
    const CxLaurent d = det(diag);
    CHECK(d.min_degree() == 0);
    CHECK(d.max_degree() == 0);
    CHECK(std::abs(d.coefficient(0) - Complex(1.0)) < 1e-12);

    CxLaurentMatrix m(2, 2);
    m.at(0, 0) = CxLaurent(0, {1.0, -1.0});
    m.at(0, 1) = CxLaurent::constant(1.0);
    m.at(1, 0) = CxLaurent(1, {-1.0});
    m.at(1, 1) = CxLaurent(0, {1.0, -1.0});
    const CxLaurent dm = det(m);
    CHECK(std::abs(dm.coefficient(0) - 1.0) < 1e-12);
    CHECK(std::abs(dm.coefficient(1) + 1.0) < 1e-12);
    CHECK(std::abs(dm.coefficient(2) - 1.0) < 1e-12);
}

TEST_CASE("det multiplicativity") {
    auto rng = rng_for("det-mult");
    for (int trial = 0; trial < 25; ++trial) {
        IntLaurentMatrix a(2, 2), b(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a.at(i, j) = random_int_poly(rng, 2);
                b.at(i, j) = random_int_poly(rng, 2);
            }
        IntLaurentMatrix ab(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                ab.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
        CHECK(det(ab) == det(a) * det(b));
    }
    for (int trial = 0; trial < 25; ++trial) {
        CxLaurentMatrix a(2, 2), b(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a.at(i, j) = random_cx_poly(rng, 2);
                b.at(i, j) = random_cx_poly(rng, 2);
            }
        CxLaurentMatrix ab(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                ab.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
        const CxLaurent lhs = det(ab), rhs = det(a) * det(b);
        const double scale = std::max(knot::max_abs_coeff(lhs), 1e-300);
        CHECK(knot::coefficient_deviation(lhs, rhs) / scale < 1e-9);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    auto rng = rng_for("eval-hom");
    std::uniform_real_distribution<double> re(-1.2, 1.2);
    for (int trial = 0; trial < 50; ++trial) {
        const CxLaurent p = random_cx_poly(rng), q = random_cx_poly(rng);
        Complex t0(re(rng), re(rng));
        if (std::abs(t0) < 0.2) t0 += 0.5;
        const Complex lhs = evaluate(p * q, t0);
        const Complex rhs = evaluate(p, t0) * evaluate(q, t0);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("divide_exact") {
    const IntLaurent square(0, {1, -2, 1});
    CHECK(divide_exact(square, t_minus_1()) == IntLaurent(0, {-1, 1}));

    const IntLaurent trefoil(-1, {1, -1, 1});
    CHECK_THROWS_AS(divide_exact(trefoil, t_minus_1()), knot::numeric_error);

    CHECK(divide_exact(IntLaurent(), t_minus_1()).is_zero());
    CHECK_THROWS_AS(divide_exact(t_minus_1(), IntLaurent()), knot::error);

    // float domain with tolerance
    const CxLaurent fsq(0, {1.0, -2.0, 1.0});
    const CxLaurent fden(0, {-1.0, 1.0});
    const CxLaurent q = divide_exact(fsq, fden);
    CHECK(std::abs(q.coefficient(0) + 1.0) < 1e-12);
    CHECK(std::abs(q.coefficient(1) - 1.0) < 1e-12);
    CHECK_THROWS_AS(divide_exact(CxLaurent(-1, {1.0, -1.0, 1.0}), fden), knot::numeric_error);
}

TEST_CASE("divide_exact inverts multiplication") {
    auto rng = rng_for("divide");
    for (int trial = 0; trial < 40; ++trial) {
        const IntLaurent a = random_int_poly(rng), b = random_int_poly(rng);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(divide_exact(a * b, b) == a);
    }
}

TEST_CASE("normalize_symmetric") {
    CHECK(knot::normalize_symmetric(IntLaurent(0, {1, -1, 1})) == IntLaurent(-1, {1, -1, 1}));
    CHECK(knot::normalize_symmetric(IntLaurent(0, {-1, 3, -1})) == IntLaurent(-1, {-1, 3, -1}));
    CHECK(knot::normalize_symmetric(IntLaurent::constant(1)) == IntLaurent::constant(1));
    CHECK(knot::normalize_symmetric(IntLaurent::constant(-1)) == IntLaurent::constant(1));

    CHECK_THROWS_AS(knot::normalize_symmetric(t_minus_1()), knot::numeric_error); // odd span
    CHECK_THROWS_AS(knot::normalize_symmetric(IntLaurent(0, {2, 0, 2})), knot::numeric_error);
    CHECK_THROWS_AS(knot::normalize_symmetric(IntLaurent(0, {1, 2, 3})), knot::numeric_error);
    CHECK_THROWS_AS(knot::normalize_symmetric(IntLaurent()), knot::numeric_error);
}

TEST_CASE("normalize_symmetric output is palindromic on random symmetric inputs") {
    auto rng = rng_for("palindrome");
    for (int trial = 0; trial < 40; ++trial) {
        IntLaurent p = random_int_poly(rng, 3);
        if (p.is_zero()) continue;
        // s(t) = p(t) * p(1/t) is symmetric; fix s(1) = 1 by requiring p(1) = +-1.
        std::int64_t at_one = 0;
        for (auto c : p.coeffs()) at_one += c;
        p = p - IntLaurent::constant(at_one - 1);
        std::vector<std::int64_t> rev(p.coeffs().rbegin(), p.coeffs().rend());
        const IntLaurent mirror(-p.max_degree(), std::move(rev));
        const IntLaurent s = knot::normalize_symmetric(p * mirror);
        const auto& c = s.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == c[c.size() - 1 - i]);
        CHECK(s.min_degree() == -s.max_degree());
    }
}

TEST_CASE("polynomial roots with Newton polish") {
    // (t-2)(t-3) = 6 - 5t + t^2
    const IntLaurent p(0, {6, -5, 1});
    auto roots = knot::polynomial_roots(p);
    REQUIRE(roots.size() == 2);
    std::sort(roots.begin(), roots.end(),
              [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(roots[0] - 2.0) < 1e-12);
    CHECK(std::abs(roots[1] - 3.0) < 1e-12);

    CHECK(knot::polynomial_roots(IntLaurent::constant(5)).empty());
    CHECK_THROWS_AS(knot::polynomial_roots(IntLaurent()), knot::error);
}

TEST_CASE("derivative and scale_argument") {
    const IntLaurent p(-1, {1, -1, 1}); // t^-1 - 1 + t
    const IntLaurent dp = derivative(p);
    CHECK(dp == IntLaurent(-2, {-1, 0, 1}));

    const Complex s(0.5, 0.25);
    const CxLaurent scaled = scale_argument(p, s);
    const Complex t0(1.3, -0.4);
    CHECK(std::abs(evaluate(scaled, t0) - evaluate(p, s * t0)) < 1e-12);
}
