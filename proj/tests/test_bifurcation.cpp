#include <doctest.h>

#include <cmath>
#include <complex>

#include "knot/bifurcation.hpp"
#include "knot/presets.hpp"

using knot::BifurcationPoint;
using knot::Complex;

namespace {

std::vector<BifurcationPoint> fixture_points(const char* name, bool two_generator = false) {
    const auto preset = knot::find_preset(name);
    const auto p = two_generator ? knot::preset_two_generator(preset)
                                 : knot::preset_presentation(preset);
    return knot::bifurcation_points(p);
}

} // namespace

TEST_CASE("bifurcation points of the fixtures") {
    const auto trefoil = fixture_points("trefoil");
    REQUIRE(trefoil.size() == 2);
    for (const auto& b : trefoil) {
        CHECK(b.ok());
        CHECK(b.root.simple);
        CHECK(std::abs(std::abs(b.root.z0.imag()) - M_PI / 6.0) < 1e-12);
        CHECK(b.rho->residual <= 1e-8);
        CHECK(std::abs(b.rhs) > 1e-9);
    }

    const auto fig8 = fixture_points("figure-eight", /*two_generator=*/true);
    REQUIRE(fig8.size() == 2);
    for (const auto& b : fig8) {
        CHECK(b.ok());
        CHECK(std::abs(b.root.z0.imag()) < 1e-10);
        CHECK(std::abs(std::abs(b.root.z0.real()) - 0.4812) < 5e-4);
    }

    const auto unknot = knot::bifurcation_points(knot::parse_presentation("gens: x1\n"));
    CHECK(unknot.empty());
}

TEST_CASE("abelian torsion magnitude vanishes at every fixture bifurcation point") {
    for (const char* name : {"trefoil", "figure-eight", "5_2"}) {
        const auto p = knot::preset_presentation(knot::find_preset(name));
        const auto alex = knot::alexander_polynomial(p);
        for (const auto& b : knot::bifurcation_points(p, alex)) {
            CHECK(knot::abelian_zero_check(b, alex) <= 1e-8);
            // perturbed parameter stays bounded away from zero
            BifurcationPoint off = b;
            off.root.z0 += 0.1;
            CHECK(knot::abelian_zero_check(off, alex) > 1e-4);
        }
    }
}

TEST_CASE("limit experiment converges to the predicted value: figure-eight") {
    const auto p = knot::preset_two_generator(knot::find_preset("figure-eight"));
    const auto points = knot::bifurcation_points(p);
    REQUIRE(points.size() == 2);
    const auto exp = knot::verify_limit(p, points[0], 12, 1e-1);
    REQUIRE(exp.steps.size() == 12);
    CHECK(exp.rel_error <= 1e-3);
    for (std::size_t i = 0; i + 1 < exp.steps.size(); ++i)
        CHECK(exp.steps[i + 1].distance < exp.steps[i].distance);
    for (const auto& s : exp.steps) {
        CHECK(s.rep_residual <= 1e-8);
        CHECK(s.commutator_margin >= 1e-8); // every continuation point is irreducible
    }
    CHECK(exp.monotone);
}

TEST_CASE("limit experiment converges to the predicted value: trefoil") {
    const auto p = knot::preset_presentation(knot::find_preset("trefoil"));
    const auto points = knot::bifurcation_points(p);
    REQUIRE(points.size() == 2);
    for (const auto& b : points) {
        const auto exp = knot::verify_limit(p, b, 12, 1e-1);
        CHECK(exp.rel_error <= 1e-3);
    }
}

TEST_CASE("paired bifurcation points agree") {
    const auto p = knot::preset_two_generator(knot::find_preset("figure-eight"));
    const auto points = knot::bifurcation_points(p);
    REQUIRE(points.size() == 2);
    CHECK(std::abs(points[0].rhs - points[1].rhs) <= 1e-8 * std::abs(points[0].rhs));
    const auto e0 = knot::verify_limit(p, points[0], 10, 1e-1);
    const auto e1 = knot::verify_limit(p, points[1], 10, 1e-1);
    CHECK(std::abs(e0.extrapolated - e1.extrapolated) <=
          1e-3 * std::max(e0.extrapolated, e1.extrapolated));
}

TEST_CASE("verify_limit input validation") {
    const auto p = knot::preset_presentation(knot::find_preset("trefoil"));
    const auto points = knot::bifurcation_points(p);
    REQUIRE(!points.empty());

    BifurcationPoint non_simple = points[0];
    non_simple.root.simple = false;
    CHECK_THROWS_AS(knot::verify_limit(p, non_simple), knot::error);

    const auto p52 = knot::preset_presentation(knot::find_preset("5_2"));
    const auto points52 = knot::bifurcation_points(p52);
    CHECK_THROWS_AS(knot::verify_limit(p52, points52[0]), knot::error); // k = 3

    CHECK_THROWS_AS(knot::verify_limit(p, points[0], 2, 1e-1), knot::error);  // steps < 3
    CHECK_THROWS_AS(knot::verify_limit(p, points[0], 30, 1e-4), knot::error); // offset floor
}
