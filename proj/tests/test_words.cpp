#include <doctest.h>

#include <random>

#include "knot/braid.hpp"
#include "knot/fox.hpp"
#include "knot/group_ring.hpp"
#include "knot/presentation.hpp"
#include "knot/word.hpp"
#include "oracles.hpp"

using knot::GroupRingElement;
using knot::Word;

TEST_CASE("parse_word basic forms") {
    CHECK(knot::parse_word("x1*x2^-1") == Word({1, -2}));
    CHECK(knot::parse_word("x1*x1^-1") == Word());
    CHECK(knot::parse_word("x1*X2") == Word({1, -2}));
    CHECK(knot::parse_word("1") == Word());

    const Word trefoil = knot::parse_word("x1*x2*x1*X2*X1*X2");
    CHECK(trefoil.size() == 6);
    CHECK(trefoil == Word({1, 2, 1, -2, -1, -2}));

    // X with ^-1 cancels back to a positive letter.
    CHECK(knot::parse_word("X2^-1") == Word({2}));
}

TEST_CASE("parse_word errors carry byte offsets") {
    CHECK_THROWS_AS(knot::parse_word("x0"), knot::parse_error);
    CHECK_THROWS_AS(knot::parse_word("x1**x2"), knot::parse_error);
    CHECK_THROWS_AS(knot::parse_word("x1*"), knot::parse_error);
    CHECK_THROWS_AS(knot::parse_word("y1"), knot::parse_error);
    CHECK_THROWS_AS(knot::parse_word("x1^2"), knot::parse_error);
    CHECK_THROWS_AS(knot::parse_word(""), knot::parse_error);
    try {
        knot::parse_word("x1*x0");
    } catch (const knot::parse_error& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("free reduction is idempotent and multiplication reduces") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        const Word w = oracles::random_word(rng, 3, 16);
        CHECK(Word(w.letters()) == w); // reduce(reduce(w)) == reduce(w)
        CHECK((w * w.inverse()).empty());
    }
}

TEST_CASE("round trip through to_string") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Word w = oracles::random_word(rng, 4, 10);
        CHECK(knot::parse_word(knot::to_string(w)) == w);
    }
}

TEST_CASE("fox derivative defining identities") {
    const Word x1 = Word::generator(1);
    CHECK(knot::fox_derivative(x1, 1) == GroupRingElement::one());
    CHECK(knot::fox_derivative(x1, 2) == GroupRingElement::zero());
    CHECK(knot::fox_derivative(x1.inverse(), 1) ==
          GroupRingElement::of(Word::generator(1, -1), -1));
}

TEST_CASE("fox derivative of the trefoil relator, hand-expanded") {
    const Word r = knot::parse_word("x1*x2*x1*X2*X1*X2");
    GroupRingElement expected = GroupRingElement::one();
    expected += GroupRingElement::of(knot::parse_word("x1*x2"));
    expected += GroupRingElement::of(knot::parse_word("x1*x2*x1*X2*X1"), -1);
    CHECK(knot::fox_derivative(r, 1) == expected);
}

TEST_CASE("fox fundamental identity and product rule") {
    std::mt19937 rng(99);
    const int k = 3;
    for (int trial = 0; trial < 300; ++trial) {
        const Word w = oracles::random_word(rng, k, 12);
        GroupRingElement sum;
        for (int j = 1; j <= k; ++j) {
            GroupRingElement dj = knot::fox_derivative(w, j);
            sum += dj * Word::generator(j) - dj;
        }
        CHECK(sum == GroupRingElement::of(w) - GroupRingElement::one());

        const Word u = oracles::random_word(rng, k, 8);
        const Word v = oracles::random_word(rng, k, 8);
        for (int j = 1; j <= k; ++j) {
            CHECK(knot::fox_derivative(u * v, j) ==
                  knot::fox_derivative(u, j) + u * knot::fox_derivative(v, j));
        }
    }
}

TEST_CASE("parse_presentation computes abelianization exponents") {
    const auto trefoil = knot::parse_presentation("gens: x1 x2\nrel: x1*x2*x1*X2*X1*X2\n");
    CHECK(trefoil.generator_count == 2);
    CHECK(trefoil.abelianization == std::vector<int>{1, 1});
    CHECK(trefoil.is_meridional());

    const auto unknot = knot::parse_presentation("# free group of rank 1\ngens: x1\n");
    CHECK(unknot.generator_count == 1);
    CHECK(unknot.abelianization == std::vector<int>{1});

    // (2,3) torus knot as <a, b | a^3 b^-2>: exponents from the kernel solve.
    const auto torus = knot::parse_presentation("gens: x1 x2\nrel: x1*x1*x1*X2*X2\n");
    CHECK(torus.abelianization == std::vector<int>{2, 3});
    CHECK_FALSE(torus.is_meridional());
}

TEST_CASE("parse_presentation rejects bad input") {
    // deficiency != 1
    CHECK_THROWS_AS(knot::parse_presentation("gens: x1 x2\nrel: x1*x2\nrel: x2*x1\n"),
                    knot::error);
    // commutator relator: abelianization not unique
    CHECK_THROWS_AS(knot::parse_presentation("gens: x1 x2\nrel: x1*x2*X1*X2\n"), knot::error);
    CHECK_THROWS_AS(knot::parse_presentation("rel: x1\n"), knot::parse_error);
    CHECK_THROWS_AS(knot::parse_presentation("gens: x2 x1\nrel: x1\n"), knot::parse_error);
    CHECK_THROWS_AS(knot::parse_presentation("gens: x1 x2\nrel: x1*x3\n"), knot::error);
}

TEST_CASE("braid closures give meridional deficiency-1 presentations") {
    const auto trefoil = knot::braid_to_presentation({1, 1, 1}, 2);
    CHECK(trefoil.generator_count == 2);
    CHECK(trefoil.relators.size() == 1);
    CHECK(trefoil.is_meridional());

    const auto fig8 = knot::braid_to_presentation({1, -2, 1, -2}, 3);
    CHECK(fig8.generator_count == 3);
    CHECK(fig8.relators.size() == 2);
    CHECK(fig8.is_meridional());

    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> len(1, 8);
    std::uniform_int_distribution<int> letter(1, 2);
    std::uniform_int_distribution<int> sign(0, 1);
    int accepted = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<int> word;
        for (int i = 0, n = len(rng); i < n; ++i)
            word.push_back(letter(rng) * (sign(rng) ? 1 : -1));
        try {
            const auto p = knot::braid_to_presentation(word, 3);
            ++accepted;
            CHECK(p.relators.size() == static_cast<std::size_t>(p.generator_count - 1));
            CHECK(p.is_meridional());
        } catch (const knot::error&) {
            // link closure; rejection is the contract
        }
    }
    CHECK(accepted > 0);
}

TEST_CASE("braid input validation") {
    CHECK_THROWS_AS(knot::braid_to_presentation({2}, 2), knot::error);  // |i| >= strands
    CHECK_THROWS_AS(knot::braid_to_presentation({0}, 2), knot::error);
    CHECK_THROWS_AS(knot::braid_to_presentation({}, 2), knot::error);   // 2-component unlink
    CHECK_THROWS_AS(knot::braid_to_presentation({1, 1}, 2), knot::error); // Hopf link
}

TEST_CASE("normalize_presentation") {
    const auto trefoil = knot::braid_to_presentation({1, 1, 1}, 2);
    CHECK(knot::normalize_presentation(trefoil).relators == trefoil.relators);

    const auto unknot = knot::parse_presentation("gens: x1\n");
    CHECK(knot::normalize_presentation(unknot).generator_count == 1);

    const auto torus = knot::parse_presentation("gens: x1 x2\nrel: x1*x1*x1*X2*X2\n");
    const auto normalized = knot::normalize_presentation(torus);
    CHECK(normalized.generator_count == 2);
    CHECK(normalized.is_meridional());

    CHECK_THROWS_AS(knot::normalize_presentation(torus, 0), knot::error); // budget exhausted
}

TEST_CASE("parse_input dispatches between presentation and braid text") {
    const auto from_braid = knot::parse_input("# trefoil\nbraid: 2; 1 1 1\n");
    CHECK(from_braid.generator_count == 2);
    const auto direct = knot::parse_input("gens: x1 x2\nrel: x1*x2*x1*X2*X1*X2\n");
    CHECK(direct.generator_count == 2);
    CHECK_THROWS_AS(knot::parse_input("braid: nonsense\n"), knot::parse_error);
}
