// Independent test oracles.  Everything here is deliberately hand-rolled
// and must not call into the library paths it is used to check.
#ifndef KNOT_TESTS_ORACLES_HPP
#define KNOT_TESTS_ORACLES_HPP

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "knot/word.hpp"

namespace oracles {

// Dense integer polynomial, coefficients by ascending degree.
using IntPoly = std::vector<std::int64_t>;

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline IntPoly poly_sub(IntPoly a, const IntPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

/// det(V - t V^T) for a 2x2 integer Seifert matrix, as an ordinary
/// polynomial in t (degrees 0..2).
inline IntPoly seifert_alexander(const std::array<std::array<std::int64_t, 2>, 2>& v) {
    // entry(i,j) = v[i][j] - t*v[j][i]
    auto entry = [&](int i, int j) { return IntPoly{v[i][j], -v[j][i]}; };
    return poly_sub(poly_mul(entry(0, 0), entry(1, 1)), poly_mul(entry(0, 1), entry(1, 0)));
}

/// Normalizes an ordinary polynomial to the symmetric Laurent form:
/// returns (min_degree, coeffs) with p(t) = p(1/t) and p(1) = 1.
struct NormalizedPoly {
    int min_degree;
    IntPoly coeffs;
};

inline NormalizedPoly normalize_alexander(IntPoly p) {
    std::size_t lead = 0;
    while (lead < p.size() && p[lead] == 0) ++lead;
    p.erase(p.begin(), p.begin() + lead);
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.empty()) throw std::runtime_error("oracle: zero polynomial");
    if ((p.size() - 1) % 2 != 0) throw std::runtime_error("oracle: odd span");
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != p[p.size() - 1 - i]) throw std::runtime_error("oracle: not palindromic");
    std::int64_t at_one = 0;
    for (std::int64_t c : p) at_one += c;
    if (at_one == -1)
        for (std::int64_t& c : p) c = -c;
    else if (at_one != 1)
        throw std::runtime_error("oracle: p(1) not a unit");
    return {-static_cast<int>((p.size() - 1) / 2), p};
}

/// Uniform random freely reduced words for property tests.
inline knot::Word random_word(std::mt19937& rng, int generator_count, int max_length) {
    std::uniform_int_distribution<int> len(0, max_length);
    std::uniform_int_distribution<int> gen(1, generator_count);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<int> letters;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) letters.push_back(gen(rng) * (sign(rng) ? 1 : -1));
    return knot::Word(std::move(letters));
}

} // namespace oracles

#endif
