#ifndef KNOT_PRESENTATION_HPP
#define KNOT_PRESENTATION_HPP

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "knot/errors.hpp"
#include "knot/word.hpp"

namespace knot {

/// A deficiency-1 presentation <x_1,...,x_k | r_1,...,r_{k-1}> together
/// with the abelianization exponents n_i, where the abelianization map
/// sends x_i to t^{n_i}.
struct Presentation {
    int generator_count = 0;
    std::vector<Word> relators;
    std::vector<int> abelianization; // n_i, indexed 0..k-1

    bool is_meridional() const {
        for (int n : abelianization)
            if (n != 1) return false;
        return true;
    }

    /// alpha(w) as an exponent of t.
    int alpha(const Word& w) const {
        long s = 0;
        for (int l : w.letters()) {
            int g = l > 0 ? l : -l;
            s += (l > 0 ? 1 : -1) * static_cast<long>(abelianization[g - 1]);
        }
        return static_cast<int>(s);
    }
};

namespace detail {

/// Exact determinant of a small integer matrix (fraction-free Bareiss).
inline std::int64_t int_determinant(std::vector<std::vector<std::int64_t>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    std::int64_t sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace detail

/// Builds a presentation from relators, validating deficiency 1 and
/// solving the integer linear relations the relators impose on the
/// generator exponents.  The exponent vector is the primitive kernel
/// vector of the relator exponent matrix, signed so its first nonzero
/// entry is positive.
inline Presentation make_presentation(int generator_count, std::vector<Word> relators) {
    if (generator_count <= 0) throw error("presentation needs at least one generator");
    const int k = generator_count;
    if (static_cast<int>(relators.size()) != k - 1)
        throw error("presentation must have deficiency 1: expected " + std::to_string(k - 1) +
                    " relators, got " + std::to_string(relators.size()));
    for (const Word& r : relators)
        if (r.max_generator() > k)
            throw error("relator references generator x" + std::to_string(r.max_generator()) +
                        " beyond the declared " + std::to_string(k));

    Presentation p;
    p.generator_count = k;
    p.relators = std::move(relators);

    if (k == 1) {
        p.abelianization = {1};
        return p;
    }

    // Exponent matrix E, rows = relators, columns = generators.
    std::vector<std::vector<std::int64_t>> expo(k - 1, std::vector<std::int64_t>(k, 0));
    for (int i = 0; i < k - 1; ++i)
        for (int j = 0; j < k; ++j) expo[i][j] = p.relators[i].exponent_sum(j + 1);

    // Kernel of E by signed maximal minors.
    std::vector<std::int64_t> kernel(k, 0);
    for (int j = 0; j < k; ++j) {
        std::vector<std::vector<std::int64_t>> minor(k - 1, std::vector<std::int64_t>(k - 1));
        for (int r = 0; r < k - 1; ++r) {
            int cc = 0;
            for (int c = 0; c < k; ++c)
                if (c != j) minor[r][cc++] = expo[r][c];
        }
        std::int64_t d = detail::int_determinant(std::move(minor));
        kernel[j] = (j % 2 == 0) ? d : -d;
    }

    std::int64_t content = 0;
    for (std::int64_t v : kernel) content = std::gcd(content, v);
    if (content == 0)
        throw error("inconsistent abelianization: relator exponent matrix has rank < k-1, "
                    "the abelianization character is not unique");

    std::int64_t lead = 0;
    for (std::int64_t v : kernel)
        if (v != 0) { lead = v; break; }
    std::int64_t scale = (lead > 0 ? content : -content);

    p.abelianization.resize(k);
    for (int j = 0; j < k; ++j) p.abelianization[j] = static_cast<int>(kernel[j] / scale);

    // E * n = 0 must hold exactly; rank k-1 guarantees it, but verify.
    for (int i = 0; i < k - 1; ++i) {
        std::int64_t s = 0;
        for (int j = 0; j < k; ++j) s += expo[i][j] * p.abelianization[j];
        if (s != 0) throw error("inconsistent abelianization: kernel solve failed");
    }
    return p;
}

/// Parses the presentation text format: one line `gens: x1 x2 ... xk`,
/// then k-1 lines `rel: <word>`.  Lines starting with '#' and blank
/// lines are ignored.
inline Presentation parse_presentation(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int k = -1;
    std::vector<Word> relators;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        std::size_t line_offset = offset;
        offset += line.size() + 1;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string body = line.substr(first);
        if (body.rfind("gens:", 0) == 0) {
            if (k != -1) throw parse_error("duplicate gens: line", line_offset + first);
            std::istringstream gens(body.substr(5));
            std::string name;
            int count = 0;
            while (gens >> name) {
                ++count;
                std::string expected = "x" + std::to_string(count);
                if (name != expected)
                    throw parse_error("generators must be named x1..xk in order, got '" + name + "'",
                                      line_offset + first);
            }
            if (count == 0) throw parse_error("gens: line lists no generators", line_offset + first);
            k = count;
        } else if (body.rfind("rel:", 0) == 0) {
            if (k == -1) throw parse_error("rel: before gens:", line_offset + first);
            relators.push_back(parse_word(body.substr(4)));
        } else {
            throw parse_error("expected 'gens:' or 'rel:' line", line_offset + first);
        }
    }
    if (k == -1) throw parse_error("missing gens: line", 0);
    return make_presentation(k, std::move(relators));
}

namespace detail {

/// Rewrites every occurrence of generator `g` in `w` by the replacement
/// word `image` (and inverses by the inverse image).
inline Word substitute_generator(const Word& w, int g, const Word& image) {
    const Word image_inv = image.inverse();
    std::vector<int> out;
    out.reserve(w.size() * image.size() + w.size());
    for (int l : w.letters()) {
        if (l == g)
            out.insert(out.end(), image.letters().begin(), image.letters().end());
        else if (l == -g)
            out.insert(out.end(), image_inv.letters().begin(), image_inv.letters().end());
        else
            out.push_back(l);
    }
    return Word(std::move(out));
}

inline Word power_word(int g, int exponent) {
    std::vector<int> letters(static_cast<std::size_t>(exponent >= 0 ? exponent : -exponent),
                             exponent >= 0 ? g : -g);
    return Word(std::move(letters));
}

} // namespace detail

/// Rewrites the presentation so every generator abelianizes to t, using
/// Euclidean-algorithm generator substitutions (Tietze moves).  Returns
/// the input unchanged when it is already meridional.  Throws when the
/// move budget is exhausted.
inline Presentation normalize_presentation(const Presentation& p, int move_budget = 64) {
    if (p.is_meridional()) return p;

    const int k = p.generator_count;
    std::vector<Word> relators = p.relators;
    std::vector<long> n(p.abelianization.begin(), p.abelianization.end());
    int moves = 0;

    auto spend = [&](int count = 1) {
        moves += count;
        if (moves > move_budget)
            throw error("normalize_presentation: Tietze move budget (" +
                        std::to_string(move_budget) + ") exhausted");
    };
    // x_g := x_g' * x_m^q; the new generator keeps index g and its
    // exponent drops to n_g - q*n_m.
    auto substitute = [&](int g, int m, long q) {
        if (q == 0) return;
        spend();
        Word image = Word::generator(g) * detail::power_word(m, static_cast<int>(q));
        for (Word& r : relators) r = detail::substitute_generator(r, g, image);
        n[g - 1] -= q * n[m - 1];
    };

    // Stage 1: Euclid on exponent pairs until some generator has |n| = 1.
    auto has_unit = [&]() -> int {
        for (int i = 0; i < k; ++i)
            if (n[i] == 1 || n[i] == -1) return i + 1;
        return 0;
    };
    while (!has_unit()) {
        int best_j = 0;
        for (int j = 1; j <= k; ++j)
            if (n[j - 1] != 0 && (best_j == 0 || std::abs(n[j - 1]) < std::abs(n[best_j - 1])))
                best_j = j;
        int best_i = 0;
        for (int i = 1; i <= k; ++i)
            if (i != best_j && n[i - 1] != 0 &&
                (best_i == 0 || std::abs(n[i - 1]) < std::abs(n[best_i - 1])))
                best_i = i;
        if (best_j == 0 || best_i == 0)
            throw error("normalize_presentation: exponents do not generate 1 (alpha not surjective)");
        long q = n[best_i - 1] / n[best_j - 1];
        if (q == 0) q = 1; // defensive; cannot happen with |n_i| >= |n_j|
        substitute(best_i, best_j, q);
    }

    // Stage 2: flip a -1 pivot, then bring every other exponent to 1.
    int m = has_unit();
    if (n[m - 1] == -1) {
        spend();
        Word inv = Word::generator(m, -1);
        for (Word& r : relators) r = detail::substitute_generator(r, m, inv);
        n[m - 1] = 1;
    }
    for (int g = 1; g <= k; ++g)
        if (g != m && n[g - 1] != 1) substitute(g, m, n[g - 1] - 1);

    Presentation result = make_presentation(k, std::move(relators));
    if (!result.is_meridional())
        throw error("normalize_presentation: internal failure, exponents not all 1");
    return result;
}

} // namespace knot

#endif
