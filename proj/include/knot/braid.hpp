#ifndef KNOT_BRAID_HPP
#define KNOT_BRAID_HPP

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "knot/presentation.hpp"
#include "knot/word.hpp"

namespace knot {

/// Wirtinger-style presentation of the closure of a braid word.
///
/// The Artin generator sigma_i acts on the free group on the strand
/// generators by x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i.  The
/// closure relators are x_j^{-1} beta(x_j) for j = 1..n-1; the last one
/// is redundant and dropped.  Rejects braids whose closure is a link
/// rather than a knot (strand permutation not an n-cycle).
inline Presentation braid_to_presentation(const std::vector<int>& braid_word, int strands) {
    if (strands < 1) throw error("braid needs at least one strand");
    for (int a : braid_word) {
        if (a == 0) throw error("braid letter 0 is invalid");
        if (std::abs(a) >= strands)
            throw error("braid letter " + std::to_string(a) + " out of range for " +
                        std::to_string(strands) + " strands");
    }

    // Closure permutation: each letter transposes adjacent strands.
    std::vector<int> perm(strands);
    std::iota(perm.begin(), perm.end(), 0);
    for (int a : braid_word) {
        int i = std::abs(a) - 1;
        std::swap(perm[i], perm[i + 1]);
    }
    int cycle_len = 0, at = 0;
    do {
        at = perm[at];
        ++cycle_len;
    } while (at != 0 && cycle_len <= strands);
    if (cycle_len != strands)
        throw error("braid closure is a link, not a knot (permutation is not an n-cycle)");

    // beta(x_j), processing letters right to left so the word acts as a
    // composition of the per-letter automorphisms.
    std::vector<Word> image(strands);
    for (int j = 0; j < strands; ++j) image[j] = Word::generator(j + 1);
    for (auto it = braid_word.rbegin(); it != braid_word.rend(); ++it) {
        int i = std::abs(*it); // acts on strands i, i+1
        Word xi = Word::generator(i), xi1 = Word::generator(i + 1);
        Word a, b; // new images of x_i, x_{i+1}
        if (*it > 0) {
            a = xi * xi1 * xi.inverse();
            b = xi;
        } else {
            a = xi1;
            b = xi1.inverse() * xi * xi1;
        }
        for (int j = 0; j < strands; ++j) {
            Word w = detail::substitute_generator(image[j], i, Word::generator(strands + 1));
            w = detail::substitute_generator(w, i + 1, b);
            image[j] = detail::substitute_generator(w, strands + 1, a);
        }
    }

    std::vector<Word> relators;
    relators.reserve(strands - 1);
    for (int j = 0; j + 1 < strands; ++j)
        relators.push_back(Word::generator(j + 1, -1) * image[j]);

    Presentation p = make_presentation(strands, std::move(relators));
    if (!p.is_meridional())
        throw error("braid closure presentation is not meridional (internal error)");
    return p;
}

/// Parses "n; i1 i2 ..." (strand count, then signed Artin indices).
inline std::pair<int, std::vector<int>> parse_braid_spec(const std::string& text) {
    std::size_t semi = text.find(';');
    if (semi == std::string::npos) throw parse_error("braid spec needs 'n; i1 i2 ...'", 0);
    int strands = 0;
    try {
        strands = std::stoi(text.substr(0, semi));
    } catch (const std::exception&) {
        throw parse_error("invalid strand count in braid spec", 0);
    }
    std::vector<int> letters;
    std::istringstream rest(text.substr(semi + 1));
    int v;
    while (rest >> v) letters.push_back(v);
    if (!rest.eof()) throw parse_error("invalid braid letter", semi + 1);
    return {strands, letters};
}

/// Parses input text that is either a gens/rel presentation or a single
/// `braid: n; i1 i2 ...` line (comments allowed in both).
inline Presentation parse_input(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (line.compare(first, 6, "braid:") == 0) {
            auto [strands, letters] = parse_braid_spec(line.substr(first + 6));
            return braid_to_presentation(letters, strands);
        }
        break;
    }
    return parse_presentation(text);
}

} // namespace knot

#endif
