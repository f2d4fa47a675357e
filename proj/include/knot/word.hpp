#ifndef KNOT_WORD_HPP
#define KNOT_WORD_HPP

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "knot/errors.hpp"

namespace knot {

/// A freely reduced word in a free group.
///
/// Letters are stored as signed 1-based generator indices: +i stands for
/// x_i, -i for x_i^{-1}.  Reduction is applied eagerly on construction, so
/// two words are equal as group elements iff their letter sequences match.
/// The empty word is the identity.
class Word {
public:
    Word() = default;

    explicit Word(std::vector<int> letters) { assign(std::move(letters)); }

    static Word generator(int index, int sign = +1) {
        if (index <= 0) throw error("generator index must be >= 1");
        return Word(std::vector<int>{sign >= 0 ? index : -index});
    }

    const std::vector<int>& letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }

    Word inverse() const {
        std::vector<int> inv(letters_.rbegin(), letters_.rend());
        for (int& l : inv) l = -l;
        Word w;
        w.letters_ = std::move(inv); // inverse of a reduced word is reduced
        return w;
    }

    /// Largest generator index occurring in the word (0 for the identity).
    int max_generator() const noexcept {
        int m = 0;
        for (int l : letters_) m = std::max(m, std::abs(l));
        return m;
    }

    /// Signed number of occurrences of generator `index`.
    int exponent_sum(int index) const noexcept {
        int s = 0;
        for (int l : letters_) {
            if (l == index) ++s;
            if (l == -index) --s;
        }
        return s;
    }

    friend Word operator*(const Word& a, const Word& b) {
        std::vector<int> cat;
        cat.reserve(a.letters_.size() + b.letters_.size());
        cat.insert(cat.end(), a.letters_.begin(), a.letters_.end());
        cat.insert(cat.end(), b.letters_.begin(), b.letters_.end());
        return Word(std::move(cat));
    }

    friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

    /// Length-then-lexicographic order; used as the group-ring map key.
    friend bool operator<(const Word& a, const Word& b) {
        if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
        return a.letters_ < b.letters_;
    }

private:
    void assign(std::vector<int> letters) {
        letters_.clear();
        letters_.reserve(letters.size());
        for (int l : letters) {
            if (l == 0) throw error("word letter 0 is not a generator");
            if (!letters_.empty() && letters_.back() == -l)
                letters_.pop_back();
            else
                letters_.push_back(l);
        }
    }

    std::vector<int> letters_;
};

/// Renders a word in the input grammar, e.g. "x1*X2*x3".
inline std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.letters().size(); ++i) {
        int l = w.letters()[i];
        if (i) out += '*';
        out += (l > 0) ? 'x' : 'X';
        out += std::to_string(std::abs(l));
    }
    return out;
}

/// Parses the grammar `term ("*" term)*`, term = x<digits> optionally
/// followed by ^-1; uppercase X<digits> is shorthand for an inverse.
/// The literal "1" denotes the empty word.  Whitespace around tokens is
/// ignored.  The result is freely reduced.
inline Word parse_word(const std::string& text) {
    std::vector<int> letters;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };

    skip_ws();
    if (i < n && text[i] == '1') {
        ++i;
        skip_ws();
        if (i != n) throw parse_error("trailing characters after identity word", i);
        return Word();
    }

    bool expect_term = true;
    while (i < n) {
        skip_ws();
        if (i >= n) break;
        if (!expect_term) {
            if (text[i] != '*') throw parse_error("expected '*' between terms", i);
            ++i;
            skip_ws();
        }
        if (i >= n) throw parse_error("dangling '*'", i);
        char c = text[i];
        if (c != 'x' && c != 'X') throw parse_error("expected generator 'x<k>' or 'X<k>'", i);
        bool upper_inverse = (c == 'X');
        ++i;
        std::size_t digit_start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == digit_start) throw parse_error("expected generator index digits", i);
        long idx = std::strtol(text.substr(digit_start, i - digit_start).c_str(), nullptr, 10);
        if (idx == 0) throw parse_error("generator index 0 is invalid", digit_start);
        int sign = upper_inverse ? -1 : +1;
        if (i < n && text[i] == '^') {
            std::size_t caret = i;
            ++i;
            if (i + 1 < n + 1 && i < n && text[i] == '-' && i + 1 < n && text[i + 1] == '1') {
                i += 2;
                sign = -sign;
            } else {
                throw parse_error("only exponent ^-1 is supported", caret);
            }
        }
        letters.push_back(sign * static_cast<int>(idx));
        expect_term = false;
    }
    if (expect_term) throw parse_error("empty word text; use \"1\" for the identity", 0);
    return Word(std::move(letters));
}

} // namespace knot

#endif
