#ifndef KNOT_GROUP_RING_HPP
#define KNOT_GROUP_RING_HPP

#include <cstdint>
#include <map>
#include <string>

#include "knot/word.hpp"

namespace knot {

/// An element of the integral group ring Z[F] of a free group: a finite
/// integer combination of freely reduced words.  Zero coefficients are
/// never stored, so equality of the term maps is equality in the ring.
class GroupRingElement {
public:
    using Terms = std::map<Word, std::int64_t>;

    GroupRingElement() = default;

    static GroupRingElement zero() { return GroupRingElement(); }
    static GroupRingElement one() { return of(Word()); }

    static GroupRingElement of(const Word& w, std::int64_t coeff = 1) {
        GroupRingElement e;
        if (coeff != 0) e.terms_[w] = coeff;
        return e;
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    std::int64_t coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement p;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) p.add_term(wa * wb, ca * cb);
        return p;
    }

    friend GroupRingElement operator*(std::int64_t c, const GroupRingElement& e) {
        GroupRingElement p;
        if (c != 0)
            for (const auto& [w, coeff] : e.terms_) p.terms_[w] = c * coeff;
        return p;
    }

    friend GroupRingElement operator*(const GroupRingElement& e, const Word& w) {
        GroupRingElement p;
        for (const auto& [wa, ca] : e.terms_) p.add_term(wa * w, ca);
        return p;
    }
    friend GroupRingElement operator*(const Word& w, const GroupRingElement& e) {
        GroupRingElement p;
        for (const auto& [wa, ca] : e.terms_) p.add_term(w * wa, ca);
        return p;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const GroupRingElement& a, const GroupRingElement& b) { return !(a == b); }

private:
    void add_term(const Word& w, std::int64_t c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Terms terms_;
};

inline std::string to_string(const GroupRingElement& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [w, c] : e.terms()) {
        if (!out.empty()) out += c >= 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        std::int64_t a = c >= 0 ? c : -c;
        if (a != 1 || w.empty()) out += std::to_string(a);
        if (!w.empty()) {
            if (a != 1) out += "*";
            out += to_string(w);
        }
    }
    return out;
}

} // namespace knot

#endif
