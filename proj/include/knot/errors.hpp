#ifndef KNOT_ERRORS_HPP
#define KNOT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace knot {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Input-text error; carries the byte offset of the offending token.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Numerical failure: tolerance exceeded, divisibility failed, solver diverged.
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& what) : error(what) {}
};

} // namespace knot

#endif
