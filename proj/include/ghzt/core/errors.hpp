#pragma once

#include <stdexcept>
#include <string>

namespace ghzt {

// Bad input: wrong dimensions, out-of-range parameters, unphysical states.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed to meet its tolerance (root bracketing,
// eigensolver sweeps, optimizer restarts).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Output could not be written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& what) {
    if (!condition) throw ValidationError(what);
}

}  // namespace detail
}  // namespace ghzt
