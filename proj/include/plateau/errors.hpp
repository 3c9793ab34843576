#pragma once
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace plateau {

// Sentinel for quantities that have no finite value (chord-arc constants,
// quasi-conformality of degenerate seminorms, ...).
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

inline bool is_unbounded(double v) { return std::isinf(v); }

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or contract-violating input (bad JSON, degenerate curve, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A discretization resolution below the supported minimum.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// A numerical operation that cannot proceed (singular system, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace plateau
