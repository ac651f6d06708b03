#pragma once

#include <stdexcept>
#include <string>

namespace levqsim {

// Invalid geometry or parameter combination (e.g. sphere intersecting the ring).
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to produce a usable result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace levqsim
