#pragma once

#include <stdexcept>
#include <string>

namespace rankint {

/// Bad input value or out-of-range index.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent scenario configuration file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Antenna dimensions above the exact-expansion cap.
class UnsupportedDimension : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No interference layers; callers take the noise-only path.
class EmptyMixture : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two mixture groups share a rate, so the partial-fraction weights blow up.
class DegenerateRates : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Closed form or iterative solver left its valid range.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rankint
