#pragma once

#include <stdexcept>
#include <string>

namespace acobs {

/// Machine constants outside their physical domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inductance matrix too close to singular to invert.
class SingularInductanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Phase angle of a (near) zero vector requested.
class UndefinedAngleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Integration left the physically meaningful range.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Steady-state phasor system has no unique solution.
class SingularPhasorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed scenario file or command-line configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace acobs
