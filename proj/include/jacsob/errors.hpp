#pragma once

#include <stdexcept>
#include <string>

namespace jacsob {

// Argument outside the mathematical domain of a function (|x| > 1, theta at a
// singular endpoint, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid configuration: parameter combinations an operator is not defined
// for, malformed grids, exponents outside E(alpha, beta).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Coefficient vector handed to an operator built for a different basis.
class BasisMismatch : public ConfigError {
public:
    using ConfigError::ConfigError;
};

} // namespace jacsob
