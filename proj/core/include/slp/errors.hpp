#pragma once

#include <stdexcept>
#include <string>

namespace slp {

/// Invalid scenario configuration or physically inconsistent parameters.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity was requested outside the domain where it is defined
/// (zero control field, beam law outside its validity window, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Non-finite values appeared during time integration, or a numerical
/// procedure failed to converge.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace slp
