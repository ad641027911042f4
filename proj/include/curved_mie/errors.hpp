#pragma once

#include <stdexcept>
#include <string>

namespace curved_mie {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a formula (r <= 0, psi at a pole, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Inconsistent or degenerate parameter combination.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A numerical procedure did not converge or broke down.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Malformed configuration or command-line input.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace curved_mie
