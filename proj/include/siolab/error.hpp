#pragma once

#include <stdexcept>
#include <string>

namespace siolab {

// Base class for every error raised by the library. The `kind` tag is a
// stable, machine-readable identifier (also surfaced by the CLI and the
// Python bindings); `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Argument outside the domain of a mathematical object (t <= 0, t >= D, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& m) : Error("domain", m) {}
};

// Tabulated data queried outside its support.
class ExtrapolationError : public Error {
 public:
  explicit ExtrapolationError(const std::string& m) : Error("extrapolation", m) {}
};

// An improper integral failed to converge under refinement.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& m) : Error("divergence", m) {}
};

// Adaptive quadrature hit its panel budget before reaching tolerance.
class ToleranceError : public Error {
 public:
  explicit ToleranceError(const std::string& m) : Error("tolerance", m) {}
};

// Invalid user-supplied specification (domain, growth function, config, ...).
class SpecError : public Error {
 public:
  explicit SpecError(const std::string& m) : Error("spec", m) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& m) : Error("dimension", m) {}
};

}  // namespace siolab
