#pragma once

#include <stdexcept>
#include <string>

namespace noxsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A physical or numerical parameter violates its invariant.
class InvalidParameter : public Error {
public:
  InvalidParameter(const std::string& field, const std::string& why)
      : Error("invalid parameter '" + field + "': " + why), field_(field) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Missing files, malformed CSV/config content, insufficient data.
class InputError : public Error {
public:
  using Error::Error;
};

/// Linear solve did not reach the requested tolerance.
class SolverFailure : public Error {
public:
  SolverFailure(const std::string& what, double residual, std::size_t iterations)
      : Error(what + " (relative residual " + std::to_string(residual) + " after " +
              std::to_string(iterations) + " iterations)"),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

private:
  double residual_;
  std::size_t iterations_;
};

}  // namespace noxsim
