#pragma once

#include <array>
#include <cmath>

namespace noxsim::fem {

/// Three-point Gauss-Legendre rule on [0, 1]; exact through degree 5.
struct Gauss3 {
  static constexpr std::array<double, 3> points() {
    // 0.5 * (1 +/- sqrt(3/5))
    constexpr double d = 0.38729833462074168852;
    return {0.5 - d, 0.5, 0.5 + d};
  }
  static constexpr std::array<double, 3> weights() { return {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}; }
};

/// Five-point Gauss-Legendre rule on [0, 1], used for error norms.
struct Gauss5 {
  static constexpr std::array<double, 5> points() {
    return {0.046910077030668004, 0.23076534494715845, 0.5, 0.76923465505284155, 0.95308992296933200};
  }
  static constexpr std::array<double, 5> weights() {
    return {0.11846344252809454, 0.23931433524968324, 0.28444444444444444, 0.23931433524968324,
            0.11846344252809454};
  }
};

/// Quadratic Lagrange basis on [0, 1] with nodes 0, 1/2, 1.
struct Lagrange1D {
  static std::array<double, 3> values(double s) {
    return {2.0 * (s - 0.5) * (s - 1.0), -4.0 * s * (s - 1.0), 2.0 * s * (s - 0.5)};
  }
  static std::array<double, 3> derivatives(double s) { return {4.0 * s - 3.0, 4.0 - 8.0 * s, 4.0 * s - 1.0}; }
};

/// Biquadratic shape functions on the reference square, local index 3b + a.
struct Q2 {
  static std::array<double, 9> values(double xi, double eta) {
    const auto nx = Lagrange1D::values(xi);
    const auto ny = Lagrange1D::values(eta);
    std::array<double, 9> out{};
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a < 3; ++a) out[3 * b + a] = nx[a] * ny[b];
    return out;
  }

  /// Reference gradients (d/dxi, d/deta).
  static std::array<std::array<double, 2>, 9> gradients(double xi, double eta) {
    const auto nx = Lagrange1D::values(xi);
    const auto ny = Lagrange1D::values(eta);
    const auto dx = Lagrange1D::derivatives(xi);
    const auto dy = Lagrange1D::derivatives(eta);
    std::array<std::array<double, 2>, 9> out{};
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a < 3; ++a) out[3 * b + a] = {dx[a] * ny[b], nx[a] * dy[b]};
    return out;
  }
};

}  // namespace noxsim::fem
