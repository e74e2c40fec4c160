#pragma once

#include <span>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/fem/cg.hpp"
#include "noxsim/fem/field.hpp"
#include "noxsim/fem/sparse.hpp"

namespace noxsim::fem {

/// Coefficients of the reaction and boundary terms at one time level.
struct LevelCoefficients {
  double sink = 0.0;      ///< uniform volume sink r(t)
  double robin = 0.0;     ///< coefficient on Gamma_R
  double asphalt = 0.0;   ///< coefficient on Gamma
  double threshold = 0.0; ///< Robin reference value u_T / u_r
};

/// Operators of the semi-discrete system. All share one sparsity pattern.
struct ThetaOperators {
  const SparseOperator& mass;
  const SparseOperator& stiffness;
  const SparseOperator& robin_mass;
  const SparseOperator& asphalt_mass;
};

/// L(c) = K + c.sink M + c.robin B_R + c.asphalt B_Gamma
inline SparseOperator spatial_operator(const ThetaOperators& ops, const LevelCoefficients& c) {
  SparseOperator L = ops.stiffness;
  if (c.sink != 0.0) L.add_scaled(c.sink, ops.mass);
  if (c.robin != 0.0) L.add_scaled(c.robin, ops.robin_mass);
  if (c.asphalt != 0.0) L.add_scaled(c.asphalt, ops.asphalt_mass);
  return L;
}

/**
 * One theta-scheme step of M u' + L(t) u = F(t) + robin(t) u_T B_R 1:
 *
 *   [M + theta dt L(t1)] u1 = [M - (1 - theta) dt L(t0)] u0
 *                             + dt (theta G(t1) + (1 - theta) G(t0))
 *
 * where G collects the load and the Robin threshold term. theta = 1 is
 * implicit Euler, theta = 1/2 Crank-Nicolson. Every term is mass-like, so the
 * system matrix stays symmetric positive definite for theta > 0.
 */
inline Field step_theta(const ThetaOperators& ops, const Field& u_prev, double dt, double theta,
                        const LevelCoefficients& c_prev, const LevelCoefficients& c_new,
                        std::span<const double> load_prev, std::span<const double> load_new, double tol = 1e-10,
                        SolveStats* stats = nullptr) {
  if (!(dt > 0.0)) throw InvalidParameter("dt", "must be positive");
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidParameter("theta", "must lie in [0, 1]");
  const Index n = ops.mass.dimension();
  const auto& u0 = u_prev.coefficients;
  if (u0.size() != n || load_prev.size() != n || load_new.size() != n) throw Error("step_theta: size mismatch");

  std::vector<double> rhs = ops.mass * std::span<const double>(u0);
  if (theta < 1.0) {
    const auto explicit_part = spatial_operator(ops, c_prev) * std::span<const double>(u0);
    for (Index i = 0; i < n; ++i) rhs[i] -= (1.0 - theta) * dt * explicit_part[i];
  }
  for (Index i = 0; i < n; ++i) rhs[i] += dt * (theta * load_new[i] + (1.0 - theta) * load_prev[i]);

  const double threshold_weight = theta * c_new.robin * c_new.threshold + (1.0 - theta) * c_prev.robin * c_prev.threshold;
  if (threshold_weight != 0.0) {
    const std::vector<double> ones(n, 1.0);
    const auto trace = ops.robin_mass * std::span<const double>(ones);
    for (Index i = 0; i < n; ++i) rhs[i] += dt * threshold_weight * trace[i];
  }

  SparseOperator system = spatial_operator(ops, c_new);
  system.scale(theta * dt);
  system.add_scaled(1.0, ops.mass);

  Field out{u0, u_prev.time + dt};  // previous level is the initial guess
  const auto s = solve_spd(system, rhs, out.coefficients, tol);
  if (stats) *stats = s;
  return out;
}

}  // namespace noxsim::fem
