#pragma once

#include <cmath>
#include <vector>
#include <utility>

#include "noxsim/domain_model.hpp"
#include "noxsim/signal.hpp"

namespace noxsim::testing_support {

/// Two rush hours on a nonzero night floor, hourly at mid-hour.
inline TimeSeries rush_hour_traffic() {
  TimeSeries ts;
  ts.kind = SeriesKind::traffic;
  for (int h = 0; h < 24; ++h) {
    const double t = (h + 0.5) / 24.0;
    const double v = 1000.0 + 2000.0 * std::exp(-std::pow((t - 0.33) / 0.06, 2)) +
                     2500.0 * std::exp(-std::pow((t - 0.7) / 0.08, 2));
    ts.samples.push_back({t, v});
  }
  return ts;
}

inline DailySignal traffic() { return build_traffic_density(rush_hour_traffic()); }
inline DailySignal solar() { return build_solar_factor({0.3, 0.53, 0.75}); }

/// kappa [1/(day UVI)] for which kappa A_s equals `target` under `p`.
inline double kappa_for_reaction(const PhysicalParams& p, double target) {
  const double A_s = p.s_r * p.length * p.length / p.diffusion;
  return units::rate_to_per_day(target / A_s);
}

/// Configuration whose solution stays spatially uniform: no exchange, no
/// asphalt, source box = whole domain.
inline ScenarioConfig uniform_reduction(double reaction, double A_f, double theta, int steps, int n) {
  ScenarioConfig raw = ScenarioConfig::defaults();
  raw.physical.sigma = 0.0;
  raw.physical.gamma = 0.0;
  raw.physical.A_f_override = A_f;
  raw.physical.set_kappa_per_day(kappa_for_reaction(raw.physical, reaction));
  raw.geometry.emission_box = raw.geometry.domain();
  raw.numerics.theta = theta;
  raw.numerics.steps_per_day = steps;
  raw.numerics.nx = n;
  raw.numerics.ny = n;
  return nondimensionalize_config(raw);
}

/**
 * u' = A_f m(t) - r s(t) u, u(0) = u0, by variation of constants panel by panel:
 *   u(t + h) = e^{-a} u(t) + int_0^h e^{-(a / h)(h - tau)} A_f m(t + tau) dtau,
 * a = r int_t^{t+h} s (trapezoid), m linear on the panel so the integral is
 * closed form. Never forms e^{R} itself, which overflows for stiff r. Values
 * returned at t = k / steps (dimensionless).
 */
inline std::vector<double> integrating_factor(const DailySignal& m, const DailySignal& s, double A_f, double r,
                                              double u0, int steps, long panels = 1'000'000) {
  const long per_step = panels / steps;
  const double h = 1.0 / (static_cast<double>(per_step) * steps);
  // phi1 = (1 - e^-a) / a, phi2 = (1 - e^-a (1 + a)) / a^2
  auto phi = [](double a) {
    if (a < 1e-4) return std::pair{1.0 - a / 2.0 + a * a / 6.0, 0.5 - a / 3.0 + a * a / 8.0};
    const double e = std::exp(-a);
    return std::pair{-std::expm1(-a) / a, (1.0 - e * (1.0 + a)) / (a * a)};
  };
  std::vector<double> out{u0};
  double u = u0;
  double s_prev = s(0.0);
  double f_prev = A_f * m(0.0);
  for (long k = 1; k <= per_step * steps; ++k) {
    const double t = k * h;
    const double s_now = s(t);
    const double f_now = A_f * m(t);
    const double a = 0.5 * h * r * (s_prev + s_now);
    const auto [p1, p2] = phi(a);
    u = std::exp(-a) * u + h * (f_now * p1 + (f_prev - f_now) * p2);
    s_prev = s_now;
    f_prev = f_now;
    if (k % per_step == 0) out.push_back(u);
  }
  return out;
}

}  // namespace noxsim::testing_support
