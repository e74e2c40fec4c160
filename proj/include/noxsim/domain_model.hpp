#pragma once

// Physical parameters, street cross-section geometry and the rescaling that
// turns the dimensional reaction-diffusion problem into the form the FEM
// engine solves:
//
//   du/dt - div(grad u) = A_f f(x,t) - kappa A_s s(t) u
//
// with A_f = f_r L^2 / (u_r D), A_s = s_r L^2 / D, Robin coefficient
// sigma L / D on the top and lateral edges and gamma kappa L / D on the road.

#include <cmath>
#include <filesystem>
#include <optional>
#include <string>

#include "noxsim/error.hpp"
#include "noxsim/geometry.hpp"
#include "noxsim/units.hpp"

namespace noxsim {

/// Street cross-section. Lengths in metres until the config is rescaled, after
/// which they are fractions of the reference length.
struct Geometry {
  double width = 40.0;
  double height = 8.0;
  double road_width = 15.0;
  Rect emission_box{12.5, 0.1, 27.5, 0.5};
  Point probe{20.0, 1.75};

  static Geometry defaults() { return Geometry{}; }

  Rect domain() const { return {0.0, 0.0, width, height}; }
  double road_left() const { return 0.5 * (width - road_width); }
  double road_right() const { return 0.5 * (width + road_width); }

  /// Emission box of the given size, centred on the road, bottom edge `lift`
  /// above the asphalt.
  static Rect centred_box(double domain_width, double box_width, double box_height, double lift) {
    const double left = 0.5 * (domain_width - box_width);
    return {left, lift, left + box_width, lift + box_height};
  }

  Geometry scaled(double factor) const {
    Geometry g = *this;
    g.width *= factor;
    g.height *= factor;
    g.road_width *= factor;
    g.emission_box = emission_box.scaled(factor);
    g.probe = {probe.x * factor, probe.y * factor};
    return g;
  }

  void validate() const {
    if (!(width > 0.0)) throw InvalidParameter("geometry.width", "must be positive");
    if (!(height > 0.0)) throw InvalidParameter("geometry.height", "must be positive");
    if (!(road_width >= 0.0) || road_width > width)
      throw InvalidParameter("geometry.road_width", "must lie in [0, width]");
    // The box may coincide with the domain; the uniform-source reduction uses that.
    if (emission_box.degenerate() || !domain().contains(emission_box))
      throw InvalidParameter("geometry.emission_box", "must be a non-empty rectangle inside the domain");
    if (!domain().contains(probe)) throw InvalidParameter("geometry.probe", "must lie inside the domain");
  }
};

/// Model constants in coherent SI units (m, s, ug/m^3). The config loader
/// converts from the units the constants are usually quoted in.
struct PhysicalParams {
  double diffusion = units::diffusion_from_cm2_per_s(43.8);  ///< D [m^2/s]
  double length = 40.0;                                      ///< L [m]
  double u_r = 37.0;                                         ///< reference concentration [ug/m^3]
  double u_0 = 37.0;                                         ///< initial concentration [ug/m^3]
  double u_T = 0.0;                                          ///< Robin threshold [ug/m^3]
  double sigma = 300.0;                                      ///< environmental parameter, stored as given
  double f_r = 0.0;                                          ///< reference emission rate (rarely known)
  double s_r = 1.0;                                          ///< reference UV index
  double kappa = units::rate_from_per_day(1.85e4);           ///< reaction rate [1/(s UVI)]
  double gamma = 0.0;                                        ///< asphalt reactivity
  std::optional<double> A_f_override = 5.5;
  std::optional<double> robin_override;

  /// t_r = L^2 / D. There is deliberately no setter.
  double reference_time() const { return length * length / diffusion; }

  double kappa_per_day() const { return units::rate_to_per_day(kappa); }
  void set_kappa_per_day(double k) { kappa = units::rate_from_per_day(k); }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameter(name, "must be positive");
    };
    auto nonnegative = [](double v, const char* name) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidParameter(name, "must be nonnegative");
    };
    positive(diffusion, "D");
    positive(length, "L");
    positive(u_r, "u_r");
    positive(s_r, "s_r");
    nonnegative(kappa, "kappa");
    nonnegative(gamma, "gamma");
    nonnegative(u_0, "u_0");
    nonnegative(u_T, "u_T");
    nonnegative(sigma, "sigma");
    nonnegative(f_r, "f_r");
    if (A_f_override) nonnegative(*A_f_override, "A_f");
    if (robin_override) nonnegative(*robin_override, "robin_coeff");
  }
};

struct DimensionlessGroups {
  double A_f = 0.0;                 ///< emission number f_r L^2 / (u_r D)
  double A_s = 0.0;                 ///< solar reaction number s_r L^2 / D [UVI s]
  double robin_coeff = 0.0;         ///< sigma L / D
  double asphalt_coeff_base = 0.0;  ///< kappa L / D, scaled by gamma at assembly
  double u0_bar = 0.0;
  double uT_bar = 0.0;
  double t_r = 0.0;                 ///< L^2 / D [s]

  // Products the solver actually consumes.
  double reaction_coeff = 0.0;  ///< kappa A_s, multiplies s(t) u
  double asphalt_coeff = 0.0;   ///< gamma kappa L / D
};

inline DimensionlessGroups derive_groups(const PhysicalParams& p) {
  p.validate();
  DimensionlessGroups g;
  const double L = p.length;
  const double D = p.diffusion;
  g.t_r = L * L / D;
  g.A_f = p.A_f_override ? *p.A_f_override : p.f_r * L * L / (p.u_r * D);
  g.A_s = p.s_r * L * L / D;
  g.robin_coeff = p.robin_override ? *p.robin_override : p.sigma * L / D;
  g.asphalt_coeff_base = p.kappa * L / D;
  g.u0_bar = p.u_0 / p.u_r;
  g.uT_bar = p.u_T / p.u_r;
  g.reaction_coeff = p.kappa * g.A_s;
  g.asphalt_coeff = p.gamma * g.asphalt_coeff_base;
  return g;
}

inline double redimensionalize(double value, const PhysicalParams& p) {
  if (!(p.u_r > 0.0)) throw InvalidParameter("u_r", "must be positive");
  return value * p.u_r;
}

inline double nondimensionalize_concentration(double value, const PhysicalParams& p) {
  if (!(p.u_r > 0.0)) throw InvalidParameter("u_r", "must be positive");
  return value / p.u_r;
}

struct Numerics {
  int nx = 30;
  int ny = 30;
  int steps_per_day = 240;
  double theta = 1.0;
  double solver_tolerance = 1e-10;
  bool warm_start = false;

  void validate() const {
    if (nx < 1) throw InvalidParameter("numerics.nx", "must be >= 1");
    if (ny < 1) throw InvalidParameter("numerics.ny", "must be >= 1");
    if (steps_per_day < 1) throw InvalidParameter("numerics.steps_per_day", "must be >= 1");
    if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidParameter("numerics.theta", "must lie in [0, 1]");
    if (!(solver_tolerance > 0.0)) throw InvalidParameter("numerics.solver_tolerance", "must be positive");
  }
};

enum class ScenarioTag { pre_asphalt, post_asphalt };

inline const char* to_string(ScenarioTag t) {
  return t == ScenarioTag::pre_asphalt ? "pre_asphalt" : "post_asphalt";
}

/// Locations of the scenario's input CSVs. Window dates are ISO `YYYY-MM-DD`.
struct InputPaths {
  std::filesystem::path traffic;
  std::filesystem::path solar;
  std::filesystem::path measurements;
  std::string window_start;
  std::string window_end;
};

struct ScenarioConfig {
  Geometry geometry;
  PhysicalParams physical;
  Numerics numerics;
  InputPaths inputs;
  ScenarioTag tag = ScenarioTag::pre_asphalt;

  bool dimensionless = false;
  DimensionlessGroups groups;  ///< filled by nondimensionalize_config

  /// Before the asphalt was laid there is nothing for gamma to describe.
  void enforce_scenario() {
    if (tag == ScenarioTag::pre_asphalt) physical.gamma = 0.0;
  }

  void validate() const {
    geometry.validate();
    physical.validate();
    numerics.validate();
  }

  static ScenarioConfig defaults(ScenarioTag tag = ScenarioTag::pre_asphalt) {
    ScenarioConfig c;
    c.tag = tag;
    if (tag == ScenarioTag::post_asphalt) c.physical.gamma = 3.0e-3;
    return c;
  }
};

/// Rescales geometry by 1/L and attaches the dimensionless groups. Time is
/// already a fraction of the day throughout, so one simulated day is [0, 1).
inline ScenarioConfig nondimensionalize_config(const ScenarioConfig& raw) {
  if (raw.dimensionless) throw InvalidParameter("scenario", "config is already dimensionless");
  ScenarioConfig c = raw;
  c.enforce_scenario();
  c.validate();
  c.geometry = c.geometry.scaled(1.0 / c.physical.length);
  c.groups = derive_groups(c.physical);
  c.dimensionless = true;
  return c;
}

/// Re-derives the groups of a dimensionless config after its physical
/// parameters changed (used by sweeps and fits).
inline ScenarioConfig rederive(ScenarioConfig c) {
  if (!c.dimensionless) throw InvalidParameter("scenario", "config must be dimensionless");
  c.enforce_scenario();
  c.physical.validate();
  c.groups = derive_groups(c.physical);
  return c;
}

}  // namespace noxsim
