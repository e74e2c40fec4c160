#pragma once

// One simulated day of the street cross-section: traffic emission inside the
// source box, UV-driven conversion everywhere, Robin exchange with the
// ambient air on the top and lateral edges and uptake by the asphalt.

#include <functional>
#include <memory>
#include <vector>

#include "noxsim/domain_model.hpp"
#include "noxsim/error.hpp"
#include "noxsim/fem/assembly.hpp"
#include "noxsim/fem/field.hpp"
#include "noxsim/fem/mesh.hpp"
#include "noxsim/fem/sparse.hpp"
#include "noxsim/fem/theta.hpp"
#include "noxsim/parallel.hpp"
#include "noxsim/signal.hpp"

namespace noxsim {

/// Mesh plus every operator the day loop needs, assembled once.
class FemSystem {
public:
  FemSystem(const Geometry& dimensionless_geometry, int nx, int ny)
      : mesh_(fem::build_mesh(dimensionless_geometry, nx, ny)),
        pattern_(fem::SparsityPattern::from_mesh(mesh_)),
        mass_(fem::assemble_mass(mesh_, pattern_)),
        stiffness_(fem::assemble_stiffness(mesh_, pattern_)),
        robin_mass_(fem::assemble_boundary_mass(mesh_, pattern_, fem::BoundaryTag::GammaR)),
        asphalt_mass_(fem::assemble_boundary_mass(mesh_, pattern_, fem::BoundaryTag::Gamma)),
        box_load_(fem::assemble_load(mesh_, dimensionless_geometry.emission_box, 1.0)) {
    const std::vector<double> ones(mesh_.node_count(), 1.0);
    mass_weights_ = mass_ * std::span<const double>(ones);
  }

  const fem::Mesh& mesh() const { return mesh_; }
  const std::shared_ptr<const fem::SparsityPattern>& pattern() const { return pattern_; }
  const fem::SparseOperator& mass() const { return mass_; }
  const fem::SparseOperator& stiffness() const { return stiffness_; }
  const fem::SparseOperator& robin_mass() const { return robin_mass_; }
  const fem::SparseOperator& asphalt_mass() const { return asphalt_mass_; }
  const std::vector<double>& box_load() const { return box_load_; }

  /// Total dimensionless mass 1^T M u.
  double total_mass(std::span<const double> u) const { return fem::dot(mass_weights_, u); }

  /// Gamma_R segments whose nodes all sit below the threshold carry no flux,
  /// the positive part (u - u_T)^+ being zero there. Returns nullptr when every
  /// segment is active, which is the usual case.
  std::unique_ptr<fem::SparseOperator> robin_mass_switched(std::span<const double> u, double threshold) const {
    constexpr double tolerance = 1e-9;
    const auto& segments = mesh_.boundary_segments();
    const auto& edges = mesh_.boundary_edges();
    auto inactive = [&](fem::Index s) {
      for (fem::Index n : edges[segments[s].edge].nodes)
        if (u[n] >= threshold - tolerance) return false;
      return true;
    };
    bool any_inactive = false;
    for (fem::Index s = 0; s < segments.size() && !any_inactive; ++s)
      any_inactive = segments[s].tag == fem::BoundaryTag::GammaR && inactive(s);
    if (!any_inactive) return nullptr;
    return std::make_unique<fem::SparseOperator>(fem::assemble_boundary_mass(
        mesh_, pattern_, fem::BoundaryTag::GammaR, [&](fem::Index s) { return !inactive(s); }));
  }

private:
  fem::Mesh mesh_;
  std::shared_ptr<const fem::SparsityPattern> pattern_;
  fem::SparseOperator mass_;
  fem::SparseOperator stiffness_;
  fem::SparseOperator robin_mass_;
  fem::SparseOperator asphalt_mass_;
  std::vector<double> box_load_;
  std::vector<double> mass_weights_;
};

struct SimulationResult {
  std::vector<Sample> probe_series;  ///< (t, ug/m^3), t = 0, dt, ..., 1
  fem::Field final_field;            ///< dimensionless
  std::vector<Sample> mass_history;  ///< (t, 1^T M u)
  ScenarioConfig config_echo;
  std::size_t solver_iterations = 0;
};

/// Called after every step with the new field.
using StepObserver = std::function<void(const fem::Field&)>;

namespace detail {

inline fem::LevelCoefficients level_coefficients(const DimensionlessGroups& g, const DailySignal& s, double t) {
  return {g.reaction_coeff * s(t), g.robin_coeff, g.asphalt_coeff, g.uT_bar};
}

inline std::vector<double> source_load(const FemSystem& sys, const DimensionlessGroups& g, const DailySignal& m,
                                       double t) {
  std::vector<double> f = sys.box_load();
  const double w = g.A_f * m(t);
  for (double& v : f) v *= w;
  return f;
}

inline SimulationResult integrate_day(const FemSystem& sys, const ScenarioConfig& cfg, const DailySignal& m,
                                      const DailySignal& s, fem::Field u, const StepObserver& observer) {
  const auto& g = cfg.groups;
  const auto& num = cfg.numerics;
  const int steps = num.steps_per_day;
  const double dt = 1.0 / steps;
  const Point probe = cfg.geometry.probe;

  SimulationResult result;
  result.config_echo = cfg;
  result.probe_series.reserve(static_cast<std::size_t>(steps) + 1);
  result.mass_history.reserve(static_cast<std::size_t>(steps) + 1);
  auto record = [&](const fem::Field& f) {
    result.probe_series.push_back({f.time, redimensionalize(fem::evaluate_at(sys.mesh(), f, probe), cfg.physical)});
    result.mass_history.push_back({f.time, sys.total_mass(f.coefficients)});
  };
  record(u);

  auto load_prev = source_load(sys, g, m, 0.0);
  auto c_prev = level_coefficients(g, s, 0.0);
  for (int n = 0; n < steps; ++n) {
    const double t_new = static_cast<double>(n + 1) * dt;
    auto load_new = source_load(sys, g, m, t_new);
    const auto c_new = level_coefficients(g, s, t_new);

    std::unique_ptr<fem::SparseOperator> switched;
    if (g.robin_coeff != 0.0) switched = sys.robin_mass_switched(u.coefficients, g.uT_bar);
    const fem::ThetaOperators ops{sys.mass(), sys.stiffness(), switched ? *switched : sys.robin_mass(),
                                  sys.asphalt_mass()};

    fem::SolveStats stats;
    fem::Field next = fem::step_theta(ops, u, dt, num.theta, c_prev, c_new, load_prev, load_new,
                                      num.solver_tolerance, &stats);
    next.time = t_new;  // avoid accumulated rounding in the clock
    result.solver_iterations += stats.iterations;
    if (!next.finite()) throw SolverFailure("run_day: non-finite field", stats.relative_residual, stats.iterations);

    u = std::move(next);
    record(u);
    if (observer) observer(u);
    load_prev = std::move(load_new);
    c_prev = c_new;
  }
  result.final_field = std::move(u);
  return result;
}

}  // namespace detail

/// Runs one day from the uniform initial state u_0 / u_r (or, with
/// warm_start, from the end state of a preliminary day). Probe values are
/// reported in ug/m^3.
inline SimulationResult run_day(const ScenarioConfig& cfg, const DailySignal& m, const DailySignal& s,
                                const StepObserver& observer = {}) {
  if (!cfg.dimensionless) throw InvalidParameter("scenario", "run_day expects a dimensionless config");
  if (!m.normalized()) throw InvalidParameter("m", "traffic density must be normalized");
  if (!s.normalized()) throw InvalidParameter("s", "solar factor must be normalized");
  cfg.numerics.validate();
  cfg.geometry.validate();

  const FemSystem sys(cfg.geometry, cfg.numerics.nx, cfg.numerics.ny);
  fem::Field u{std::vector<double>(sys.mesh().node_count(), cfg.groups.u0_bar), 0.0};
  if (cfg.numerics.warm_start) {
    u = detail::integrate_day(sys, cfg, m, s, std::move(u), {}).final_field;
    u.time = 0.0;
  }
  return detail::integrate_day(sys, cfg, m, s, std::move(u), observer);
}

enum class Parameter { kappa, gamma };

inline const char* to_string(Parameter p) { return p == Parameter::kappa ? "kappa" : "gamma"; }

/// Copy of `cfg` with one parameter replaced. kappa is given in 1/(day UVI),
/// gamma is dimensionless.
inline ScenarioConfig with_parameter(const ScenarioConfig& cfg, Parameter which, double value) {
  if (!std::isfinite(value) || value < 0.0) throw InvalidParameter(to_string(which), "must be finite and >= 0");
  ScenarioConfig c = cfg;
  if (which == Parameter::kappa) {
    c.physical.set_kappa_per_day(value);
  } else {
    if (c.tag == ScenarioTag::pre_asphalt && value != 0.0)
      throw InvalidParameter("gamma", "the pre_asphalt scenario fixes gamma = 0");
    c.physical.gamma = value;
  }
  return rederive(std::move(c));
}

/// One independent run per value, executed in parallel, returned in input order.
inline std::vector<SimulationResult> sweep_parameter(const ScenarioConfig& cfg, const DailySignal& m,
                                                     const DailySignal& s, Parameter which,
                                                     const std::vector<double>& values) {
  if (values.empty()) throw InvalidParameter("values", "sweep needs at least one value");
  std::vector<ScenarioConfig> configs;
  configs.reserve(values.size());
  for (double v : values) configs.push_back(with_parameter(cfg, which, v));
  return parallel_map(values.size(), [&](std::size_t i) { return run_day(configs[i], m, s); });
}

}  // namespace noxsim
