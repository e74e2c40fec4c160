// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../support.hpp"
#include "noxsim/fit.hpp"
#include "noxsim/metrics.hpp"
#include "noxsim/solver.hpp"

using namespace noxsim;
namespace ts = noxsim::testing_support;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;
std::vector<int> selected;  // empty: all

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) return;
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool in_time = elapsed < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %2d %s %-24s %s time=%.2fs budget=%.0fs%s\n", id, pass ? "PASS" : "FAIL", name,
              o.detail.c_str(), elapsed, budget_s, in_time ? "" : " (over budget)");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

/// Midpoint rule on n panels, independent of the library's trapezoid.
double midpoint(const DailySignal& f, int n = 200'000) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += f((k + 0.5) / n);
  return s / n;
}

ScenarioConfig scenario(ScenarioTag tag, bool warm = false) {
  auto raw = ScenarioConfig::defaults(tag);
  raw.numerics.warm_start = warm;
  return nondimensionalize_config(raw);
}

// ---------------------------------------------------------------- 1

Outcome normalization() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> count(50.0, 8000.0);
  std::uniform_real_distribution<double> rise(0.18, 0.35);
  std::uniform_real_distribution<double> set(0.62, 0.85);
  double worst = 0.0;
  for (int f = 0; f < 10; ++f) {
    TimeSeries traffic;
    traffic.kind = SeriesKind::traffic;
    for (int h = 0; h < 24; ++h) traffic.samples.push_back({(h + 0.5) / 24.0, count(rng)});
    worst = std::max(worst, std::abs(midpoint(build_traffic_density(traffic)) - 1.0));

    const double a = rise(rng);
    const double b = set(rng);
    std::uniform_real_distribution<double> noon(a + 0.1 * (b - a), b - 0.1 * (b - a));
    worst = std::max(worst, std::abs(midpoint(build_solar_factor({a, noon(rng), b})) - 1.0));
  }
  return {worst <= 1e-6, fmt("max|int-1|=%.3e", worst)};
}

// ---------------------------------------------------------------- 2

/// Relative L2-in-time error of the uniform reduction against the ODE oracle
/// at the default reaction coefficient, sampled at 240 output times.
double ode_error(int steps) {
  const auto base = scenario(ScenarioTag::pre_asphalt);
  const double reaction = base.groups.reaction_coeff;
  const double A_f = base.groups.A_f;
  const auto cfg = ts::uniform_reduction(reaction, A_f, 0.5, steps, 30);
  const auto m = ts::traffic();
  const auto s = ts::solar();
  const auto sim = run_day(cfg, m, s);
  const auto exact = ts::integrating_factor(m, s, A_f, reaction, cfg.groups.u0_bar, 240);
  const std::size_t stride = static_cast<std::size_t>(steps / 240);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    const double u = nondimensionalize_concentration(sim.probe_series[k * stride].value, cfg.physical);
    const double w = (k == 0 || k + 1 == exact.size()) ? 0.5 : 1.0;
    num += w * (u - exact[k]) * (u - exact[k]);
    den += w * exact[k] * exact[k];
  }
  return std::sqrt(num / den);
}

Outcome ode_oracle() {
  const double err = ode_error(240);
  char buf[160];
  // The 480-step figure is reported to show the scheme converging to the oracle.
  std::snprintf(buf, sizeof buf, "relative_l2=%.3e (480 steps: %.3e)", err, ode_error(480));
  return {err <= 1e-3, buf};
}

// ---------------------------------------------------------------- 3

// u = cos(pi x) cos(pi y) e^{-t} on the unit square with zero normal flux;
// u_t - Lap u = (2 pi^2 - 1) u.
struct Manufactured {
  fem::Mesh mesh;
  std::shared_ptr<const fem::SparsityPattern> pattern;
  fem::SparseOperator M, K;
  std::vector<double> shape_load;  // (cos cos, v)

  explicit Manufactured(int n)
      : mesh({0.0, 0.0, 1.0, 1.0}, n, n, 0.5, 0.5),
        pattern(fem::SparsityPattern::from_mesh(mesh)),
        M(fem::assemble_mass(mesh, pattern)),
        K(fem::assemble_stiffness(mesh, pattern)),
        shape_load(fem::assemble_load_function(mesh, [](double x, double y) { return shape(x, y); })) {}

  static double shape(double x, double y) { return std::cos(std::numbers::pi * x) * std::cos(std::numbers::pi * y); }

  /// Ritz projection of the initial state: (K + M) u = (2 pi^2 + 1)(u0, v).
  std::vector<double> initial() const {
    fem::SparseOperator A = K;
    A.add_scaled(1.0, M);
    std::vector<double> b = shape_load;
    for (double& v : b) v *= 2.0 * std::numbers::pi * std::numbers::pi + 1.0;
    return fem::solve_spd(A, b, 1e-13);
  }

  std::vector<double> run(double dt, int steps, double theta) const {
    const fem::ThetaOperators ops{M, K, M, M};
    const fem::LevelCoefficients none{};
    const double c = 2.0 * std::numbers::pi * std::numbers::pi - 1.0;
    auto load = [&](double t) {
      std::vector<double> f = shape_load;
      for (double& v : f) v *= c * std::exp(-t);
      return f;
    };
    fem::Field u{initial(), 0.0};
    auto f_prev = load(0.0);
    for (int k = 0; k < steps; ++k) {
      const double t1 = (k + 1) * dt;
      auto f_new = load(t1);
      u = fem::step_theta(ops, u, dt, theta, none, none, f_prev, f_new, 1e-13);
      f_prev = std::move(f_new);
    }
    return u.coefficients;
  }

  /// L2 norm of (u_h - g) with 5x5 Gauss per element.
  double l2(const std::vector<double>& u, const std::function<double(double, double)>& g) const {
    const auto q = fem::Gauss5::points();
    const auto w = fem::Gauss5::weights();
    double s = 0.0;
    for (int ey = 0; ey < mesh.ny(); ++ey)
      for (int ex = 0; ex < mesh.nx(); ++ex) {
        const Rect cell = mesh.element_rect(ex, ey);
        const auto nodes = mesh.element_nodes(ex, ey);
        for (int a = 0; a < 5; ++a)
          for (int b = 0; b < 5; ++b) {
            const auto phi = fem::Q2::values(q[a], q[b]);
            double uh = 0.0;
            for (int i = 0; i < 9; ++i) uh += u[nodes[i]] * phi[i];
            const double d = uh - g(cell.x0 + q[a] * mesh.hx(), cell.y0 + q[b] * mesh.hy());
            s += w[a] * w[b] * mesh.hx() * mesh.hy() * d * d;
          }
      }
    return std::sqrt(s);
  }
};

Outcome manufactured() {
  const double dt = 1e-4;
  const int steps = 1000;
  const double T = dt * steps;
  std::vector<double> err;
  for (int n : {8, 16, 32}) {
    const Manufactured p(n);
    const auto u = p.run(dt, steps, 0.5);
    err.push_back(p.l2(u, [&](double x, double y) { return Manufactured::shape(x, y) * std::exp(-T); }));
  }
  const double space = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));

  // Temporal self-convergence on 32^2 up to t = 1.
  const Manufactured p(32);
  std::vector<std::vector<double>> u;
  for (int steps_t : {60, 120, 240}) u.push_back(p.run(1.0 / steps_t, steps_t, 0.5));
  auto diff = [&](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return p.l2(d, [](double, double) { return 0.0; });
  };
  const double time = std::log2(diff(u[0], u[1]) / diff(u[1], u[2]));

  char buf[200];
  std::snprintf(buf, sizeof buf, "space_order=%.3f (L2 %.2e %.2e %.2e) time_order=%.3f", space, err[0], err[1],
                err[2], time);
  return {space >= 2.5 && time >= 1.9, buf};
}

// ---------------------------------------------------------------- 4

Outcome mass_balance() {
  const auto cfg = scenario(ScenarioTag::post_asphalt);
  ScenarioConfig c = cfg;
  c.numerics.theta = 1.0;
  const auto m = ts::traffic();
  const auto s = ts::solar();
  const FemSystem sys(c.geometry, c.numerics.nx, c.numerics.ny);
  const auto& g = c.groups;
  const std::size_t n = sys.mesh().node_count();
  const std::vector<double> ones(n, 1.0);
  const auto trace_gamma = sys.asphalt_mass() * std::span<const double>(ones);
  const double box_total = fem::dot(sys.box_load(), ones);
  const double dt = 1.0 / c.numerics.steps_per_day;

  std::vector<double> prev(n, g.u0_bar);
  int step = 0;
  double worst = 0.0;
  run_day(c, m, s, [&](const fem::Field& f) {
    ++step;
    const double t1 = step * dt;
    const auto& u1 = f.coefficients;
    auto switched = sys.robin_mass_switched(prev, g.uT_bar);
    const auto& BR = switched ? *switched : sys.robin_mass();
    const auto trace_r = BR * std::span<const double>(ones);
    double robin = 0.0;
    for (std::size_t i = 0; i < n; ++i) robin += trace_r[i] * (u1[i] - g.uT_bar);
    const double change = sys.total_mass(u1) - sys.total_mass(prev);
    const double source = g.A_f * m(t1) * box_total;
    const double sink = g.reaction_coeff * s(t1) * sys.total_mass(u1);
    const double asphalt = g.asphalt_coeff * fem::dot(trace_gamma, u1);
    const double rhs = dt * (source - sink - g.robin_coeff * robin - asphalt);
    const double scale = std::max({std::abs(change), dt * std::abs(source), dt * std::abs(sink),
                                   dt * std::abs(g.robin_coeff * robin), dt * std::abs(asphalt),
                                   std::abs(sys.total_mass(u1))});
    worst = std::max(worst, std::abs(change - rhs) / scale);
    prev = u1;
  });
  return {worst <= 1e-8 && step == c.numerics.steps_per_day, fmt("max_relative_defect=%.3e", worst)};
}

// ---------------------------------------------------------------- 5-7

DailySignal measurements_from(const ScenarioConfig& cfg) {
  const auto r = run_day(cfg, ts::traffic(), ts::solar());
  return build_measurement_curve(resample_series(r.probe_series, cfg.numerics.steps_per_day));
}

constexpr double kappa_true = 1.85e4;
constexpr double gamma_true = 3.0e-3;
double kappa_fitted = 0.0;
int kappa_minima = -1;
int gamma_minima = -1;

Outcome kappa_round_trip() {
  const auto pre = with_parameter(scenario(ScenarioTag::pre_asphalt, true), Parameter::kappa, kappa_true);
  const auto meas = measurements_from(pre);
  const auto r = fit_kappa(pre, ts::traffic(), ts::solar(), meas, {1e2, 1e6, Scale::log});
  kappa_fitted = r.best_value;
  kappa_minima = count_local_minima(r.scan_points);
  const double rel = std::abs(r.best_value - kappa_true) / kappa_true;
  char buf[200];
  std::snprintf(buf, sizeof buf, "kappa=%.6g rel_err=%.3e discrepancy=%.3e boundary=%d", r.best_value, rel,
                r.best_discrepancy, r.boundary_minimum ? 1 : 0);
  return {rel <= 0.01, buf};
}

Outcome gamma_round_trip() {
  auto post = scenario(ScenarioTag::post_asphalt, true);
  post = with_parameter(with_parameter(post, Parameter::kappa, kappa_true), Parameter::gamma, gamma_true);
  const auto meas = measurements_from(post);
  const double kappa = kappa_fitted > 0.0 ? kappa_fitted : kappa_true;
  const auto r = fit_gamma(post, ts::traffic(), ts::solar(), meas, kappa);
  gamma_minima = count_local_minima(r.scan_points);
  const double rel = std::abs(r.best_value - gamma_true) / gamma_true;
  char buf[200];
  std::snprintf(buf, sizeof buf, "gamma=%.6g rel_err=%.3e kappa_used=%.6g boundary=%d", r.best_value, rel, kappa,
                r.boundary_minimum ? 1 : 0);
  return {rel <= 0.02, buf};
}

Outcome unimodality() {
  char buf[120];
  std::snprintf(buf, sizeof buf, "kappa_minima=%d gamma_minima=%d", kappa_minima, gamma_minima);
  return {kappa_minima == 1 && gamma_minima == 1, buf};
}

// ---------------------------------------------------------------- 8

std::vector<Sample> default_probe;

Outcome performance() {
  const auto t0 = Clock::now();
  const auto r = run_day(scenario(ScenarioTag::post_asphalt), ts::traffic(), ts::solar());
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  default_probe = r.probe_series;
  char buf[120];
  std::snprintf(buf, sizeof buf, "run_day=%.2fs cg_iterations=%zu", elapsed, r.solver_iterations);
  return {elapsed < 60.0 && r.probe_series.size() == 241, buf};
}

// ---------------------------------------------------------------- 9

Outcome gamma_monotonicity() {
  const auto cfg = scenario(ScenarioTag::post_asphalt);
  const auto runs = sweep_parameter(cfg, ts::traffic(), ts::solar(), Parameter::gamma, {0.0, 1.5e-3, 3e-3});
  double worst = -INFINITY;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i)
    for (std::size_t k = 0; k < runs[i].probe_series.size(); ++k)
      worst = std::max(worst, runs[i + 1].probe_series[k].value - runs[i].probe_series[k].value);
  return {worst <= 1e-9, fmt("max_increase=%.3e", worst)};
}

// ---------------------------------------------------------------- 10

Outcome metric_identities() {
  const std::vector<Sample>& sim = default_probe;
  // x: the clamped probe series on its own grid, closed periodically.
  const auto x = resample_series(sim, 240);
  const auto meas = build_measurement_curve(x);
  std::vector<Sample> xs = x.samples;
  xs.push_back({1.0, x.samples.front().value});
  std::vector<Sample> zero = xs, shifted = xs;
  for (auto& p : zero) p.value = 0.0;
  const double offset = 5.0;
  for (auto& p : shifted) p.value += offset;

  const double d_same = relative_discrepancy(xs, meas);
  const double d_zero = relative_discrepancy(zero, meas);
  const double me = mass_error(shifted, meas);
  char buf[200];
  std::snprintf(buf, sizeof buf, "rd(x,x)=%.2e rd(0,x)-1=%.2e mass_error-5=%.2e", d_same, d_zero - 1.0, me - offset);
  return {d_same <= 1e-12 && std::abs(d_zero - 1.0) <= 1e-12 && std::abs(me - offset) <= 1e-9, buf};
}

}  // namespace

// Usage: noxsim_acceptance [criterion ...]
int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  criterion(1, "normalization", 1.0, normalization);
  criterion(2, "ode_oracle", 10.0, ode_oracle);
  criterion(3, "manufactured_solution", 120.0, manufactured);
  criterion(4, "mass_balance", 30.0, mass_balance);
  criterion(5, "kappa_round_trip", 300.0, kappa_round_trip);
  criterion(6, "gamma_round_trip", 300.0, gamma_round_trip);
  criterion(7, "unimodality", 1.0, unimodality);
  criterion(8, "performance", 60.0, performance);
  criterion(9, "gamma_monotonicity", 180.0, gamma_monotonicity);
  if (default_probe.empty())  // fixture only, outside the timed region
    default_probe = run_day(scenario(ScenarioTag::post_asphalt), ts::traffic(), ts::solar()).probe_series;
  criterion(10, "metric_identities", 1.0, metric_identities);
  const int ran = selected.empty() ? 10 : static_cast<int>(selected.size());
  std::printf("%s: %d of %d criteria failed\n", failures ? "FAIL" : "PASS", failures, ran);
  return failures ? 1 : 0;
}
