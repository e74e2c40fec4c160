#pragma once

// Two-stage identification: kappa from the pre-installation day with
// gamma = 0, then gamma from the post-installation day with kappa frozen.
// Each stage scans the relative discrepancy on a grid and refines the
// bracketing triple by golden-section search.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/metrics.hpp"
#include "noxsim/parallel.hpp"
#include "noxsim/signal.hpp"
#include "noxsim/solver.hpp"

namespace noxsim {

enum class Scale { linear, log };

struct SearchInterval {
  double lower = 0.0;
  double upper = 1.0;
  Scale scale = Scale::linear;

  static SearchInterval kappa_default() { return {1e2, 1e6, Scale::log}; }
  static SearchInterval gamma_default() { return {0.0, 1e-1, Scale::linear}; }

  void validate() const {
    if (!std::isfinite(lower) || !std::isfinite(upper) || lower < 0.0)
      throw InvalidParameter("interval", "bounds must be finite and >= 0");
    if (!(upper > lower)) throw InvalidParameter("interval", "upper bound must exceed lower bound");
    if (scale == Scale::log && !(lower > 0.0)) throw InvalidParameter("interval", "log scale needs lower > 0");
  }

  double to_search(double v) const { return scale == Scale::log ? std::log(v) : v; }
  double from_search(double z) const { return scale == Scale::log ? std::exp(z) : z; }

  /// n points evenly spaced on the interval's scale, endpoints included.
  std::vector<double> grid(int n) const {
    validate();
    if (n < 2) throw InvalidParameter("scan_points", "need at least 2 points");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double a = to_search(lower);
    const double b = to_search(upper);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = from_search(a + (b - a) * i / (n - 1));
    out.front() = lower;
    out.back() = upper;
    return out;
  }
};

struct FitOptions {
  int scan_points = 20;
  double relative_tolerance = 1e-3;
  int max_refinements = 100;
  bool scan_only = false;
  std::size_t workers = 0;  ///< 0: hardware concurrency
};

struct ScanPoint {
  double value = 0.0;
  double discrepancy = 0.0;
};

struct FitResult {
  double best_value = 0.0;
  double best_discrepancy = 0.0;
  std::vector<ScanPoint> scan_points;  ///< sorted by value
  int refinement_iterations = 0;
  bool converged = false;
  bool boundary_minimum = false;  ///< scan minimum sat on an interval end
  ScenarioConfig config_echo;     ///< config with the fitted value applied
};

/// Strict local minima of a scanned curve, endpoints included.
inline int count_local_minima(const std::vector<ScanPoint>& pts) {
  const std::size_t n = pts.size();
  if (n == 0) return 0;
  if (n == 1) return 1;
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = pts[i].discrepancy;
    const bool left_ok = i == 0 || d < pts[i - 1].discrepancy;
    const bool right_ok = i + 1 == n || d < pts[i + 1].discrepancy;
    if (left_ok && right_ok) ++count;
  }
  return count;
}

using BatchObjective = std::function<std::vector<double>(const std::vector<double>&)>;
using Objective = std::function<double(double)>;

/**
 * Golden-section search for the minimum of a unimodal f on [a, b] (values on
 * the interval's search scale). Stops when the bracket, measured in parameter
 * units, is narrower than rel_tol |centre| or abs_tol. Returns every
 * evaluated point via `trace`.
 */
inline std::pair<int, bool> golden_section(const Objective& f, const SearchInterval& scale, double a, double b,
                                           double rel_tol, double abs_tol, int max_iterations,
                                           std::vector<ScanPoint>& trace) {
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  auto eval = [&](double z) {
    const double v = scale.from_search(z);
    const double d = f(v);
    trace.push_back({v, d});
    return d;
  };
  auto narrow_enough = [&](double lo, double hi) {
    const double vlo = scale.from_search(lo);
    const double vhi = scale.from_search(hi);
    const double width = vhi - vlo;
    return width <= rel_tol * std::abs(0.5 * (vlo + vhi)) || width <= abs_tol;
  };

  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  int it = 0;
  while (!narrow_enough(a, b)) {
    if (it >= max_iterations) return {it, false};
    ++it;
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = eval(x2);
    }
  }
  return {it, true};
}

/// Scan on the interval grid, then golden-section on the bracket around the
/// best grid point. A minimum on an end point is flagged and refined only
/// inside the adjacent grid cell.
inline FitResult minimize_scanned(const BatchObjective& batch, const Objective& single, const SearchInterval& interval,
                                  const FitOptions& opt = {}) {
  interval.validate();
  const auto grid = interval.grid(opt.scan_points);
  const auto values = batch(grid);
  if (values.size() != grid.size()) throw Error("objective returned the wrong number of values");

  FitResult r;
  for (std::size_t i = 0; i < grid.size(); ++i) r.scan_points.push_back({grid[i], values[i]});
  const auto best_it = std::min_element(values.begin(), values.end());
  const std::size_t k = static_cast<std::size_t>(best_it - values.begin());
  r.boundary_minimum = k == 0 || k + 1 == grid.size();

  std::vector<ScanPoint> trace;
  if (!opt.scan_only) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = std::min(k + 1, grid.size() - 1);
    const double abs_tol = 1e-6 * (interval.upper - interval.lower);
    const auto [iters, ok] = golden_section(single, interval, interval.to_search(grid[lo]),
                                            interval.to_search(grid[hi]), opt.relative_tolerance, abs_tol,
                                            opt.max_refinements, trace);
    r.refinement_iterations = iters;
    r.converged = ok && !r.boundary_minimum;
  }

  r.best_value = grid[k];
  r.best_discrepancy = values[k];
  for (const auto& p : trace)
    if (p.discrepancy < r.best_discrepancy) {
      r.best_value = p.value;
      r.best_discrepancy = p.discrepancy;
    }
  return r;
}

/// Relative discrepancy against `meas` for each value of one parameter.
inline std::vector<ScanPoint> scan_objective(const ScenarioConfig& cfg, const DailySignal& m, const DailySignal& s,
                                             const DailySignal& meas, Parameter which,
                                             const std::vector<double>& values, std::size_t workers = 0) {
  if (values.empty()) throw InvalidParameter("values", "scan needs at least one value");
  std::vector<ScenarioConfig> configs;
  for (double v : values) configs.push_back(with_parameter(cfg, which, v));
  const auto d = parallel_map(
      values.size(),
      [&](std::size_t i) { return relative_discrepancy(run_day(configs[i], m, s).probe_series, meas); }, workers);
  std::vector<ScanPoint> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({values[i], d[i]});
  return out;
}

namespace detail {

inline FitResult fit_parameter(const ScenarioConfig& cfg, const DailySignal& m, const DailySignal& s,
                               const DailySignal& meas, Parameter which, const SearchInterval& interval,
                               const FitOptions& opt) {
  interval.validate();
  auto batch = [&](const std::vector<double>& vals) {
    const auto pts = scan_objective(cfg, m, s, meas, which, vals, opt.workers);
    std::vector<double> d;
    for (const auto& p : pts) d.push_back(p.discrepancy);
    return d;
  };
  auto single = [&](double v) {
    return relative_discrepancy(run_day(with_parameter(cfg, which, v), m, s).probe_series, meas);
  };
  FitResult r = minimize_scanned(batch, single, interval, opt);
  r.config_echo = with_parameter(cfg, which, r.best_value);
  return r;
}

}  // namespace detail

/// Stage one: kappa [1/(day UVI)] with gamma forced to zero.
inline FitResult fit_kappa(const ScenarioConfig& cfg, const DailySignal& m, const DailySignal& s,
                           const DailySignal& meas_pre, const SearchInterval& interval = SearchInterval::kappa_default(),
                           const FitOptions& opt = {}) {
  ScenarioConfig c = cfg;
  c.physical.gamma = 0.0;
  c = rederive(std::move(c));
  return detail::fit_parameter(c, m, s, meas_pre, Parameter::kappa, interval, opt);
}

/// Stage two: gamma with kappa [1/(day UVI)] frozen.
inline FitResult fit_gamma(const ScenarioConfig& cfg, const DailySignal& m, const DailySignal& s,
                           const DailySignal& meas_post, double kappa_fixed,
                           const SearchInterval& interval = SearchInterval::gamma_default(), const FitOptions& opt = {}) {
  if (!(kappa_fixed > 0.0) || !std::isfinite(kappa_fixed))
    throw InvalidParameter("kappa", "gamma stage needs a positive fixed kappa");
  ScenarioConfig c = cfg;
  c.tag = ScenarioTag::post_asphalt;
  c = with_parameter(c, Parameter::kappa, kappa_fixed);
  return detail::fit_parameter(c, m, s, meas_post, Parameter::gamma, interval, opt);
}

}  // namespace noxsim
