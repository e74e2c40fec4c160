#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/signal.hpp"

namespace noxsim {

struct DiscrepancyReport {
  double relative_l2 = 0.0;
  double mass_error = 0.0;  ///< ug/m^3
  std::size_t n_samples = 0;
};

namespace detail {

struct PairedSeries {
  std::vector<double> t;
  std::vector<double> sim;
  std::vector<double> meas;
};

/// Simulated series (linear between samples) and measurement curve on the
/// union of both sample grids, restricted to the simulated time span.
inline PairedSeries pair_on_union_grid(std::span<const Sample> sim, const DailySignal& meas) {
  if (sim.size() < 2) throw InputError("simulated series needs at least 2 samples");
  for (std::size_t i = 1; i < sim.size(); ++i)
    if (!(sim[i].t > sim[i - 1].t)) throw InputError("simulated series times must be strictly increasing");

  const double t0 = sim.front().t;
  const double t1 = sim.back().t;
  std::vector<double> grid;
  grid.reserve(sim.size() + meas.knots().size());
  for (const auto& s : sim) grid.push_back(s.t);
  for (double k : meas.knots())
    if (k > t0 && k < t1) grid.push_back(k);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  PairedSeries out;
  out.t = grid;
  out.sim.reserve(grid.size());
  out.meas.reserve(grid.size());
  std::size_t j = 0;
  for (double t : grid) {
    while (j + 2 < sim.size() && sim[j + 1].t <= t) ++j;
    const auto& a = sim[j];
    const auto& b = sim[j + 1];
    const double w = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    out.sim.push_back(w == 0.0 ? a.value : w == 1.0 ? b.value : a.value + w * (b.value - a.value));
    out.meas.push_back(meas(t));
  }
  return out;
}

template <typename F>
double trapezoid(const std::vector<double>& t, F&& integrand) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) sum += 0.5 * (t[i + 1] - t[i]) * (integrand(i) + integrand(i + 1));
  return sum;
}

}  // namespace detail

/// || u_r - u || / || u_r || in L2 over the day at the probe point.
inline double relative_discrepancy(std::span<const Sample> sim, const DailySignal& meas) {
  const auto p = detail::pair_on_union_grid(sim, meas);
  const double num = detail::trapezoid(p.t, [&](std::size_t i) {
    const double d = p.meas[i] - p.sim[i];
    return d * d;
  });
  const double den = detail::trapezoid(p.t, [&](std::size_t i) { return p.meas[i] * p.meas[i]; });
  if (!(den > 0.0)) throw InputError("relative discrepancy: measurement curve is identically zero");
  return std::sqrt(num) / std::sqrt(den);
}

/// Integral over the day of |u - u_r| at the probe, in ug/m^3.
inline double mass_error(std::span<const Sample> sim, const DailySignal& meas) {
  const auto p = detail::pair_on_union_grid(sim, meas);
  return detail::trapezoid(p.t, [&](std::size_t i) { return std::abs(p.sim[i] - p.meas[i]); });
}

/// Simulated series sampled at k / per_day, k = 0 .. per_day - 1, linear
/// between samples and clamped at zero, as a concentration series.
inline TimeSeries resample_series(std::span<const Sample> sim, int per_day) {
  if (per_day < 3) throw InvalidParameter("per_day", "need at least 3 samples per day");
  if (sim.size() < 2 || sim.front().t > 0.0 || sim.back().t < 1.0 - 1.0 / per_day)
    throw InputError("resample_series: simulated series does not cover the day");
  TimeSeries out;
  out.kind = SeriesKind::concentration;
  std::size_t j = 0;
  for (int k = 0; k < per_day; ++k) {
    const double t = static_cast<double>(k) / per_day;
    while (j + 2 < sim.size() && sim[j + 1].t <= t) ++j;
    const auto& a = sim[j];
    const auto& b = sim[j + 1];
    const double w = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    out.samples.push_back({t, std::max(0.0, a.value + w * (b.value - a.value))});
  }
  return out;
}

inline DiscrepancyReport discrepancy_report(std::span<const Sample> sim, const DailySignal& meas) {
  DiscrepancyReport r;
  r.relative_l2 = relative_discrepancy(sim, meas);
  r.mass_error = mass_error(sim, meas);
  r.n_samples = detail::pair_on_union_grid(sim, meas).t.size();
  return r;
}

}  // namespace noxsim
