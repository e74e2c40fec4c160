#pragma once

// Daily signals on the periodic unit interval: traffic density m(t), solar
// factor s(t) and the averaged-day measurement curve.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/spline.hpp"

namespace noxsim {

enum class SeriesKind { traffic, solar_events, concentration };

struct Sample {
  double t = 0.0;  ///< fraction of the day in [0, 1)
  double value = 0.0;
};

struct TimeSeries {
  SeriesKind kind = SeriesKind::concentration;
  std::vector<Sample> samples;
  /// Number of days averaged into each sample; empty for raw series.
  std::vector<int> contributors;

  std::vector<double> times() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.t);
    return out;
  }
  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.value);
    return out;
  }

  void validate_for_spline() const {
    if (samples.size() < 3) throw InputError("insufficient data: at least 3 samples are required");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      if (!(s.t >= 0.0 && s.t < 1.0)) throw InputError("sample time outside [0, 1)");
      if (i > 0 && !(s.t > samples[i - 1].t)) throw InputError("sample times must be strictly increasing");
      if (!std::isfinite(s.value)) throw InputError("sample value is not finite");
    }
  }
};

namespace detail {

/// Compensated sum of f(k/N), k = 0..N-1, divided by N. For a 1-periodic f
/// this is exactly the composite trapezoid rule on N panels.
template <typename F>
double periodic_trapezoid(F&& f, std::size_t panels) {
  double sum = 0.0;
  double carry = 0.0;
  const double h = 1.0 / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double v = f(static_cast<double>(k) * h);
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return (sum + carry) * h;
}

inline double wrap_unit(double t) {
  double w = t - std::floor(t);
  return w >= 1.0 ? 0.0 : w;
}

}  // namespace detail

inline constexpr std::size_t normalization_panels = 1'000'000;

/// Immutable nonnegative periodic function on [0, 1).
class DailySignal {
public:
  using Shape = std::function<double(double)>;

  DailySignal(Shape shape, double scale, bool normalized, double integral, std::vector<double> knots = {},
              double raw_total = 0.0)
      : shape_(std::make_shared<Shape>(std::move(shape))),
        scale_(scale),
        normalized_(normalized),
        integral_(integral),
        knots_(std::move(knots)),
        raw_total_(raw_total) {}

  double operator()(double t) const { return scale_ * std::max(0.0, (*shape_)(detail::wrap_unit(t))); }

  bool normalized() const { return normalized_; }
  /// Integral over one day of the signal as evaluated.
  double integral() const { return integral_; }
  /// Interpolation abscissae, if the signal came from samples.
  const std::vector<double>& knots() const { return knots_; }
  /// Sum of the raw input values (e.g. vehicles per day).
  double raw_total() const { return raw_total_; }

  static DailySignal constant(double value) {
    return DailySignal([value](double) { return value; }, 1.0, std::abs(value - 1.0) < 1e-15, value);
  }

private:
  std::shared_ptr<const Shape> shape_;
  double scale_ = 1.0;
  bool normalized_ = false;
  double integral_ = 0.0;
  std::vector<double> knots_;
  double raw_total_ = 0.0;
};

namespace detail {

inline DailySignal normalize_shape(DailySignal::Shape shape, std::vector<double> knots, double raw_total) {
  const double integral =
      periodic_trapezoid([&](double t) { return std::max(0.0, shape(t)); }, normalization_panels);
  if (!(integral > 0.0) || !std::isfinite(integral))
    throw InputError("normalization impossible: signal integrates to zero");
  return DailySignal(std::move(shape), 1.0 / integral, true, 1.0, std::move(knots), raw_total);
}

}  // namespace detail

/// m(t): periodic cubic spline through the traffic counts, clamped at zero
/// and scaled to unit integral over the day.
inline DailySignal build_traffic_density(const TimeSeries& ts) {
  if (ts.kind != SeriesKind::traffic) throw InputError("traffic density requires a traffic series");
  ts.validate_for_spline();
  double total = 0.0;
  for (const auto& s : ts.samples) {
    if (s.value < 0.0) throw InputError("traffic counts must be nonnegative");
    total += s.value;
  }
  const auto t = ts.times();
  const auto y = ts.values();
  auto spline = std::make_shared<const PeriodicCubicSpline>(t, y);
  return detail::normalize_shape([spline](double x) { return (*spline)(x); }, t, total);
}

struct SolarEvents {
  double sunrise = 0.25;
  double solar_noon = 0.5;
  double sunset = 0.75;

  void validate() const {
    if (!(0.0 < sunrise && sunrise < solar_noon && solar_noon < sunset && sunset < 1.0))
      throw InvalidParameter("solar_events", "require 0 < sunrise < solar_noon < sunset < 1");
  }
};

/// Maps [0, 1] onto [0, 1] with arch(0) = 0 and arch(1) = 1.
using ArchFunction = std::function<double(double)>;

inline double half_cosine_arch(double xi) { return 0.5 * (1.0 - std::cos(std::numbers::pi * xi)); }

/// Unnormalized two-arch daylight shape; peaks at 1 at solar noon.
inline double solar_shape(const SolarEvents& ev, const ArchFunction& arch, double t) {
  if (t <= ev.sunrise || t >= ev.sunset) return 0.0;
  if (t <= ev.solar_noon) return arch((t - ev.sunrise) / (ev.solar_noon - ev.sunrise));
  return arch((ev.sunset - t) / (ev.sunset - ev.solar_noon));
}

/// s(t): zero outside daylight, rising and falling arches meeting at solar
/// noon, scaled to unit integral.
inline DailySignal build_solar_factor(const SolarEvents& ev, ArchFunction arch = half_cosine_arch) {
  ev.validate();
  return detail::normalize_shape([ev, arch](double t) { return solar_shape(ev, arch, t); }, {}, 0.0);
}

/// Averaged-day concentration curve u_r(t) in ug/m^3. Clamped, not normalized.
inline DailySignal build_measurement_curve(const TimeSeries& ts) {
  if (ts.kind != SeriesKind::concentration) throw InputError("measurement curve requires a concentration series");
  ts.validate_for_spline();
  for (const auto& s : ts.samples)
    if (s.value < 0.0) throw InputError("concentrations must be nonnegative");
  const auto t = ts.times();
  const auto y = ts.values();
  auto spline = std::make_shared<const PeriodicCubicSpline>(t, y);
  auto shape = [spline](double x) { return (*spline)(x); };
  const double integral =
      detail::periodic_trapezoid([&](double x) { return std::max(0.0, shape(x)); }, normalization_panels);
  return DailySignal(shape, 1.0, false, integral, t, 0.0);
}

/// One day of measurements. Missing slots carry NaN.
struct DatedSeries {
  std::string date;  ///< ISO YYYY-MM-DD
  TimeSeries series;
};

/// Inclusive ISO date range; empty bounds are open.
struct DateRange {
  std::string first;
  std::string last;

  bool contains(const std::string& date) const {
    return (first.empty() || date >= first) && (last.empty() || date <= last);
  }
};

/// Per-slot arithmetic mean over the days inside the window. Missing values
/// are skipped; slots nobody contributed to are dropped.
inline TimeSeries average_seasonal_window(const std::vector<DatedSeries>& days, const DateRange& window) {
  constexpr double slot_tol = 1e-9;
  std::vector<const DatedSeries*> selected;
  for (const auto& d : days)
    if (window.contains(d.date)) selected.push_back(&d);
  if (selected.empty()) throw InputError("no data: no days inside the averaging window");

  std::vector<double> slots;
  for (const auto* d : selected)
    for (const auto& s : d->series.samples) slots.push_back(s.t);
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end(), [](double a, double b) { return std::abs(a - b) < slot_tol; }),
              slots.end());

  std::vector<double> sum(slots.size(), 0.0);
  std::vector<int> count(slots.size(), 0);
  for (const auto* d : selected) {
    for (const auto& s : d->series.samples) {
      if (!std::isfinite(s.value)) continue;
      auto it = std::lower_bound(slots.begin(), slots.end(), s.t - slot_tol);
      const auto k = static_cast<std::size_t>(it - slots.begin());
      sum[k] += s.value;
      ++count[k];
    }
  }

  TimeSeries out;
  out.kind = selected.front()->series.kind;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (count[k] == 0) continue;
    out.samples.push_back({slots[k], sum[k] / count[k]});
    out.contributors.push_back(count[k]);
  }
  if (out.samples.empty()) throw InputError("no data: every slot in the window is missing");
  return out;
}

}  // namespace noxsim
