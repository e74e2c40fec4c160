#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "noxsim/error.hpp"

namespace noxsim {

/**
 * Periodic cubic spline through (t_i, y_i), t_0 < ... < t_{n-1} < t_0 + period.
 *
 * The second derivatives M_i solve the cyclic tridiagonal system
 *
 *   h_{i-1} M_{i-1} + 2 (h_{i-1} + h_i) M_i + h_i M_{i+1}
 *       = 6 [ (y_{i+1} - y_i) / h_i - (y_i - y_{i-1}) / h_{i-1} ]
 *
 * with indices taken modulo n, which makes the interpolant C2 across the wrap.
 */
class PeriodicCubicSpline {
public:
  PeriodicCubicSpline() = default;

  PeriodicCubicSpline(std::span<const double> t, std::span<const double> y, double period = 1.0)
      : t_(t.begin(), t.end()), y_(y.begin(), y.end()), period_(period) {
    const std::size_t n = t_.size();
    if (n != y_.size()) throw InputError("spline: abscissae and values differ in length");
    if (n < 3) throw InputError("spline: at least 3 samples are required");
    if (!(period_ > 0.0)) throw InputError("spline: period must be positive");
    for (std::size_t i = 1; i < n; ++i)
      if (!(t_[i] > t_[i - 1])) throw InputError("spline: abscissae must be strictly increasing");
    if (!(t_.back() < t_.front() + period_)) throw InputError("spline: samples span more than one period");

    h_.resize(n);
    for (std::size_t i = 0; i + 1 < n; ++i) h_[i] = t_[i + 1] - t_[i];
    h_[n - 1] = t_[0] + period_ - t_[n - 1];

    std::vector<double> sub(n), diag(n), sup(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t prev = (i + n - 1) % n;
      const std::size_t next = (i + 1) % n;
      sub[i] = h_[prev];
      diag[i] = 2.0 * (h_[prev] + h_[i]);
      sup[i] = h_[i];
      rhs[i] = 6.0 * ((y_[next] - y_[i]) / h_[i] - (y_[i] - y_[prev]) / h_[prev]);
    }
    m_ = solve_cyclic(sub, diag, sup, rhs);
  }

  std::size_t size() const { return t_.size(); }
  double period() const { return period_; }
  const std::vector<double>& knots() const { return t_; }
  const std::vector<double>& values() const { return y_; }

  double operator()(double t) const {
    const std::size_t n = t_.size();
    // Shift into [t_0, t_0 + period).
    double s = t_[0] + std::fmod(t - t_[0], period_);
    if (s < t_[0]) s += period_;
    auto it = std::upper_bound(t_.begin(), t_.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
    const std::size_t j = (i + 1) % n;
    const double h = h_[i];
    const double left = t_[i];
    const double a = left + h - s;  // distance to right knot
    const double b = s - left;
    return m_[i] * a * a * a / (6.0 * h) + m_[j] * b * b * b / (6.0 * h) + (y_[i] / h - m_[i] * h / 6.0) * a +
           (y_[j] / h - m_[j] * h / 6.0) * b;
  }

  /// Exact integral over one period.
  double integral() const {
    const std::size_t n = t_.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      const double h = h_[i];
      sum += 0.5 * h * (y_[i] + y_[j]) - h * h * h * (m_[i] + m_[j]) / 24.0;
    }
    return sum;
  }

private:
  // Cyclic tridiagonal solve via Sherman-Morrison on top of the Thomas algorithm.
  static std::vector<double> solve_cyclic(const std::vector<double>& a, std::vector<double> b,
                                          const std::vector<double>& c, const std::vector<double>& r) {
    const std::size_t n = b.size();
    const double alpha = c[n - 1];  // A(n-1, 0)
    const double beta = a[0];       // A(0, n-1)
    const double gamma = -b[0];
    b[0] -= gamma;
    b[n - 1] -= alpha * beta / gamma;

    auto thomas = [&](const std::vector<double>& rhs) {
      std::vector<double> cp(n), x(n);
      double denom = b[0];
      x[0] = rhs[0] / denom;
      for (std::size_t i = 1; i < n; ++i) {
        cp[i] = c[i - 1] / denom;
        denom = b[i] - a[i] * cp[i];
        x[i] = (rhs[i] - a[i] * x[i - 1]) / denom;
      }
      for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i + 1] * x[i + 1];
      return x;
    };

    std::vector<double> x = thomas(r);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;
    std::vector<double> z = thomas(u);
    const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
    return x;
  }

  std::vector<double> t_;
  std::vector<double> y_;
  std::vector<double> h_;
  std::vector<double> m_;
  double period_ = 1.0;
};

}  // namespace noxsim
