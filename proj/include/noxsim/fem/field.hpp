#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/fem/basis.hpp"
#include "noxsim/fem/mesh.hpp"

namespace noxsim::fem {

/// Nodal coefficients of u(., t) at one time level.
struct Field {
  std::vector<double> coefficients;
  double time = 0.0;

  bool finite() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](double v) { return std::isfinite(v); });
  }
};

/// Value of the Q2 field at a point; the containing element is found by
/// arithmetic on the uniform grid.
inline double evaluate_at(const Mesh& mesh, std::span<const double> u, const Point& p) {
  const Rect& ext = mesh.extents();
  constexpr double slack = 1e-12;
  if (p.x < ext.x0 - slack * ext.width() || p.x > ext.x1 + slack * ext.width() ||
      p.y < ext.y0 - slack * ext.height() || p.y > ext.y1 + slack * ext.height())
    throw InvalidParameter("point", "outside the domain");
  if (u.size() != mesh.node_count()) throw Error("evaluate_at: field does not match mesh");
  const int ex = std::clamp(static_cast<int>(std::floor((p.x - ext.x0) / mesh.hx())), 0, mesh.nx() - 1);
  const int ey = std::clamp(static_cast<int>(std::floor((p.y - ext.y0) / mesh.hy())), 0, mesh.ny() - 1);
  const Rect cell = mesh.element_rect(ex, ey);
  const auto phi = Q2::values((p.x - cell.x0) / mesh.hx(), (p.y - cell.y0) / mesh.hy());
  const auto nodes = mesh.element_nodes(ex, ey);
  double v = 0.0;
  for (int a = 0; a < 9; ++a) v += phi[a] * u[nodes[a]];
  return v;
}

inline double evaluate_at(const Mesh& mesh, const Field& f, const Point& p) {
  return evaluate_at(mesh, f.coefficients, p);
}

/// || u_h - exact ||_L2 with a 5x5 Gauss rule per element.
template <typename F>
double l2_error(const Mesh& mesh, std::span<const double> u, F&& exact) {
  const auto q = Gauss5::points();
  const auto w = Gauss5::weights();
  double sum = 0.0;
  for (int ey = 0; ey < mesh.ny(); ++ey)
    for (int ex = 0; ex < mesh.nx(); ++ex) {
      const Rect cell = mesh.element_rect(ex, ey);
      const auto nodes = mesh.element_nodes(ex, ey);
      for (int qy = 0; qy < 5; ++qy)
        for (int qx = 0; qx < 5; ++qx) {
          const auto phi = Q2::values(q[qx], q[qy]);
          double uh = 0.0;
          for (int a = 0; a < 9; ++a) uh += phi[a] * u[nodes[a]];
          const double d = uh - exact(cell.x0 + q[qx] * mesh.hx(), cell.y0 + q[qy] * mesh.hy());
          sum += w[qx] * w[qy] * mesh.hx() * mesh.hy() * d * d;
        }
    }
  return std::sqrt(sum);
}

}  // namespace noxsim::fem
