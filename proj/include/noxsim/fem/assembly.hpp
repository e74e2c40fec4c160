#pragma once

#include <array>
#include <functional>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/fem/basis.hpp"
#include "noxsim/fem/mesh.hpp"
#include "noxsim/fem/sparse.hpp"

namespace noxsim::fem {

using LocalMatrix = std::array<std::array<double, 9>, 9>;

namespace detail {

// Elements are congruent axis-aligned rectangles, so one local matrix serves
// the whole mesh.
inline LocalMatrix local_mass(double hx, double hy) {
  LocalMatrix m{};
  const auto q = Gauss3::points();
  const auto w = Gauss3::weights();
  for (int qy = 0; qy < 3; ++qy)
    for (int qx = 0; qx < 3; ++qx) {
      const auto phi = Q2::values(q[qx], q[qy]);
      const double jw = w[qx] * w[qy] * hx * hy;
      for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) m[a][b] += jw * phi[a] * phi[b];
    }
  return m;
}

inline LocalMatrix local_stiffness(double hx, double hy) {
  LocalMatrix k{};
  const auto q = Gauss3::points();
  const auto w = Gauss3::weights();
  for (int qy = 0; qy < 3; ++qy)
    for (int qx = 0; qx < 3; ++qx) {
      const auto g = Q2::gradients(q[qx], q[qy]);
      const double jw = w[qx] * w[qy] * hx * hy;
      for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
          k[a][b] += jw * (g[a][0] * g[b][0] / (hx * hx) + g[a][1] * g[b][1] / (hy * hy));
    }
  return k;
}

inline SparseOperator scatter(const Mesh& mesh, const std::shared_ptr<const SparsityPattern>& pattern,
                              const LocalMatrix& local) {
  SparseOperator op(pattern);
  auto vals = op.values();
  for (int ey = 0; ey < mesh.ny(); ++ey)
    for (int ex = 0; ex < mesh.nx(); ++ex) {
      const auto nodes = mesh.element_nodes(ex, ey);
      for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) vals[pattern->find(nodes[a], nodes[b])] += local[a][b];
    }
  return op;
}

}  // namespace detail

inline SparseOperator assemble_mass(const Mesh& mesh, const std::shared_ptr<const SparsityPattern>& pattern) {
  return detail::scatter(mesh, pattern, detail::local_mass(mesh.hx(), mesh.hy()));
}

inline SparseOperator assemble_stiffness(const Mesh& mesh, const std::shared_ptr<const SparsityPattern>& pattern) {
  return detail::scatter(mesh, pattern, detail::local_stiffness(mesh.hx(), mesh.hy()));
}

inline SparseOperator assemble_mass(const Mesh& mesh) { return assemble_mass(mesh, SparsityPattern::from_mesh(mesh)); }
inline SparseOperator assemble_stiffness(const Mesh& mesh) {
  return assemble_stiffness(mesh, SparsityPattern::from_mesh(mesh));
}

/// Trace mass matrix of one boundary segment: int N_a N_b ds over [s0, s1].
inline std::array<std::array<double, 3>, 3> segment_mass(const Mesh& mesh, const BoundarySegment& seg) {
  std::array<std::array<double, 3>, 3> m{};
  const double len = mesh.boundary_edges()[seg.edge].length();
  const auto q = Gauss3::points();
  const auto w = Gauss3::weights();
  const double span = seg.s1 - seg.s0;
  for (int k = 0; k < 3; ++k) {
    const double s = seg.s0 + span * q[k];
    const auto n = Lagrange1D::values(s);
    const double jw = w[k] * span * len;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m[a][b] += jw * n[a] * n[b];
  }
  return m;
}

/// Boundary mass over segments carrying `tag` that pass `keep` (segment index).
inline SparseOperator assemble_boundary_mass(const Mesh& mesh, const std::shared_ptr<const SparsityPattern>& pattern,
                                             BoundaryTag tag, const std::function<bool(Index)>& keep = {}) {
  if (tag == BoundaryTag::GammaN) throw InvalidParameter("tag", "no boundary term lives on GammaN");
  SparseOperator op(pattern);
  auto vals = op.values();
  const auto& segments = mesh.boundary_segments();
  for (Index s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    if (seg.tag != tag || (keep && !keep(s))) continue;
    const auto& nodes = mesh.boundary_edges()[seg.edge].nodes;
    const auto m = segment_mass(mesh, seg);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) vals[pattern->find(nodes[a], nodes[b])] += m[a][b];
  }
  return op;
}

inline SparseOperator assemble_boundary_mass(const Mesh& mesh, BoundaryTag tag) {
  return assemble_boundary_mass(mesh, SparsityPattern::from_mesh(mesh), tag);
}

/// Load vector of weight * 1_region. Each element is clipped against the
/// region and a 3x3 Gauss rule is laid on the overlap, which integrates the
/// biquadratic basis exactly.
inline std::vector<double> assemble_load(const Mesh& mesh, const Rect& region, double weight = 1.0) {
  if (region.degenerate() || !mesh.extents().contains(region))
    throw InvalidParameter("region", "must be a non-empty rectangle inside the domain");
  std::vector<double> f(mesh.node_count(), 0.0);
  const auto q = Gauss3::points();
  const auto w = Gauss3::weights();
  for (int ey = 0; ey < mesh.ny(); ++ey)
    for (int ex = 0; ex < mesh.nx(); ++ex) {
      const Rect cell = mesh.element_rect(ex, ey);
      const auto overlap = intersect(cell, region);
      if (!overlap) continue;
      const auto nodes = mesh.element_nodes(ex, ey);
      for (int qy = 0; qy < 3; ++qy)
        for (int qx = 0; qx < 3; ++qx) {
          const double x = overlap->x0 + q[qx] * overlap->width();
          const double y = overlap->y0 + q[qy] * overlap->height();
          const auto phi = Q2::values((x - cell.x0) / mesh.hx(), (y - cell.y0) / mesh.hy());
          const double jw = weight * w[qx] * w[qy] * overlap->area();
          for (int a = 0; a < 9; ++a) f[nodes[a]] += jw * phi[a];
        }
    }
  return f;
}

/// Load vector of an arbitrary source density, 3x3 Gauss per element.
template <typename F>
std::vector<double> assemble_load_function(const Mesh& mesh, F&& source) {
  std::vector<double> f(mesh.node_count(), 0.0);
  const auto q = Gauss3::points();
  const auto w = Gauss3::weights();
  for (int ey = 0; ey < mesh.ny(); ++ey)
    for (int ex = 0; ex < mesh.nx(); ++ex) {
      const Rect cell = mesh.element_rect(ex, ey);
      const auto nodes = mesh.element_nodes(ex, ey);
      for (int qy = 0; qy < 3; ++qy)
        for (int qx = 0; qx < 3; ++qx) {
          const auto phi = Q2::values(q[qx], q[qy]);
          const double v = source(cell.x0 + q[qx] * mesh.hx(), cell.y0 + q[qy] * mesh.hy());
          const double jw = w[qx] * w[qy] * mesh.hx() * mesh.hy() * v;
          for (int a = 0; a < 9; ++a) f[nodes[a]] += jw * phi[a];
        }
    }
  return f;
}

template <typename F>
std::vector<double> interpolate(const Mesh& mesh, F&& fn) {
  std::vector<double> u(mesh.node_count());
  for (Index n = 0; n < u.size(); ++n) {
    const Point p = mesh.node(n);
    u[n] = fn(p.x, p.y);
  }
  return u;
}

}  // namespace noxsim::fem
