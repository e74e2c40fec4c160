#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/geometry.hpp"

namespace noxsim::fem {

using Index = std::size_t;

enum class BoundaryTag { Gamma, GammaN, GammaR };

inline const char* to_string(BoundaryTag t) {
  switch (t) {
    case BoundaryTag::Gamma: return "Gamma";
    case BoundaryTag::GammaN: return "GammaN";
    case BoundaryTag::GammaR: return "GammaR";
  }
  return "?";
}

enum class Side { bottom, right, top, left };

/// One element edge on the boundary. `nodes` run along the edge in the
/// direction of increasing local coordinate; `tag` is decided by the midpoint.
struct BoundaryEdge {
  std::array<Index, 3> nodes{};
  Side side = Side::bottom;
  Point start;
  Point end;
  BoundaryTag tag = BoundaryTag::GammaR;

  double length() const { return std::hypot(end.x - start.x, end.y - start.y); }
};

/// Part [s0, s1] (local edge coordinate) of a boundary edge carrying one tag.
/// Edges that straddle a road end are split there so the tagged lengths are
/// exact on any mesh.
struct BoundarySegment {
  Index edge = 0;
  double s0 = 0.0;
  double s1 = 1.0;
  BoundaryTag tag = BoundaryTag::GammaR;
};

/// Uniform nx x ny grid of nine-node biquadratic quadrilaterals.
///
/// Nodes form a (2nx+1) x (2ny+1) lattice numbered row by row from the bottom
/// left. Element (i, j) owns lattice nodes (2i+a, 2j+b), a, b in {0, 1, 2},
/// stored at local index 3b + a.
class Mesh {
public:
  Mesh(const Rect& extents, int nx, int ny, double road_left, double road_right)
      : extents_(extents), nx_(nx), ny_(ny) {
    if (nx < 1 || ny < 1) throw InvalidParameter("mesh", "element counts must be >= 1");
    if (extents.degenerate()) throw InvalidParameter("mesh", "degenerate extents");
    hx_ = extents.width() / nx;
    hy_ = extents.height() / ny;
    build_edges(road_left, road_right);
  }

  const Rect& extents() const { return extents_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }

  Index lattice_width() const { return static_cast<Index>(2 * nx_ + 1); }
  Index lattice_height() const { return static_cast<Index>(2 * ny_ + 1); }
  Index node_count() const { return lattice_width() * lattice_height(); }
  Index element_count() const { return static_cast<Index>(nx_) * static_cast<Index>(ny_); }

  Index node_index(Index i, Index j) const { return j * lattice_width() + i; }

  Point node(Index n) const {
    const Index i = n % lattice_width();
    const Index j = n / lattice_width();
    return {extents_.x0 + 0.5 * hx_ * static_cast<double>(i), extents_.y0 + 0.5 * hy_ * static_cast<double>(j)};
  }

  std::array<Index, 9> element_nodes(int ex, int ey) const {
    std::array<Index, 9> out{};
    for (Index b = 0; b < 3; ++b)
      for (Index a = 0; a < 3; ++a)
        out[3 * b + a] = node_index(2 * static_cast<Index>(ex) + a, 2 * static_cast<Index>(ey) + b);
    return out;
  }

  Rect element_rect(int ex, int ey) const {
    const double x0 = extents_.x0 + hx_ * ex;
    const double y0 = extents_.y0 + hy_ * ey;
    return {x0, y0, x0 + hx_, y0 + hy_};
  }

  const std::vector<BoundaryEdge>& boundary_edges() const { return edges_; }
  const std::vector<BoundarySegment>& boundary_segments() const { return segments_; }

  double tagged_length(BoundaryTag tag) const {
    double sum = 0.0;
    for (const auto& s : segments_)
      if (s.tag == tag) sum += (s.s1 - s.s0) * edges_[s.edge].length();
    return sum;
  }

private:
  void add_edge(std::array<Index, 3> nodes, Side side, BoundaryTag tag) {
    BoundaryEdge e;
    e.nodes = nodes;
    e.side = side;
    e.start = node(nodes[0]);
    e.end = node(nodes[2]);
    e.tag = tag;
    edges_.push_back(e);
  }

  void build_edges(double road_left, double road_right) {
    const Index W = lattice_width();
    const Index H = lattice_height();
    auto bottom_tag = [&](double x) {
      return (x > road_left && x < road_right) ? BoundaryTag::Gamma : BoundaryTag::GammaN;
    };

    for (int ex = 0; ex < nx_; ++ex) {
      const Index i = 2 * static_cast<Index>(ex);
      const double xa = extents_.x0 + hx_ * ex;
      const double xb = xa + hx_;
      add_edge({node_index(i, 0), node_index(i + 1, 0), node_index(i + 2, 0)}, Side::bottom,
               bottom_tag(0.5 * (xa + xb)));
      // Split at road ends falling strictly inside this edge.
      const Index edge = edges_.size() - 1;
      std::vector<double> cuts{0.0};
      for (double r : {road_left, road_right})
        if (r > xa && r < xb) cuts.push_back((r - xa) / hx_);
      cuts.push_back(1.0);
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = xa + 0.5 * (cuts[k] + cuts[k + 1]) * hx_;
        segments_.push_back({edge, cuts[k], cuts[k + 1], bottom_tag(mid)});
      }
    }
    for (int ey = 0; ey < ny_; ++ey) {
      const Index j = 2 * static_cast<Index>(ey);
      add_edge({node_index(W - 1, j), node_index(W - 1, j + 1), node_index(W - 1, j + 2)}, Side::right,
               BoundaryTag::GammaR);
      segments_.push_back({edges_.size() - 1, 0.0, 1.0, BoundaryTag::GammaR});
    }
    for (int ex = 0; ex < nx_; ++ex) {
      const Index i = 2 * static_cast<Index>(ex);
      add_edge({node_index(i, H - 1), node_index(i + 1, H - 1), node_index(i + 2, H - 1)}, Side::top,
               BoundaryTag::GammaR);
      segments_.push_back({edges_.size() - 1, 0.0, 1.0, BoundaryTag::GammaR});
    }
    for (int ey = 0; ey < ny_; ++ey) {
      const Index j = 2 * static_cast<Index>(ey);
      add_edge({node_index(0, j), node_index(0, j + 1), node_index(0, j + 2)}, Side::left, BoundaryTag::GammaR);
      segments_.push_back({edges_.size() - 1, 0.0, 1.0, BoundaryTag::GammaR});
    }
  }

  Rect extents_;
  int nx_;
  int ny_;
  double hx_ = 0.0;
  double hy_ = 0.0;
  std::vector<BoundaryEdge> edges_;
  std::vector<BoundarySegment> segments_;
};

/// Mesh over a dimensionless cross-section: road ends come from the geometry.
template <typename GeometryT>
Mesh build_mesh(const GeometryT& g, int nx, int ny) {
  if (!(g.width > 0.0) || !(g.height > 0.0)) throw InvalidParameter("geometry", "degenerate extents");
  return Mesh(g.domain(), nx, ny, g.road_left(), g.road_right());
}

}  // namespace noxsim::fem
