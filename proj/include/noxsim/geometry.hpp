#pragma once

#include <algorithm>
#include <optional>

namespace noxsim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool degenerate() const { return !(x1 > x0) || !(y1 > y0); }

  bool contains(const Point& p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  bool contains(const Rect& r) const { return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1; }

  Rect scaled(double s) const { return {x0 * s, y0 * s, x1 * s, y1 * s}; }
};

/// Intersection of two rectangles, empty when they only touch.
inline std::optional<Rect> intersect(const Rect& a, const Rect& b) {
  Rect r{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
  if (r.degenerate()) return std::nullopt;
  return r;
}

}  // namespace noxsim
