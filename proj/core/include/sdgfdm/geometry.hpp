#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdgfdm/vec2.hpp"

namespace sdgfdm {

struct Rect {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(Vec2 p, double tol = 0.0) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
  /// Distance from an interior point to the nearest edge (negative outside).
  double inset(Vec2 p) const;
};

enum class CurveKind { LineSegment, Circle, TwoPetaled, Flower, Heart, Pentagon, Ellipse };

std::string_view to_string(CurveKind kind);
CurveKind curve_kind_from_string(std::string_view name);

// Parametric interface curve. Closed curves are parametrised by theta in
// [0, 2*pi) and are counter-clockwise; segments by s in [0, 1].
//
// The closed shapes other than the ellipse share the polar form
//   P(theta) = c + (a + b sin(k theta + phase)) (cos theta, sin theta)
// which covers the circle (b = 0), the petal and flower shapes (k = 2, 5),
// the heart (a = 0.3, b = -0.3, k = 1 about (0, 0.2)) and a rounded pentagon.
class InterfaceCurve {
 public:
  static InterfaceCurve line_segment(Vec2 from, Vec2 to);
  static InterfaceCurve circle(Vec2 center, double radius);
  static InterfaceCurve two_petaled(Vec2 center = {});
  static InterfaceCurve flower(Vec2 center = {});
  static InterfaceCurve heart(Vec2 shift = {});
  /// Rounded regular pentagon r = a (1 + 0.1 cos 5 theta) with max radius `circumradius`.
  static InterfaceCurve pentagon(Vec2 center, double circumradius);
  static InterfaceCurve ellipse(Vec2 center, double semi_x, double semi_y);

  CurveKind kind() const { return kind_; }
  bool closed() const { return kind_ != CurveKind::LineSegment; }
  double period() const;

  Vec2 point(double s) const;
  Vec2 derivative(double s) const;
  /// Unit tangent; for closed curves oriented counter-clockwise.
  Vec2 tangent(double s) const;

  InterfaceCurve translated(Vec2 shift) const;
  /// Accumulated rigid translation relative to the canonical shape.
  Vec2 shift() const { return shift_; }

  /// `n` samples uniform in the parameter (closed curves exclude the endpoint).
  std::vector<Vec2> polyline(std::size_t n) const;
  double arc_length(std::size_t samples = 4096) const;

  /// Parameter of a cusp (zero speed), if the shape has one.
  std::optional<double> cusp() const;
  /// `n` parameters equally spaced in arc length around a closed curve. The
  /// first sample sits at s = 0, or half a spacing past the cusp.
  std::vector<double> equal_arc_parameters(std::size_t n) const;

 private:
  InterfaceCurve(CurveKind kind, Vec2 center) : kind_(kind), center_(center) {}

  CurveKind kind_;
  Vec2 center_;
  Vec2 shift_{};
  // Polar shape coefficients, or ellipse semi-axes in (a, b).
  double a_ = 0.0;
  double b_ = 0.0;
  double k_ = 0.0;
  double phase_ = 0.0;
  Vec2 to_{};  // segment end point
};

// Rigid translation of an interface over a uniform time grid
// t_j = t0 + (j - 1) dt, dt = t_final / n_steps, j = 1..n_steps + 1.
struct MotionSpec {
  std::function<Vec2(double)> path;
  double t_final = 1.0;
  int n_steps = 10;
  double t0 = 0.0;

  static MotionSpec linear(Vec2 velocity, double t_final, int n_steps);

  double dt() const { return t_final / n_steps; }
  double time(int j) const { return t0 + (j - 1) * dt(); }
};

/// The curve moved to time slice j; throws CurveEscapedDomain if it leaves `domain`.
InterfaceCurve interface_at_time(const InterfaceCurve& curve, const MotionSpec& motion, int j,
                                 const Rect& domain);

// Dense polygonal approximation of a closed curve for inside/distance queries.
class CurvePolygon {
 public:
  CurvePolygon(const InterfaceCurve& curve, std::size_t samples);

  bool inside(Vec2 p) const;
  double distance(Vec2 p) const;
  Rect bounds() const { return bounds_; }
  double signed_area() const;

 private:
  std::vector<Vec2> vertices_;
  Rect bounds_;
  bool closed_;
};

}  // namespace sdgfdm
