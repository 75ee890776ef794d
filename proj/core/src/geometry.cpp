#include "sdgfdm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sdgfdm/error.hpp"

namespace sdgfdm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double Rect::inset(Vec2 p) const {
  return std::min({p.x - x0, x1 - p.x, p.y - y0, y1 - p.y});
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::LineSegment: return "line";
    case CurveKind::Circle: return "circle";
    case CurveKind::TwoPetaled: return "two-petaled";
    case CurveKind::Flower: return "flower";
    case CurveKind::Heart: return "heart";
    case CurveKind::Pentagon: return "pentagon";
    case CurveKind::Ellipse: return "ellipse";
  }
  return "unknown";
}

CurveKind curve_kind_from_string(std::string_view name) {
  for (auto k : {CurveKind::LineSegment, CurveKind::Circle, CurveKind::TwoPetaled,
                 CurveKind::Flower, CurveKind::Heart, CurveKind::Pentagon, CurveKind::Ellipse}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown interface kind '" + std::string(name) + "'");
}

InterfaceCurve InterfaceCurve::line_segment(Vec2 from, Vec2 to) {
  if (distance(from, to) <= 0.0) {
    throw Error(ErrorCode::DegenerateCurve, "line segment has zero length");
  }
  InterfaceCurve c(CurveKind::LineSegment, from);
  c.to_ = to;
  return c;
}

InterfaceCurve InterfaceCurve::circle(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::DegenerateCurve, "circle radius must be positive");
  InterfaceCurve c(CurveKind::Circle, center);
  c.a_ = radius;
  return c;
}

InterfaceCurve InterfaceCurve::two_petaled(Vec2 center) {
  InterfaceCurve c(CurveKind::TwoPetaled, center);
  c.a_ = 0.5;
  c.b_ = 0.2;
  c.k_ = 2.0;
  return c;
}

InterfaceCurve InterfaceCurve::flower(Vec2 center) {
  InterfaceCurve c(CurveKind::Flower, center);
  c.a_ = 0.5;
  c.b_ = 0.2;
  c.k_ = 5.0;
  return c;
}

InterfaceCurve InterfaceCurve::heart(Vec2 shift) {
  InterfaceCurve c(CurveKind::Heart, Vec2{0.0, 0.2} + shift);
  c.a_ = 0.3;
  c.b_ = -0.3;
  c.k_ = 1.0;
  return c;
}

InterfaceCurve InterfaceCurve::pentagon(Vec2 center, double circumradius) {
  if (!(circumradius > 0.0)) {
    throw Error(ErrorCode::DegenerateCurve, "pentagon circumradius must be positive");
  }
  constexpr double kRounding = 0.1;
  InterfaceCurve c(CurveKind::Pentagon, center);
  c.a_ = circumradius / (1.0 + kRounding);
  c.b_ = c.a_ * kRounding;
  c.k_ = 5.0;
  c.phase_ = 0.5 * std::numbers::pi;  // vertex at theta = 0
  return c;
}

InterfaceCurve InterfaceCurve::ellipse(Vec2 center, double semi_x, double semi_y) {
  if (!(semi_x > 0.0 && semi_y > 0.0)) {
    throw Error(ErrorCode::DegenerateCurve, "ellipse semi-axes must be positive");
  }
  InterfaceCurve c(CurveKind::Ellipse, center);
  c.a_ = semi_x;
  c.b_ = semi_y;
  return c;
}

double InterfaceCurve::period() const { return closed() ? kTwoPi : 1.0; }

Vec2 InterfaceCurve::point(double s) const {
  switch (kind_) {
    case CurveKind::LineSegment:
      return center_ + shift_ + s * (to_ - center_);
    case CurveKind::Ellipse:
      return center_ + shift_ + Vec2{a_ * std::cos(s), b_ * std::sin(s)};
    default: {
      const double r = a_ + b_ * std::sin(k_ * s + phase_);
      return center_ + shift_ + Vec2{r * std::cos(s), r * std::sin(s)};
    }
  }
}

Vec2 InterfaceCurve::derivative(double s) const {
  switch (kind_) {
    case CurveKind::LineSegment:
      return to_ - center_;
    case CurveKind::Ellipse:
      return {-a_ * std::sin(s), b_ * std::cos(s)};
    default: {
      const double r = a_ + b_ * std::sin(k_ * s + phase_);
      const double dr = b_ * k_ * std::cos(k_ * s + phase_);
      const double c = std::cos(s);
      const double sn = std::sin(s);
      return {dr * c - r * sn, dr * sn + r * c};
    }
  }
}

Vec2 InterfaceCurve::tangent(double s) const {
  const Vec2 d = derivative(s);
  const double len = norm(d);
  if (len == 0.0) throw Error(ErrorCode::DegenerateCurve, "tangent undefined at a cusp");
  return (1.0 / len) * d;
}

InterfaceCurve InterfaceCurve::translated(Vec2 shift) const {
  InterfaceCurve c = *this;
  c.shift_ += shift;
  return c;
}

std::vector<Vec2> InterfaceCurve::polyline(std::size_t n) const {
  std::vector<Vec2> pts;
  pts.reserve(n);
  const double step = closed() ? period() / static_cast<double>(n)
                               : period() / static_cast<double>(std::max<std::size_t>(n, 2) - 1);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(point(step * static_cast<double>(i)));
  return pts;
}

double InterfaceCurve::arc_length(std::size_t samples) const {
  const auto pts = polyline(samples);
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
  if (closed()) len += distance(pts.back(), pts.front());
  return len;
}

std::optional<double> InterfaceCurve::cusp() const {
  if (kind_ == CurveKind::Heart) return 0.5 * std::numbers::pi;
  return std::nullopt;
}

std::vector<double> InterfaceCurve::equal_arc_parameters(std::size_t n) const {
  if (!closed() || n == 0) {
    throw Error(ErrorCode::InvalidArgument, "equal-arc sampling needs a closed curve and n > 0");
  }
  // Cumulative length on a fine uniform-parameter grid, inverted piecewise linearly.
  const std::size_t fine = std::max<std::size_t>(8192, 64 * n);
  const double start = cusp().value_or(0.0);
  const double ds = period() / static_cast<double>(fine);
  std::vector<double> cum(fine + 1, 0.0);
  Vec2 prev = point(start);
  for (std::size_t i = 1; i <= fine; ++i) {
    const Vec2 q = point(start + ds * static_cast<double>(i));
    cum[i] = cum[i - 1] + distance(prev, q);
    prev = q;
  }
  const double total = cum.back();
  const double offset = cusp() ? 0.5 : 0.0;
  std::vector<double> params;
  params.reserve(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = total * (static_cast<double>(i) + offset) / static_cast<double>(n);
    while (k + 1 < fine && cum[k + 1] < target) ++k;
    const double seg = cum[k + 1] - cum[k];
    const double frac = seg > 0.0 ? (target - cum[k]) / seg : 0.0;
    double s = start + ds * (static_cast<double>(k) + frac);
    if (s >= period()) s -= period();
    params.push_back(s);
  }
  return params;
}

MotionSpec MotionSpec::linear(Vec2 velocity, double t_final, int n_steps) {
  MotionSpec m;
  m.path = [velocity](double t) { return t * velocity; };
  m.t_final = t_final;
  m.n_steps = n_steps;
  return m;
}

InterfaceCurve interface_at_time(const InterfaceCurve& curve, const MotionSpec& motion, int j,
                                 const Rect& domain) {
  if (motion.n_steps < 1 || j < 1 || j > motion.n_steps + 1) {
    throw Error(ErrorCode::InvalidArgument,
                "time index " + std::to_string(j) + " outside 1.." +
                    std::to_string(motion.n_steps + 1));
  }
  const double t = motion.time(j);
  InterfaceCurve moved = curve.translated(motion.path(t));
  for (const Vec2 p : moved.polyline(2048)) {
    if (domain.inset(p) <= 0.0) {
      throw Error(ErrorCode::CurveEscapedDomain,
                  "interface leaves the domain at t = " + std::to_string(t));
    }
  }
  return moved;
}

CurvePolygon::CurvePolygon(const InterfaceCurve& curve, std::size_t samples)
    : vertices_(curve.polyline(samples)), closed_(curve.closed()) {
  bounds_ = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Vec2 v : vertices_) {
    bounds_.x0 = std::min(bounds_.x0, v.x);
    bounds_.x1 = std::max(bounds_.x1, v.x);
    bounds_.y0 = std::min(bounds_.y0, v.y);
    bounds_.y1 = std::max(bounds_.y1, v.y);
  }
}

bool CurvePolygon::inside(Vec2 p) const {
  if (!closed_ || !bounds_.contains(p)) return false;
  bool in = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      in = !in;
    }
  }
  return in;
}

double CurvePolygon::distance(Vec2 p) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  const std::size_t segments = closed_ ? n : n - 1;
  for (std::size_t i = 0; i < segments; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, sdgfdm::distance(p, a + t * ab));
  }
  return best;
}

double CurvePolygon::signed_area() const {
  double area = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) area += cross(vertices_[i], vertices_[(i + 1) % n]);
  return 0.5 * area;
}

}  // namespace sdgfdm
