#include "sdgfdm/pointcloud.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "sdgfdm/error.hpp"

namespace sdgfdm {

namespace {

constexpr double kCrowdingFactor = 0.5;
constexpr double kRemovalFactor = 0.4;
constexpr std::size_t kPolygonSamples = 4096;

bool nearly(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * scale; }

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

void check_simple(const InterfaceCurve& curve) {
  const auto pts = curve.polyline(256);
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through wrap-around
      if (segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) {
        throw Error(ErrorCode::DegenerateCurve,
                    std::string(to_string(curve.kind())) + " interface self-intersects");
      }
    }
  }
}

int kind_rank(const Node& n) {
  return static_cast<int>(n.side) * 3 + static_cast<int>(n.kind);
}

}  // namespace

std::string_view to_string(Side side) { return side == Side::Fluid ? "fluid" : "porous"; }

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Boundary: return "boundary";
    case NodeKind::Interface: return "interface";
    case NodeKind::Interior: return "interior";
  }
  return "unknown";
}

Layout Layout::layered(const Rect& fluid, const Rect& porous) {
  const double scale = std::max({fluid.width(), fluid.height(), porous.width(), porous.height()});
  Layout l;
  l.fluid = fluid;
  l.porous = porous;
  l.domain = {std::min(fluid.x0, porous.x0), std::max(fluid.x1, porous.x1),
              std::min(fluid.y0, porous.y0), std::max(fluid.y1, porous.y1)};
  const bool same_x = nearly(fluid.x0, porous.x0, scale) && nearly(fluid.x1, porous.x1, scale);
  const bool same_y = nearly(fluid.y0, porous.y0, scale) && nearly(fluid.y1, porous.y1, scale);
  if (same_x && nearly(fluid.y0, porous.y1, scale)) {
    l.interface = InterfaceCurve::line_segment({fluid.x0, fluid.y0}, {fluid.x1, fluid.y0});
  } else if (same_x && nearly(fluid.y1, porous.y0, scale)) {
    l.interface = InterfaceCurve::line_segment({fluid.x0, fluid.y1}, {fluid.x1, fluid.y1});
  } else if (same_y && nearly(fluid.x0, porous.x1, scale)) {
    l.interface = InterfaceCurve::line_segment({fluid.x0, fluid.y0}, {fluid.x0, fluid.y1});
  } else if (same_y && nearly(fluid.x1, porous.x0, scale)) {
    l.interface = InterfaceCurve::line_segment({fluid.x1, fluid.y0}, {fluid.x1, fluid.y1});
  } else {
    throw Error(ErrorCode::RegionOverlap,
                "fluid and porous rectangles must share exactly one full edge");
  }
  return l;
}

Layout Layout::inclusion(const Rect& domain, const InterfaceCurve& curve) {
  if (!curve.closed()) {
    throw Error(ErrorCode::InvalidArgument, "inclusion layout needs a closed interface");
  }
  const CurvePolygon poly(curve, kPolygonSamples);
  const Rect b = poly.bounds();
  if (!(b.x0 > domain.x0 && b.x1 < domain.x1 && b.y0 > domain.y0 && b.y1 < domain.y1)) {
    throw Error(ErrorCode::RegionOverlap,
                std::string(to_string(curve.kind())) + " interface touches or exits the domain");
  }
  if (!(poly.signed_area() > 0.0)) {
    throw Error(ErrorCode::DegenerateCurve, "closed interface must be counter-clockwise");
  }
  check_simple(curve);
  Layout l;
  l.domain = domain;
  l.fluid = domain;
  l.porous = b;
  l.interface = curve;
  return l;
}

Side Layout::side_of(Vec2 p) const {
  if (!is_layered()) {
    return CurvePolygon(interface, kPolygonSamples).inside(p) ? Side::Porous : Side::Fluid;
  }
  const Vec2 a = interface.point(0.0);
  const Vec2 toward_porous = porous.center() - a;
  const Vec2 n = perp(interface.tangent(0.0));
  const double orient = dot(toward_porous, n) > 0 ? 1.0 : -1.0;
  return orient * dot(p - a, n) > 0.0 ? Side::Porous : Side::Fluid;
}

std::size_t ClassCounts::side_total(Side s) const {
  const auto& row = count[static_cast<int>(s)];
  return row[0] + row[1] + row[2];
}

std::size_t ClassCounts::total() const {
  return side_total(Side::Fluid) + side_total(Side::Porous);
}

NodeSet::NodeSet(std::vector<Node> nodes, Layout layout, double spacing)
    : nodes_(std::move(nodes)), layout_(std::move(layout)), spacing_(spacing) {
  int last_rank = -1;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const int rank = kind_rank(n);
    if (n.index != i || rank < last_rank) {
      throw Error(ErrorCode::InvalidArgument, "node set must be grouped by side and kind");
    }
    last_rank = rank;
    ++counts_.count[static_cast<int>(n.side)][static_cast<int>(n.kind)];
  }
}

std::pair<std::size_t, std::size_t> NodeSet::range(Side s, NodeKind k) const {
  std::size_t first = 0;
  const int target = static_cast<int>(s) * 3 + static_cast<int>(k);
  for (int r = 0; r < target; ++r) first += counts_.count[r / 3][r % 3];
  return {first, first + counts_(s, k)};
}

std::pair<std::size_t, std::size_t> NodeSet::range(Side s) const {
  const std::size_t first = s == Side::Fluid ? 0 : counts_.side_total(Side::Fluid);
  return {first, first + counts_.side_total(s)};
}

NodeSet generate_cloud(const Layout& layout, int nx, int n_gamma) {
  if (nx < 4) throw Error(ErrorCode::InvalidArgument, "nx must be at least 4");
  const InterfaceCurve& curve = layout.interface;
  if (curve.closed() && n_gamma != 0 && n_gamma < 8) {
    throw Error(ErrorCode::InvalidArgument, "closed interfaces need n_gamma >= 8");
  }
  if (n_gamma < 0) throw Error(ErrorCode::InvalidArgument, "n_gamma must be non-negative");

  const Rect& dom = layout.domain;
  const double h = dom.width() / nx;
  const int ny = std::max(1, static_cast<int>(std::lround(dom.height() / h)));
  const double hy = dom.height() / ny;

  std::optional<CurvePolygon> poly;
  if (curve.closed()) poly.emplace(curve, std::max<std::size_t>(kPolygonSamples, 8 * n_gamma));
  const Vec2 line_a = curve.point(0.0);
  const Vec2 line_n = curve.closed() ? Vec2{} : perp(curve.tangent(0.0));

  auto interface_distance = [&](Vec2 p) {
    if (!poly) return std::abs(dot(p - line_a, line_n));
    const Rect b = poly->bounds();
    const Rect grown{b.x0 - h, b.x1 + h, b.y0 - h, b.y1 + h};
    return grown.contains(p) ? poly->distance(p) : h;
  };
  auto side_of = [&](Vec2 p) {
    if (!poly) return layout.side_of(p);
    return poly->inside(p) ? Side::Porous : Side::Fluid;
  };

  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const Vec2 p{dom.x0 + i * h, dom.y0 + j * hy};
      const bool on_boundary = i == 0 || i == nx || j == 0 || j == ny;
      if (!on_boundary && interface_distance(p) < kRemovalFactor * h) continue;
      Node n;
      n.position = p;
      n.side = side_of(p);
      n.kind = on_boundary ? NodeKind::Boundary : NodeKind::Interior;
      nodes.push_back(n);
    }
  }

  // Interface pairs, created together from the same parameter sample.
  std::vector<double> params;
  if (curve.closed()) {
    const int count =
        n_gamma > 0 ? n_gamma
                    : std::max(8, static_cast<int>(std::lround(curve.arc_length() / h)));
    params = curve.equal_arc_parameters(static_cast<std::size_t>(count));
    // Near a cusp the two branches close in; pairs there would sit closer
    // than half a grid spacing to a sample of the other branch. Drop them.
    // Another branch means the chord is much shorter than the arc between.
    std::vector<Vec2> pts;
    for (const double s : params) pts.push_back(curve.point(s));
    const std::size_t n = pts.size();
    const double step = curve.arc_length() / static_cast<double>(n);
    std::vector<double> kept;
    for (std::size_t i = 0; i < n; ++i) {
      bool crowded = false;
      for (std::size_t j = 0; j < n && !crowded; ++j) {
        if (j == i) continue;
        const std::size_t gap = i > j ? i - j : j - i;
        const double arc = static_cast<double>(std::min(gap, n - gap)) * step;
        const double chord = distance(pts[i], pts[j]);
        crowded = chord < kCrowdingFactor * h && chord < 0.5 * arc;
      }
      if (!crowded) kept.push_back(params[i]);
    }
    params = std::move(kept);
  } else {
    const double len = distance(curve.point(0.0), curve.point(1.0));
    const int count =
        n_gamma > 0 ? n_gamma : std::max(1, static_cast<int>(std::lround(len / h)) - 1);
    for (int i = 1; i <= count; ++i) params.push_back(static_cast<double>(i) / (count + 1));
  }

  double orient = 1.0;
  if (!curve.closed()) {
    orient = dot(layout.porous.center() - line_a, line_n) > 0 ? 1.0 : -1.0;
  }
  for (const double s : params) {
    const Vec2 p = curve.point(s);
    if (dom.inset(p) <= 0.0 && curve.closed()) {
      throw Error(ErrorCode::RegionOverlap, "interface sample outside the domain");
    }
    const Vec2 t = curve.tangent(s);
    // Fluid normal points out of the fluid, into the porous region.
    const Vec2 nf = orient * perp(t);
    Node f;
    f.position = p;
    f.side = Side::Fluid;
    f.kind = NodeKind::Interface;
    f.normal = nf;
    f.tangent = t;
    Node q = f;
    q.side = Side::Porous;
    q.normal = -nf;
    const std::size_t fi = nodes.size();
    f.partner = fi + 1;
    q.partner = fi;
    nodes.push_back(f);
    nodes.push_back(q);
  }

  // Group by (side, kind) keeping generation order inside each class.
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return kind_rank(nodes[a]) < kind_rank(nodes[b]);
  });
  std::vector<std::size_t> new_index(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_index[order[i]] = i;
  std::vector<Node> sorted;
  sorted.reserve(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    Node n = nodes[order[i]];
    n.index = i;
    if (n.partner) n.partner = new_index[*n.partner];
    sorted.push_back(n);
  }
  return NodeSet(std::move(sorted), layout, h);
}

void write_cloud_csv(std::ostream& out, const NodeSet& cloud) {
  out << "index,x,y,side,kind,nx,ny,tx,ty\n";
  out.precision(17);
  for (const Node& n : cloud.nodes()) {
    out << n.index << ',' << n.position.x << ',' << n.position.y << ',' << to_string(n.side)
        << ',' << to_string(n.kind) << ',' << n.normal.x << ',' << n.normal.y << ','
        << n.tangent.x << ',' << n.tangent.y << '\n';
  }
}

}  // namespace sdgfdm
