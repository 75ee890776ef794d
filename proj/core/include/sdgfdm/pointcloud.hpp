#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sdgfdm/geometry.hpp"
#include "sdgfdm/vec2.hpp"

namespace sdgfdm {

enum class Side : std::uint8_t { Fluid, Porous };
enum class NodeKind : std::uint8_t { Boundary, Interface, Interior };

std::string_view to_string(Side side);
std::string_view to_string(NodeKind kind);

struct Node {
  Vec2 position;
  Side side = Side::Fluid;
  NodeKind kind = NodeKind::Interior;
  Vec2 normal{};   // outward normal of this node's region; interface nodes only
  Vec2 tangent{};  // interface nodes only
  std::optional<std::size_t> partner;
  std::size_t index = 0;
};

// Two ways to split the global rectangle:
//  - layered: two rectangles sharing one edge, which is the interface;
//  - inclusion: a closed curve inside `domain`, porous medium inside the curve.
struct Layout {
  Rect domain;
  Rect fluid;
  Rect porous;
  InterfaceCurve interface = InterfaceCurve::line_segment({0.0, 1.0}, {1.0, 1.0});

  static Layout layered(const Rect& fluid, const Rect& porous);
  static Layout inclusion(const Rect& domain, const InterfaceCurve& curve);

  bool is_layered() const { return !interface.closed(); }
  Side side_of(Vec2 p) const;
};

struct ClassCounts {
  // Indexed [side][kind] in enum order.
  std::array<std::array<std::size_t, 3>, 2> count{};

  std::size_t operator()(Side s, NodeKind k) const {
    return count[static_cast<int>(s)][static_cast<int>(k)];
  }
  std::size_t side_total(Side s) const;
  std::size_t total() const;
};

// Immutable collocation node set. Nodes are stored grouped by side then kind
// (fluid boundary, fluid interface, fluid interior, porous ...), and
// `nodes[i].index == i`.
class NodeSet {
 public:
  NodeSet(std::vector<Node> nodes, Layout layout, double spacing);

  std::span<const Node> nodes() const { return nodes_; }
  const Node& operator[](std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  const Layout& layout() const { return layout_; }
  double spacing() const { return spacing_; }
  const ClassCounts& counts() const { return counts_; }

  /// Contiguous index range [first, last) of one (side, kind) class.
  std::pair<std::size_t, std::size_t> range(Side s, NodeKind k) const;
  std::pair<std::size_t, std::size_t> range(Side s) const;

 private:
  std::vector<Node> nodes_;
  Layout layout_;
  double spacing_;
  ClassCounts counts_;
};

// Tensor-product grid of spacing width/nx, minus points within 0.4 spacing of
// the interface, plus `n_gamma` co-located interface pairs. Closed curves are
// sampled equally in arc length and samples crowding another branch (heart
// cusp) are dropped; segments are sampled uniformly. n_gamma = 0 picks a count
// matching the grid spacing.
NodeSet generate_cloud(const Layout& layout, int nx, int n_gamma = 0);

/// Columns: index,x,y,side,kind,nx,ny,tx,ty
void write_cloud_csv(std::ostream& out, const NodeSet& cloud);

}  // namespace sdgfdm
