#include "sdgfdm/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "sdgfdm/error.hpp"

namespace sdgfdm {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

DerivativeBasis::DerivativeBasis(int order) : order_(order) {
  if (order != 2 && order != 4 && order != 6) {
    throw Error(ErrorCode::InvalidArgument,
                "truncation order must be 2, 4 or 6 (got " + std::to_string(order) + ")");
  }
  for (int d = 1; d <= order; ++d) {
    indices_.push_back({d, 0});
    indices_.push_back({0, d});
    for (int i = d - 1; i >= 1; --i) indices_.push_back({i, d - i});
  }
}

std::size_t DerivativeBasis::row(MultiIndex m) const {
  const auto it = std::find(indices_.begin(), indices_.end(), m);
  if (it == indices_.end()) {
    throw Error(ErrorCode::InvalidArgument, "derivative not in basis of order " +
                                                std::to_string(order_));
  }
  return static_cast<std::size_t>(it - indices_.begin());
}

double weight(double d, double d_max) {
  if (d >= d_max) return 0.0;
  const double q = d / d_max;
  const double q2 = q * q;
  return 1.0 - 6.0 * q2 + 8.0 * q2 * q - 3.0 * q2 * q2;
}

CholeskyFactor::CholeskyFactor(const DenseMatrix& a, double relative_pivot_tol)
    : l_(a.rows(), a.cols()) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::InvalidArgument, "Cholesky needs a square matrix");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
  const double threshold = relative_pivot_tol * max_diag;
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l_(j, k) * l_(j, k);
    if (!(pivot > threshold)) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "pivot " + std::to_string(j) + " = " + std::to_string(pivot));
    }
    const double ljj = std::sqrt(pivot);
    l_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l_(i, k) * l_(j, k);
      l_(i, j) = s / ljj;
    }
  }
}

void CholeskyFactor::solve_in_place(std::span<double> x) const {
  const std::size_t n = l_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * x[k];
    x[i] = s / l_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l_(k, i) * x[k];
    x[i] = s / l_(i, i);
  }
}

std::vector<double> cholesky_solve_spd(const DenseMatrix& a, std::span<const double> rhs) {
  if (rhs.size() != a.rows()) throw Error(ErrorCode::InvalidArgument, "rhs size mismatch");
  std::vector<double> x(rhs.begin(), rhs.end());
  CholeskyFactor(a).solve_in_place(x);
  return x;
}

StencilCoefficients build_stencil(const Star& star, const DerivativeBasis& basis) {
  const std::size_t m = star.neighbors.size();
  const std::size_t n = basis.size();
  if (m < n) {
    throw Error(ErrorCode::InsufficientNeighbors,
                "star of node " + std::to_string(star.center) + " has " + std::to_string(m) +
                    " neighbours, basis needs " + std::to_string(n));
  }
  if (!(star.d_max > 0.0)) {
    throw Error(ErrorCode::SingularStar, "star of node " + std::to_string(star.center) +
                                             " has zero radius");
  }

  // Offsets are scaled by d_max so all Taylor columns are O(1); the derivative
  // rows are rescaled by d_max^-degree at the end.
  const double s = star.d_max;
  const auto idx = basis.indices();
  std::vector<double> inv_fact(n);
  for (std::size_t c = 0; c < n; ++c) inv_fact[c] = 1.0 / (factorial(idx[c].dx) * factorial(idx[c].dy));

  DenseMatrix taylor(m, n);  // weighted rows w_k * S_k
  std::vector<double> hp(basis.order() + 1);
  std::vector<double> lp(basis.order() + 1);
  for (std::size_t k = 0; k < m; ++k) {
    const double h = star.offsets[k].x / s;
    const double l = star.offsets[k].y / s;
    hp[0] = lp[0] = 1.0;
    for (int p = 1; p <= basis.order(); ++p) {
      hp[p] = hp[p - 1] * h;
      lp[p] = lp[p - 1] * l;
    }
    const double w = star.weights[k];
    for (std::size_t c = 0; c < n; ++c) taylor(k, c) = w * hp[idx[c].dx] * lp[idx[c].dy] * inv_fact[c];
  }

  DenseMatrix a(n, n);
  for (std::size_t k = 0; k < m; ++k) {
    const auto r = taylor.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) a(i, j) += r[i] * r[j];
    }
  }
  std::vector<double> scale(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a(i, i) > 0.0)) {
      throw Error(ErrorCode::SingularStar, "star of node " + std::to_string(star.center) +
                                               " does not resolve derivative row " +
                                               std::to_string(i));
    }
    scale[i] = 1.0 / std::sqrt(a(i, i));
  }
  // Symmetric diagonal equilibration: factor D A D with D = diag(A)^-1/2.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      a(i, j) *= scale[i] * scale[j];
      a(j, i) = a(i, j);
    }
  }

  std::optional<CholeskyFactor> factor;
  try {
    factor.emplace(a);
  } catch (const Error& e) {
    throw Error(ErrorCode::SingularStar,
                "star of node " + std::to_string(star.center) + ": " + e.what());
  }

  StencilCoefficients out{DenseMatrix(n, m + 1)};
  std::vector<double> col(n);
  std::vector<double> center(n, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const auto r = taylor.row(k);
    const double w = star.weights[k];
    for (std::size_t i = 0; i < n; ++i) col[i] = scale[i] * w * r[i];
    factor->solve_in_place(col);
    for (std::size_t i = 0; i < n; ++i) {
      out.e(i, k + 1) = scale[i] * col[i];
      center[i] -= out.e(i, k + 1);
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.e(i, 0) = center[i];

  for (std::size_t i = 0; i < n; ++i) {
    const double unscale = std::pow(s, -idx[i].degree());
    for (double& v : out.e.row(i)) v *= unscale;
  }
  return out;
}

double apply_derivative(const StencilCoefficients& e, std::size_t row,
                        std::span<const double> values) {
  if (values.size() != e.cols() || row >= e.rows()) {
    throw Error(ErrorCode::InvalidArgument, "stencil/value size mismatch");
  }
  double acc = 0.0;
  const auto r = e.row(row);
  for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * values[j];
  return acc;
}

StarSelector::StarSelector(const NodeSet& cloud) : cloud_(cloud) {
  for (const Side side : {Side::Fluid, Side::Porous}) {
    Grid& g = grids_[static_cast<int>(side)];
    const auto [first, last] = cloud.range(side);
    if (first == last) continue;
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi{-lo.x, -lo.y};
    for (std::size_t i = first; i < last; ++i) {
      const Vec2 p = cloud[i].position;
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    g.origin = lo;
    g.cell = std::max(cloud.spacing(), 1e-12);
    g.nx = static_cast<int>((hi.x - lo.x) / g.cell) + 1;
    g.ny = static_cast<int>((hi.y - lo.y) / g.cell) + 1;
    g.buckets.assign(static_cast<std::size_t>(g.nx) * g.ny, {});
    for (std::size_t i = first; i < last; ++i) {
      const Vec2 p = cloud[i].position;
      const int cx = std::min(g.nx - 1, static_cast<int>((p.x - lo.x) / g.cell));
      const int cy = std::min(g.ny - 1, static_cast<int>((p.y - lo.y) / g.cell));
      g.buckets[static_cast<std::size_t>(cy) * g.nx + cx].push_back(i);
    }
  }
}

Star StarSelector::select(std::size_t center, std::size_t m) const {
  const Node& c = cloud_[center];
  const Grid& g = grids_[static_cast<int>(c.side)];
  const auto [first, last] = cloud_.range(c.side);
  if (last - first < m + 1) {
    throw Error(ErrorCode::InsufficientNeighbors,
                "node " + std::to_string(center) + " needs " + std::to_string(m) +
                    " neighbours, side has " + std::to_string(last - first - 1));
  }

  const int cx = std::clamp(static_cast<int>((c.position.x - g.origin.x) / g.cell), 0, g.nx - 1);
  const int cy = std::clamp(static_cast<int>((c.position.y - g.origin.y) / g.cell), 0, g.ny - 1);
  struct Candidate {
    double d;
    std::size_t index;
  };
  std::vector<Candidate> cand;
  const int max_ring = std::max(g.nx, g.ny);
  for (int r = 0; r <= max_ring; ++r) {
    for (int j = cy - r; j <= cy + r; ++j) {
      if (j < 0 || j >= g.ny) continue;
      const bool edge_row = j == cy - r || j == cy + r;
      for (int i = cx - r; i <= cx + r; i += edge_row ? 1 : 2 * r) {
        if (i >= 0 && i < g.nx) {
          for (const std::size_t k : g.buckets[static_cast<std::size_t>(j) * g.nx + i]) {
            if (k != center) cand.push_back({distance(cloud_[k].position, c.position), k});
          }
        }
        if (r == 0) break;
      }
    }
    if (cand.size() >= m) {
      std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(m - 1), cand.end(),
                       [](const Candidate& a, const Candidate& b) { return a.d < b.d; });
      if (cand[m - 1].d <= r * g.cell) break;
    }
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    return a.d < b.d || (a.d == b.d && a.index < b.index);
  });
  cand.resize(m);

  Star star;
  star.center = center;
  star.neighbors.reserve(m);
  for (const Candidate& k : cand) {
    star.neighbors.push_back(k.index);
    star.offsets.push_back(cloud_[k.index].position - c.position);
    star.distances.push_back(k.d);
    star.d_max = std::max(star.d_max, k.d);
  }
  star.weights.reserve(m);
  for (const double d : star.distances) star.weights.push_back(weight(d, star.d_max));
  return star;
}

Star select_star(const NodeSet& cloud, std::size_t center, std::size_t m) {
  return StarSelector(cloud).select(center, m);
}

StencilSet build_stencils(const NodeSet& cloud, int order, std::size_t m) {
  StencilSet set{DerivativeBasis(order), {}, {}};
  if (m < set.basis.size()) {
    throw Error(ErrorCode::InsufficientNeighbors,
                "m = " + std::to_string(m) + " is below the basis size " +
                    std::to_string(set.basis.size()) + " for order " + std::to_string(order));
  }
  const StarSelector selector(cloud);
  set.stars.reserve(cloud.size());
  set.coefficients.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    set.stars.push_back(selector.select(i, m));
    set.coefficients.push_back(build_stencil(set.stars.back(), set.basis));
  }
  return set;
}

void write_stencils_csv(std::ostream& out, const StencilSet& stencils) {
  out << "node,row,column,coefficient\n";
  out.precision(17);
  for (std::size_t i = 0; i < stencils.size(); ++i) {
    const Star& star = stencils.stars[i];
    const auto& e = stencils.coefficients[i];
    for (std::size_t r = 0; r < e.rows(); ++r) {
      for (std::size_t c = 0; c < e.cols(); ++c) {
        const std::size_t node = c == 0 ? star.center : star.neighbors[c - 1];
        out << i << ',' << r << ',' << node << ',' << e.e(r, c) << '\n';
      }
    }
  }
}

}  // namespace sdgfdm
