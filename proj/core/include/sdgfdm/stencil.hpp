#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdgfdm/pointcloud.hpp"

namespace sdgfdm {

// Partial derivative d^(dx+dy) / dx^dx dy^dy.
struct MultiIndex {
  int dx = 0;
  int dy = 0;
  int degree() const { return dx + dy; }
  friend bool operator==(MultiIndex, MultiIndex) = default;
};

// Ordered list of the partial derivatives estimated by a stencil of a given
// truncation order. Every basis starts with (x, y, xx, yy, xy); higher degrees
// follow as x^k, y^k, then the mixed terms by decreasing x power.
class DerivativeBasis {
 public:
  enum Row : std::size_t { X = 0, Y = 1, XX = 2, YY = 3, XY = 4 };

  explicit DerivativeBasis(int order);

  int order() const { return order_; }
  std::size_t size() const { return indices_.size(); }
  std::span<const MultiIndex> indices() const { return indices_; }
  /// Row holding the given partial; throws InvalidArgument when absent.
  std::size_t row(MultiIndex m) const;

  static std::size_t count_for(int order) {
    return static_cast<std::size_t>((order + 1) * (order + 2) / 2 - 1);
  }

 private:
  int order_;
  std::vector<MultiIndex> indices_;
};

struct Star {
  std::size_t center = 0;
  std::vector<std::size_t> neighbors;
  std::vector<Vec2> offsets;  // neighbor - center
  std::vector<double> distances;
  double d_max = 0.0;
  std::vector<double> weights;
};

/// Quartic spline weight 1 - 6q^2 + 8q^3 - 3q^4, q = d / d_max; zero beyond d_max.
double weight(double d, double d_max);

// Small row-major dense matrix used for the per-star normal equations.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// In-place L L^T factorisation. A pivot at or below `relative_pivot_tol`
// times the largest diagonal entry raises NotPositiveDefinite.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const DenseMatrix& a, double relative_pivot_tol = 1e-12);

  const DenseMatrix& lower() const { return l_; }
  void solve_in_place(std::span<double> rhs) const;

 private:
  DenseMatrix l_;
};

std::vector<double> cholesky_solve_spd(const DenseMatrix& a, std::span<const double> rhs);

// E maps (center, neighbors...) nodal values to the derivatives of the basis:
// rows follow DerivativeBasis, column 0 is the center.
struct StencilCoefficients {
  DenseMatrix e;

  std::size_t rows() const { return e.rows(); }
  std::size_t cols() const { return e.cols(); }
  std::span<const double> row(std::size_t r) const { return e.row(r); }
};

StencilCoefficients build_stencil(const Star& star, const DerivativeBasis& basis);

double apply_derivative(const StencilCoefficients& e, std::size_t row,
                        std::span<const double> values);

// Bucket-grid nearest-neighbour search restricted to one side of the interface.
class StarSelector {
 public:
  explicit StarSelector(const NodeSet& cloud);

  /// The m nearest same-side nodes (center excluded); ties go to the lower index.
  Star select(std::size_t center, std::size_t m) const;

 private:
  struct Grid {
    Vec2 origin;
    double cell = 1.0;
    int nx = 1;
    int ny = 1;
    std::vector<std::vector<std::size_t>> buckets;
  };

  const NodeSet& cloud_;
  Grid grids_[2];
};

Star select_star(const NodeSet& cloud, std::size_t center, std::size_t m);

// Stars and coefficients for every node of a cloud.
struct StencilSet {
  DerivativeBasis basis{2};
  std::vector<Star> stars;
  std::vector<StencilCoefficients> coefficients;

  std::size_t size() const { return stars.size(); }
};

StencilSet build_stencils(const NodeSet& cloud, int order, std::size_t m);

/// Columns: node,row,column,coefficient (column is the global node index).
void write_stencils_csv(std::ostream& out, const StencilSet& stencils);

}  // namespace sdgfdm
