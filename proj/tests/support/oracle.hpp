#pragma once

// Independent reference computations for the unit and acceptance tests. None
// of these reuse library internals beyond plain data types.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sdgfdm/problem.hpp"
#include "sdgfdm/stencil.hpp"

namespace oracle {

using sdgfdm::Vec2;

inline double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Weighted least-squares derivative operator from the explicit normal-equations
// inverse: E_nb = (S^T W S)^-1 S^T W with W = diag(w^2), center = -row sum.
inline Eigen::MatrixXd dense_stencil(const sdgfdm::Star& star, const sdgfdm::DerivativeBasis& basis) {
  const auto idx = basis.indices();
  const Eigen::Index m = static_cast<Eigen::Index>(star.neighbors.size());
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd s(m, n);
  Eigen::VectorXd w2(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Vec2 o = star.offsets[k];
    for (Eigen::Index c = 0; c < n; ++c) {
      s(k, c) = std::pow(o.x, idx[c].dx) * std::pow(o.y, idx[c].dy) /
                (factorial(idx[c].dx) * factorial(idx[c].dy));
    }
    w2(k) = star.weights[k] * star.weights[k];
  }
  const Eigen::MatrixXd a = s.transpose() * w2.asDiagonal() * s;
  const Eigen::MatrixXd nb = a.inverse() * s.transpose() * w2.asDiagonal();
  Eigen::MatrixXd e(n, m + 1);
  e.col(0) = -nb.rowwise().sum();
  e.rightCols(m) = nb;
  return e;
}

inline Eigen::MatrixXd to_eigen(const sdgfdm::StencilCoefficients& c) {
  Eigen::MatrixXd e(c.rows(), c.cols());
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t j = 0; j < c.cols(); ++j) e(r, j) = c.e(r, j);
  }
  return e;
}

// Star from explicit offsets, weighted the way the selector does it.
inline sdgfdm::Star make_star(const std::vector<Vec2>& offsets) {
  sdgfdm::Star star;
  star.center = 0;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    star.neighbors.push_back(k + 1);
    star.offsets.push_back(offsets[k]);
    star.distances.push_back(sdgfdm::norm(offsets[k]));
    star.d_max = std::max(star.d_max, star.distances.back());
  }
  for (double d : star.distances) star.weights.push_back(sdgfdm::weight(d, star.d_max));
  return star;
}

// (2r+1)^2 grid block of spacing h without its center, each point jittered by
// up to `jitter * h` in both directions.
inline std::vector<Vec2> block_offsets(int r, double h, double jitter, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-jitter, jitter);
  std::vector<Vec2> pts;
  for (int j = -r; j <= r; ++j) {
    for (int i = -r; i <= r; ++i) {
      if (i == 0 && j == 0) continue;
      const double ji = jitter > 0.0 ? u(rng) : 0.0;
      const double jj = jitter > 0.0 ? u(rng) : 0.0;
      pts.push_back({h * (i + ji), h * (j + jj)});
    }
  }
  return pts;
}

inline int block_radius(int order) { return order == 2 ? 2 : order == 4 ? 2 : 3; }

// Tenth-order central differences.
inline double d1(const std::function<double(double)>& f, double x, double h) {
  static constexpr double c[] = {5.0 / 6.0, -5.0 / 21.0, 5.0 / 84.0, -5.0 / 504.0, 1.0 / 1260.0};
  double s = 0.0;
  for (int k = 1; k <= 5; ++k) s += c[k - 1] * (f(x + k * h) - f(x - k * h));
  return s / h;
}

inline double d2(const std::function<double(double)>& f, double x, double h) {
  static constexpr double c0 = -5269.0 / 1800.0;
  static constexpr double c[] = {5.0 / 3.0, -5.0 / 21.0, 5.0 / 126.0, -5.0 / 1008.0, 1.0 / 3150.0};
  double s = c0 * f(x);
  for (int k = 1; k <= 5; ++k) s += c[k - 1] * (f(x + k * h) + f(x - k * h));
  return s / (h * h);
}

using Field2 = std::function<double(Vec2)>;

inline double dx(const Field2& f, Vec2 q, double h) {
  return d1([&](double x) { return f({x, q.y}); }, q.x, h);
}
inline double dy(const Field2& f, Vec2 q, double h) {
  return d1([&](double y) { return f({q.x, y}); }, q.y, h);
}
inline double dxx(const Field2& f, Vec2 q, double h) {
  return d2([&](double x) { return f({x, q.y}); }, q.x, h);
}
inline double dyy(const Field2& f, Vec2 q, double h) {
  return d2([&](double y) { return f({q.x, y}); }, q.y, h);
}
inline double dxy(const Field2& f, Vec2 q, double h) {
  return d1([&](double x) { return dy(f, {x, q.y}, h); }, q.x, h);
}

// Stokes and Darcy operators applied to the exact values only.
struct ForcingOracle {
  const sdgfdm::ProblemSpec& spec;
  double h = 2e-2;

  Vec2 fluid(Vec2 q) const {
    const auto& u1 = spec.exact.u1.value;
    const auto& u2 = spec.exact.u2.value;
    const auto& p = spec.exact.p.value;
    const double nu = spec.coeffs.nu;
    return {-nu * (2.0 * dxx(u1, q, h) + dyy(u1, q, h) + dxy(u2, q, h)) + dx(p, q, h),
            -nu * (dxx(u2, q, h) + 2.0 * dyy(u2, q, h) + dxy(u1, q, h)) + dy(p, q, h)};
  }
  double porous(Vec2 q) const {
    const auto& phi = spec.exact.phi.value;
    return -spec.coeffs.kappa * (dxx(phi, q, h) + dyy(phi, q, h));
  }
  double divergence(Vec2 q) const {
    return dx([&](Vec2 r) { return spec.fluid_forcing(r).x; }, q, h) +
           dy([&](Vec2 r) { return spec.fluid_forcing(r).y; }, q, h);
  }
  double velocity_divergence(Vec2 q) const {
    return dx(spec.exact.u1.value, q, h) + dy(spec.exact.u2.value, q, h);
  }
};

// Random SPD matrix M^T M + n I.
inline Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  }
  return m.transpose() * m + n * Eigen::MatrixXd::Identity(n, n);
}

inline sdgfdm::DenseMatrix to_dense(const Eigen::MatrixXd& a) {
  sdgfdm::DenseMatrix d(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) d(i, j) = a(i, j);
  }
  return d;
}

// Least-squares slope of log(err) against log(h).
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
