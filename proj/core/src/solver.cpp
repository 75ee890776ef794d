#include "sdgfdm/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#ifdef SDGFDM_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include "sdgfdm/error.hpp"

namespace sdgfdm {

double residual_inf(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& b) {
  return (a * x - b).lpNorm<Eigen::Infinity>();
}

namespace {

template <typename Factor>
Eigen::VectorXd refine(const Factor& lu, const Eigen::SparseMatrix<double>& a,
                       const Eigen::VectorXd& b, const SolverOptions& opt, LinearSolveStats& st) {
  Eigen::VectorXd x = lu.solve(b);
  double res = residual_inf(a, x, b);
  for (int k = 0; k < opt.refinement_steps && res > 0.0; ++k) {
    const Eigen::VectorXd r = b - a * x;
    const Eigen::VectorXd cand = x + lu.solve(r);
    const double cand_res = residual_inf(a, cand, b);
    if (!(cand_res < res)) break;
    x = cand;
    res = cand_res;
    ++st.refinements;
  }
  st.residual_inf = res;
  return x;
}

}  // namespace

Eigen::VectorXd solve_linear(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                             const SolverOptions& opt, LinearSolveStats* stats) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "system dimensions do not match");
  }
  LinearSolveStats st;
  st.rhs_inf = b.lpNorm<Eigen::Infinity>();
  Eigen::VectorXd x;
  if (static_cast<std::size_t>(a.rows()) < opt.dense_threshold) {
    st.dense = true;
    const Eigen::MatrixXd dense(a);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
    if ((lu.matrixLU().diagonal().array() == 0.0).any()) {
      throw Error(ErrorCode::SingularSystem, "matrix is singular");
    }
    x = refine(lu, a, b, opt, st);
  } else {
#ifdef SDGFDM_HAVE_UMFPACK
    Eigen::UmfPackLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) {
      const int status = lu.umfpackFactorizeReturncode();
      throw Error(ErrorCode::SingularSystem,
                  status == UMFPACK_ERROR_out_of_memory
                      ? std::string("out of memory factorising ") + std::to_string(a.rows()) + " unknowns"
                      : "UMFPACK factorization failed (status " + std::to_string(status) + ")");
    }
#else
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularSystem, "sparse LU failed: " + lu.lastErrorMessage());
    }
#endif
    x = refine(lu, a, b, opt, st);
  }
  if (!std::isfinite(st.residual_inf) ||
      st.residual_inf > opt.residual_tol * (st.rhs_inf + 1.0)) {
    throw Error(ErrorCode::SingularSystem,
                "residual " + std::to_string(st.residual_inf) + " exceeds tolerance");
  }
  if (stats) *stats = st;
  return x;
}

SolutionField unpack(const Eigen::VectorXd& x, const NodeSet& cloud, const StencilSet& stencils,
                     double kappa) {
  const UnknownMap map(cloud);
  if (static_cast<std::size_t>(x.size()) != map.size()) {
    throw Error(ErrorCode::InvalidArgument, "solution length does not match the cloud");
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = cloud.size();
  SolutionField s;
  for (auto* v : {&s.u1, &s.u2, &s.p, &s.phi, &s.up1, &s.up2}) v->assign(n, nan);
  auto at = [&](std::size_t node, Field f) { return x[static_cast<Eigen::Index>(map.column(node, f))]; };
  for (const Node& node : cloud.nodes()) {
    const std::size_t i = node.index;
    if (node.side == Side::Fluid) {
      s.u1[i] = at(i, Field::U1);
      s.u2[i] = at(i, Field::U2);
      s.p[i] = at(i, Field::P);
    } else {
      s.phi[i] = at(i, Field::Phi);
    }
  }
  for (const Node& node : cloud.nodes()) {
    if (node.side != Side::Porous) continue;
    const std::size_t i = node.index;
    const auto& e = stencils.coefficients[i].e;
    const Star& star = stencils.stars[i];
    double gx = 0.0;
    double gy = 0.0;
    for (std::size_t j = 0; j < e.cols(); ++j) {
      const double v = s.phi[j == 0 ? i : star.neighbors[j - 1]];
      gx += e(DerivativeBasis::X, j) * v;
      gy += e(DerivativeBasis::Y, j) * v;
    }
    s.up1[i] = -kappa * gx;
    s.up2[i] = -kappa * gy;
  }
  return s;
}

SolutionField solve(const CoupledSystem& system, const NodeSet& cloud, const StencilSet& stencils,
                    double kappa, const SolverOptions& options) {
  LinearSolveStats st;
  const Eigen::VectorXd x = solve_linear(system.matrix, system.rhs, options, &st);
  SolutionField s = unpack(x, cloud, stencils, kappa);
  s.stats = st;
  return s;
}

}  // namespace sdgfdm
