#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "sdgfdm/assembly.hpp"

namespace sdgfdm {

struct SolverOptions {
  // Systems below this size are factorised densely; larger ones with sparse LU.
  std::size_t dense_threshold = 2000;
  int refinement_steps = 2;
  // Accept when ||A x - b||_inf <= residual_tol * (||b||_inf + 1).
  double residual_tol = 1e-9;
};

struct LinearSolveStats {
  double residual_inf = 0.0;
  double rhs_inf = 0.0;
  bool dense = false;
  int refinements = 0;
};

/// Solves A x = b; throws SingularSystem on factorisation failure or when the
/// residual misses the tolerance.
Eigen::VectorXd solve_linear(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                             const SolverOptions& options = {}, LinearSolveStats* stats = nullptr);

double residual_inf(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& b);

// Per-node values; entries that do not live on a node's side are NaN.
struct SolutionField {
  std::vector<double> u1, u2, p;  // fluid
  std::vector<double> phi;        // porous
  std::vector<double> up1, up2;   // Darcy velocity -K grad(phi)
  LinearSolveStats stats;
};

/// Scatters a solution vector onto nodes and recovers the Darcy velocity.
SolutionField unpack(const Eigen::VectorXd& x, const NodeSet& cloud, const StencilSet& stencils,
                     double kappa);

SolutionField solve(const CoupledSystem& system, const NodeSet& cloud, const StencilSet& stencils,
                    double kappa, const SolverOptions& options = {});

}  // namespace sdgfdm
