#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sdgfdm/solver.hpp"

namespace sdgfdm {

enum class ErrorField { Uf, Up, P, Phi };

inline constexpr std::array<ErrorField, 4> kErrorFields = {ErrorField::Uf, ErrorField::Up,
                                                         ErrorField::P, ErrorField::Phi};

std::string_view to_string(ErrorField f);

// Pointwise magnitudes entering the norms. For vector fields the error and
// exact values are Euclidean lengths, and gradients are Frobenius norms.
struct NodalSample {
  double error = 0.0;
  double exact = 0.0;
  double grad_error = 0.0;
  double grad_exact = 0.0;
};

struct FieldErrors {
  double linf = 0.0;
  double l2 = 0.0;  // RMS over the field's nodes
  double h1 = 0.0;  // RMS of the gradient error
  double linf_rel = 0.0;
  double l2_rel = 0.0;
  double h1_rel = 0.0;
  // Set when an exact-field norm was below 1e-14 and the matching relative
  // entry holds the absolute value instead.
  bool guarded = false;
  std::size_t nodes = 0;
};

FieldErrors reduce(std::span<const NodalSample> samples);

struct ErrorReport {
  std::array<FieldErrors, 4> fields;
  std::size_t n_total = 0;
  double cpu_seconds = 0.0;

  const FieldErrors& operator[](ErrorField f) const { return fields[static_cast<std::size_t>(f)]; }
  FieldErrors& operator[](ErrorField f) { return fields[static_cast<std::size_t>(f)]; }
};

/// u_f and p are measured on fluid nodes, phi and u_p on porous nodes.
/// Numeric gradients come from the stencils; the u_p gradient uses the
/// stencil Hessian of phi.
ErrorReport error_norms(const SolutionField& numeric, const ProblemSpec& spec, const NodeSet& cloud,
                        const StencilSet& stencils);

struct ConvergenceFit {
  double order = 0.0;             // least-squares slope of log(error) vs log(1/nx)
  std::vector<double> pairwise;  // between consecutive entries
};

/// Needs at least two entries with strictly increasing nx; errors must be
/// positive and finite (NonPositiveError otherwise).
ConvergenceFit convergence_order(std::span<const double> errors, std::span<const int> nx);

}  // namespace sdgfdm
