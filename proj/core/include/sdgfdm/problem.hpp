#pragma once

#include <functional>
#include <optional>
#include <string>

#include "sdgfdm/vec2.hpp"

namespace sdgfdm {

struct Hessian {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;
};

// An exact scalar field with hand-derived first and second partials.
struct ScalarField {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  std::function<Hessian(Vec2)> hessian;
};

struct ExactSolution {
  ScalarField u1;
  ScalarField u2;
  ScalarField p;
  ScalarField phi;
};

struct Coefficients {
  double nu = 1.0;        // kinematic viscosity
  double kappa = 1.0;     // hydraulic conductivity, K = kappa * I
  double g = 1.0;         // normal-stress coupling
  double beta_bjs = 1.0;  // nu * alpha * sqrt(d) / sqrt(trace(Pi))
};

// Coefficients, exact fields and the forcings they induce.
struct ProblemSpec {
  std::string name;
  Coefficients coeffs;
  ExactSolution exact;
  std::function<Vec2(Vec2)> fluid_forcing;    // (f1, f2)
  std::function<double(Vec2)> porous_forcing;  // f_p
  // Analytic div f_f when known; otherwise it is differenced numerically.
  std::function<double(Vec2)> forcing_divergence;
  double length_scale = 1.0;
};

/// Attaches forcings computed by applying the Stokes and Darcy operators to
/// the exact fields. div f_f is registered as the Laplacian of p, which is
/// exact for a divergence-free velocity.
ProblemSpec manufactured(std::string name, const Coefficients& coeffs, ExactSolution exact,
                         double length_scale);

/// Example 1 fields (also reused by the closed and moving interface examples).
ExactSolution example1_solution();
/// Example 2 fields; p and phi depend on nu and K.
ExactSolution example2_solution(const Coefficients& coeffs);

/// Registered problem for an example number 1..4.
ProblemSpec example_problem(int example, const Coefficients& coeffs, double length_scale = 1.0);

/// d f1/dx + d f2/dy: analytic when registered, else 6th-order central
/// differences with step 1e-4 * length_scale.
double divergence_of_forcing(const ProblemSpec& spec, Vec2 point);

// Residual of each equation's left-hand side on the exact fields. These are
// the right-hand sides that make the exact fields a discrete solution.
double momentum_x_operator(const ProblemSpec& spec, Vec2 p);
double momentum_y_operator(const ProblemSpec& spec, Vec2 p);
double darcy_operator(const ProblemSpec& spec, Vec2 p);
double mass_conservation_operator(const ProblemSpec& spec, Vec2 p, Vec2 n_fluid);
double normal_stress_operator(const ProblemSpec& spec, Vec2 p, Vec2 n_fluid);
double tangential_stress_operator(const ProblemSpec& spec, Vec2 p, Vec2 n_fluid, Vec2 tangent);
double pressure_closure_operator(const ProblemSpec& spec, Vec2 p);

}  // namespace sdgfdm
