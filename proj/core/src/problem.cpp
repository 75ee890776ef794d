#include "sdgfdm/problem.hpp"

#include <cmath>
#include <numbers>

#include "sdgfdm/error.hpp"

namespace sdgfdm {

namespace {
constexpr double kPi = std::numbers::pi;

double central_diff6(const std::function<double(double)>& f, double x, double h) {
  return (-f(x - 3 * h) + 9 * f(x - 2 * h) - 45 * f(x - h) + 45 * f(x + h) - 9 * f(x + 2 * h) +
          f(x + 3 * h)) /
         (60.0 * h);
}
}  // namespace

ProblemSpec manufactured(std::string name, const Coefficients& coeffs, ExactSolution exact,
                         double length_scale) {
  ProblemSpec spec;
  spec.name = std::move(name);
  spec.coeffs = coeffs;
  spec.exact = std::move(exact);
  spec.length_scale = length_scale;
  const ExactSolution ex = spec.exact;
  const double nu = coeffs.nu;
  const double kappa = coeffs.kappa;
  spec.fluid_forcing = [ex, nu](Vec2 q) {
    const Hessian a = ex.u1.hessian(q);
    const Hessian b = ex.u2.hessian(q);
    const Vec2 gp = ex.p.gradient(q);
    return Vec2{-nu * (2.0 * a.xx + a.yy + b.xy) + gp.x, -nu * (b.xx + 2.0 * b.yy + a.xy) + gp.y};
  };
  spec.porous_forcing = [ex, kappa](Vec2 q) {
    const Hessian h = ex.phi.hessian(q);
    return -kappa * (h.xx + h.yy);
  };
  spec.forcing_divergence = [ex](Vec2 q) {
    const Hessian h = ex.p.hessian(q);
    return h.xx + h.yy;
  };
  return spec;
}

ExactSolution example1_solution() {
  // A(x) = 2 - pi sin(pi x) appears in u2, p and phi.
  auto a = [](double x) { return 2.0 - kPi * std::sin(kPi * x); };
  auto da = [](double x) { return -kPi * kPi * std::cos(kPi * x); };
  auto dda = [](double x) { return kPi * kPi * kPi * std::sin(kPi * x); };

  ExactSolution s;
  s.u1.value = [](Vec2 q) {
    const double ym = q.y - 1.0;
    return q.x * q.x * ym * ym + q.y;
  };
  s.u1.gradient = [](Vec2 q) {
    const double ym = q.y - 1.0;
    return Vec2{2.0 * q.x * ym * ym, 2.0 * q.x * q.x * ym + 1.0};
  };
  s.u1.hessian = [](Vec2 q) {
    const double ym = q.y - 1.0;
    return Hessian{2.0 * ym * ym, 2.0 * q.x * q.x, 4.0 * q.x * ym};
  };

  s.u2.value = [a](Vec2 q) {
    const double ym = q.y - 1.0;
    return -2.0 / 3.0 * q.x * ym * ym * ym + a(q.x);
  };
  s.u2.gradient = [da](Vec2 q) {
    const double ym = q.y - 1.0;
    return Vec2{-2.0 / 3.0 * ym * ym * ym + da(q.x), -2.0 * q.x * ym * ym};
  };
  s.u2.hessian = [dda](Vec2 q) {
    const double ym = q.y - 1.0;
    return Hessian{dda(q.x), -4.0 * q.x * ym, -2.0 * ym * ym};
  };

  s.p.value = [a](Vec2 q) { return a(q.x) * std::sin(0.5 * kPi * q.y); };
  s.p.gradient = [a, da](Vec2 q) {
    return Vec2{da(q.x) * std::sin(0.5 * kPi * q.y), a(q.x) * 0.5 * kPi * std::cos(0.5 * kPi * q.y)};
  };
  s.p.hessian = [a, da, dda](Vec2 q) {
    const double sn = std::sin(0.5 * kPi * q.y);
    const double cs = std::cos(0.5 * kPi * q.y);
    return Hessian{dda(q.x) * sn, -0.25 * kPi * kPi * a(q.x) * sn, 0.5 * kPi * da(q.x) * cs};
  };

  // phi = A(x) B(y), B = 1 - y - cos(pi y).
  auto b = [](double y) { return 1.0 - y - std::cos(kPi * y); };
  auto db = [](double y) { return -1.0 + kPi * std::sin(kPi * y); };
  auto ddb = [](double y) { return kPi * kPi * std::cos(kPi * y); };
  s.phi.value = [a, b](Vec2 q) { return a(q.x) * b(q.y); };
  s.phi.gradient = [a, da, b, db](Vec2 q) { return Vec2{da(q.x) * b(q.y), a(q.x) * db(q.y)}; };
  s.phi.hessian = [a, da, dda, b, db, ddb](Vec2 q) {
    return Hessian{dda(q.x) * b(q.y), a(q.x) * ddb(q.y), da(q.x) * db(q.y)};
  };
  return s;
}

ExactSolution example2_solution(const Coefficients& coeffs) {
  const double nu = coeffs.nu;
  const double k = coeffs.kappa;
  ExactSolution s;
  s.u1.value = [](Vec2 q) { return (q.y - 1.0) * (q.y - 1.0); };
  s.u1.gradient = [](Vec2 q) { return Vec2{0.0, 2.0 * (q.y - 1.0)}; };
  s.u1.hessian = [](Vec2) { return Hessian{0.0, 2.0, 0.0}; };

  s.u2.value = [](Vec2 q) { return q.x * q.x - q.x; };
  s.u2.gradient = [](Vec2 q) { return Vec2{2.0 * q.x - 1.0, 0.0}; };
  s.u2.hessian = [](Vec2) { return Hessian{2.0, 0.0, 0.0}; };

  s.p.value = [nu, k](Vec2 q) { return 2.0 * nu * (q.x + q.y - 1.0) + 1.0 / (3.0 * k); };
  s.p.gradient = [nu](Vec2) { return Vec2{2.0 * nu, 2.0 * nu}; };
  s.p.hessian = [](Vec2) { return Hessian{}; };

  s.phi.value = [nu, k](Vec2 q) {
    const double x = q.x;
    const double y = q.y;
    return (x * (1.0 - x) * (y - 1.0) + y * y * y / 3.0 - y * y + y) / k + 2.0 * nu * x;
  };
  s.phi.gradient = [nu, k](Vec2 q) {
    const double x = q.x;
    const double y = q.y;
    return Vec2{(1.0 - 2.0 * x) * (y - 1.0) / k + 2.0 * nu,
                (x * (1.0 - x) + y * y - 2.0 * y + 1.0) / k};
  };
  s.phi.hessian = [k](Vec2 q) {
    return Hessian{-2.0 * (q.y - 1.0) / k, (2.0 * q.y - 2.0) / k, (1.0 - 2.0 * q.x) / k};
  };
  return s;
}

ProblemSpec example_problem(int example, const Coefficients& coeffs, double length_scale) {
  switch (example) {
    case 1:
    case 3:
    case 4:
      return manufactured("example" + std::to_string(example), coeffs, example1_solution(),
                          length_scale);
    case 2:
      return manufactured("example2", coeffs, example2_solution(coeffs), length_scale);
    default:
      throw Error(ErrorCode::InvalidArgument, "example must be 1..4");
  }
}

double divergence_of_forcing(const ProblemSpec& spec, Vec2 q) {
  if (spec.forcing_divergence) return spec.forcing_divergence(q);
  const double h = 1e-4 * spec.length_scale;
  const auto& f = spec.fluid_forcing;
  const double dfx = central_diff6([&](double x) { return f({x, q.y}).x; }, q.x, h);
  const double dfy = central_diff6([&](double y) { return f({q.x, y}).y; }, q.y, h);
  return dfx + dfy;
}

double momentum_x_operator(const ProblemSpec& spec, Vec2 q) {
  const Hessian a = spec.exact.u1.hessian(q);
  const Hessian b = spec.exact.u2.hessian(q);
  return -spec.coeffs.nu * (2.0 * a.xx + a.yy + b.xy) + spec.exact.p.gradient(q).x;
}

double momentum_y_operator(const ProblemSpec& spec, Vec2 q) {
  const Hessian a = spec.exact.u1.hessian(q);
  const Hessian b = spec.exact.u2.hessian(q);
  return -spec.coeffs.nu * (b.xx + 2.0 * b.yy + a.xy) + spec.exact.p.gradient(q).y;
}

double darcy_operator(const ProblemSpec& spec, Vec2 q) {
  const Hessian h = spec.exact.phi.hessian(q);
  return -spec.coeffs.kappa * (h.xx + h.yy);
}

double mass_conservation_operator(const ProblemSpec& spec, Vec2 q, Vec2 nf) {
  const Vec2 np = -nf;
  const Vec2 gphi = spec.exact.phi.gradient(q);
  return spec.exact.u1.value(q) * nf.x + spec.exact.u2.value(q) * nf.y -
         spec.coeffs.kappa * (gphi.x * np.x + gphi.y * np.y);
}

double normal_stress_operator(const ProblemSpec& spec, Vec2 q, Vec2 nf) {
  const Vec2 g1 = spec.exact.u1.gradient(q);
  const Vec2 g2 = spec.exact.u2.gradient(q);
  return spec.exact.p.value(q) -
         2.0 * spec.coeffs.nu *
             (g1.x * nf.x * nf.x + (g1.y + g2.x) * nf.x * nf.y + g2.y * nf.y * nf.y) -
         spec.coeffs.g * spec.exact.phi.value(q);
}

double tangential_stress_operator(const ProblemSpec& spec, Vec2 q, Vec2 nf, Vec2 t) {
  const Vec2 g1 = spec.exact.u1.gradient(q);
  const Vec2 g2 = spec.exact.u2.gradient(q);
  const double nu = spec.coeffs.nu;
  return -nu * (2.0 * g1.x * nf.x * t.x + g1.y * (nf.x * t.y + nf.y * t.x) +
                g2.x * (nf.y * t.x + nf.x * t.y) + 2.0 * g2.y * nf.y * t.y) -
         spec.coeffs.beta_bjs * (spec.exact.u1.value(q) * t.x + spec.exact.u2.value(q) * t.y);
}

double pressure_closure_operator(const ProblemSpec& spec, Vec2 q) {
  return spec.exact.u1.gradient(q).x + spec.exact.u2.gradient(q).y + spec.exact.p.value(q);
}

}  // namespace sdgfdm
