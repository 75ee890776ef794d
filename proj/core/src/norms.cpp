#include "sdgfdm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdgfdm/error.hpp"

namespace sdgfdm {

std::string_view to_string(ErrorField f) {
  switch (f) {
    case ErrorField::Uf: return "u_f";
    case ErrorField::Up: return "u_p";
    case ErrorField::P: return "p";
    case ErrorField::Phi: return "phi";
  }
  return "unknown";
}

namespace {
constexpr double kZeroGuard = 1e-14;
}

FieldErrors reduce(std::span<const NodalSample> samples) {
  FieldErrors r;
  r.nodes = samples.size();
  if (samples.empty()) return r;
  double max_exact = 0.0;
  double sq_err = 0.0, sq_exact = 0.0, sq_gerr = 0.0, sq_gexact = 0.0;
  for (const NodalSample& s : samples) {
    r.linf = std::max(r.linf, std::abs(s.error));
    max_exact = std::max(max_exact, std::abs(s.exact));
    sq_err += s.error * s.error;
    sq_exact += s.exact * s.exact;
    sq_gerr += s.grad_error * s.grad_error;
    sq_gexact += s.grad_exact * s.grad_exact;
  }
  const double n = static_cast<double>(samples.size());
  r.l2 = std::sqrt(sq_err / n);
  r.h1 = std::sqrt(sq_gerr / n);
  auto relative = [&r](double abs, double denom) {
    if (denom < kZeroGuard) {
      r.guarded = true;
      return abs;
    }
    return abs / denom;
  };
  r.linf_rel = relative(r.linf, max_exact);
  r.l2_rel = relative(r.l2, std::sqrt(sq_exact / n));
  r.h1_rel = relative(r.h1, std::sqrt(sq_gexact / n));
  return r;
}

namespace {

double stencil_row(const StencilSet& st, std::size_t node, std::size_t row,
                   const std::vector<double>& values) {
  const auto& e = st.coefficients[node].e;
  const Star& star = st.stars[node];
  double acc = 0.0;
  for (std::size_t j = 0; j < e.cols(); ++j) {
    acc += e(row, j) * values[j == 0 ? node : star.neighbors[j - 1]];
  }
  return acc;
}

double hypot4(double a, double b, double c, double d) { return std::sqrt(a * a + b * b + c * c + d * d); }

}  // namespace

ErrorReport error_norms(const SolutionField& num, const ProblemSpec& spec, const NodeSet& cloud,
                        const StencilSet& st) {
  const std::size_t n = cloud.size();
  for (const auto* v : {&num.u1, &num.u2, &num.p, &num.phi, &num.up1, &num.up2}) {
    if (v->size() != n) throw Error(ErrorCode::InvalidArgument, "solution does not cover the cloud");
  }
  if (st.size() != n) throw Error(ErrorCode::MissingStencil, "stencils do not cover the cloud");
  using R = DerivativeBasis::Row;
  const auto& ex = spec.exact;
  const double kappa = spec.coeffs.kappa;

  std::vector<NodalSample> uf, up, p, phi;
  for (const Node& node : cloud.nodes()) {
    const std::size_t i = node.index;
    const Vec2 x = node.position;
    if (node.side == Side::Fluid) {
      const double e1 = num.u1[i] - ex.u1.value(x);
      const double e2 = num.u2[i] - ex.u2.value(x);
      const Vec2 g1 = ex.u1.gradient(x);
      const Vec2 g2 = ex.u2.gradient(x);
      const double d1x = stencil_row(st, i, R::X, num.u1) - g1.x;
      const double d1y = stencil_row(st, i, R::Y, num.u1) - g1.y;
      const double d2x = stencil_row(st, i, R::X, num.u2) - g2.x;
      const double d2y = stencil_row(st, i, R::Y, num.u2) - g2.y;
      uf.push_back({std::hypot(e1, e2), std::hypot(ex.u1.value(x), ex.u2.value(x)),
                    hypot4(d1x, d1y, d2x, d2y), hypot4(g1.x, g1.y, g2.x, g2.y)});

      const Vec2 gp = ex.p.gradient(x);
      p.push_back({num.p[i] - ex.p.value(x), ex.p.value(x),
                   std::hypot(stencil_row(st, i, R::X, num.p) - gp.x,
                              stencil_row(st, i, R::Y, num.p) - gp.y),
                   norm(gp)});
    } else {
      const Vec2 gphi = ex.phi.gradient(x);
      const Hessian h = ex.phi.hessian(x);
      phi.push_back({num.phi[i] - ex.phi.value(x), ex.phi.value(x),
                     std::hypot(stencil_row(st, i, R::X, num.phi) - gphi.x,
                                stencil_row(st, i, R::Y, num.phi) - gphi.y),
                     norm(gphi)});

      // u_p = -K grad(phi), so its Jacobian is -K times the Hessian of phi.
      const double hxx = stencil_row(st, i, R::XX, num.phi) - h.xx;
      const double hyy = stencil_row(st, i, R::YY, num.phi) - h.yy;
      const double hxy = stencil_row(st, i, R::XY, num.phi) - h.xy;
      up.push_back({std::hypot(num.up1[i] + kappa * gphi.x, num.up2[i] + kappa * gphi.y),
                    kappa * norm(gphi), kappa * hypot4(hxx, hxy, hxy, hyy),
                    kappa * hypot4(h.xx, h.xy, h.xy, h.yy)});
    }
  }
  ErrorReport r;
  r[ErrorField::Uf] = reduce(uf);
  r[ErrorField::Up] = reduce(up);
  r[ErrorField::P] = reduce(p);
  r[ErrorField::Phi] = reduce(phi);
  r.n_total = n;
  return r;
}

ConvergenceFit convergence_order(std::span<const double> errors, std::span<const int> nx) {
  if (errors.size() != nx.size() || errors.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least two (nx, error) pairs");
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw Error(ErrorCode::NonPositiveError, "error entry " + std::to_string(i) + " is not positive");
    }
    if (nx[i] <= 0 || (i > 0 && nx[i] <= nx[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "nx must be positive and strictly increasing");
    }
  }
  const std::size_t k = errors.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(k), ly(k);
  for (std::size_t i = 0; i < k; ++i) {
    lx[i] = std::log(1.0 / nx[i]);
    ly[i] = std::log(errors[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  ConvergenceFit fit;
  fit.order = sxy / sxx;
  for (std::size_t i = 1; i < k; ++i) {
    fit.pairwise.push_back(std::log(errors[i - 1] / errors[i]) /
                           std::log(static_cast<double>(nx[i]) / nx[i - 1]));
  }
  return fit;
}

}  // namespace sdgfdm
