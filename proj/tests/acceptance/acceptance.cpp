// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails. Pass a list of criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sdgfdm/error.hpp"
#include "sdgfdm/harness.hpp"

using namespace sdgfdm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3g", v); }

ExperimentConfig config(int example, int order, std::vector<int> nx, std::size_t m = 0) {
  ExperimentConfig c;
  c.example = example;
  c.order = order;
  c.nx = std::move(nx);
  c.m = m;
  c.record_timing = false;
  return c;
}

std::vector<double> column(const std::vector<RunRecord>& records, ErrorField f,
                           double FieldErrors::*norm) {
  std::vector<double> out;
  for (const RunRecord& r : records) out.push_back(r.report[f].*norm);
  return out;
}

double slope(const std::vector<RunRecord>& records, ErrorField f, double FieldErrors::*norm) {
  std::vector<int> nx;
  for (const RunRecord& r : records) nx.push_back(r.nx);
  return convergence_order(column(records, f, norm), nx).order;
}

double band(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// 1. Polynomial exactness on jittered stars.
Outcome stencil_exactness() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  double worst_const = 0.0;
  for (int order : {2, 4, 6}) {
    const DerivativeBasis basis(order);
    for (int trial = 0; trial < 200; ++trial) {
      const Vec2 c{u(rng), u(rng)};
      const double h = 0.2 + 0.4 * (u(rng) + 1.0);
      const Star star =
          oracle::make_star(oracle::block_offsets(oracle::block_radius(order), h, 0.3, rng));
      const auto e = build_stencil(star, basis);
      for (int a = 0; a <= order; ++a) {
        for (int b = 0; a + b <= order; ++b) {
          std::vector<double> v{std::pow(c.x, a) * std::pow(c.y, b)};
          for (const Vec2 o : star.offsets) v.push_back(std::pow(c.x + o.x, a) * std::pow(c.y + o.y, b));
          for (std::size_t r = 0; r < basis.size(); ++r) {
            const MultiIndex d = basis.indices()[r];
            double want = 0.0;
            if (d.dx <= a && d.dy <= b) {
              want = oracle::factorial(a) / oracle::factorial(a - d.dx) * std::pow(c.x, a - d.dx) *
                     oracle::factorial(b) / oracle::factorial(b - d.dy) * std::pow(c.y, b - d.dy);
            }
            const double got = apply_derivative(e, r, v);
            worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
          }
        }
      }
      for (std::size_t r = 0; r < basis.size(); ++r) {
        double sum = 0.0, big = 0.0;
        for (const double x : e.row(r)) {
          sum += x;
          big = std::max(big, std::abs(x));
        }
        worst_const = std::max(worst_const, std::abs(sum) / big);
      }
    }
  }
  return {worst <= 1e-8 && worst_const <= 1e-11,
          "max rel err " + sci(worst) + " (tol 1e-8), constant " + sci(worst_const) + " (tol 1e-11)"};
}

// 2. Hand-written Cholesky against a dense inverse.
Outcome cholesky_oracle() {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int n : {5, 14, 27}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::MatrixXd a = oracle::random_spd(n, rng);
      Eigen::VectorXd b(n);
      for (auto& v : b) v = g(rng);
      const auto x = cholesky_solve_spd(oracle::to_dense(a), std::vector<double>(b.begin(), b.end()));
      const Eigen::VectorXd want = a.inverse() * b;
      const Eigen::VectorXd got = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
      worst = std::max(worst, (got - want).norm() / want.norm());
    }
  }
  return {worst <= 1e-10, "max rel diff " + sci(worst) + " (tol 1e-10)"};
}

// 3. Registered forcings against differenced exact fields.
Outcome manufactured_consistency() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Registered {
    int example;
    Coefficients k;
    Rect box;
  };
  std::vector<Registered> regs;
  regs.push_back({1, {}, {0, 1, 0, 2}});
  regs.push_back({3, {}, {-1, 1, -1, 1}});
  regs.push_back({4, {}, {-1, 1, -1, 1}});
  for (double nu : {1.0, 1e-2, 1e-4, 1e-6, 1e-8}) regs.push_back({2, {nu, 1.0, 1.0, 1.0}, {0, 1, 0, 2}});
  for (double nu : {0.1, 0.01, 0.001}) {
    for (double kappa : {1.0, 0.1}) regs.push_back({2, {nu, kappa, 1.0, 1.0}, {0, 1, 0, 2}});
  }
  double worst = 0.0;
  for (const auto& reg : regs) {
    const ProblemSpec spec = example_problem(reg.example, reg.k, reg.box.width());
    const oracle::ForcingOracle fd{spec};
    for (int i = 0; i < 200; ++i) {
      const Vec2 q{reg.box.x0 + reg.box.width() * u(rng), reg.box.y0 + reg.box.height() * u(rng)};
      const Vec2 f = spec.fluid_forcing(q);
      const Vec2 want = fd.fluid(q);
      worst = std::max({worst, std::abs(f.x - want.x), std::abs(f.y - want.y),
                        std::abs(spec.porous_forcing(q) - fd.porous(q)),
                        std::abs(divergence_of_forcing(spec, q) - fd.divergence(q))});
    }
  }
  return {worst <= 1e-9, std::to_string(regs.size()) + " registrations x 200 points, max diff " +
                             sci(worst) + " (tol 1e-9)"};
}

// 4. Thin strip, order 2.
Outcome example1_case1() {
  const double published[] = {1.58e-3, 4.30e-4, 1.10e-4, 2.77e-5};
  ExperimentConfig c = config(1, 2, {16, 32, 64, 128}, 40);
  const auto records = run_example(c);
  Outcome o;
  std::ostringstream s;
  s << "L2rel u_f";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double e = records[i].report[ErrorField::Uf].l2_rel;
    const double ratio = e / published[i];
    o.pass = o.pass && ratio <= 3.0 && ratio >= 1.0 / 3.0;
    s << ' ' << sci(e) << " (x" << fmt("%.2f", ratio) << ")";
  }
  const double order = slope(records, ErrorField::Uf, &FieldErrors::l2_rel);
  o.pass = o.pass && order >= 1.8;
  s << "; order " << fmt("%.2f", order) << " (>= 1.8)";
  o.detail = s.str();
  return o;
}

// 5. Unit squares, orders 4 and 6.
Outcome example1_high_order() {
  ExperimentConfig c = config(1, 4, {16, 32, 64}, 40);
  c.case_id = 2;
  const auto r4 = run_example(c);
  const double order4 = slope(r4, ErrorField::Uf, &FieldErrors::l2_rel);

  c.order = 6;
  c.m = 140;
  c.nx = {16, 32};
  const auto r6 = run_example(c);
  const auto e6 = column(r6, ErrorField::Uf, &FieldErrors::l2_rel);
  const double pair6 = std::log2(e6[0] / e6[1]);
  const bool floor6 = e6[1] <= 1e-10;

  std::ostringstream s;
  s << "order 4: L2rel u_f " << sci(r4[0].report[ErrorField::Uf].l2_rel) << " .. "
    << sci(r4.back().report[ErrorField::Uf].l2_rel) << ", fitted " << fmt("%.2f", order4)
    << " (>= 3.5); order 6: " << sci(e6[0]) << " -> " << sci(e6[1]) << ", pairwise "
    << fmt("%.2f", pair6) << " (>= 5.5 or floor 1e-10)";
  return {order4 >= 3.5 && (pair6 >= 5.5 || floor6), s.str()};
}

// 6. Coefficient robustness on Example 2.
Outcome example2_coefficients() {
  std::vector<std::pair<double, double>> grid;
  for (double nu : {1.0, 1e-2, 1e-4, 1e-6, 1e-8}) grid.emplace_back(nu, 1.0);
  for (double nu : {0.1, 0.01, 0.001}) {
    for (double kappa : {1.0, 0.1}) grid.emplace_back(nu, kappa);
  }
  double worst = 1e300;
  std::string where;
  for (const auto& [nu, kappa] : grid) {
    ExperimentConfig c = config(2, 2, {16, 32, 64});
    c.coeffs.nu = nu;
    c.coeffs.kappa = kappa;
    const double order = slope(run_example(c), ErrorField::Uf, &FieldErrors::l2_rel);
    if (order < worst) {
      worst = order;
      where = "nu=" + sci(nu) + ", K=" + sci(kappa);
    }
  }
  return {worst >= 1.7, std::to_string(grid.size()) + " (nu, K) points, lowest u_f order " +
                            fmt("%.2f", worst) + " at " + where + " (>= 1.7)"};
}

// 7. Closed interfaces.
Outcome example3_shapes() {
  Outcome o;
  std::ostringstream s;
  {
    const double published[] = {8.25e-3, 1.63e-3, 4.36e-4};
    ExperimentConfig c = config(3, 2, {32, 64, 128});
    c.interface = "circle";
    const auto r = run_example(c);
    s << "circle L2rel u_f";
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double e = r[i].report[ErrorField::Uf].l2_rel;
      const double ratio = e / published[i];
      o.pass = o.pass && ratio <= 3.0 && ratio >= 1.0 / 3.0;
      s << ' ' << sci(e) << " (x" << fmt("%.2f", ratio) << ")";
    }
    const double order = slope(r, ErrorField::Uf, &FieldErrors::l2_rel);
    o.pass = o.pass && order >= 1.8;
    s << ", order " << fmt("%.2f", order) << " (>= 1.8)";
  }
  struct Metric {
    ErrorField f;
    double FieldErrors::*norm;
    const char* name;
  };
  const Metric metrics[] = {
      {ErrorField::Uf, &FieldErrors::linf, "Linf(u_f)"}, {ErrorField::Uf, &FieldErrors::l2, "L2(u_f)"},
      {ErrorField::Uf, &FieldErrors::h1, "H1(u_f)"},     {ErrorField::Up, &FieldErrors::linf, "Linf(u_p)"},
      {ErrorField::Up, &FieldErrors::l2, "L2(u_p)"},     {ErrorField::P, &FieldErrors::linf, "Linf(p)"},
      {ErrorField::P, &FieldErrors::l2, "L2(p)"},        {ErrorField::P, &FieldErrors::h1, "H1(p)"},
  };
  for (const char* shape : {"two-petaled", "flower", "heart"}) {
    ExperimentConfig c = config(3, 2, {32, 64, 128});
    c.interface = shape;
    const auto r = run_example(c);
    double lowest = 1e300;
    const char* which = "";
    for (const auto& m : metrics) {
      const double order = slope(r, m.f, m.norm);
      if (order < lowest) {
        lowest = order;
        which = m.name;
      }
    }
    o.pass = o.pass && lowest >= 1.6;
    s << "; " << shape << " lowest " << which << ' ' << fmt("%.2f", lowest);
  }
  s << " (>= 1.6, H1(u_p) excluded)";
  o.detail = s.str();
  return o;
}

// 8. Moving interfaces.
Outcome example4_motion() {
  Outcome o;
  std::ostringstream s;
  for (const char* shape : {"pentagon", "ellipse"}) {
    ExperimentConfig c = config(4, 2, {60}, 36);
    c.interface = shape;
    c.time_indices = {2, 6, 11};
    const auto r = run_example(c);
    double worst = 0.0;
    for (ErrorField f : kErrorFields) worst = std::max(worst, band(column(r, f, &FieldErrors::l2)));
    o.pass = o.pass && r.size() == 3 && worst < 10.0;
    s << shape << ": 3 slices solved, max L2 spread x" << fmt("%.2f", worst) << "; ";
  }
  s << "(< x10)";
  o.detail = s.str();
  return o;
}

// 9. Star-size stability.
Outcome m_stability() {
  std::vector<double> ex2, ex4;
  for (int m = 12; m <= 22; ++m) {
    const auto r = run_example(config(2, 2, {32}, static_cast<std::size_t>(m)));
    ex2.push_back(r[0].report[ErrorField::Uf].l2);
  }
  for (int m = 22; m <= 40; ++m) {
    ExperimentConfig c = config(4, 2, {60}, static_cast<std::size_t>(m));
    c.interface = "pentagon";
    c.time_indices = {11};
    ex4.push_back(run_example(c)[0].report[ErrorField::Uf].l2);
  }
  const double b2 = band(ex2);
  const double b4 = band(ex4);
  return {b2 <= 3.0 && b4 <= 3.0, "example 2 m=12..22 band x" + fmt("%.2f", b2) +
                                       ", pentagon m=22..40 band x" + fmt("%.2f", b4) + " (<= x3)"};
}

// 10. Residual of the assembled operator on the exact solution.
Outcome operator_consistency() {
  struct Case {
    const char* name;
    ExperimentConfig c;
  };
  std::vector<Case> cases;
  {
    ExperimentConfig c = config(1, 2, {16});
    cases.push_back({"ex1 case1 o2", c});
    c.case_id = 2;
    cases.push_back({"ex1 case2 o2", c});
    c.order = 4;
    c.m = 40;
    cases.push_back({"ex1 case2 o4", c});
    cases.push_back({"ex2 o2", config(2, 2, {16})});
    for (const char* shape : {"circle", "two-petaled", "flower", "heart"}) {
      ExperimentConfig e = config(3, 2, {16});
      e.interface = shape;
      cases.push_back({shape, e});
    }
  }
  Outcome o;
  std::ostringstream s;
  for (const auto& [name, c] : cases) {
    std::vector<double> res;
    const std::vector<int> nx{16, 32, 64};
    for (int n : nx) res.push_back(consistency_residual(c, n));
    const double order = convergence_order(res, nx).order;
    const bool ok = order >= c.order - 0.5;
    o.pass = o.pass && ok;
    s << name << ' ' << fmt("%.2f", order) << (ok ? "" : "!") << "; ";
  }
  s << "(slope >= order - 0.5)";
  o.detail = s.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "stencil polynomial exactness", 10, stencil_exactness},
      {2, "cholesky oracle equivalence", 5, cholesky_oracle},
      {3, "manufactured consistency", 10, manufactured_consistency},
      {4, "example 1 case 1 order 2", 120, example1_case1},
      {5, "example 1 case 2 orders 4 and 6", 300, example1_high_order},
      {6, "example 2 coefficient sweeps", 300, example2_coefficients},
      {7, "example 3 closed interfaces", 300, example3_shapes},
      {8, "example 4 moving interfaces", 180, example4_motion},
      {9, "m-stability", 300, m_stability},
      {10, "full-operator consistency", 180, operator_consistency},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs < c.limit_s;
    failed += pass ? 0 : 1;
    std::printf("%s %2d %s: %s; %.1f s (< %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
