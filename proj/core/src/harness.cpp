#include "sdgfdm/harness.hpp"

#include <cmath>
#include <ctime>
#include <string>

#include "sdgfdm/error.hpp"

namespace sdgfdm {

namespace {

const Rect kInclusionDomain{-1.0, 1.0, -1.0, 1.0};

bool valid_interface(int example, const std::string& name) {
  switch (example) {
    case 1:
    case 2: return name == "line";
    case 3: return name == "circle" || name == "two-petaled" || name == "flower" || name == "heart";
    case 4: return name == "pentagon" || name == "ellipse";
  }
  return false;
}

double cpu_seconds() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

}  // namespace

std::string default_interface(int example) {
  switch (example) {
    case 3: return "circle";
    case 4: return "pentagon";
    default: return "line";
  }
}

std::size_t default_m(int example, int order, std::string_view interface) {
  switch (example) {
    case 1: return order == 6 ? 140 : 40;
    case 2: return order == 2 ? 20 : (order == 4 ? 40 : 140);
    case 3: return order == 2 ? (interface == "circle" ? 20 : 36) : (order == 4 ? 40 : 140);
    default: return order == 2 ? 36 : (order == 4 ? 40 : 140);
  }
}

ExperimentConfig resolve(ExperimentConfig c) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (c.example < 1 || c.example > 4) bad("example must be 1..4");
  if (c.example == 1 && c.case_id != 1 && c.case_id != 2) bad("case must be 1 or 2");
  if (c.order != 2 && c.order != 4 && c.order != 6) bad("order must be 2, 4 or 6");
  if (c.interface.empty()) c.interface = default_interface(c.example);
  if (!valid_interface(c.example, c.interface)) {
    bad("interface '" + c.interface + "' is not available for example " + std::to_string(c.example));
  }
  if (c.m == 0) c.m = default_m(c.example, c.order, c.interface);
  if (c.nx.empty()) bad("nx list is empty");
  for (int n : c.nx) {
    if (n < 4) bad("nx must be at least 4");
  }
  if (c.example == 4) {
    if (c.n_t < 1) bad("nt must be at least 1");
    if (!(c.t_final > 0.0)) bad("t-final must be positive");
    for (int j : c.time_indices) {
      if (j < 1 || j > c.n_t + 1) bad("time index outside 1..nt+1");
    }
  }
  const Coefficients& k = c.coeffs;
  if (!(k.nu > 0.0) || !(k.kappa > 0.0)) bad("nu and kappa must be positive");
  if (!std::isfinite(k.g) || !std::isfinite(k.beta_bjs)) bad("g and beta-bjs must be finite");
  if (c.example != 1) c.case_id = 0;
  return c;
}

Layout example_layout(const ExperimentConfig& c) {
  switch (c.example) {
    case 1:
      if (c.case_id == 1) return Layout::layered({0.0, 1.0, 1.0, 1.25}, {0.0, 1.0, 0.25, 1.0});
      return Layout::layered({0.0, 1.0, 1.0, 2.0}, {0.0, 1.0, 0.0, 1.0});
    case 2: return Layout::layered({0.0, 1.0, 1.0, 2.0}, {0.0, 1.0, 0.0, 1.0});
    case 3: {
      const std::string& name = c.interface;
      if (name == "circle") return Layout::inclusion(kInclusionDomain, InterfaceCurve::circle({}, 0.5));
      if (name == "two-petaled") return Layout::inclusion(kInclusionDomain, InterfaceCurve::two_petaled());
      if (name == "flower") return Layout::inclusion(kInclusionDomain, InterfaceCurve::flower());
      return Layout::inclusion(kInclusionDomain, InterfaceCurve::heart());
    }
    default:
      if (c.interface == "ellipse") {
        return Layout::inclusion(kInclusionDomain, InterfaceCurve::ellipse({-0.45, 0.0}, 0.25, 0.15));
      }
      return Layout::inclusion(kInclusionDomain, InterfaceCurve::pentagon({-0.4, -0.4}, 0.25));
  }
}

MotionSpec example_motion(const ExperimentConfig& c) {
  const Vec2 velocity = c.interface == "ellipse" ? Vec2{0.9, 0.0} : Vec2{0.8, 0.8};
  // Same end position whatever the horizon.
  return MotionSpec::linear((1.0 / c.t_final) * velocity, c.t_final, c.n_t);
}

Discretization discretize(const ExperimentConfig& config, int nx, int time_index) {
  const ExperimentConfig c = resolve(config);
  Layout layout = example_layout(c);
  if (c.example == 4) {
    const InterfaceCurve moved =
        interface_at_time(layout.interface, example_motion(c), time_index, layout.domain);
    layout = Layout::inclusion(layout.domain, moved);
  }
  Discretization d;
  d.cloud = std::make_shared<const NodeSet>(generate_cloud(layout, nx));
  d.stencils = build_stencils(*d.cloud, c.order, c.m);
  d.spec = example_problem(c.example, c.coeffs, layout.domain.width());
  d.system = assemble(*d.cloud, d.stencils, d.spec, c.assembly);
  return d;
}

double consistency_residual(const ExperimentConfig& config, int nx, int time_index) {
  const Discretization d = discretize(config, nx, time_index);
  const Eigen::VectorXd x = exact_unknowns(*d.cloud, d.spec);
  return residual_inf(d.system.matrix, x, d.system.rhs);
}

std::vector<RunRecord> run_example(const ExperimentConfig& config) {
  const ExperimentConfig c = resolve(config);
  std::vector<int> slices{1};
  MotionSpec motion;
  if (c.example == 4) {
    motion = example_motion(c);
    slices = c.time_indices;
    if (slices.empty()) {
      for (int j = 1; j <= c.n_t + 1; ++j) slices.push_back(j);
    }
  }
  std::vector<RunRecord> records;
  for (int nx : c.nx) {
    for (int j : slices) {
      RunRecord r;
      r.config = c;
      r.config.nx = {nx};
      r.nx = nx;
      r.t = c.example == 4 ? motion.time(j) : 0.0;
      try {
        const double start = cpu_seconds();
        Discretization d = discretize(c, nx, j);
        SolutionField s = solve(d.system, *d.cloud, d.stencils, c.coeffs.kappa);
        r.report = error_norms(s, d.spec, *d.cloud, d.stencils);
        r.report.cpu_seconds = c.record_timing ? cpu_seconds() - start : 0.0;
        if (c.dump_fields) {
          r.cloud = d.cloud;
          r.solution = std::move(s);
          r.spec = std::move(d.spec);
        }
      } catch (const Error& e) {
        std::string where = "nx=" + std::to_string(nx);
        if (c.example == 4) where += ", t=" + std::to_string(r.t);
        throw Error(e.code(), where + ": " + e.detail());
      }
      records.push_back(std::move(r));
    }
  }
  return records;
}

ConvergenceFit fit_orders(const std::vector<RunRecord>& records, ErrorField field) {
  std::vector<double> errors;
  std::vector<int> nx;
  for (const RunRecord& r : records) {
    errors.push_back(r.report[field].l2_rel);
    nx.push_back(r.nx);
  }
  return convergence_order(errors, nx);
}

SweepResult sweep(const ExperimentConfig& base, SweepParameter parameter,
                  const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
  SweepResult out;
  for (const double v : grid) {
    ExperimentConfig c = base;
    switch (parameter) {
      case SweepParameter::Nx: c.nx = {static_cast<int>(std::lround(v))}; break;
      case SweepParameter::M: c.m = static_cast<std::size_t>(std::lround(v)); break;
      case SweepParameter::Nu: c.coeffs.nu = v; break;
      case SweepParameter::Kappa: c.coeffs.kappa = v; break;
    }
    try {
      for (RunRecord& r : run_example(c)) out.records.push_back(std::move(r));
    } catch (const Error& e) {
      out.failures.push_back(e.what());
    }
  }
  if (parameter == SweepParameter::Nx && out.records.size() >= 2) {
    bool single_slice = true;
    for (std::size_t i = 1; i < out.records.size(); ++i) {
      single_slice = single_slice && out.records[i].nx > out.records[i - 1].nx;
    }
    if (single_slice) {
      for (ErrorField f : kErrorFields) {
        try {
          out.fits[static_cast<std::size_t>(f)] = fit_orders(out.records, f);
        } catch (const Error&) {
          // zero errors (exactly reproduced field): no order to report
        }
      }
    }
  }
  return out;
}

}  // namespace sdgfdm
