// Command-line driver: run / sweep / convergence / dump-cloud.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdgfdm/error.hpp"
#include "sdgfdm/harness.hpp"

namespace fs = std::filesystem;
using namespace sdgfdm;

namespace {

struct Options {
  ExperimentConfig config;
  std::string out = "out";
  bool no_timing = false;
  // sweep
  std::string param = "nx";
  std::vector<double> values;
  // dump-cloud
  int time_index = 1;
  bool stencils = false;
  bool matrix = false;
};

void print_summary(const std::vector<RunRecord>& records) {
  std::printf("%-8s %6s %8s %-5s %12s %12s %12s\n", "nx", "t", "nodes", "field", "L2", "L2rel",
              "H1rel");
  for (const RunRecord& r : records) {
    for (ErrorField f : kErrorFields) {
      const FieldErrors& e = r.report[f];
      std::printf("%-8d %6.3f %8zu %-5s %12.4e %12.4e %12.4e\n", r.nx, r.t, r.report.n_total,
                  std::string(to_string(f)).c_str(), e.l2, e.l2_rel, e.h1_rel);
    }
  }
}

void write_orders(const fs::path& path, const std::array<std::optional<ConvergenceFit>, 4>& fits) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << "field,order,pairwise\n";
  for (ErrorField f : kErrorFields) {
    const auto& fit = fits[static_cast<std::size_t>(f)];
    if (!fit) continue;
    out << to_string(f) << ',' << fit->order << ',';
    for (std::size_t i = 0; i < fit->pairwise.size(); ++i) {
      out << (i ? ";" : "") << fit->pairwise[i];
    }
    out << '\n';
    std::printf("order %-5s %.3f\n", std::string(to_string(f)).c_str(), fit->order);
  }
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

int cmd_run(Options& o, const std::string& name) {
  const auto records = run_example(o.config);
  print_summary(records);
  emit_reports(records, o.out, resolve(o.config), name);
  return 0;
}

int cmd_convergence(Options& o) {
  const auto records = run_example(o.config);
  print_summary(records);
  std::array<std::optional<ConvergenceFit>, 4> fits;
  if (resolve(o.config).example != 4 || o.config.time_indices.size() == 1) {
    for (ErrorField f : kErrorFields) {
      try {
        fits[static_cast<std::size_t>(f)] = fit_orders(records, f);
      } catch (const Error& e) {
        std::fprintf(stderr, "no order for %s: %s\n", std::string(to_string(f)).c_str(), e.what());
      }
    }
  }
  emit_reports(records, o.out, resolve(o.config), "convergence");
  write_orders(fs::path(o.out) / "orders.csv", fits);
  return 0;
}

int cmd_sweep(Options& o) {
  SweepParameter p = SweepParameter::Nx;
  if (o.param == "m") p = SweepParameter::M;
  if (o.param == "nu") p = SweepParameter::Nu;
  if (o.param == "kappa") p = SweepParameter::Kappa;
  const SweepResult r = sweep(o.config, p, o.values);
  print_summary(r.records);
  for (const std::string& f : r.failures) std::fprintf(stderr, "failed: %s\n", f.c_str());
  emit_reports(r.records, o.out, resolve(o.config), "sweep " + o.param);
  if (p == SweepParameter::Nx) write_orders(fs::path(o.out) / "orders.csv", r.fits);
  return r.failures.empty() ? 0 : 3;
}

int cmd_dump_cloud(Options& o) {
  const ExperimentConfig c = resolve(o.config);
  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + o.out + "'");
  auto open = [](const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw Error(ErrorCode::Io, "cannot open '" + p.string() + "' for writing");
    return f;
  };
  const Discretization d = discretize(c, c.nx.front(), o.time_index);
  {
    auto f = open(fs::path(o.out) / "cloud.csv");
    write_cloud_csv(f, *d.cloud);
  }
  if (o.stencils) {
    auto f = open(fs::path(o.out) / "stencils.csv");
    write_stencils_csv(f, d.stencils);
  }
  if (o.matrix) {
    auto a = open(fs::path(o.out) / "matrix.txt");
    auto b = open(fs::path(o.out) / "rhs.txt");
    write_system(a, b, d.system);
  }
  const auto& k = d.cloud->counts();
  std::printf("nodes %zu (fluid %zu, porous %zu, interface pairs %zu), unknowns %zu\n",
              d.cloud->size(), k.side_total(Side::Fluid), k.side_total(Side::Porous),
              k(Side::Fluid, NodeKind::Interface), d.system.map.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meshless GFDM solver for the coupled Stokes-Darcy problem"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  Options o;
  ExperimentConfig& c = o.config;
  app.add_option("--example", c.example, "Example 1..4")->capture_default_str();
  app.add_option("--case", c.case_id, "Example 1 layout case (1 or 2)")->capture_default_str();
  app.add_option("--order", c.order, "Taylor truncation order (2, 4, 6)")->capture_default_str();
  app.add_option("--m", c.m, "Star size; 0 = example default")->capture_default_str();
  app.add_option("--nx", c.nx, "Grid intervals across the domain width (list allowed)")
      ->delimiter(',');
  app.add_option("--interface", c.interface,
                 "line | circle | two-petaled | flower | heart | pentagon | ellipse");
  app.add_option("--nt", c.n_t, "Example 4 time steps")->capture_default_str();
  app.add_option("--t-final", c.t_final, "Example 4 final time")->capture_default_str();
  app.add_option("--time-index", c.time_indices, "Example 4 slices (1-based list)")->delimiter(',');
  app.add_option("--nu", c.coeffs.nu, "Kinematic viscosity")->capture_default_str();
  app.add_option("--kappa", c.coeffs.kappa, "Hydraulic conductivity K")->capture_default_str();
  app.add_option("--g", c.coeffs.g, "Normal-stress coupling g")->capture_default_str();
  app.add_option("--beta-bjs", c.coeffs.beta_bjs, "BJS friction coefficient")->capture_default_str();
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for randomized clouds")->capture_default_str();
  app.add_flag("--dump-fields", c.dump_fields, "Write field_<tag>.csv per solve");
  app.add_flag("--no-timing", o.no_timing, "Write cpu_s = 0 for reproducible bytes");
  app.add_flag("--divergence-augmented", c.assembly.divergence_augmented_pressure,
               "Add div u to interior pressure rows");

  auto* run = app.add_subcommand("run", "Solve one configuration and report errors");
  auto* sw = app.add_subcommand("sweep", "One solve per value of --param");
  sw->add_option("--param", o.param, "nx | m | nu | kappa")
      ->check(CLI::IsMember({"nx", "m", "nu", "kappa"}))
      ->capture_default_str();
  sw->add_option("--values", o.values, "Grid values")->delimiter(',')->required();
  auto* conv = app.add_subcommand("convergence", "Fit convergence orders over the --nx list");
  auto* dump = app.add_subcommand("dump-cloud", "Write the point cloud (and optionally stencils/system)");
  dump->add_option("--time-slice", o.time_index, "Example 4 slice to dump")->capture_default_str();
  dump->add_flag("--stencils", o.stencils, "Also write stencils.csv");
  dump->add_flag("--matrix", o.matrix, "Also write matrix.txt and rhs.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  c.record_timing = !o.no_timing;
  c.out = o.out;

  try {
    if (run->parsed()) return cmd_run(o, "run");
    if (sw->parsed()) return cmd_sweep(o);
    if (conv->parsed()) return cmd_convergence(o);
    if (dump->parsed()) return cmd_dump_cloud(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
