#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sdgfdm/error.hpp"
#include "sdgfdm/harness.hpp"

namespace sdgfdm {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out.precision(10);
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

std::string case_label(const ExperimentConfig& c) {
  return c.example == 1 ? std::to_string(c.case_id) : "";
}

}  // namespace

std::string record_tag(const RunRecord& r) {
  std::ostringstream s;
  s << "ex" << r.config.example;
  if (r.config.example == 1) s << "c" << r.config.case_id;
  s << '_' << r.config.interface << "_o" << r.config.order << "_m" << r.config.m << "_nx" << r.nx;
  if (r.config.example == 4) s << "_t" << std::lround(r.t * 1000.0);
  return s.str();
}

void write_errors_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
  std::ofstream out = open_for_write(path);
  out << "example,case,interface,order,m,nx,t,field,Linf,L2,H1,L2rel,H1rel,cpu_s\n";
  for (const RunRecord& r : records) {
    const ExperimentConfig& c = r.config;
    for (ErrorField f : kErrorFields) {
      const FieldErrors& e = r.report[f];
      out << c.example << ',' << case_label(c) << ',' << c.interface << ',' << c.order << ','
          << c.m << ',' << r.nx << ',' << r.t << ',' << to_string(f) << ',' << e.linf << ','
          << e.l2 << ',' << e.h1 << ',' << e.l2_rel << ',' << e.h1_rel << ','
          << r.report.cpu_seconds << '\n';
    }
  }
  finish(out, path);
}

void write_field_dump(const std::filesystem::path& path, const RunRecord& r) {
  if (!r.cloud || !r.solution || !r.spec) {
    throw Error(ErrorCode::InvalidArgument, "record carries no field data");
  }
  std::ofstream out = open_for_write(path);
  out.precision(17);
  out << "x,y,side,kind,u1,u2,p,phi,up1,up2,"
         "u1_exact,u2_exact,p_exact,phi_exact,up1_exact,up2_exact\n";
  const SolutionField& s = *r.solution;
  const ExactSolution& ex = r.spec->exact;
  const double kappa = r.spec->coeffs.kappa;
  const double nan = std::nan("");
  for (const Node& n : r.cloud->nodes()) {
    const std::size_t i = n.index;
    const Vec2 x = n.position;
    const bool fluid = n.side == Side::Fluid;
    const Vec2 g = fluid ? Vec2{nan, nan} : ex.phi.gradient(x);
    out << x.x << ',' << x.y << ',' << to_string(n.side) << ',' << to_string(n.kind) << ','
        << s.u1[i] << ',' << s.u2[i] << ',' << s.p[i] << ',' << s.phi[i] << ',' << s.up1[i] << ','
        << s.up2[i] << ',' << (fluid ? ex.u1.value(x) : nan) << ','
        << (fluid ? ex.u2.value(x) : nan) << ',' << (fluid ? ex.p.value(x) : nan) << ','
        << (fluid ? nan : ex.phi.value(x)) << ',' << -kappa * g.x << ',' << -kappa * g.y << '\n';
  }
  finish(out, path);
}

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& c,
                    const std::string& command, const std::vector<std::string>& files) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["example"] = c.example;
  if (c.example == 1) j["case"] = c.case_id;
  j["order"] = c.order;
  j["m"] = c.m;
  j["nx"] = c.nx;
  j["interface"] = c.interface;
  if (c.example == 4) {
    j["nt"] = c.n_t;
    j["t_final"] = c.t_final;
    j["time_indices"] = c.time_indices;
  }
  j["nu"] = c.coeffs.nu;
  j["kappa"] = c.coeffs.kappa;
  j["g"] = c.coeffs.g;
  j["beta_bjs"] = c.coeffs.beta_bjs;
  j["seed"] = c.seed;
  j["divergence_augmented_pressure"] = c.assembly.divergence_augmented_pressure;
  j["record_timing"] = c.record_timing;
  j["files"] = files;
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

std::vector<std::filesystem::path> emit_reports(const std::vector<RunRecord>& records,
                                                const std::filesystem::path& dir,
                                                const ExperimentConfig& config,
                                                const std::string& command) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written{dir / "errors.csv"};
  write_errors_csv(written.front(), records);
  for (const RunRecord& r : records) {
    if (!r.solution) continue;
    written.push_back(dir / ("field_" + record_tag(r) + ".csv"));
    write_field_dump(written.back(), r);
  }
  std::vector<std::string> names;
  for (const auto& p : written) names.push_back(p.filename().string());
  written.push_back(dir / "manifest.json");
  write_manifest(written.back(), config, command, names);
  return written;
}

}  // namespace sdgfdm
