#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sdgfdm/error.hpp"
#include "sdgfdm/harness.hpp"

using namespace sdgfdm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sdgfdm_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;  // sentinel: nothing thrown
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("resolved defaults") {
  ExperimentConfig c;
  c.example = 1;
  CHECK(resolve(c).m == 40);
  CHECK(resolve(c).interface == "line");
  c.order = 6;
  CHECK(resolve(c).m == 140);
  c.example = 4;
  c.order = 2;
  const ExperimentConfig r = resolve(c);
  CHECK(r.m == 36);
  CHECK(r.interface == "pentagon");
  CHECK(r.case_id == 0);
  c.example = 3;
  CHECK(resolve(c).interface == "circle");
  CHECK(resolve(c).m == 20);

  const Layout l = example_layout(resolve(ExperimentConfig{}));
  CHECK(l.fluid.y0 == 1.0);
  CHECK(l.fluid.y1 == 1.25);
  CHECK(l.porous.y0 == 0.25);
}

TEST_CASE("invalid configurations") {
  auto with = [](auto edit) {
    ExperimentConfig c;
    edit(c);
    return code_of([&] { resolve(c); });
  };
  CHECK(with([](auto& c) { c.example = 5; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto& c) { c.case_id = 3; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto& c) { c.order = 3; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto& c) { c.nx = {}; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto& c) { c.nx = {2}; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto& c) { c.coeffs.nu = 0.0; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto& c) { c.example = 3; c.interface = "pentagon"; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto& c) { c.example = 4; c.n_t = 0; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto& c) { c.example = 4; c.time_indices = {12}; }) == ErrorCode::InvalidArgument);
  CHECK(with([](auto&) {}) == ErrorCode::Io);
}

TEST_CASE("layered example 2 at nx = 32") {
  ExperimentConfig c;
  c.example = 2;
  c.m = 20;
  c.nx = {32};
  const auto records = run_example(c);
  REQUIRE(records.size() == 1);
  CHECK(records[0].report[ErrorField::Uf].l2_rel <= 1.5e-3);
}

TEST_CASE("circle inclusion at nx = 64") {
  ExperimentConfig c;
  c.example = 3;
  c.interface = "circle";
  c.nx = {64};
  const auto records = run_example(c);
  REQUIRE(records.size() == 1);
  CHECK(records[0].report[ErrorField::Uf].l2_rel <= 5e-3);
}

TEST_CASE("moving interface slices") {
  ExperimentConfig c;
  c.example = 4;
  c.interface = "ellipse";
  c.nx = {40};
  c.time_indices = {2, 11};
  const auto records = run_example(c);
  REQUIRE(records.size() == 2);
  CHECK(records[0].t == doctest::Approx(0.1));
  CHECK(records[1].t == doctest::Approx(1.0));
  CHECK(record_tag(records[1]) == "ex4_ellipse_o2_m36_nx40_t1000");
}

TEST_CASE("failures carry the resolution") {
  ExperimentConfig c;
  c.nx = {8};
  c.m = 400;  // more neighbours than the cloud has
  try {
    run_example(c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientNeighbors);
    CHECK(std::string(e.what()).find("nx=8") != std::string::npos);
  }
}

TEST_CASE("sweeps") {
  ExperimentConfig c;
  c.example = 2;
  SUBCASE("a failing point is recorded and skipped") {
    c.nx = {8};
    const auto r = sweep(c, SweepParameter::M, {3, 12});
    CHECK(r.records.size() == 1);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].find("InsufficientNeighbors") != std::string::npos);
  }
  SUBCASE("nx grids get fitted orders") {
    const auto r = sweep(c, SweepParameter::Nx, {8, 16, 32});
    CHECK(r.records.size() == 3);
    REQUIRE(r.fits[0].has_value());
    CHECK(r.fits[0]->order > 1.5);
    CHECK(r.fits[0]->pairwise.size() == 2);
  }
  CHECK(code_of([&] { sweep(c, SweepParameter::Nu, {}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("reports") {
  ExperimentConfig c;
  c.nx = {16};
  c.record_timing = false;
  c.dump_fields = true;

  SUBCASE("empty record list") {
    const fs::path dir = scratch("empty");
    emit_reports({}, dir, resolve(c), "run");
    CHECK(lines(slurp(dir / "errors.csv")).size() == 1);
    fs::remove_all(dir);
  }

  SUBCASE("schema, dumps, manifest and determinism") {
    const fs::path a = scratch("a");
    const fs::path b = scratch("b");
    const auto files = emit_reports(run_example(c), a, resolve(c), "run");
    emit_reports(run_example(c), b, resolve(c), "run");
    CHECK(files.size() == 3);

    const auto rows = lines(slurp(a / "errors.csv"));
    REQUIRE(rows.size() == 5);  // header + u_f, u_p, p, phi
    CHECK(rows[0] == "example,case,interface,order,m,nx,t,field,Linf,L2,H1,L2rel,H1rel,cpu_s");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto cols = split(rows[i]);
      REQUIRE(cols.size() == 14);
      for (const auto& col : cols) CHECK_FALSE(col.empty());
    }
    CHECK(split(rows[1])[7] == "u_f");
    CHECK(slurp(a / "errors.csv") == slurp(b / "errors.csv"));

    const fs::path dump = a / "field_ex1c1_line_o2_m40_nx16.csv";
    REQUIRE(fs::exists(dump));
    const auto dump_rows = lines(slurp(dump));
    CHECK(split(dump_rows[0]).size() == 16);
    CHECK(dump_rows[0].rfind("x,y,side,kind,u1,u2,p,phi,up1,up2,", 0) == 0);

    const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
    CHECK(manifest["command"] == "run");
    CHECK(manifest["m"] == 40);
    CHECK(manifest["nu"] == 1.0);
    fs::remove_all(a);
    fs::remove_all(b);
  }

  SUBCASE("unwritable directory") {
    const fs::path blocker = scratch("blocker");
    std::ofstream(blocker) << "file";
    CHECK(code_of([&] { emit_reports({}, blocker / "sub", resolve(c), "run"); }) == ErrorCode::Io);
    fs::remove(blocker);
  }
}

}  // TEST_SUITE
