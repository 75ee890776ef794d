#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdgfdm/assembly.hpp"
#include "sdgfdm/geometry.hpp"
#include "sdgfdm/norms.hpp"

namespace sdgfdm {

struct ExperimentConfig {
  int example = 1;
  int case_id = 1;  // Example 1 only: 1 = thin fluid strip, 2 = unit squares
  int order = 2;
  std::size_t m = 0;          // 0 picks the example default
  std::vector<int> nx{16};
  std::string interface;      // empty picks the example default
  int n_t = 10;               // Example 4 time slices
  double t_final = 1.0;
  std::vector<int> time_indices;  // Example 4 slices to solve; empty = 1..n_t+1
  Coefficients coeffs;
  std::uint64_t seed = 0;     // reserved for scattered clouds; the grid cloud is deterministic
  std::string out;
  bool dump_fields = false;
  // When false cpu_s is written as 0 so repeated runs give identical bytes.
  bool record_timing = true;
  AssemblyOptions assembly;
};

/// Fills in m and interface defaults and checks ranges (InvalidArgument).
ExperimentConfig resolve(ExperimentConfig config);

std::size_t default_m(int example, int order, std::string_view interface);
std::string default_interface(int example);

/// Static layout of Examples 1-3 and the reference (t = 0) layout of Example 4.
Layout example_layout(const ExperimentConfig& config);
/// Example 4 motion for the configured interface.
MotionSpec example_motion(const ExperimentConfig& config);

// Everything built for one static solve.
struct Discretization {
  std::shared_ptr<const NodeSet> cloud;
  StencilSet stencils;
  ProblemSpec spec;
  CoupledSystem system;
};

/// time_index is only used by Example 4 (1-based).
Discretization discretize(const ExperimentConfig& config, int nx, int time_index = 1);

/// ||A x_exact - b||_inf for the configured problem at one resolution.
double consistency_residual(const ExperimentConfig& config, int nx, int time_index = 1);

struct RunRecord {
  ExperimentConfig config;  // resolved
  int nx = 0;
  double t = 0.0;
  ErrorReport report;
  // Present when config.dump_fields is set.
  std::shared_ptr<const NodeSet> cloud;
  std::optional<SolutionField> solution;
  std::optional<ProblemSpec> spec;
};

/// One record per nx (and per time slice for Example 4). Errors from a solve
/// are rethrown with the failing nx / t in the message.
std::vector<RunRecord> run_example(const ExperimentConfig& config);

enum class SweepParameter { Nx, M, Nu, Kappa };

struct SweepResult {
  std::vector<RunRecord> records;
  std::vector<std::string> failures;
  // For nx sweeps: fitted L2 order per field (absent when a fit was impossible).
  std::array<std::optional<ConvergenceFit>, 4> fits;
};

/// Runs one solve per grid value; a failing point is recorded and skipped.
SweepResult sweep(const ExperimentConfig& base, SweepParameter parameter,
                  const std::vector<double>& grid);

/// L2-relative u_f convergence over config.nx for a single configuration.
ConvergenceFit fit_orders(const std::vector<RunRecord>& records, ErrorField field);

// Artifact writers. All throw Error(Io) with the offending path.
void write_errors_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records);
void write_field_dump(const std::filesystem::path& path, const RunRecord& record);
void write_manifest(const std::filesystem::path& path, const ExperimentConfig& config,
                    const std::string& command, const std::vector<std::string>& files);

/// errors.csv, field_<tag>.csv for records carrying a solution, manifest.json.
std::vector<std::filesystem::path> emit_reports(const std::vector<RunRecord>& records,
                                                const std::filesystem::path& directory,
                                                const ExperimentConfig& config,
                                                const std::string& command);

std::string record_tag(const RunRecord& record);

}  // namespace sdgfdm
