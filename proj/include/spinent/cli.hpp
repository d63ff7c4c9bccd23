#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinent::cli {

enum class Workflow { FreeSpace, Trap, Lattice, Validate, Threshold };
enum class OutputFormat { Csv, Json };

/// Everything a batch run needs. Defaults:
/// mu = 1, grid unit and trap spacing mu/30, lattice L = 64 at T = 1e-3 J.
struct RunConfig {
  Workflow workflow = Workflow::FreeSpace;
  std::string model = "continuum";  // grid | continuum | trap

  int half_width = 15;
  double energy_unit = 1.0 / 30.0;
  int quadrature_order = 64;
  double hbar_omega = 1.0 / 30.0;
  double chemical_potential = 1.0;

  std::vector<double> temperatures;   // k_B T / mu
  std::vector<double> polarizations;  // target P
  double t_lo = 0.05;                 // threshold bracket
  double t_hi = 2.0;

  int lattice_L = 64;
  double lattice_T = 1e-3;
  double lattice_mu = 0.0;
  double hopping = 1.0;

  int fermion_samples = 100;
  int boson_samples = 20;

  std::string output = "spinent.csv";
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 7;

  bool operator==(const RunConfig&) const = default;
};

/// Exit statuses of the command-line tool.
enum ExitStatus : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitDomain = 3,
  kExitConvergence = 4,
  kExitIo = 5,
  kExitValidationFailed = 6,
};

/// Parses flat `key = value` text; `#` starts a comment. Lists are comma
/// separated or `linspace(a, b, n)`. Unset grids get workflow defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Fills empty grids with the defaults of the selected workflow and checks
/// every field. Throws ConfigError.
RunConfig resolve(RunConfig config);

/// The resolved configuration as ordered key/value pairs; feeding them back
/// through parse_config reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

Workflow parse_workflow(std::string_view name);
const char* workflow_name(Workflow workflow);
OutputFormat parse_format(std::string_view name);

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::string summary;
  int status = kExitOk;
};

/// Executes the workflow and writes its output files. Throws on failure.
RunResult run(const RunConfig& config);

/// run() with exceptions mapped to exit statuses; messages go to `errors`.
int run_and_report(const RunConfig& config, std::string& errors, std::string& summary);

}  // namespace spinent::cli
