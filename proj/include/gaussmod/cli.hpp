#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaussmod/report.hpp"

namespace gaussmod::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Thermal, Perturb, Inequalities };
enum class OutputFormat { Json, Csv };
enum class Status { Pass, Fail, Error };

std::string to_string(Command c);
std::string to_string(Status s);

/// Unset thresholds fall back to the command's default: 0 (strict positivity
/// of the accurately computed quantity) for thermal runs, 1e-10 otherwise.
struct Tolerances {
  std::optional<double> standard_eps;
  std::optional<double> factorial_eps;
  std::optional<double> positivity_eps;
};

struct RunConfig {
  Command command = Command::Thermal;
  std::string geometry = "circle";
  std::vector<double> lengths;  // empty: 2π per dimension
  double mass = 1.0;
  double beta = 1.0;
  int cutoff = 16;
  std::uint64_t seed = 0;
  int trials = 100;
  int dim = 8;
  double scale = 0.1;
  Tolerances tolerances;
  std::string output_path;
  std::optional<OutputFormat> format;
  bool timestamp = false;
  std::string sigma_path, mu_path, delta_path;
  std::string dump_dir;
};

/// Throws Error (InvalidArgument / NonPositiveMass) on out-of-range fields.
void validate(const RunConfig& config);

struct Matrix {
  std::string name;
  std::vector<std::vector<double>> rows;
};

struct Instance {
  int trial = 0;
  std::vector<std::pair<std::string, double>> values;
  std::vector<Matrix> matrices;  // echoed when a run has a single trial
};

struct RunReport {
  RunConfig config;
  std::vector<InequalityReport> results;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<Instance> instances;
  Status status = Status::Pass;
  std::string error;
};

RunReport cmd_thermal(const RunConfig& config);
RunReport cmd_perturb(const RunConfig& config);
RunReport cmd_inequalities(const RunConfig& config);

/// Dispatches on config.command; library errors become status Error.
RunReport run(const RunConfig& config);

std::string to_json(const RunReport& report);
std::string to_csv(const RunReport& report);

/// 0 pass, 1 a check failed, 2 configuration or precondition error.
int exit_code(const RunReport& report);

/// Full command-line entry point.
int main_entry(int argc, char** argv);

}  // namespace gaussmod::cli
