#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slehull/sde.hpp"

namespace slehull::cli {

enum class Command { Simulate, MomentsMc, MomentsExact, DensityTest, StationarityTest, ReversibilityReport };
enum class Format { Csv, Json };

std::string command_name(Command c);
Command parse_command(const std::string& name);

struct ExperimentConfig {
  Command command = Command::Simulate;
  SleParams params;
  StepConfig cfg;
  /// True when dt_max came from the user; density-test and the
  /// stationarity control otherwise run with dt_max = inf.
  bool dt_max_given = false;
  std::size_t order = 8;
  std::size_t n = 1000;
  std::optional<double> t;
  std::vector<std::string> indices;
  int max_degree = 5;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;  // empty: report on stdout, no manifest
  Format format = Format::Csv;
  bool assert_pass = false;
  double level = 0.01;
  std::string source = "sde";  // density-test: sde | sampler
  std::optional<double> control_kappa;
  std::optional<double> control_rho;
  bool mirror = false;
  std::string path_out;  // simulate: CSV dump of replica 0's driving path
};

/// Bad or incomplete configuration; maps to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void validate(const ExperimentConfig& config);

struct RunOutcome {
  std::string report;
  bool test_passed = true;
  std::vector<std::string> notes;
};

/// Runs the command and renders its report. Deterministic in (config, seed).
RunOutcome execute(const ExperimentConfig& config);

/// execute + file handling + exit code (0 ok, 2 validation, 3 failed test
/// under --assert). Messages go to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slehull::cli
