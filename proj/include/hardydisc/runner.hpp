#pragma once

#include <string>
#include <vector>

namespace hdisc::runner {

enum class Scenario { Weight, Exhaust, VerifyDlj, Factorize, Extremal, Convergence };

struct ExperimentConfig {
  Scenario scenario = Scenario::Weight;
  std::string preset = "green-disk";
  int n_angles = 256;
  int n_radii = 128;
  double p = 2.0;
  int degree = 32;
  int iterations = 5000;
  int depth = 3;
  unsigned seed = 0;
  std::vector<double> trig_coeffs;
  std::string out_dir = ".";
};

struct CheckRow {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ResultRecord {
  std::string scenario;
  std::vector<CheckRow> checks;
  double runtime_seconds = 0.0;
  std::string library_version;
  bool all_pass = false;
  std::string csv_path;
  std::string json_path;
};

/// Key = value per line, # comments. Unknown keys and out-of-range values raise
/// std::invalid_argument with the offending line number. HARDY_DISC_SEED in the
/// environment overrides the configured seed.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

/// Executes the scenario, writes <scenario>.csv and <scenario>.json under
/// config.out_dir, and returns the record (all_pass mirrors the exit contract).
ResultRecord run(const ExperimentConfig& config, bool quiet = false);

std::string scenario_name(Scenario s);

}  // namespace hdisc::runner
