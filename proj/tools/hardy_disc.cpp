#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "hardydisc/grids.hpp"
#include "hardydisc/runner.hpp"
#include "hardydisc/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hardy-disc: weighted Hardy-space experiments on the unit disk"};
  app.set_version_flag("--version", hdisc::kVersion);

  std::string config_path;
  std::string out_dir;
  int grid = 0;
  bool quiet = false;
  app.add_option("config", config_path, "experiment config file (key = value lines)")->required();
  app.add_option("--out", out_dir, "output directory for CSV/JSON records");
  app.add_option("--grid", grid, "override n_angles and n_radii");
  app.add_flag("--quiet", quiet, "suppress per-check output");

  CLI11_PARSE(app, argc, argv);

  hdisc::runner::ExperimentConfig cfg;
  try {
    cfg = hdisc::runner::load_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (grid != 0) {
      if (grid < 8 || grid > 4096 || !hdisc::is_power_of_two(grid)) {
        std::fprintf(stderr, "error: --grid must be a power of two in [8, 4096]\n");
        return 2;
      }
      cfg.n_angles = grid;
      cfg.n_radii = grid;
    }
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }

  try {
    const auto rec = hdisc::runner::run(cfg, quiet);
    if (!quiet)
      std::printf("%s: %s (%.3fs) -> %s\n", rec.scenario.c_str(), rec.all_pass ? "ok" : "FAILED",
                  rec.runtime_seconds, rec.json_path.c_str());
    if (!rec.all_pass) {
      for (const auto& c : rec.checks)
        if (!c.pass) std::fprintf(stderr, "failed check: %s\n", c.name.c_str());
      return 1;
    }
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 0;
}
