#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrsdn/plots.hpp"
#include "mrsdn/scenario.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"mrsdn-sim: sliced multi-RAT network simulator"};

  int scenario = 1;
  std::string config_path;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  std::string policy;
  bool plots = false;

  app.add_option("--scenario", scenario, "Built-in experiment preset (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  app.add_option("--config", config_path, "YAML config overriding the preset");
  app.add_option("--seeds", seeds, "Replication seeds (overrides config)")
      ->delimiter(',');
  app.add_option("--out", out_dir, "Output directory (overrides config)");
  app.add_option("--policy", policy,
                 "Restrict to one RAT-selection policy: sdn_heuristic, "
                 "legacy_wlan_first, legacy_signal_based");
  app.add_flag("--plots", plots, "Also render fig_a..fig_d SVG charts");

  CLI11_PARSE(app, argc, argv);

  try {
    mrsdn::harness::ScenarioConfig cfg =
        config_path.empty() ? mrsdn::harness::default_scenario(scenario)
                            : mrsdn::harness::load_config_file(config_path);
    if (app.count("--scenario") && !config_path.empty()) {
      std::cerr << "note: --config given, --scenario ignored\n";
    }
    if (!seeds.empty()) cfg.seeds = seeds;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!policy.empty()) {
      const auto p = mrsdn::harness::policy_from_string(policy);
      if (!p) {
        std::cerr << "error: unknown policy '" << policy << "'\n";
        return 1;
      }
      cfg.policies = {*p};
    }
    if (plots) cfg.plots = true;
    cfg.validate();

    fs::create_directories(cfg.out_dir);

    std::ofstream trace(fs::path(cfg.out_dir) / "trace.log");
    if (!trace) {
      std::cerr << "error: cannot write " << cfg.out_dir << "/trace.log\n";
      return 1;
    }
    const auto rows = mrsdn::harness::run_scenario(cfg, &trace);

    const fs::path csv_path = fs::path(cfg.out_dir) / "results.csv";
    {
      std::ofstream csv(csv_path);
      if (!csv) {
        std::cerr << "error: cannot write " << csv_path.string() << "\n";
        return 1;
      }
      mrsdn::harness::write_csv(rows, csv);
    }
    std::cout << "wrote " << csv_path.string() << " (" << rows.size()
              << " rows)\n";

    if (cfg.plots) {
      const auto figs =
          mrsdn::harness::emit_plots(csv_path.string(), cfg.out_dir);
      for (const auto& f : figs) std::cout << "wrote " << f << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
