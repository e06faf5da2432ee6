#ifndef MRSDN_SCENARIO_HPP
#define MRSDN_SCENARIO_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mrsdn/simulation.hpp"

namespace mrsdn::harness {

struct SweepPoint {
  double lambda_d = 0.0;
  double lambda_v = 0.0;
};

struct ScenarioConfig {
  int scenario = 1;
  radio::RadioParams radio;
  Topology topology;
  ctrl::ControllerConfig controller;
  workload::LatencyParams latency;
  double mean_hold_s = 60.0;
  double duration_s = 10000.0;
  double warmup_s = 500.0;
  std::vector<SweepPoint> sweep;
  std::vector<Policy> policies;
  std::vector<slicing::SliceDescriptor> slices;  // empty: single data slice
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "results";
  bool plots = false;

  void validate() const;
};

/// Built-in experiment presets: 1 = RAT selection vs. legacy baselines,
/// 2 = two-slice (video + data) isolation and blocking.
ScenarioConfig default_scenario(int which);

/// YAML overlay on the scenario's defaults. configs/scenario2.yaml in the
/// repository is the annotated schema reference.
ScenarioConfig load_config_file(const std::string& path);

struct CsvRow {
  int scenario = 1;
  std::string policy;
  double lambda_d = 0.0;
  double lambda_v = 0.0;
  std::uint64_t seed = 0;
  std::string slice;
  double throughput_mbps = 0.0;
  double mean_latency_s = 0.0;
  double blocking_prob = 0.0;  // NaN when no arrivals for the class
  std::uint64_t arrivals = 0;
  std::uint64_t admitted = 0;
  std::uint64_t blocked = 0;
};

inline constexpr const char* kCsvHeader =
    "scenario,policy,lambda_d,lambda_v,seed,slice,throughput_mbps,"
    "mean_latency_s,blocking_prob,arrivals,admitted,blocked";

/// Run every (sweep point, seed, policy) combination; rows are ordered by
/// (sweep index, seed, policy) regardless of execution order. The optional
/// stream receives the control-message trace of every run.
std::vector<CsvRow> run_scenario(const ScenarioConfig& cfg,
                                 std::ostream* trace_stream = nullptr);

void write_csv(const std::vector<CsvRow>& rows, std::ostream& os);

/// Assemble the per-run SimConfig for one sweep point.
SimConfig make_sim_config(const ScenarioConfig& cfg, SweepPoint point,
                          std::uint64_t seed, Policy policy);

}  // namespace mrsdn::harness

#endif  // MRSDN_SCENARIO_HPP
