#include "mrsdn/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace mrsdn::harness {

void ScenarioConfig::validate() const {
  radio.validate();
  if (sweep.empty()) throw std::invalid_argument("config: sweep is empty");
  if (seeds.empty()) throw std::invalid_argument("config: at least one seed required");
  if (policies.empty()) throw std::invalid_argument("config: at least one policy required");
  if (warmup_s < 0.0 || !(duration_s > warmup_s)) {
    throw std::invalid_argument("config: need duration > warmup >= 0");
  }
  for (const SweepPoint& p : sweep) {
    if (p.lambda_d < 0.0 || p.lambda_v < 0.0) {
      throw std::invalid_argument("config: negative arrival rate in sweep");
    }
  }
}

namespace {

const dp::NodeId kLte{dp::NodeKind::LteDbs, 0};
const dp::NodeId kWlan{dp::NodeKind::WlanDbs, 0};

std::vector<slicing::SliceDescriptor> two_slice_layout() {
  slicing::SliceDescriptor video;
  video.slice_id = "video";
  video.service_class = slicing::ServiceClass::RealTimeVideo;
  video.members = {{kLte, 0.3}};
  slicing::SliceDescriptor data;
  data.slice_id = "data";
  data.service_class = slicing::ServiceClass::BestEffortData;
  data.members = {{kLte, 0.7}, {kWlan, 1.0}};
  return {video, data};
}

}  // namespace

ScenarioConfig default_scenario(int which) {
  ScenarioConfig cfg;
  cfg.scenario = which;
  cfg.seeds = {1, 2, 3, 4, 5};
  if (which == 1) {
    for (double ld : {0.02, 0.05, 0.08, 0.11, 0.14, 0.17, 0.20}) {
      cfg.sweep.push_back({ld, 0.0});
    }
    cfg.policies = {Policy::SdnHeuristic, Policy::LegacyWlanFirst,
                    Policy::LegacySignalBased};
    return cfg;
  }
  if (which == 2) {
    // Data-rate sweep at fixed video load, then video-rate sweep at fixed
    // data load; the (0.1, 0.1) point belongs to both.
    for (double ld : {0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6}) {
      cfg.sweep.push_back({ld, 0.1});
    }
    for (double lv : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
      cfg.sweep.push_back({0.1, lv});
    }
    cfg.policies = {Policy::SdnHeuristic};
    cfg.slices = two_slice_layout();
    return cfg;
  }
  throw std::invalid_argument("default_scenario: scenario must be 1 or 2");
}

namespace {

dp::NodeId parse_node(const std::string& name) {
  if (name == "lte") return kLte;
  if (name == "wlan") return kWlan;
  throw std::invalid_argument("config: unknown slice member node '" + name + "'");
}

void overlay_radio(radio::RadioParams& r, const YAML::Node& n) {
  if (n["lte_tx_power_dbm"]) r.lte_tx_power_dbm = n["lte_tx_power_dbm"].as<double>();
  if (n["wlan_tx_power_dbm"]) r.wlan_tx_power_dbm = n["wlan_tx_power_dbm"].as<double>();
  if (n["ue_tx_power_dbm"]) r.ue_tx_power_dbm = n["ue_tx_power_dbm"].as<double>();
  if (n["lte_cell_capacity_mbps"])
    r.lte_cell_capacity_mbps = n["lte_cell_capacity_mbps"].as<double>();
  if (n["lte_per_user_rate_mbps"])
    r.lte_per_user_rate_mbps = n["lte_per_user_rate_mbps"].as<double>();
  if (n["wlan_phy_rate_mbps"]) r.wlan_phy_rate_mbps = n["wlan_phy_rate_mbps"].as<double>();
  if (n["wlan_mac_efficiency"]) r.wlan_mac_efficiency = n["wlan_mac_efficiency"].as<double>();
  if (n["video_rate_mbps"]) r.video_rate_mbps = n["video_rate_mbps"].as<double>();
}

void overlay_topology(Topology& t, const YAML::Node& n) {
  if (n["lte_x_m"]) t.lte_pos.x_m = n["lte_x_m"].as<double>();
  if (n["lte_y_m"]) t.lte_pos.y_m = n["lte_y_m"].as<double>();
  if (n["lte_range_m"]) t.lte_range_m = n["lte_range_m"].as<double>();
  if (n["wlan_x_m"]) t.wlan_pos.x_m = n["wlan_x_m"].as<double>();
  if (n["wlan_y_m"]) t.wlan_pos.y_m = n["wlan_y_m"].as<double>();
  if (n["wlan_range_m"]) t.wlan_range_m = n["wlan_range_m"].as<double>();
}

void overlay_control(ctrl::ControllerConfig& c, const YAML::Node& n) {
  if (n["hop_delay_s"]) c.hop_delay_s = n["hop_delay_s"].as<double>();
  if (n["auth_delay_s"]) c.auth_delay_s = n["auth_delay_s"].as<double>();
  if (n["wlan_threshold_users"])
    c.wlan_threshold_users = n["wlan_threshold_users"].as<int>();
  if (n["hysteresis_db"]) c.hysteresis_db = n["hysteresis_db"].as<double>();
}

void overlay_latency(workload::LatencyParams& l, const YAML::Node& n) {
  if (n["wired_hop_s"]) l.wired_hop_s = n["wired_hop_s"].as<double>();
  if (n["lte_access_s"]) l.lte_access_s = n["lte_access_s"].as<double>();
  if (n["packet_bits"]) l.packet_bits = n["packet_bits"].as<double>();
}

}  // namespace

ScenarioConfig load_config_file(const std::string& path) {
  YAML::Node root = YAML::LoadFile(path);
  const int which = root["scenario"] ? root["scenario"].as<int>() : 1;
  ScenarioConfig cfg = default_scenario(which);

  if (root["seeds"]) {
    cfg.seeds.clear();
    for (const auto& s : root["seeds"]) cfg.seeds.push_back(s.as<std::uint64_t>());
  }
  if (root["duration_s"]) cfg.duration_s = root["duration_s"].as<double>();
  if (root["warmup_s"]) cfg.warmup_s = root["warmup_s"].as<double>();
  if (root["mean_hold_s"]) cfg.mean_hold_s = root["mean_hold_s"].as<double>();
  if (root["out_dir"]) cfg.out_dir = root["out_dir"].as<std::string>();
  if (root["plots"]) cfg.plots = root["plots"].as<bool>();

  if (root["policies"]) {
    cfg.policies.clear();
    for (const auto& p : root["policies"]) {
      const auto policy = policy_from_string(p.as<std::string>());
      if (!policy.has_value()) {
        throw std::invalid_argument("config: unknown policy '" + p.as<std::string>() + "'");
      }
      cfg.policies.push_back(*policy);
    }
  }

  if (root["lambda_d_sweep"] || root["lambda_v_sweep"]) {
    cfg.sweep.clear();
    const double fixed_lv =
        root["fixed_lambda_v"] ? root["fixed_lambda_v"].as<double>() : 0.0;
    const double fixed_ld =
        root["fixed_lambda_d"] ? root["fixed_lambda_d"].as<double>() : 0.0;
    if (root["lambda_d_sweep"]) {
      for (const auto& v : root["lambda_d_sweep"]) {
        cfg.sweep.push_back({v.as<double>(), fixed_lv});
      }
    }
    if (root["lambda_v_sweep"]) {
      for (const auto& v : root["lambda_v_sweep"]) {
        cfg.sweep.push_back({fixed_ld, v.as<double>()});
      }
    }
  }

  if (root["radio"]) overlay_radio(cfg.radio, root["radio"]);
  if (root["topology"]) overlay_topology(cfg.topology, root["topology"]);
  if (root["control"]) overlay_control(cfg.controller, root["control"]);
  if (root["latency"]) overlay_latency(cfg.latency, root["latency"]);

  if (root["slices"]) {
    cfg.slices.clear();
    for (const auto& s : root["slices"]) {
      slicing::SliceDescriptor desc;
      desc.slice_id = s["id"].as<std::string>();
      const auto service = s["service"].as<std::string>();
      if (service == "video") {
        desc.service_class = slicing::ServiceClass::RealTimeVideo;
      } else if (service == "data") {
        desc.service_class = slicing::ServiceClass::BestEffortData;
      } else {
        throw std::invalid_argument("config: slice service must be video or data");
      }
      for (const auto& m : s["members"]) {
        desc.members[parse_node(m.first.as<std::string>())] = m.second.as<double>();
      }
      cfg.slices.push_back(desc);
    }
  }

  cfg.validate();
  return cfg;
}

SimConfig make_sim_config(const ScenarioConfig& cfg, SweepPoint point,
                          std::uint64_t seed, Policy policy) {
  SimConfig sim;
  sim.radio = cfg.radio;
  sim.topology = cfg.topology;
  sim.controller = cfg.controller;
  sim.latency = cfg.latency;
  sim.policy = policy;
  sim.slices = cfg.slices;
  sim.workload.lambda_d = point.lambda_d;
  sim.workload.lambda_v = point.lambda_v;
  sim.workload.mean_hold_s = cfg.mean_hold_s;
  sim.workload.duration_s = cfg.duration_s;
  sim.workload.warmup_s = cfg.warmup_s;
  sim.workload.seed = seed;
  return sim;
}

std::vector<CsvRow> run_scenario(const ScenarioConfig& cfg, std::ostream* trace_stream) {
  cfg.validate();
  const bool has_video_slice = [&] {
    for (const auto& s : cfg.slices) {
      if (s.service_class == slicing::ServiceClass::RealTimeVideo) return true;
    }
    return false;
  }();

  std::vector<CsvRow> rows;
  for (const SweepPoint& point : cfg.sweep) {
    for (std::uint64_t seed : cfg.seeds) {
      for (Policy policy : cfg.policies) {
        Simulation sim(make_sim_config(cfg, point, seed, policy), trace_stream);
        const workload::MetricsReport rep = sim.run();

        CsvRow data;
        data.scenario = cfg.scenario;
        data.policy = to_string(policy);
        data.lambda_d = point.lambda_d;
        data.lambda_v = point.lambda_v;
        data.seed = seed;
        data.slice = "data";
        data.throughput_mbps = rep.data_throughput_mbps;
        data.mean_latency_s = rep.mean_latency_s;
        data.blocking_prob = rep.blocking_data;
        data.arrivals = rep.arrivals_data;
        data.admitted = rep.admitted_data;
        data.blocked = rep.blocked_data;
        rows.push_back(data);

        if (has_video_slice) {
          CsvRow video = data;
          video.slice = "video";
          video.throughput_mbps = rep.video_throughput_mbps;
          video.mean_latency_s = std::numeric_limits<double>::quiet_NaN();
          video.blocking_prob = rep.blocking_video;
          video.arrivals = rep.arrivals_video;
          video.admitted = rep.admitted_video;
          video.blocked = rep.blocked_video;
          rows.push_back(video);
        }
      }
    }
  }
  return rows;
}

void write_csv(const std::vector<CsvRow>& rows, std::ostream& os) {
  os << kCsvHeader << '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  for (const CsvRow& r : rows) {
    os << r.scenario << ',' << r.policy << ',' << num(r.lambda_d) << ','
       << num(r.lambda_v) << ',' << r.seed << ',' << r.slice << ','
       << num(r.throughput_mbps) << ',' << num(r.mean_latency_s) << ','
       << num(r.blocking_prob) << ',' << r.arrivals << ',' << r.admitted << ','
       << r.blocked << '\n';
  }
}

}  // namespace mrsdn::harness
