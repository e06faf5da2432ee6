#ifndef MRSDN_SIMULATION_HPP
#define MRSDN_SIMULATION_HPP

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mrsdn/controller.hpp"
#include "mrsdn/dataplane.hpp"
#include "mrsdn/event_queue.hpp"
#include "mrsdn/metrics.hpp"
#include "mrsdn/radio.hpp"
#include "mrsdn/slicing.hpp"
#include "mrsdn/trace.hpp"
#include "mrsdn/workload.hpp"

namespace mrsdn::harness {

enum class Policy { SdnHeuristic, LegacyWlanFirst, LegacySignalBased };

const char* to_string(Policy policy);
std::optional<Policy> policy_from_string(const std::string& name);

struct Topology {
  dp::Position lte_pos{0.0, 0.0};
  double lte_range_m = 1500.0;
  dp::Position wlan_pos{200.0, 0.0};
  double wlan_range_m = 100.0;
};

struct SimConfig {
  radio::RadioParams radio;
  Topology topology;
  ctrl::ControllerConfig controller;
  workload::WorkloadConfig workload;
  workload::LatencyParams latency;
  Policy policy = Policy::SdnHeuristic;
  std::vector<slicing::SliceDescriptor> slices;  // empty: single data slice
};

/// Legacy RAT selection without a global load view: WLAN-first whenever in
/// WLAN coverage, or strongest received power.
std::optional<dp::NodeId> baseline_legacy_select(
    Policy policy, dp::Position ue_pos, const radio::RadioParams& radio,
    const std::vector<dp::DataPlaneNode*>& nodes);

/// One simulation run: topology, slice setup, Poisson workload, controller
/// call flows, metric accounting. Owns all state; runs are independent.
class Simulation : public ctrl::MessageTransport, public ctrl::ControllerObserver {
 public:
  explicit Simulation(const SimConfig& cfg, std::ostream* trace_stream = nullptr,
                      bool retain_trace = false);
  ~Simulation() override;

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Generate the configured workload, run to the configured duration, and
  /// report metrics over [warmup, duration].
  workload::MetricsReport run();

  // --- call-flow test drivers -------------------------------------------
  /// Schedule a single scripted arrival; `forced_node` bypasses the
  /// configured selection policy. Returns the UE id.
  int add_manual_arrival(double t, slicing::ServiceClass service, dp::Position pos,
                         double hold_s,
                         std::optional<dp::NodeId> forced_node = std::nullopt);
  /// Deliver a measurement report from the UE at time t.
  void inject_measurement_report(double t, int ue_id,
                                 std::vector<std::pair<dp::NodeId, double>> readings);
  void run_until(double t);

  // --- introspection ----------------------------------------------------
  sim::EventQueue& queue() { return queue_; }
  ctrl::Controller& controller() { return *controller_; }
  slicing::SliceManager& slices() { return slices_; }
  ctrl::TraceLogger& trace() { return trace_; }
  workload::MetricsCollector& metrics() { return *metrics_; }
  dp::DataPlaneNode& lte() { return *lte_; }
  dp::DataPlaneNode& wlan() { return *wlan_; }
  dp::DataPlaneNode& gateway() { return *gw_; }
  const SimConfig& config() const { return cfg_; }

  bool ue_active(int ue_id) const;
  std::optional<dp::NodeId> ue_serving(int ue_id) const;
  std::uint64_t handovers_completed() const { return handovers_completed_; }

  // MessageTransport: controller egress, delivered via the event queue.
  void send(const ctrl::ControlMessage& msg) override;

  // ControllerObserver
  void on_admission(int ue_id, slicing::ServiceClass service, bool accepted) override;
  void on_flow_installed(const ctrl::FlowSpec& flow) override;
  void on_flow_released(const ctrl::FlowSpec& flow) override;
  void on_handover_complete(int ue_id, dp::NodeId from, dp::NodeId to,
                            bool success) override;

 private:
  struct Ue {
    int id = -1;
    slicing::ServiceClass service = slicing::ServiceClass::BestEffortData;
    dp::Position pos;
    enum class State { Associating, Active, HandingOver, Blocked, Departed } state =
        State::Associating;
    std::optional<dp::NodeId> serving;
    std::optional<dp::NodeId> pending;  // association target in flight
  };

  void on_arrival_with_id(const workload::Arrival& arrival, int id,
                          std::optional<dp::NodeId> forced_node);
  void on_departure(int ue_id);
  bool ue_alive(int ue_id) const;
  void on_ue_message(const ctrl::ControlMessage& msg);
  void deliver_to_node(const ctrl::ControlMessage& msg);
  void ue_send_control(int ue_id, dp::NodeId via, ctrl::ControlMessage inner);
  void start_flow(Ue& ue, dp::NodeId at_node);
  std::optional<dp::NodeId> select_node(slicing::ServiceClass service, dp::Position pos);

  SimConfig cfg_;
  sim::EventQueue queue_;
  slicing::SliceManager slices_;
  ctrl::TraceLogger trace_;
  std::unique_ptr<dp::DataPlaneNode> lte_, wlan_, gw_;
  std::unique_ptr<ctrl::Controller> controller_;
  std::unique_ptr<workload::MetricsCollector> metrics_;
  std::map<int, Ue> ues_;
  int next_ue_id_ = 1;
  std::uint64_t handovers_completed_ = 0;
};

}  // namespace mrsdn::harness

#endif  // MRSDN_SIMULATION_HPP
