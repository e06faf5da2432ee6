#ifndef MRSDN_CONTROLLER_HPP
#define MRSDN_CONTROLLER_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrsdn/dataplane.hpp"
#include "mrsdn/event_queue.hpp"
#include "mrsdn/messages.hpp"
#include "mrsdn/radio.hpp"
#include "mrsdn/slicing.hpp"
#include "mrsdn/trace.hpp"

namespace mrsdn::ctrl {

/// RAT-agnostic flow description kept in the UE context and handed to the
/// data plane as match/action rules.
struct FlowSpec {
  int flow_id = -1;
  int ue_id = -1;
  slicing::ServiceClass qos = slicing::ServiceClass::BestEffortData;
  double rate_mbps = 0.0;  // granted nominal rate; 0 = elastic WLAN share
  std::vector<dp::NodeId> path;
};

enum class AttachPhase { AssociationPending, Associated, Attached };

/// Controller-side per-UE state: the FCF's unified attribute list plus the
/// UE Manager context. Survives handover; `authenticated` flips to true at
/// most once per UE lifetime.
struct UeContext {
  int ue_id = -1;
  slicing::ServiceClass service = slicing::ServiceClass::BestEffortData;
  dp::Position position;
  bool authenticated = false;
  std::string slice_id;
  std::map<dp::NodeId, AttachPhase> rat_attachments;
  std::vector<FlowSpec> flows;
  std::map<dp::NodeId, double> last_measurements_dbm;

  std::optional<dp::NodeId> serving;
  // handover bookkeeping: source node to tear down once the target path is up
  std::optional<dp::NodeId> handover_source;
};

// --- RAT-agnostic internal interface (RAF -> FCF -> ACPF) ---------------
// These structs are the only things that cross the RAF/FCF boundary; no
// ControlMessage (and so no RAT-specific kind) ever reaches FCF or ACPF.

struct AdmissionRequestInfo {
  int ue_id = -1;
  slicing::ServiceClass qos = slicing::ServiceClass::BestEffortData;
  double rate_mbps = 0.0;
  dp::NodeId node;
  int flow_id = -1;
  bool handover = false;
};

struct AdmissionDecision {
  bool accepted = false;
  std::string slice_id;
};

/// Parameters a RAF derives from a generic FlowSpec for its RAT.
struct RatFlowParams {
  dp::Rat rat = dp::Rat::Lte;
  dp::BearerKind bearer_kind = dp::BearerKind::Default;  // LTE
  double rate_mbps = 0.0;
  double airtime_share = 0.0;  // WLAN
};

struct ControllerConfig {
  double hop_delay_s = 0.001;
  double auth_delay_s = 0.010;
  int wlan_threshold_users = 5;  // N_w of the load-aware heuristic
  double hysteresis_db = 3.0;    // handover hysteresis H
  std::string data_slice = "data";
  std::string video_slice = "video";
};

/// Events the harness observes (admission outcomes, flow installs,
/// handover completion) for metric accounting.
class ControllerObserver {
 public:
  virtual ~ControllerObserver() = default;
  virtual void on_admission(int /*ue_id*/, slicing::ServiceClass, bool /*accepted*/) {}
  virtual void on_flow_installed(const FlowSpec&) {}
  virtual void on_flow_released(const FlowSpec&) {}
  virtual void on_handover_complete(int /*ue_id*/, dp::NodeId /*from*/,
                                    dp::NodeId /*to*/, bool /*success*/) {}
};

/// The layered multi-RAT controller: DCIF (de)encapsulation and node
/// configuration, per-RAT RAFs, the RAT-agnostic FCF with UE Manager, and
/// ACPF applications (admission control, RAT selection, mobility).
class Controller {
 public:
  Controller(sim::EventQueue& queue, slicing::SliceManager& slices,
             TraceLogger& trace, MessageTransport& transport,
             radio::RadioParams radio, ControllerConfig config);

  void set_observer(ControllerObserver* obs) { observer_ = obs; }

  /// Register a data-plane node under controller management.
  void register_node(dp::DataPlaneNode* node);
  dp::DataPlaneNode* node(dp::NodeId id) const;
  const std::vector<dp::DataPlaneNode*>& nodes() const { return nodes_; }

  // --- DCIF -------------------------------------------------------------
  /// Entry point for everything arriving from the data plane. UE control
  /// messages are dispatched to the RAF of the origin node's RAT; data
  /// table-miss punts go to FCF classification.
  void dcif_ingress(const ControlMessage& envelope);

  std::uint64_t protocol_errors() const { return protocol_errors_; }
  std::uint64_t order_errors() const { return order_errors_; }

  // --- RAF --------------------------------------------------------------
  void raf_handle_association(dp::Rat rat, const ControlMessage& msg);
  void raf_complete_attach(const ControlMessage& attach_req);
  /// Translate a generic flow config into RAT-specific parameters. Total
  /// over qos classes; throws for video on WLAN (video is LTE-only).
  RatFlowParams raf_translate(const FlowSpec& flow, dp::Rat rat) const;

  // --- FCF --------------------------------------------------------------
  /// Table-miss driven flow setup: pick a GW, install rules on the serving
  /// dBS and the GW, register the FlowSpec. Idempotent per (ue, flow).
  void fcf_setup_flow(int ue_id, slicing::ServiceClass qos, dp::NodeId at_node);

  UeContext* ue_context(int ue_id);
  const std::map<int, UeContext>& contexts() const { return contexts_; }

  // --- ACPF -------------------------------------------------------------
  AdmissionDecision acpf_admission(const AdmissionRequestInfo& req);
  /// Load-aware RAT selection: WLAN below the user threshold, then LTE
  /// until the data-slice capacity is reached, then WLAN overflow.
  std::optional<dp::NodeId> acpf_select_rat(slicing::ServiceClass qos,
                                            dp::Position ue_pos) const;
  std::optional<dp::NodeId> acpf_mobility(const ControlMessage& report);

  /// Count of active data UEs currently served by the given node.
  int data_user_count(dp::NodeId node) const;

  /// UE lifecycle entry points driven by the harness.
  void begin_association(int ue_id, slicing::ServiceClass service, dp::Position pos);
  void ue_departure(int ue_id);

  double rx_power_at(dp::NodeId node, dp::Position ue_pos) const;

  const ControllerConfig& config() const { return config_; }
  const radio::RadioParams& radio_params() const { return radio_; }

 private:
  void send(ControlMessage msg);           // log + hand to transport
  void log_msg(const ControlMessage& msg); // controller-side trace record
  void emit_association_setup(UeContext& ctx, dp::Rat rat, dp::NodeId node,
                              bool accepted);
  void finish_attach(UeContext& ctx, dp::NodeId node);
  void complete_handover(UeContext& ctx, dp::NodeId target);
  void teardown_at_node(UeContext& ctx, dp::NodeId node, bool release_grant);
  std::string slice_for(slicing::ServiceClass qos) const;
  double nominal_rate(slicing::ServiceClass qos, dp::Rat rat) const;

  sim::EventQueue& queue_;
  slicing::SliceManager& slices_;
  TraceLogger& trace_;
  MessageTransport& transport_;
  radio::RadioParams radio_;
  ControllerConfig config_;
  ControllerObserver* observer_ = nullptr;

  std::vector<dp::DataPlaneNode*> nodes_;
  std::map<int, UeContext> contexts_;
  std::uint64_t protocol_errors_ = 0;
  std::uint64_t order_errors_ = 0;
};

}  // namespace mrsdn::ctrl

#endif  // MRSDN_CONTROLLER_HPP
