#ifndef MRSDN_DATAPLANE_HPP
#define MRSDN_DATAPLANE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mrsdn::dp {

enum class NodeKind { LteDbs, WlanDbs, Gateway };
enum class Rat { Lte, Wlan };
enum class Direction { Uplink, Downlink };

struct NodeId {
  NodeKind kind = NodeKind::LteDbs;
  int index = 0;
  auto operator<=>(const NodeId&) const = default;
};

std::string to_string(NodeId id);

struct Position {
  double x_m = 0.0;
  double y_m = 0.0;
};

double distance_m(Position a, Position b);

struct FlowMatch {
  int ue_id = -1;
  int flow_id = -1;
  Direction dir = Direction::Uplink;
  auto operator<=>(const FlowMatch&) const = default;
};

enum class ActionKind { ForwardTo, Deliver, PuntToController };

struct FlowAction {
  ActionKind kind = ActionKind::PuntToController;
  NodeId next;  // valid for ForwardTo only
};

struct FlowRule {
  int rule_id = -1;  // assigned at install
  FlowMatch match;
  FlowAction action;
  int priority = 0;
};

enum class BearerKind { Signaling, Default, Dedicated };

const char* to_string(BearerKind kind);

/// Logical pipe between a UE and a node (Signaling/Default) or between a
/// dBS and a GW (Dedicated). Rate 0 for signaling.
struct Bearer {
  int bearer_id = -1;
  int ue_id = -1;
  BearerKind kind = BearerKind::Signaling;
  NodeId node;        // the dBS end
  NodeId remote;      // GW end for Dedicated bearers
  double rate_mbps = 0.0;
};

/// Why a node state mutation happened. A dBS holds no control logic, so
/// every mutation must be driven by a controller message or by a UE radio
/// event; mutation records make that replayable by tests.
enum class MutationCause { ControllerMessage, UeRadioEvent };

struct MutationRecord {
  double time = 0.0;
  std::string what;
  MutationCause cause = MutationCause::ControllerMessage;
};

struct FlowStartOutcome {
  enum class Kind { Forwarded, Delivered, PuntedToController, Dropped } kind;
  FlowAction action;  // the matched action when not Dropped/Punted
};

/// A pure forwarding node (LTE dBS, WLAN dBS, or GW): flow table, bearers,
/// attachment set. No admission, mobility, or RRM decisions live here.
class DataPlaneNode {
 public:
  DataPlaneNode(NodeId id, Position pos, double range_m)
      : id_(id), pos_(pos), range_m_(range_m) {}

  NodeId id() const { return id_; }
  Position position() const { return pos_; }
  double range_m() const { return range_m_; }
  Rat rat() const { return id_.kind == NodeKind::WlanDbs ? Rat::Wlan : Rat::Lte; }

  bool in_coverage(Position ue_pos) const {
    return distance_m(pos_, ue_pos) <= range_m_;
  }

  void attach_radio(int ue_id, Position ue_pos, double time);
  void detach_radio(int ue_id, double time);
  bool attached(int ue_id) const;
  std::size_t attached_count() const { return attached_.size(); }

  /// Throws on duplicate (match, priority). Returns the assigned rule id.
  int install_flow_rule(FlowRule rule, double time);
  void remove_rule(int rule_id, double time);
  void remove_rules_for_ue(int ue_id, double time);
  const std::vector<FlowRule>& flow_table() const { return rules_; }

  int create_bearer(Bearer bearer, double time);
  void remove_bearer(int bearer_id, double time);
  const std::vector<Bearer>& bearers() const { return bearers_; }
  bool has_bearer(int ue_id, BearerKind kind) const;

  /// First packet of a flow: follow the highest-priority matching rule, or
  /// punt to the controller on a table miss. Detached UEs are dropped.
  FlowStartOutcome handle_flow_start(int ue_id, int flow_id, Direction dir) const;

  /// True when no rule or bearer references the UE and it is not attached.
  bool clean_of_ue(int ue_id) const;

  const std::vector<MutationRecord>& mutations() const { return mutations_; }

 private:
  const FlowRule* best_match(const FlowMatch& m) const;

  NodeId id_;
  Position pos_;
  double range_m_;
  std::vector<int> attached_;
  std::vector<FlowRule> rules_;
  std::vector<Bearer> bearers_;
  std::vector<MutationRecord> mutations_;
  int next_rule_id_ = 1;
  int next_bearer_id_ = 1;
};

}  // namespace mrsdn::dp

#endif  // MRSDN_DATAPLANE_HPP
