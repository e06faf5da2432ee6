#ifndef MRSDN_MESSAGES_HPP
#define MRSDN_MESSAGES_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mrsdn/dataplane.hpp"
#include "mrsdn/slicing.hpp"

namespace mrsdn::ctrl {

enum class MsgKind {
  RrcConnectionRequest,
  RrcConnectionSetup,
  AttachRequest,
  AttachAccept,
  AdmissionRequest,
  AdmissionResponse,
  MeasurementReport,
  HandoverCommand,
  PacketIn,
  FlowMod,
  BearerSetup,
  WlanAssocRequest,
  WlanAssocResponse,
};

const char* to_string(MsgKind kind);

/// RAT-specific message kinds never cross the RAF -> FCF boundary.
bool is_rat_specific(MsgKind kind);

struct Endpoint {
  enum class Type { Ue, Node, Controller } type = Type::Controller;
  int ue_id = -1;
  dp::NodeId node;

  static Endpoint ue(int id) { return {Type::Ue, id, {}}; }
  static Endpoint of_node(dp::NodeId n) { return {Type::Node, -1, n}; }
  static Endpoint controller() { return {}; }
};

std::string to_string(const Endpoint& ep);

struct FlowModOp {
  enum class Op { Install, Remove } op = Op::Install;
  dp::FlowRule rule;
  int remove_rule_id = -1;
};

/// One control-plane message of the closed call-flow set. Payload fields
/// are kind-specific; unused ones stay at defaults.
struct ControlMessage {
  MsgKind kind = MsgKind::PacketIn;
  Endpoint src;
  Endpoint dst;
  int ue_id = -1;

  // PacketIn: originating node plus the encapsulated UE control message
  // (null for a data-plane table-miss punt).
  dp::NodeId origin_node;
  std::shared_ptr<ControlMessage> inner;

  int flow_id = -1;
  slicing::ServiceClass qos = slicing::ServiceClass::BestEffortData;
  double rate_mbps = 0.0;
  bool accepted = false;                 // setup/response messages
  bool handover = false;                 // association is part of a handover
  dp::NodeId target_node;                // HandoverCommand
  FlowModOp flow_mod;                    // FlowMod
  dp::Bearer bearer;                     // BearerSetup
  std::vector<std::pair<dp::NodeId, double>> measurements_dbm;  // MeasurementReport
};

/// Transport between controller, data-plane nodes, and UEs. Implemented by
/// the simulation harness; delivery is delayed per hop via the event queue.
class MessageTransport {
 public:
  virtual ~MessageTransport() = default;
  virtual void send(const ControlMessage& msg) = 0;
};

}  // namespace mrsdn::ctrl

#endif  // MRSDN_MESSAGES_HPP
