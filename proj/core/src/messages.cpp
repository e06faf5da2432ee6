#include "mrsdn/messages.hpp"

namespace mrsdn::ctrl {

const char* to_string(MsgKind kind) {
  switch (kind) {
    case MsgKind::RrcConnectionRequest: return "RrcConnectionRequest";
    case MsgKind::RrcConnectionSetup: return "RrcConnectionSetup";
    case MsgKind::AttachRequest: return "AttachRequest";
    case MsgKind::AttachAccept: return "AttachAccept";
    case MsgKind::AdmissionRequest: return "AdmissionRequest";
    case MsgKind::AdmissionResponse: return "AdmissionResponse";
    case MsgKind::MeasurementReport: return "MeasurementReport";
    case MsgKind::HandoverCommand: return "HandoverCommand";
    case MsgKind::PacketIn: return "PacketIn";
    case MsgKind::FlowMod: return "FlowMod";
    case MsgKind::BearerSetup: return "BearerSetup";
    case MsgKind::WlanAssocRequest: return "WlanAssocRequest";
    case MsgKind::WlanAssocResponse: return "WlanAssocResponse";
  }
  return "?";
}

bool is_rat_specific(MsgKind kind) {
  switch (kind) {
    case MsgKind::RrcConnectionRequest:
    case MsgKind::RrcConnectionSetup:
    case MsgKind::WlanAssocRequest:
    case MsgKind::WlanAssocResponse:
      return true;
    default:
      return false;
  }
}

std::string to_string(const Endpoint& ep) {
  switch (ep.type) {
    case Endpoint::Type::Ue: return "UE" + std::to_string(ep.ue_id);
    case Endpoint::Type::Node: return dp::to_string(ep.node);
    case Endpoint::Type::Controller: return "CTRL";
  }
  return "?";
}

}  // namespace mrsdn::ctrl
