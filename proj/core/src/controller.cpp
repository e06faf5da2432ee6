#include "mrsdn/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrsdn::ctrl {

Controller::Controller(sim::EventQueue& queue, slicing::SliceManager& slices,
                       TraceLogger& trace, MessageTransport& transport,
                       radio::RadioParams radio, ControllerConfig config)
    : queue_(queue),
      slices_(slices),
      trace_(trace),
      transport_(transport),
      radio_(radio),
      config_(std::move(config)) {
  radio_.validate();
}

void Controller::register_node(dp::DataPlaneNode* node) {
  nodes_.push_back(node);
}

dp::DataPlaneNode* Controller::node(dp::NodeId id) const {
  for (dp::DataPlaneNode* n : nodes_) {
    if (n->id() == id) return n;
  }
  return nullptr;
}

std::string Controller::slice_for(slicing::ServiceClass qos) const {
  return qos == slicing::ServiceClass::RealTimeVideo ? config_.video_slice
                                                     : config_.data_slice;
}

double Controller::nominal_rate(slicing::ServiceClass qos, dp::Rat rat) const {
  if (qos == slicing::ServiceClass::RealTimeVideo) return radio_.video_rate_mbps;
  // Best-effort data: fixed per-user rate on LTE, elastic share on WLAN.
  return rat == dp::Rat::Lte ? radio_.lte_per_user_rate_mbps : 0.0;
}

double Controller::rx_power_at(dp::NodeId id, dp::Position ue_pos) const {
  const dp::DataPlaneNode* n = node(id);
  if (n == nullptr) throw std::invalid_argument("rx_power_at: unknown node");
  const double tx = n->rat() == dp::Rat::Lte ? radio_.lte_tx_power_dbm
                                             : radio_.wlan_tx_power_dbm;
  const double d_km = std::max(dp::distance_m(n->position(), ue_pos), 1.0) / 1000.0;
  return radio::rx_power_dbm(tx, d_km);
}

void Controller::log_msg(const ControlMessage& msg) {
  std::string kind = to_string(msg.kind);
  if (msg.kind == MsgKind::BearerSetup) {
    kind += std::string("-") + dp::to_string(msg.bearer.kind);
  }
  trace_.log(queue_.now(), kind, to_string(msg.src), to_string(msg.dst), msg.ue_id);
}

void Controller::send(ControlMessage msg) {
  log_msg(msg);
  transport_.send(msg);
}

// --- DCIF ----------------------------------------------------------------

void Controller::dcif_ingress(const ControlMessage& envelope) {
  if (envelope.kind != MsgKind::PacketIn) {
    ++protocol_errors_;
    return;
  }
  dp::DataPlaneNode* origin = node(envelope.origin_node);
  if (origin == nullptr) {
    ++protocol_errors_;  // unknown node of origin: drop
    return;
  }
  if (envelope.inner == nullptr) {
    // Data-plane table miss: classify via the UE context and set the flow up.
    trace_.log(queue_.now(), "PacketIn", dp::to_string(envelope.origin_node),
               "CTRL", envelope.ue_id);
    UeContext* ctx = ue_context(envelope.ue_id);
    if (ctx == nullptr) {
      ++protocol_errors_;
      return;
    }
    fcf_setup_flow(envelope.ue_id, ctx->service, envelope.origin_node);
    return;
  }

  const ControlMessage& inner = *envelope.inner;
  ControlMessage logged = inner;
  logged.origin_node = envelope.origin_node;
  log_msg(logged);

  switch (inner.kind) {
    case MsgKind::RrcConnectionRequest:
    case MsgKind::WlanAssocRequest:
      raf_handle_association(origin->rat(), logged);
      break;
    case MsgKind::AttachRequest:
      raf_complete_attach(logged);
      break;
    case MsgKind::MeasurementReport: {
      auto target = acpf_mobility(logged);
      if (target.has_value()) {
        ControlMessage cmd;
        cmd.kind = MsgKind::HandoverCommand;
        cmd.src = Endpoint::controller();
        cmd.dst = Endpoint::ue(inner.ue_id);
        cmd.ue_id = inner.ue_id;
        cmd.target_node = *target;
        send(cmd);
      }
      break;
    }
    default:
      ++protocol_errors_;
      break;
  }
}

// --- RAF -----------------------------------------------------------------

void Controller::begin_association(int ue_id, slicing::ServiceClass service,
                                   dp::Position pos) {
  auto [it, inserted] = contexts_.try_emplace(ue_id);
  UeContext& ctx = it->second;
  ctx.ue_id = ue_id;
  ctx.service = service;
  ctx.position = pos;
}

void Controller::raf_handle_association(dp::Rat rat, const ControlMessage& msg) {
  const bool lte_assoc = msg.kind == MsgKind::RrcConnectionRequest;
  const bool wlan_assoc = msg.kind == MsgKind::WlanAssocRequest;
  if ((rat == dp::Rat::Lte && !lte_assoc) || (rat == dp::Rat::Wlan && !wlan_assoc) ||
      (!lte_assoc && !wlan_assoc)) {
    ++protocol_errors_;  // malformed for this RAT
    return;
  }
  const dp::NodeId node_id = msg.origin_node;
  auto [it, inserted] = contexts_.try_emplace(msg.ue_id);
  UeContext& ctx = it->second;
  if (inserted) {
    ctx.ue_id = msg.ue_id;
    ctx.service = msg.qos;
  }
  ctx.rat_attachments[node_id] = AttachPhase::AssociationPending;
  if (msg.handover && ctx.serving.has_value()) {
    ctx.handover_source = ctx.serving;
  }

  AdmissionRequestInfo req;
  req.ue_id = ctx.ue_id;
  req.qos = ctx.service;
  req.rate_mbps = nominal_rate(ctx.service, rat);
  req.node = node_id;
  req.flow_id = msg.flow_id >= 0 ? msg.flow_id : ctx.ue_id;
  req.handover = msg.handover;

  // RAT independent admission exchange (RAF -> FCF -> admission app).
  trace_.log(queue_.now(), "AdmissionRequest", "CTRL", "CTRL", req.ue_id);
  const AdmissionDecision decision = acpf_admission(req);
  trace_.log(queue_.now(), "AdmissionResponse", "CTRL", "CTRL", req.ue_id);

  if (observer_ != nullptr) {
    observer_->on_admission(ctx.ue_id, ctx.service, decision.accepted);
  }
  if (decision.accepted) ctx.slice_id = decision.slice_id;
  emit_association_setup(ctx, rat, node_id, decision.accepted);
}

void Controller::emit_association_setup(UeContext& ctx, dp::Rat rat,
                                        dp::NodeId node_id, bool accepted) {
  ControlMessage resp;
  resp.kind = rat == dp::Rat::Lte ? MsgKind::RrcConnectionSetup
                                  : MsgKind::WlanAssocResponse;
  resp.src = Endpoint::controller();
  resp.dst = Endpoint::ue(ctx.ue_id);
  resp.ue_id = ctx.ue_id;
  resp.origin_node = node_id;
  resp.accepted = accepted;

  if (!accepted) {
    ctx.rat_attachments.erase(node_id);
    send(resp);
    if (ctx.handover_source.has_value()) {
      // Aborted handover: UE stays at the source, nothing to undo.
      if (observer_ != nullptr) {
        observer_->on_handover_complete(ctx.ue_id, *ctx.handover_source, node_id, false);
      }
      ctx.handover_source.reset();
    } else if (!ctx.serving.has_value() && ctx.flows.empty()) {
      contexts_.erase(ctx.ue_id);
    }
    return;
  }

  ctx.rat_attachments[node_id] = AttachPhase::Associated;
  send(resp);

  // Signaling radio bearer (WLAN: association state kept under the same
  // abstraction) so the UE can reach the controller.
  ControlMessage bs;
  bs.kind = MsgKind::BearerSetup;
  bs.src = Endpoint::controller();
  bs.dst = Endpoint::of_node(node_id);
  bs.ue_id = ctx.ue_id;
  bs.bearer = dp::Bearer{-1, ctx.ue_id, dp::BearerKind::Signaling, node_id, {}, 0.0};
  send(bs);
}

void Controller::raf_complete_attach(const ControlMessage& attach_req) {
  UeContext* ctx = ue_context(attach_req.ue_id);
  const dp::NodeId node_id = attach_req.origin_node;
  dp::DataPlaneNode* n = node(node_id);
  if (ctx == nullptr || n == nullptr) {
    ++order_errors_;
    return;
  }
  auto att = ctx->rat_attachments.find(node_id);
  if (att == ctx->rat_attachments.end() || att->second != AttachPhase::Associated ||
      !n->has_bearer(ctx->ue_id, dp::BearerKind::Signaling)) {
    ++order_errors_;  // attach before RRC setup / signaling bearer
    return;
  }

  if (ctx->authenticated) {
    // Context survives handover: no re-authentication.
    finish_attach(*ctx, node_id);
    return;
  }
  const int ue_id = ctx->ue_id;
  queue_.schedule(queue_.now() + config_.auth_delay_s, sim::EventKind::MessageDelivery,
                  [this, ue_id, node_id] {
                    UeContext* c = ue_context(ue_id);
                    if (c == nullptr) return;  // departed mid-auth
                    trace_.log(queue_.now(), "AuthTransition", "CTRL", "CTRL", ue_id);
                    c->authenticated = true;
                    finish_attach(*c, node_id);
                  });
}

void Controller::finish_attach(UeContext& ctx, dp::NodeId node_id) {
  ctx.rat_attachments[node_id] = AttachPhase::Attached;
  ctx.serving = node_id;

  ControlMessage accept;
  accept.kind = MsgKind::AttachAccept;
  accept.src = Endpoint::controller();
  accept.dst = Endpoint::ue(ctx.ue_id);
  accept.ue_id = ctx.ue_id;
  accept.origin_node = node_id;
  accept.accepted = true;
  send(accept);

  const dp::DataPlaneNode* n = node(node_id);
  const double rate = ctx.service == slicing::ServiceClass::BestEffortData
                          ? nominal_rate(ctx.service, n->rat())
                          : 0.0;  // video rides a dedicated bearer
  ControlMessage bs;
  bs.kind = MsgKind::BearerSetup;
  bs.src = Endpoint::controller();
  bs.dst = Endpoint::of_node(node_id);
  bs.ue_id = ctx.ue_id;
  bs.bearer = dp::Bearer{-1, ctx.ue_id, dp::BearerKind::Default, node_id, {}, rate};
  send(bs);
}

RatFlowParams Controller::raf_translate(const FlowSpec& flow, dp::Rat rat) const {
  RatFlowParams params;
  params.rat = rat;
  if (rat == dp::Rat::Lte) {
    params.bearer_kind = flow.qos == slicing::ServiceClass::RealTimeVideo
                             ? dp::BearerKind::Dedicated
                             : dp::BearerKind::Default;
    params.rate_mbps = flow.qos == slicing::ServiceClass::RealTimeVideo
                           ? radio_.video_rate_mbps
                           : radio_.lte_per_user_rate_mbps;
    return params;
  }
  if (flow.qos == slicing::ServiceClass::RealTimeVideo) {
    throw std::invalid_argument("raf_translate: video flows are not eligible on WLAN");
  }
  params.rate_mbps = 0.0;  // elastic share of the WLAN airtime
  params.airtime_share = 1.0;
  return params;
}

// --- FCF -----------------------------------------------------------------

UeContext* Controller::ue_context(int ue_id) {
  auto it = contexts_.find(ue_id);
  return it == contexts_.end() ? nullptr : &it->second;
}

void Controller::fcf_setup_flow(int ue_id, slicing::ServiceClass qos,
                                dp::NodeId at_node) {
  UeContext* ctx = ue_context(ue_id);
  dp::DataPlaneNode* n = node(at_node);
  if (ctx == nullptr || n == nullptr || !ctx->authenticated) {
    ++order_errors_;
    return;
  }
  auto att = ctx->rat_attachments.find(at_node);
  if (att == ctx->rat_attachments.end() || att->second != AttachPhase::Attached) {
    ++order_errors_;
    return;
  }
  const int flow_id = ue_id;  // one long-lived flow per UE

  // Idempotent against a repeated table miss for the same flow.
  for (const FlowSpec& f : ctx->flows) {
    if (f.flow_id == flow_id && !f.path.empty() && f.path.front() == at_node) return;
  }

  dp::DataPlaneNode* gw = nullptr;
  for (dp::DataPlaneNode* cand : nodes_) {
    if (cand->id().kind == dp::NodeKind::Gateway) {
      gw = cand;
      break;
    }
  }
  if (gw == nullptr) throw std::logic_error("fcf_setup_flow: no gateway registered");

  FlowSpec spec;
  spec.flow_id = flow_id;
  spec.ue_id = ue_id;
  spec.qos = qos;
  const RatFlowParams rat_params = raf_translate(spec, n->rat());
  spec.rate_mbps = rat_params.rat == dp::Rat::Wlan &&
                           qos == slicing::ServiceClass::BestEffortData
                       ? 0.0
                       : rat_params.rate_mbps;
  spec.path = {at_node, gw->id()};

  const std::string slice = slice_for(qos);
  if (!slices_.has_grant(slice, at_node, flow_id)) {
    // Normally reserved at admission; a direct flow start must pass the
    // same accounting gate.
    if (slices_.grant(slice, at_node, flow_id, spec.rate_mbps) ==
        slicing::GrantResult::Denied) {
      if (observer_ != nullptr) observer_->on_admission(ue_id, qos, false);
      return;
    }
  }

  auto send_flow_mod = [&](dp::NodeId dst, dp::FlowRule rule) {
    ControlMessage fm;
    fm.kind = MsgKind::FlowMod;
    fm.src = Endpoint::controller();
    fm.dst = Endpoint::of_node(dst);
    fm.ue_id = ue_id;
    fm.flow_id = flow_id;
    fm.flow_mod.op = FlowModOp::Op::Install;
    fm.flow_mod.rule = rule;
    send(fm);
  };

  using dp::ActionKind;
  using dp::Direction;
  send_flow_mod(at_node, {-1, {ue_id, flow_id, Direction::Uplink},
                          {ActionKind::ForwardTo, gw->id()}, 10});
  send_flow_mod(at_node, {-1, {ue_id, flow_id, Direction::Downlink},
                          {ActionKind::Deliver, {}}, 10});
  // GW uplink delivery; downlink return rule re-targets the serving dBS
  // after a handover, so drop a stale one first.
  for (const dp::FlowRule& r : gw->flow_table()) {
    if (r.match.ue_id == ue_id && r.match.flow_id == flow_id) {
      ControlMessage fm;
      fm.kind = MsgKind::FlowMod;
      fm.src = Endpoint::controller();
      fm.dst = Endpoint::of_node(gw->id());
      fm.ue_id = ue_id;
      fm.flow_id = flow_id;
      fm.flow_mod.op = FlowModOp::Op::Remove;
      fm.flow_mod.remove_rule_id = r.rule_id;
      send(fm);
    }
  }
  send_flow_mod(gw->id(), {-1, {ue_id, flow_id, Direction::Uplink},
                           {ActionKind::Deliver, {}}, 10});
  send_flow_mod(gw->id(), {-1, {ue_id, flow_id, Direction::Downlink},
                           {ActionKind::ForwardTo, at_node}, 10});

  if (qos == slicing::ServiceClass::RealTimeVideo) {
    // Dedicated dBS <-> GW bearer completes the video data path.
    ControlMessage bs;
    bs.kind = MsgKind::BearerSetup;
    bs.src = Endpoint::controller();
    bs.dst = Endpoint::of_node(at_node);
    bs.ue_id = ue_id;
    bs.bearer = dp::Bearer{-1,     ue_id, dp::BearerKind::Dedicated,
                           at_node, gw->id(), rat_params.rate_mbps};
    send(bs);
  }

  for (const FlowSpec& f : ctx->flows) {
    if (f.flow_id == flow_id && observer_ != nullptr) observer_->on_flow_released(f);
  }
  std::erase_if(ctx->flows, [&](const FlowSpec& f) { return f.flow_id == flow_id; });
  ctx->flows.push_back(spec);
  if (observer_ != nullptr) observer_->on_flow_installed(spec);

  if (ctx->handover_source.has_value() && *ctx->handover_source != at_node) {
    complete_handover(*ctx, at_node);
  }
}

// --- ACPF ----------------------------------------------------------------

AdmissionDecision Controller::acpf_admission(const AdmissionRequestInfo& req) {
  const std::string slice = slice_for(req.qos);
  const dp::DataPlaneNode* n = node(req.node);
  if (n == nullptr || !slices_.has_slice(slice)) return {false, {}};
  if (req.qos == slicing::ServiceClass::RealTimeVideo && n->rat() != dp::Rat::Lte) {
    return {false, {}};  // video is served by the LTE RAT only
  }
  if (!slices_.descriptor(slice).members.contains(req.node)) return {false, {}};
  // Reservation happens here, atomically with the admission decision.
  if (slices_.grant(slice, req.node, req.flow_id, req.rate_mbps) ==
      slicing::GrantResult::Denied) {
    return {false, {}};
  }
  return {true, slice};
}

int Controller::data_user_count(dp::NodeId node_id) const {
  int count = 0;
  for (const auto& [id, ctx] : contexts_) {
    if (ctx.service == slicing::ServiceClass::BestEffortData &&
        ctx.serving.has_value() && *ctx.serving == node_id) {
      ++count;
    }
  }
  return count;
}

std::optional<dp::NodeId> Controller::acpf_select_rat(slicing::ServiceClass qos,
                                                      dp::Position ue_pos) const {
  const dp::DataPlaneNode* lte = nullptr;
  const dp::DataPlaneNode* wlan = nullptr;
  for (const dp::DataPlaneNode* n : nodes_) {
    if (!n->in_coverage(ue_pos) || n->id().kind == dp::NodeKind::Gateway) continue;
    if (n->rat() == dp::Rat::Lte && lte == nullptr) lte = n;
    if (n->rat() == dp::Rat::Wlan && wlan == nullptr) wlan = n;
  }
  if (qos == slicing::ServiceClass::RealTimeVideo) {
    if (lte == nullptr) return std::nullopt;
    return lte->id();
  }
  // Load-aware heuristic: WLAN while lightly loaded, then LTE until the
  // data slice is full, then WLAN overflow.
  if (wlan != nullptr && data_user_count(wlan->id()) < config_.wlan_threshold_users) {
    return wlan->id();
  }
  if (lte != nullptr &&
      slices_.can_admit(config_.data_slice, lte->id(), radio_.lte_per_user_rate_mbps)) {
    return lte->id();
  }
  if (wlan != nullptr) return wlan->id();
  return std::nullopt;
}

std::optional<dp::NodeId> Controller::acpf_mobility(const ControlMessage& report) {
  UeContext* ctx = ue_context(report.ue_id);
  if (ctx == nullptr || !ctx->serving.has_value()) return std::nullopt;
  for (const auto& [node_id, dbm] : report.measurements_dbm) {
    ctx->last_measurements_dbm[node_id] = dbm;
  }
  const auto serving_it = ctx->last_measurements_dbm.find(*ctx->serving);
  if (serving_it == ctx->last_measurements_dbm.end()) return std::nullopt;
  const double serving_dbm = serving_it->second;

  const dp::NodeId* best = nullptr;
  double best_dbm = 0.0;
  for (const auto& [node_id, dbm] : ctx->last_measurements_dbm) {
    if (node_id == *ctx->serving) continue;
    const dp::DataPlaneNode* n = node(node_id);
    if (n == nullptr || !n->in_coverage(ctx->position)) continue;
    if (best == nullptr || dbm > best_dbm) {
      best = &node_id;
      best_dbm = dbm;
    }
  }
  if (best == nullptr || best_dbm - serving_dbm < config_.hysteresis_db) {
    return std::nullopt;
  }
  // Admission-gate the candidate before commanding the handover.
  const dp::DataPlaneNode* target = node(*best);
  const std::string slice = slice_for(ctx->service);
  if (!slices_.has_slice(slice) ||
      !slices_.descriptor(slice).members.contains(*best) ||
      !slices_.can_admit(slice, *best, nominal_rate(ctx->service, target->rat()))) {
    return std::nullopt;
  }
  return *best;
}

void Controller::complete_handover(UeContext& ctx, dp::NodeId target) {
  const dp::NodeId source = *ctx.handover_source;
  teardown_at_node(ctx, source, /*release_grant=*/true);
  ctx.handover_source.reset();
  if (observer_ != nullptr) {
    observer_->on_handover_complete(ctx.ue_id, source, target, true);
  }
}

void Controller::teardown_at_node(UeContext& ctx, dp::NodeId node_id,
                                  bool release_grant) {
  if (release_grant) {
    const std::string slice = slice_for(ctx.service);
    if (slices_.has_slice(slice) && slices_.has_grant(slice, node_id, ctx.ue_id)) {
      slices_.release(slice, node_id, ctx.ue_id);
    }
  }
  dp::DataPlaneNode* n = node(node_id);
  if (n != nullptr && n->attached(ctx.ue_id)) {
    n->detach_radio(ctx.ue_id, queue_.now());
  }
  ctx.rat_attachments.erase(node_id);
}

void Controller::ue_departure(int ue_id) {
  UeContext* ctx = ue_context(ue_id);
  if (ctx == nullptr) return;
  for (const FlowSpec& f : ctx->flows) {
    if (observer_ != nullptr) observer_->on_flow_released(f);
  }
  // Release every node the UE touched and scrub gateway rules.
  std::vector<dp::NodeId> attached_nodes;
  for (const auto& [node_id, phase] : ctx->rat_attachments) {
    attached_nodes.push_back(node_id);
  }
  for (dp::NodeId node_id : attached_nodes) {
    teardown_at_node(*ctx, node_id, /*release_grant=*/true);
  }
  for (dp::DataPlaneNode* n : nodes_) {
    if (n->id().kind == dp::NodeKind::Gateway) {
      n->remove_rules_for_ue(ue_id, queue_.now());
    }
  }
  contexts_.erase(ue_id);
}

}  // namespace mrsdn::ctrl
