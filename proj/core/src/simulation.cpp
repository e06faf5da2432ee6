#include "mrsdn/simulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace mrsdn::harness {

const char* to_string(Policy policy) {
  switch (policy) {
    case Policy::SdnHeuristic: return "sdn_heuristic";
    case Policy::LegacyWlanFirst: return "legacy_wlan_first";
    case Policy::LegacySignalBased: return "legacy_signal_based";
  }
  return "?";
}

std::optional<Policy> policy_from_string(const std::string& name) {
  if (name == "sdn_heuristic") return Policy::SdnHeuristic;
  if (name == "legacy_wlan_first") return Policy::LegacyWlanFirst;
  if (name == "legacy_signal_based") return Policy::LegacySignalBased;
  return std::nullopt;
}

std::optional<dp::NodeId> baseline_legacy_select(
    Policy policy, dp::Position ue_pos, const radio::RadioParams& radio,
    const std::vector<dp::DataPlaneNode*>& nodes) {
  const dp::DataPlaneNode* lte = nullptr;
  const dp::DataPlaneNode* wlan = nullptr;
  for (const dp::DataPlaneNode* n : nodes) {
    if (n->id().kind == dp::NodeKind::Gateway || !n->in_coverage(ue_pos)) continue;
    if (n->rat() == dp::Rat::Lte && lte == nullptr) lte = n;
    if (n->rat() == dp::Rat::Wlan && wlan == nullptr) wlan = n;
  }
  if (policy == Policy::LegacyWlanFirst) {
    // No global load view: WLAN whenever reachable.
    if (wlan != nullptr) return wlan->id();
    if (lte != nullptr) return lte->id();
    return std::nullopt;
  }
  // Strongest received power wins; LTE on ties.
  const dp::DataPlaneNode* best = nullptr;
  double best_dbm = 0.0;
  for (const dp::DataPlaneNode* n : {lte, wlan}) {
    if (n == nullptr) continue;
    const double tx = n->rat() == dp::Rat::Lte ? radio.lte_tx_power_dbm
                                               : radio.wlan_tx_power_dbm;
    const double d_km =
        std::max(dp::distance_m(n->position(), ue_pos), 1.0) / 1000.0;
    const double dbm = radio::rx_power_dbm(tx, d_km);
    if (best == nullptr || dbm > best_dbm) {
      best = n;
      best_dbm = dbm;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->id();
}

Simulation::Simulation(const SimConfig& cfg, std::ostream* trace_stream,
                       bool retain_trace)
    : cfg_(cfg) {
  cfg_.radio.validate();
  cfg_.workload.validate();

  trace_.attach_stream(trace_stream);
  trace_.set_retain(retain_trace);

  lte_ = std::make_unique<dp::DataPlaneNode>(dp::NodeId{dp::NodeKind::LteDbs, 0},
                                             cfg_.topology.lte_pos,
                                             cfg_.topology.lte_range_m);
  wlan_ = std::make_unique<dp::DataPlaneNode>(dp::NodeId{dp::NodeKind::WlanDbs, 0},
                                              cfg_.topology.wlan_pos,
                                              cfg_.topology.wlan_range_m);
  gw_ = std::make_unique<dp::DataPlaneNode>(dp::NodeId{dp::NodeKind::Gateway, 0},
                                            dp::Position{0.0, 0.0}, 0.0);

  const double wlan_cap = radio::wlan_effective_capacity_mbps(cfg_.radio);
  slices_.register_node(lte_->id(), cfg_.radio.lte_cell_capacity_mbps);
  slices_.register_node(wlan_->id(), wlan_cap);

  if (cfg_.slices.empty()) {
    slicing::SliceDescriptor data;
    data.slice_id = "data";
    data.service_class = slicing::ServiceClass::BestEffortData;
    data.members = {{lte_->id(), 1.0}, {wlan_->id(), 1.0}};
    slices_.create_slice(data);
  } else {
    for (const slicing::SliceDescriptor& desc : cfg_.slices) {
      slices_.create_slice(desc);
    }
  }

  controller_ = std::make_unique<ctrl::Controller>(queue_, slices_, trace_, *this,
                                                   cfg_.radio, cfg_.controller);
  controller_->register_node(lte_.get());
  controller_->register_node(wlan_.get());
  controller_->register_node(gw_.get());
  controller_->set_observer(this);

  metrics_ = std::make_unique<workload::MetricsCollector>(
      cfg_.workload.warmup_s, cfg_.workload.duration_s, wlan_cap,
      cfg_.radio.lte_per_user_rate_mbps, cfg_.latency);
}

Simulation::~Simulation() = default;

bool Simulation::ue_active(int ue_id) const {
  auto it = ues_.find(ue_id);
  return it != ues_.end() && it->second.state == Ue::State::Active;
}

std::optional<dp::NodeId> Simulation::ue_serving(int ue_id) const {
  auto it = ues_.find(ue_id);
  if (it == ues_.end()) return std::nullopt;
  return it->second.serving;
}

std::optional<dp::NodeId> Simulation::select_node(slicing::ServiceClass service,
                                                  dp::Position pos) {
  if (cfg_.policy == Policy::SdnHeuristic) {
    return controller_->acpf_select_rat(service, pos);
  }
  if (service == slicing::ServiceClass::RealTimeVideo) {
    return lte_->in_coverage(pos) ? std::optional(lte_->id()) : std::nullopt;
  }
  return baseline_legacy_select(cfg_.policy, pos, cfg_.radio, controller_->nodes());
}

workload::MetricsReport Simulation::run() {
  const workload::PlacementDisc disc{cfg_.topology.wlan_pos, cfg_.topology.wlan_range_m};
  const auto arrivals = workload::generate_arrivals(cfg_.workload, disc);
  for (const workload::Arrival& a : arrivals) {
    const int id = next_ue_id_++;
    queue_.schedule(a.time_s, sim::EventKind::UserArrival,
                    [this, a, id] { on_arrival_with_id(a, id, std::nullopt); });
  }
  queue_.schedule(cfg_.workload.duration_s, sim::EventKind::SimEnd, [] {});
  queue_.run_until(cfg_.workload.duration_s);
  metrics_->finalize(cfg_.workload.duration_s);
  return metrics_->report();
}

void Simulation::run_until(double t) {
  queue_.run_until(t);
  metrics_->finalize(t);
}

int Simulation::add_manual_arrival(double t, slicing::ServiceClass service,
                                   dp::Position pos, double hold_s,
                                   std::optional<dp::NodeId> forced_node) {
  const int id = next_ue_id_++;
  workload::Arrival a{t, service, hold_s, pos};
  queue_.schedule(t, sim::EventKind::UserArrival,
                  [this, a, id, forced_node] { on_arrival_with_id(a, id, forced_node); });
  return id;
}

void Simulation::on_arrival_with_id(const workload::Arrival& arrival, int id,
                                    std::optional<dp::NodeId> forced_node) {
  const double now = queue_.now();
  metrics_->count_arrival(arrival.service, now);

  Ue ue;
  ue.id = id;
  ue.service = arrival.service;
  ue.pos = arrival.position;

  const auto target =
      forced_node.has_value() ? forced_node : select_node(arrival.service, arrival.position);
  if (!target.has_value()) {
    metrics_->count_blocked(arrival.service, now);
    ue.state = Ue::State::Blocked;
    ues_[id] = ue;
    return;
  }

  ue.pending = *target;
  ues_[id] = ue;

  controller_->begin_association(id, arrival.service, arrival.position);
  dp::DataPlaneNode* n = controller_->node(*target);
  n->attach_radio(id, arrival.position, now);

  ctrl::ControlMessage req;
  req.kind = n->rat() == dp::Rat::Lte ? ctrl::MsgKind::RrcConnectionRequest
                                      : ctrl::MsgKind::WlanAssocRequest;
  req.src = ctrl::Endpoint::ue(id);
  req.dst = ctrl::Endpoint::controller();
  req.ue_id = id;
  req.qos = arrival.service;
  ue_send_control(id, *target, req);

  queue_.schedule(now + arrival.hold_s, sim::EventKind::UserDeparture,
                  [this, id] { on_departure(id); });
}

void Simulation::on_departure(int ue_id) {
  auto it = ues_.find(ue_id);
  if (it == ues_.end()) return;
  Ue& ue = it->second;
  if (ue.state == Ue::State::Blocked || ue.state == Ue::State::Departed) return;
  controller_->ue_departure(ue_id);
  // Anything the controller did not know about yet (association in flight).
  for (dp::DataPlaneNode* n : controller_->nodes()) {
    if (n->id().kind != dp::NodeKind::Gateway && n->attached(ue_id)) {
      n->detach_radio(ue_id, queue_.now());
    }
  }
  ue.state = Ue::State::Departed;
  ue.serving.reset();
  ue.pending.reset();
}

bool Simulation::ue_alive(int ue_id) const {
  auto it = ues_.find(ue_id);
  if (it == ues_.end()) return false;
  const auto s = it->second.state;
  return s == Ue::State::Associating || s == Ue::State::Active ||
         s == Ue::State::HandingOver;
}

void Simulation::ue_send_control(int ue_id, dp::NodeId via, ctrl::ControlMessage inner) {
  // UE -> dBS (radio) -> controller: two hops, then DCIF ingress.
  ctrl::ControlMessage env;
  env.kind = ctrl::MsgKind::PacketIn;
  env.src = ctrl::Endpoint::of_node(via);
  env.dst = ctrl::Endpoint::controller();
  env.ue_id = ue_id;
  env.origin_node = via;
  env.inner = std::make_shared<ctrl::ControlMessage>(std::move(inner));
  queue_.schedule(queue_.now() + 2.0 * cfg_.controller.hop_delay_s,
                  sim::EventKind::MessageDelivery, [this, env] {
                    if (!ue_alive(env.ue_id)) return;  // departed in flight
                    controller_->dcif_ingress(env);
                  });
}

void Simulation::send(const ctrl::ControlMessage& msg) {
  if (msg.dst.type == ctrl::Endpoint::Type::Ue) {
    queue_.schedule(queue_.now() + 2.0 * cfg_.controller.hop_delay_s,
                    sim::EventKind::MessageDelivery,
                    [this, msg] { on_ue_message(msg); });
  } else if (msg.dst.type == ctrl::Endpoint::Type::Node) {
    queue_.schedule(queue_.now() + cfg_.controller.hop_delay_s,
                    sim::EventKind::MessageDelivery,
                    [this, msg] { deliver_to_node(msg); });
  }
}

void Simulation::deliver_to_node(const ctrl::ControlMessage& msg) {
  dp::DataPlaneNode* n = controller_->node(msg.dst.node);
  if (n == nullptr) return;
  switch (msg.kind) {
    case ctrl::MsgKind::FlowMod:
      if (msg.flow_mod.op == ctrl::FlowModOp::Op::Install) {
        if (!ue_alive(msg.ue_id)) return;  // teardown raced the install
        n->install_flow_rule(msg.flow_mod.rule, queue_.now());
      } else {
        const auto& table = n->flow_table();
        const bool present = std::any_of(
            table.begin(), table.end(), [&](const dp::FlowRule& r) {
              return r.rule_id == msg.flow_mod.remove_rule_id;
            });
        if (present) n->remove_rule(msg.flow_mod.remove_rule_id, queue_.now());
      }
      break;
    case ctrl::MsgKind::BearerSetup:
      if (!ue_alive(msg.ue_id)) return;
      n->create_bearer(msg.bearer, queue_.now());
      break;
    default:
      break;
  }
}

void Simulation::on_ue_message(const ctrl::ControlMessage& msg) {
  auto it = ues_.find(msg.ue_id);
  if (it == ues_.end()) return;
  Ue& ue = it->second;
  if (ue.state == Ue::State::Blocked || ue.state == Ue::State::Departed) return;
  const double now = queue_.now();

  switch (msg.kind) {
    case ctrl::MsgKind::RrcConnectionSetup:
    case ctrl::MsgKind::WlanAssocResponse: {
      if (!msg.accepted) {
        if (ue.state == Ue::State::Associating) {
          metrics_->count_blocked(ue.service, now);
          if (ue.pending.has_value()) {
            dp::DataPlaneNode* n = controller_->node(*ue.pending);
            if (n != nullptr && n->attached(ue.id)) n->detach_radio(ue.id, now);
          }
          ue.pending.reset();
          ue.state = Ue::State::Blocked;
        }
        return;
      }
      ctrl::ControlMessage attach;
      attach.kind = ctrl::MsgKind::AttachRequest;
      attach.src = ctrl::Endpoint::ue(ue.id);
      attach.dst = ctrl::Endpoint::controller();
      attach.ue_id = ue.id;
      attach.qos = ue.service;
      ue_send_control(ue.id, msg.origin_node, attach);
      break;
    }
    case ctrl::MsgKind::AttachAccept: {
      ue.serving = msg.origin_node;
      if (ue.state == Ue::State::Associating) {
        ue.state = Ue::State::Active;
        metrics_->count_admitted(ue.service, now);
      }
      start_flow(ue, msg.origin_node);
      break;
    }
    case ctrl::MsgKind::HandoverCommand: {
      if (ue.state != Ue::State::Active || !ue.serving.has_value()) return;
      dp::DataPlaneNode* target = controller_->node(msg.target_node);
      if (target == nullptr || !target->in_coverage(ue.pos)) return;
      ue.state = Ue::State::HandingOver;
      ue.pending = msg.target_node;
      target->attach_radio(ue.id, ue.pos, now);
      ctrl::ControlMessage req;
      req.kind = target->rat() == dp::Rat::Lte ? ctrl::MsgKind::RrcConnectionRequest
                                               : ctrl::MsgKind::WlanAssocRequest;
      req.src = ctrl::Endpoint::ue(ue.id);
      req.dst = ctrl::Endpoint::controller();
      req.ue_id = ue.id;
      req.qos = ue.service;
      req.handover = true;
      ue_send_control(ue.id, msg.target_node, req);
      break;
    }
    default:
      break;
  }
}

void Simulation::start_flow(Ue& ue, dp::NodeId at_node) {
  dp::DataPlaneNode* n = controller_->node(at_node);
  const auto outcome = n->handle_flow_start(ue.id, ue.id, dp::Direction::Uplink);
  if (outcome.kind != dp::FlowStartOutcome::Kind::PuntedToController) return;
  // Encapsulated first-packet context toward the controller (table miss).
  ctrl::ControlMessage env;
  env.kind = ctrl::MsgKind::PacketIn;
  env.src = ctrl::Endpoint::of_node(at_node);
  env.dst = ctrl::Endpoint::controller();
  env.ue_id = ue.id;
  env.origin_node = at_node;
  queue_.schedule(queue_.now() + cfg_.controller.hop_delay_s,
                  sim::EventKind::MessageDelivery, [this, env] {
                    if (!ue_alive(env.ue_id)) return;
                    controller_->dcif_ingress(env);
                  });
}

void Simulation::inject_measurement_report(
    double t, int ue_id, std::vector<std::pair<dp::NodeId, double>> readings) {
  queue_.schedule(t, sim::EventKind::MessageDelivery, [this, ue_id, readings] {
    auto it = ues_.find(ue_id);
    if (it == ues_.end() || it->second.state != Ue::State::Active ||
        !it->second.serving.has_value()) {
      return;
    }
    ctrl::ControlMessage report;
    report.kind = ctrl::MsgKind::MeasurementReport;
    report.src = ctrl::Endpoint::ue(ue_id);
    report.dst = ctrl::Endpoint::controller();
    report.ue_id = ue_id;
    report.measurements_dbm = readings;
    ue_send_control(ue_id, *it->second.serving, report);
  });
}

void Simulation::on_admission(int, slicing::ServiceClass, bool) {}

void Simulation::on_flow_installed(const ctrl::FlowSpec& flow) {
  const double now = queue_.now();
  if (flow.qos == slicing::ServiceClass::RealTimeVideo) {
    metrics_->add_video_rate(flow.rate_mbps, now);
    return;
  }
  if (!flow.path.empty() && flow.path.front().kind == dp::NodeKind::WlanDbs) {
    metrics_->add_wlan_data_user(+1, now);
  } else {
    metrics_->add_lte_data_rate(flow.rate_mbps, now);
  }
}

void Simulation::on_flow_released(const ctrl::FlowSpec& flow) {
  const double now = queue_.now();
  if (flow.qos == slicing::ServiceClass::RealTimeVideo) {
    metrics_->add_video_rate(-flow.rate_mbps, now);
    return;
  }
  if (!flow.path.empty() && flow.path.front().kind == dp::NodeKind::WlanDbs) {
    metrics_->add_wlan_data_user(-1, now);
  } else {
    metrics_->add_lte_data_rate(-flow.rate_mbps, now);
  }
}

void Simulation::on_handover_complete(int ue_id, dp::NodeId from, dp::NodeId to,
                                      bool success) {
  auto it = ues_.find(ue_id);
  if (it == ues_.end()) return;
  Ue& ue = it->second;
  if (success) {
    ++handovers_completed_;
    ue.state = Ue::State::Active;
    ue.serving = to;
    ue.pending.reset();
    return;
  }
  // Aborted: the UE stays served at the source; undo the target radio attach.
  if (ue.pending.has_value()) {
    dp::DataPlaneNode* n = controller_->node(*ue.pending);
    if (n != nullptr && n->attached(ue_id)) n->detach_radio(ue_id, queue_.now());
  }
  ue.pending.reset();
  ue.state = Ue::State::Active;
}

}  // namespace mrsdn::harness
