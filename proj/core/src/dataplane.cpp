#include "mrsdn/dataplane.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrsdn::dp {

std::string to_string(NodeId id) {
  switch (id.kind) {
    case NodeKind::LteDbs: return "LTE" + std::to_string(id.index);
    case NodeKind::WlanDbs: return "WLAN" + std::to_string(id.index);
    case NodeKind::Gateway: return "GW" + std::to_string(id.index);
  }
  return "?";
}

const char* to_string(BearerKind kind) {
  switch (kind) {
    case BearerKind::Signaling: return "Signaling";
    case BearerKind::Default: return "Default";
    case BearerKind::Dedicated: return "Dedicated";
  }
  return "?";
}

double distance_m(Position a, Position b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

void DataPlaneNode::attach_radio(int ue_id, Position ue_pos, double time) {
  if (id_.kind == NodeKind::Gateway) {
    throw std::logic_error("attach_radio: gateways have no radio");
  }
  if (!in_coverage(ue_pos)) {
    throw std::runtime_error("attach_radio: UE " + std::to_string(ue_id) +
                             " out of coverage of " + to_string(id_));
  }
  if (attached(ue_id)) {
    throw std::logic_error("attach_radio: UE already attached");
  }
  attached_.push_back(ue_id);
  mutations_.push_back({time, "attach ue" + std::to_string(ue_id),
                        MutationCause::UeRadioEvent});
}

void DataPlaneNode::detach_radio(int ue_id, double time) {
  auto it = std::find(attached_.begin(), attached_.end(), ue_id);
  if (it == attached_.end()) {
    throw std::logic_error("detach_radio: UE not attached");
  }
  attached_.erase(it);
  // Detach tears down everything the UE owned at this node.
  std::erase_if(rules_, [&](const FlowRule& r) { return r.match.ue_id == ue_id; });
  std::erase_if(bearers_, [&](const Bearer& b) { return b.ue_id == ue_id; });
  mutations_.push_back({time, "detach ue" + std::to_string(ue_id),
                        MutationCause::UeRadioEvent});
}

bool DataPlaneNode::attached(int ue_id) const {
  return std::find(attached_.begin(), attached_.end(), ue_id) != attached_.end();
}

int DataPlaneNode::install_flow_rule(FlowRule rule, double time) {
  for (const FlowRule& r : rules_) {
    if (r.match == rule.match && r.priority == rule.priority) {
      throw std::runtime_error("install_flow_rule: duplicate (match, priority) on " +
                               to_string(id_));
    }
  }
  rule.rule_id = next_rule_id_++;
  rules_.push_back(rule);
  mutations_.push_back({time, "install rule " + std::to_string(rule.rule_id),
                        MutationCause::ControllerMessage});
  return rule.rule_id;
}

void DataPlaneNode::remove_rule(int rule_id, double time) {
  auto n = std::erase_if(rules_, [&](const FlowRule& r) { return r.rule_id == rule_id; });
  if (n == 0) throw std::logic_error("remove_rule: unknown rule id");
  mutations_.push_back({time, "remove rule " + std::to_string(rule_id),
                        MutationCause::ControllerMessage});
}

void DataPlaneNode::remove_rules_for_ue(int ue_id, double time) {
  auto n = std::erase_if(rules_, [&](const FlowRule& r) { return r.match.ue_id == ue_id; });
  if (n > 0) {
    mutations_.push_back({time, "remove rules ue" + std::to_string(ue_id),
                          MutationCause::ControllerMessage});
  }
}

int DataPlaneNode::create_bearer(Bearer bearer, double time) {
  if (bearer.kind != BearerKind::Dedicated && has_bearer(bearer.ue_id, bearer.kind)) {
    throw std::runtime_error(std::string("create_bearer: duplicate ") +
                             to_string(bearer.kind) + " bearer for UE " +
                             std::to_string(bearer.ue_id));
  }
  if (bearer.kind == BearerKind::Dedicated && bearer.remote.kind != NodeKind::Gateway) {
    throw std::runtime_error("create_bearer: dedicated bearer endpoints must be (dBS, GW)");
  }
  bearer.bearer_id = next_bearer_id_++;
  bearers_.push_back(bearer);
  mutations_.push_back({time, "create bearer " + std::to_string(bearer.bearer_id),
                        MutationCause::ControllerMessage});
  return bearer.bearer_id;
}

void DataPlaneNode::remove_bearer(int bearer_id, double time) {
  auto n = std::erase_if(bearers_, [&](const Bearer& b) { return b.bearer_id == bearer_id; });
  if (n == 0) throw std::logic_error("remove_bearer: unknown bearer id");
  mutations_.push_back({time, "remove bearer " + std::to_string(bearer_id),
                        MutationCause::ControllerMessage});
}

bool DataPlaneNode::has_bearer(int ue_id, BearerKind kind) const {
  return std::any_of(bearers_.begin(), bearers_.end(), [&](const Bearer& b) {
    return b.ue_id == ue_id && b.kind == kind;
  });
}

const FlowRule* DataPlaneNode::best_match(const FlowMatch& m) const {
  const FlowRule* best = nullptr;
  for (const FlowRule& r : rules_) {
    if (r.match == m && (best == nullptr || r.priority > best->priority)) {
      best = &r;
    }
  }
  return best;
}

FlowStartOutcome DataPlaneNode::handle_flow_start(int ue_id, int flow_id,
                                                  Direction dir) const {
  if (id_.kind != NodeKind::Gateway && !attached(ue_id)) {
    return {FlowStartOutcome::Kind::Dropped, {}};
  }
  const FlowRule* rule = best_match({ue_id, flow_id, dir});
  if (rule == nullptr) {
    return {FlowStartOutcome::Kind::PuntedToController, {}};
  }
  switch (rule->action.kind) {
    case ActionKind::Deliver:
      return {FlowStartOutcome::Kind::Delivered, rule->action};
    case ActionKind::ForwardTo:
      return {FlowStartOutcome::Kind::Forwarded, rule->action};
    case ActionKind::PuntToController:
      return {FlowStartOutcome::Kind::PuntedToController, rule->action};
  }
  return {FlowStartOutcome::Kind::Dropped, {}};
}

bool DataPlaneNode::clean_of_ue(int ue_id) const {
  if (attached(ue_id)) return false;
  if (std::any_of(rules_.begin(), rules_.end(),
                  [&](const FlowRule& r) { return r.match.ue_id == ue_id; })) {
    return false;
  }
  return !std::any_of(bearers_.begin(), bearers_.end(),
                      [&](const Bearer& b) { return b.ue_id == ue_id; });
}

}  // namespace mrsdn::dp
