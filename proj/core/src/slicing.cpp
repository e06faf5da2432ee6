#include "mrsdn/slicing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mrsdn::slicing {

namespace {
// Grants are compared against share*capacity with a relative epsilon so a
// slice can be filled to exactly its nominal share in decimal rates.
constexpr double kRateEps = 1e-9;
}  // namespace

const char* to_string(ServiceClass sc) {
  switch (sc) {
    case ServiceClass::RealTimeVideo: return "video";
    case ServiceClass::BestEffortData: return "data";
  }
  return "?";
}

void SliceManager::register_node(dp::NodeId node, double capacity_mbps) {
  if (!(capacity_mbps > 0.0)) {
    throw std::invalid_argument("register_node: capacity must be > 0");
  }
  capacities_[node] = capacity_mbps;
}

double SliceManager::node_capacity(dp::NodeId node) const {
  auto it = capacities_.find(node);
  if (it == capacities_.end()) {
    throw std::invalid_argument("unknown node " + dp::to_string(node));
  }
  return it->second;
}

double SliceManager::share_sum_at(dp::NodeId node, const std::string& excluding) const {
  double sum = 0.0;
  for (const auto& [id, st] : slices_) {
    if (id == excluding) continue;
    auto it = st.desc.members.find(node);
    if (it != st.desc.members.end()) sum += it->second;
  }
  return sum;
}

std::string SliceManager::create_slice(const SliceDescriptor& desc) {
  if (desc.slice_id.empty()) throw std::invalid_argument("slice id empty");
  if (slices_.contains(desc.slice_id)) {
    throw std::invalid_argument("slice " + desc.slice_id + " already exists");
  }
  for (const auto& [node, share] : desc.members) {
    node_capacity(node);  // must be registered
    if (share < 0.0 || share > 1.0) {
      throw std::invalid_argument("slice share outside [0,1]");
    }
    if (share_sum_at(node, desc.slice_id) + share > 1.0 + kRateEps) {
      throw std::runtime_error("create_slice: node " + dp::to_string(node) +
                               " would be oversubscribed");
    }
  }
  slices_[desc.slice_id] = SliceState{desc, {}};
  return desc.slice_id;
}

bool SliceManager::has_slice(const std::string& slice_id) const {
  return slices_.contains(slice_id);
}

const SliceManager::SliceState& SliceManager::state(const std::string& slice_id) const {
  auto it = slices_.find(slice_id);
  if (it == slices_.end()) throw std::invalid_argument("unknown slice " + slice_id);
  return it->second;
}

SliceManager::SliceState& SliceManager::state(const std::string& slice_id) {
  auto it = slices_.find(slice_id);
  if (it == slices_.end()) throw std::invalid_argument("unknown slice " + slice_id);
  return it->second;
}

const SliceDescriptor& SliceManager::descriptor(const std::string& slice_id) const {
  return state(slice_id).desc;
}

double SliceManager::slice_capacity(const std::string& slice_id, dp::NodeId node) const {
  const SliceState& st = state(slice_id);
  auto it = st.desc.members.find(node);
  if (it == st.desc.members.end()) {
    throw std::invalid_argument("node " + dp::to_string(node) + " not in slice " + slice_id);
  }
  return it->second * node_capacity(node);
}

double SliceManager::admitted_sum(const std::string& slice_id, dp::NodeId node) const {
  const SliceState& st = state(slice_id);
  auto it = st.admitted.find(node);
  if (it == st.admitted.end()) return 0.0;
  double sum = 0.0;
  for (const auto& [flow, rate] : it->second) sum += rate;
  return sum;
}

bool SliceManager::can_admit(const std::string& slice_id, dp::NodeId node,
                             double rate_mbps) const {
  const double cap = slice_capacity(slice_id, node);
  return admitted_sum(slice_id, node) + rate_mbps <= cap * (1.0 + kRateEps) + kRateEps;
}

bool SliceManager::has_grant(const std::string& slice_id, dp::NodeId node,
                             int flow_id) const {
  const SliceState& st = state(slice_id);
  auto nit = st.admitted.find(node);
  return nit != st.admitted.end() && nit->second.contains(flow_id);
}

GrantResult SliceManager::grant(const std::string& slice_id, dp::NodeId node,
                                int flow_id, double rate_mbps) {
  if (rate_mbps < 0.0) throw std::invalid_argument("grant: negative rate");
  SliceState& st = state(slice_id);
  if (!st.desc.members.contains(node)) {
    throw std::invalid_argument("grant: node not in slice " + slice_id);
  }
  if (st.admitted[node].contains(flow_id)) {
    throw std::logic_error("grant: flow already granted");
  }
  if (!can_admit(slice_id, node, rate_mbps)) return GrantResult::Denied;
  st.admitted[node][flow_id] = rate_mbps;
  return GrantResult::Granted;
}

void SliceManager::release(const std::string& slice_id, dp::NodeId node, int flow_id) {
  SliceState& st = state(slice_id);
  auto nit = st.admitted.find(node);
  if (nit == st.admitted.end() || !nit->second.contains(flow_id)) {
    throw std::logic_error("release: flow " + std::to_string(flow_id) +
                           " not granted in slice " + slice_id);
  }
  const double rate = nit->second.at(flow_id);
  nit->second.erase(flow_id);
  auto oit = st.drain_overhang.find(node);
  if (oit != st.drain_overhang.end()) {
    oit->second = std::max(0.0, oit->second - rate);
    if (oit->second == 0.0) st.drain_overhang.erase(oit);
  }
}

ResizeResult SliceManager::resize_slice(const std::string& slice_id, dp::NodeId node,
                                        double new_share) {
  SliceState& st = state(slice_id);
  if (!st.desc.members.contains(node)) {
    throw std::invalid_argument("resize_slice: node not in slice");
  }
  if (new_share < 0.0 || new_share > 1.0 ||
      share_sum_at(node, slice_id) + new_share > 1.0 + kRateEps) {
    throw std::runtime_error("resize_slice: share-sum invariant violated");
  }
  const double admitted = admitted_sum(slice_id, node);
  st.desc.members[node] = new_share;
  const double new_cap = new_share * node_capacity(node);
  if (admitted <= new_cap + kRateEps) {
    st.drain_overhang.erase(node);
    return ResizeResult::Ok;
  }
  st.drain_overhang[node] = admitted - new_cap;
  return ResizeResult::Deferred;
}

bool SliceManager::no_overcommit() const {
  for (const auto& [id, st] : slices_) {
    for (const auto& [node, flows] : st.admitted) {
      double sum = 0.0;
      for (const auto& [flow, rate] : flows) sum += rate;
      double cap = st.desc.members.at(node) * node_capacity(node);
      auto oit = st.drain_overhang.find(node);
      if (oit != st.drain_overhang.end()) cap += oit->second;
      if (sum > cap * (1.0 + kRateEps) + kRateEps) return false;
    }
  }
  return true;
}

}  // namespace mrsdn::slicing
