#ifndef MRSDN_SLICING_HPP
#define MRSDN_SLICING_HPP

#include <map>
#include <string>
#include <vector>

#include "mrsdn/dataplane.hpp"

namespace mrsdn::slicing {

enum class ServiceClass { RealTimeVideo, BestEffortData };

const char* to_string(ServiceClass sc);

struct SliceDescriptor {
  std::string slice_id;
  ServiceClass service_class = ServiceClass::BestEffortData;
  std::map<dp::NodeId, double> members;  // node -> share of node capacity
};

enum class GrantResult { Granted, Denied };
enum class ResizeResult { Ok, Deferred };

/// Partitions physical node capacity into isolated slices and accounts
/// per-flow grants against each slice's share. Accounting for one slice is
/// a function of that slice's events alone.
class SliceManager {
 public:
  /// Register a physical node and its capacity before slices reference it.
  void register_node(dp::NodeId node, double capacity_mbps);
  double node_capacity(dp::NodeId node) const;

  /// Throws if any member node's share sum across slices would exceed 1.
  std::string create_slice(const SliceDescriptor& desc);

  bool has_slice(const std::string& slice_id) const;
  const SliceDescriptor& descriptor(const std::string& slice_id) const;

  /// Capacity available to the slice at the node, share * node capacity.
  double slice_capacity(const std::string& slice_id, dp::NodeId node) const;
  double admitted_sum(const std::string& slice_id, dp::NodeId node) const;

  /// Would a grant of `rate` fit right now? No state change.
  bool can_admit(const std::string& slice_id, dp::NodeId node, double rate_mbps) const;

  bool has_grant(const std::string& slice_id, dp::NodeId node, int flow_id) const;

  GrantResult grant(const std::string& slice_id, dp::NodeId node, int flow_id,
                    double rate_mbps);
  void release(const std::string& slice_id, dp::NodeId node, int flow_id);

  /// Shrinks take effect for new admissions immediately; existing flows
  /// drain naturally (Deferred). Growth beyond the share-sum invariant is
  /// rejected.
  ResizeResult resize_slice(const std::string& slice_id, dp::NodeId node,
                            double new_share);

  /// Overcommit sweep: true iff every slice is within its share at every
  /// member node.
  bool no_overcommit() const;

 private:
  struct SliceState {
    SliceDescriptor desc;
    // node -> (flow -> rate)
    std::map<dp::NodeId, std::map<int, double>> admitted;
    // node -> admitted rate above the current share, left over from a
    // deferred shrink; drains as flows release and blocks new admissions
    std::map<dp::NodeId, double> drain_overhang;
  };

  const SliceState& state(const std::string& slice_id) const;
  SliceState& state(const std::string& slice_id);
  double share_sum_at(dp::NodeId node, const std::string& excluding) const;

  std::map<dp::NodeId, double> capacities_;
  std::map<std::string, SliceState> slices_;
};

}  // namespace mrsdn::slicing

#endif  // MRSDN_SLICING_HPP
