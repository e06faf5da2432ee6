#ifndef MRSDN_WORKLOAD_HPP
#define MRSDN_WORKLOAD_HPP

#include <cstdint>
#include <vector>

#include "mrsdn/dataplane.hpp"
#include "mrsdn/random.hpp"
#include "mrsdn/slicing.hpp"

namespace mrsdn::workload {

struct WorkloadConfig {
  double lambda_d = 0.1;   // data user arrivals per second
  double lambda_v = 0.0;   // video user arrivals per second
  double mean_hold_s = 60.0;
  double duration_s = 10000.0;
  double warmup_s = 500.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Region UE positions are drawn from (uniform in a disc).
struct PlacementDisc {
  dp::Position center;
  double radius_m = 100.0;
};

struct Arrival {
  double time_s = 0.0;
  slicing::ServiceClass service = slicing::ServiceClass::BestEffortData;
  double hold_s = 0.0;
  dp::Position position;
};

/// Poisson arrivals per class with exponential holding times and uniform
/// placement. Per-class draws come from independent seeded streams, so a
/// sweep over one class's rate leaves the other class's sample path
/// untouched. Result is sorted by time.
std::vector<Arrival> generate_arrivals(const WorkloadConfig& cfg,
                                       const PlacementDisc& disc);

}  // namespace mrsdn::workload

#endif  // MRSDN_WORKLOAD_HPP
