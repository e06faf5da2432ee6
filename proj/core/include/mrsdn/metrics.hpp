#ifndef MRSDN_METRICS_HPP
#define MRSDN_METRICS_HPP

#include <cstdint>
#include <limits>

#include "mrsdn/slicing.hpp"

namespace mrsdn::workload {

struct LatencyParams {
  double wired_hop_s = 0.001;   // per wired hop (dBS/AP -> GW)
  double lte_access_s = 0.005;  // LTE scheduling + wired, flat
  double packet_bits = 12000.0;
  // Utilization clamp for the latency metric so a transiently saturated
  // WLAN contributes a large finite delay instead of the +inf sentinel.
  double rho_clamp = 0.99;
};

struct MetricsReport {
  double data_throughput_mbps = 0.0;   // time-average over [warmup, end]
  double video_throughput_mbps = 0.0;
  double mean_latency_s = 0.0;         // load-weighted, data flows only
  // NaN when the class saw zero arrivals in the window.
  double blocking_data = std::numeric_limits<double>::quiet_NaN();
  double blocking_video = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t arrivals_data = 0, admitted_data = 0, blocked_data = 0;
  std::uint64_t arrivals_video = 0, admitted_video = 0, blocked_video = 0;
};

/// Continuous-time integrator over piecewise-constant system state. Call a
/// mutator whenever admitted load changes; integrals cover [warmup, end]
/// exactly, with no sampling noise.
class MetricsCollector {
 public:
  MetricsCollector(double warmup_s, double end_s, double wlan_capacity_mbps,
                   double data_demand_mbps, LatencyParams latency)
      : warmup_(warmup_s),
        end_(end_s),
        wlan_capacity_(wlan_capacity_mbps),
        data_demand_(data_demand_mbps),
        latency_(latency) {}

  void add_video_rate(double delta_mbps, double t);
  void add_lte_data_rate(double delta_mbps, double t);
  void add_wlan_data_user(int delta, double t);

  void count_arrival(slicing::ServiceClass service, double t);
  void count_admitted(slicing::ServiceClass service, double t);
  void count_blocked(slicing::ServiceClass service, double t);

  /// Realized WLAN data throughput right now: min(n * demand, capacity).
  double wlan_realized_mbps() const;

  void finalize(double t) { advance(t); }
  MetricsReport report() const;

  int wlan_data_users() const { return wlan_users_; }

 private:
  void advance(double t);
  double data_latency_now() const;

  double warmup_, end_;
  double wlan_capacity_, data_demand_;
  LatencyParams latency_;

  double last_t_ = 0.0;
  double video_rate_ = 0.0;
  double lte_data_rate_ = 0.0;
  int wlan_users_ = 0;

  double video_integral_ = 0.0;
  double data_integral_ = 0.0;
  double latency_weight_integral_ = 0.0;  // integral of latency * rate dt
  double rate_weight_integral_ = 0.0;     // integral of rate dt (data)

  std::uint64_t arrivals_data_ = 0, admitted_data_ = 0, blocked_data_ = 0;
  std::uint64_t arrivals_video_ = 0, admitted_video_ = 0, blocked_video_ = 0;
};

}  // namespace mrsdn::workload

#endif  // MRSDN_METRICS_HPP
