#include "mrsdn/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mrsdn/radio.hpp"

namespace mrsdn::workload {

double MetricsCollector::wlan_realized_mbps() const {
  return std::min(wlan_users_ * data_demand_, wlan_capacity_);
}

double MetricsCollector::data_latency_now() const {
  const double wlan_rate = wlan_realized_mbps();
  const double total = lte_data_rate_ + wlan_rate;
  if (total <= 0.0) return 0.0;
  const double offered = wlan_users_ * data_demand_;
  const double rho = std::min(offered / wlan_capacity_, latency_.rho_clamp);
  const double service_s = latency_.packet_bits / (wlan_capacity_ * 1e6);
  const double wlan_lat = service_s / (1.0 - rho) + latency_.wired_hop_s;
  const double lte_lat = latency_.lte_access_s;
  return (wlan_lat * wlan_rate + lte_lat * lte_data_rate_) / total;
}

void MetricsCollector::advance(double t) {
  const double from = std::max(last_t_, warmup_);
  const double to = std::min(t, end_);
  if (to > from) {
    const double dt = to - from;
    video_integral_ += video_rate_ * dt;
    const double data_rate = lte_data_rate_ + wlan_realized_mbps();
    data_integral_ += data_rate * dt;
    latency_weight_integral_ += data_latency_now() * data_rate * dt;
    rate_weight_integral_ += data_rate * dt;
  }
  last_t_ = std::max(last_t_, t);
}

void MetricsCollector::add_video_rate(double delta, double t) {
  advance(t);
  video_rate_ += delta;
}

void MetricsCollector::add_lte_data_rate(double delta, double t) {
  advance(t);
  lte_data_rate_ += delta;
}

void MetricsCollector::add_wlan_data_user(int delta, double t) {
  advance(t);
  wlan_users_ += delta;
}

void MetricsCollector::count_arrival(slicing::ServiceClass s, double t) {
  if (t < warmup_ || t > end_) return;
  (s == slicing::ServiceClass::RealTimeVideo ? arrivals_video_ : arrivals_data_)++;
}

void MetricsCollector::count_admitted(slicing::ServiceClass s, double t) {
  if (t < warmup_ || t > end_) return;
  (s == slicing::ServiceClass::RealTimeVideo ? admitted_video_ : admitted_data_)++;
}

void MetricsCollector::count_blocked(slicing::ServiceClass s, double t) {
  if (t < warmup_ || t > end_) return;
  (s == slicing::ServiceClass::RealTimeVideo ? blocked_video_ : blocked_data_)++;
}

MetricsReport MetricsCollector::report() const {
  MetricsReport r;
  const double window = end_ - warmup_;
  if (window > 0.0) {
    r.data_throughput_mbps = data_integral_ / window;
    r.video_throughput_mbps = video_integral_ / window;
  }
  if (rate_weight_integral_ > 0.0) {
    r.mean_latency_s = latency_weight_integral_ / rate_weight_integral_;
  }
  r.arrivals_data = arrivals_data_;
  r.admitted_data = admitted_data_;
  r.blocked_data = blocked_data_;
  r.arrivals_video = arrivals_video_;
  r.admitted_video = admitted_video_;
  r.blocked_video = blocked_video_;
  if (arrivals_data_ > 0) {
    r.blocking_data = static_cast<double>(blocked_data_) / arrivals_data_;
  }
  if (arrivals_video_ > 0) {
    r.blocking_video = static_cast<double>(blocked_video_) / arrivals_video_;
  }
  return r;
}

}  // namespace mrsdn::workload
