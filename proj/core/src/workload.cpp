#include "mrsdn/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrsdn::workload {

void WorkloadConfig::validate() const {
  if (lambda_d < 0.0 || lambda_v < 0.0) {
    throw std::invalid_argument("WorkloadConfig: arrival rates must be >= 0");
  }
  if (!(mean_hold_s > 0.0)) {
    throw std::invalid_argument("WorkloadConfig: mean_hold must be > 0");
  }
  if (warmup_s < 0.0 || !(duration_s > warmup_s)) {
    throw std::invalid_argument("WorkloadConfig: need duration > warmup >= 0");
  }
}

namespace {

void generate_class(std::vector<Arrival>& out, slicing::ServiceClass service,
                    double lambda, const WorkloadConfig& cfg,
                    const PlacementDisc& disc, const char* arrivals_stream,
                    const char* hold_stream, const char* pos_stream) {
  if (lambda <= 0.0) return;
  sim::RandomStream gaps(cfg.seed, arrivals_stream);
  sim::RandomStream holds(cfg.seed, hold_stream);
  sim::RandomStream pos(cfg.seed, pos_stream);
  double t = gaps.sample_exp(1.0 / lambda);
  while (t < cfg.duration_s) {
    Arrival a;
    a.time_s = t;
    a.service = service;
    a.hold_s = holds.sample_exp(cfg.mean_hold_s);
    // Uniform in the disc via rejection from the bounding square.
    for (;;) {
      const double x = pos.uniform(-disc.radius_m, disc.radius_m);
      const double y = pos.uniform(-disc.radius_m, disc.radius_m);
      if (x * x + y * y <= disc.radius_m * disc.radius_m) {
        a.position = {disc.center.x_m + x, disc.center.y_m + y};
        break;
      }
    }
    out.push_back(a);
    t += gaps.sample_exp(1.0 / lambda);
  }
}

}  // namespace

std::vector<Arrival> generate_arrivals(const WorkloadConfig& cfg,
                                       const PlacementDisc& disc) {
  cfg.validate();
  std::vector<Arrival> out;
  generate_class(out, slicing::ServiceClass::BestEffortData, cfg.lambda_d, cfg, disc,
                 "arrivals-data", "hold-data", "pos-data");
  generate_class(out, slicing::ServiceClass::RealTimeVideo, cfg.lambda_v, cfg, disc,
                 "arrivals-video", "hold-video", "pos-video");
  std::stable_sort(out.begin(), out.end(),
                   [](const Arrival& a, const Arrival& b) { return a.time_s < b.time_s; });
  return out;
}

}  // namespace mrsdn::workload
