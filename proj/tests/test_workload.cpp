#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrsdn/erlang.hpp"
#include "mrsdn/metrics.hpp"
#include "mrsdn/workload.hpp"

using namespace mrsdn::workload;
using mrsdn::slicing::ServiceClass;

namespace {

const PlacementDisc kDisc{{200.0, 0.0}, 100.0};

WorkloadConfig cfg(double ld, double lv, std::uint64_t seed = 1) {
  WorkloadConfig c;
  c.lambda_d = ld;
  c.lambda_v = lv;
  c.duration_s = 10000.0;
  c.warmup_s = 0.0;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("arrival counts match the Poisson mean within 4 sigma") {
  // N ~ Poisson(lambda * T): mean 1000, sd ~31.6 for the data class.
  const auto arrivals = generate_arrivals(cfg(0.1, 0.05), kDisc);
  std::size_t data = 0, video = 0;
  for (const auto& a : arrivals) {
    (a.service == ServiceClass::BestEffortData ? data : video)++;
  }
  CHECK(std::abs(static_cast<double>(data) - 1000.0) < 4 * 31.7);
  CHECK(std::abs(static_cast<double>(video) - 500.0) < 4 * 22.4);
}

TEST_CASE("arrivals are time sorted and inside the horizon and disc") {
  const auto arrivals = generate_arrivals(cfg(0.2, 0.2), kDisc);
  REQUIRE(!arrivals.empty());
  CHECK(std::is_sorted(arrivals.begin(), arrivals.end(),
                       [](const Arrival& a, const Arrival& b) {
                         return a.time_s < b.time_s;
                       }));
  for (const auto& a : arrivals) {
    CHECK(a.time_s >= 0.0);
    CHECK(a.time_s <= 10000.0);
    CHECK(a.hold_s > 0.0);
    CHECK(mrsdn::dp::distance_m(a.position, kDisc.center) <= kDisc.radius_m + 1e-9);
  }
}

TEST_CASE("sample holding-time mean approaches the configured mean") {
  auto c = cfg(1.0, 0.0);
  c.mean_hold_s = 60.0;
  const auto arrivals = generate_arrivals(c, kDisc);
  REQUIRE(arrivals.size() > 5000);
  double sum = 0.0;
  for (const auto& a : arrivals) sum += a.hold_s;
  const double mean = sum / static_cast<double>(arrivals.size());
  // sd of the mean is 60/sqrt(n) < 0.85; allow 4 sigma.
  CHECK(std::abs(mean - 60.0) < 3.4);
}

TEST_CASE("sweeping one class leaves the other class's sample path fixed") {
  const auto base = generate_arrivals(cfg(0.1, 0.1), kDisc);
  const auto swept = generate_arrivals(cfg(0.5, 0.1), kDisc);

  auto videos = [](const std::vector<Arrival>& all) {
    std::vector<Arrival> v;
    for (const auto& a : all) {
      if (a.service == ServiceClass::RealTimeVideo) v.push_back(a);
    }
    return v;
  };
  const auto v1 = videos(base);
  const auto v2 = videos(swept);
  REQUIRE(v1.size() == v2.size());
  for (std::size_t i = 0; i < v1.size(); ++i) {
    CHECK(v1[i].time_s == v2[i].time_s);
    CHECK(v1[i].hold_s == v2[i].hold_s);
    CHECK(v1[i].position.x_m == v2[i].position.x_m);
    CHECK(v1[i].position.y_m == v2[i].position.y_m);
  }
}

TEST_CASE("identical seeds reproduce identical workloads, different seeds differ") {
  const auto a = generate_arrivals(cfg(0.1, 0.1, 7), kDisc);
  const auto b = generate_arrivals(cfg(0.1, 0.1, 7), kDisc);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].time_s == b[i].time_s);

  const auto c = generate_arrivals(cfg(0.1, 0.1, 8), kDisc);
  CHECK((c.size() != a.size() || c.front().time_s != a.front().time_s));
}

TEST_CASE("workload validation") {
  WorkloadConfig c;
  CHECK_NOTHROW(c.validate());
  c.lambda_d = -0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = WorkloadConfig{};
  c.warmup_s = c.duration_s + 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = WorkloadConfig{};
  c.mean_hold_s = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("erlang-b closed-form spot values") {
  // Hand-computable: B(A,0) = 1; B(1,1) = 1/2; B(2,2) = 0.4.
  CHECK(erlang_b(1.0, 0) == doctest::Approx(1.0));
  CHECK(erlang_b(1.0, 1) == doctest::Approx(0.5));
  CHECK(erlang_b(2.0, 2) == doctest::Approx(0.4));
  // B(2,3) = B2*2/(3+2*B2) = 0.8/3.8
  CHECK(erlang_b(2.0, 3) == doctest::Approx(0.8 / 3.8));
  CHECK(erlang_b(0.0, 5) == doctest::Approx(0.0));
}

TEST_CASE("erlang-b is monotone in load and in servers") {
  for (int c = 1; c <= 30; ++c) {
    CHECK(erlang_b(10.0, c) < erlang_b(10.0, c - 1));
  }
  for (double a = 1.0; a < 30.0; a += 1.0) {
    CHECK(erlang_b(a + 1.0, 10) > erlang_b(a, 10));
  }
}

TEST_CASE("recursion agrees with the CTMC stationary solution") {
  // Two fully independent derivations of the same quantity must coincide
  // to solver precision.
  for (int servers = 1; servers <= 10; ++servers) {
    for (double lambda : {0.05, 0.1, 0.5, 1.0}) {
      const double hold = 60.0;
      const double a = erlang_b(lambda * hold, servers);
      const double b = ctmc_blocking(lambda, hold, servers);
      CHECK(std::abs(a - b) < 1e-12);
    }
  }
  // The production operating point.
  CHECK(std::abs(erlang_b(0.5 * 60.0, 37) - ctmc_blocking(0.5, 60.0, 37)) < 1e-10);
}

TEST_CASE("metrics integrate piecewise-constant state exactly") {
  LatencyParams lat;
  MetricsCollector m(/*warmup=*/10.0, /*end=*/110.0, /*wlan_cap=*/29.7,
                     /*demand=*/5.0, lat);
  // 0.4 Mbps of video from t=0 to t=60, then zero: the window [10,110]
  // sees 50 s of it -> 0.4 * 50 / 100 = 0.2 Mbps average.
  m.add_video_rate(0.4, 0.0);
  // 5 Mbps LTE data over the whole window.
  m.add_lte_data_rate(5.0, 10.0);
  m.add_video_rate(-0.4, 60.0);
  m.finalize(110.0);

  const auto rep = m.report();
  CHECK(rep.video_throughput_mbps == doctest::Approx(0.2));
  CHECK(rep.data_throughput_mbps == doctest::Approx(5.0));
  CHECK(rep.mean_latency_s == doctest::Approx(lat.lte_access_s));
}

TEST_CASE("wlan share saturates at the effective capacity") {
  LatencyParams lat;
  MetricsCollector m(0.0, 100.0, 29.7, 5.0, lat);
  for (int i = 0; i < 4; ++i) m.add_wlan_data_user(1, 0.0);
  CHECK(m.wlan_realized_mbps() == doctest::Approx(20.0));  // 4 * 5
  for (int i = 0; i < 4; ++i) m.add_wlan_data_user(1, 0.0);
  CHECK(m.wlan_realized_mbps() == doctest::Approx(29.7));  // capped
}

TEST_CASE("blocking is NaN with no arrivals and a ratio otherwise") {
  LatencyParams lat;
  MetricsCollector m(0.0, 100.0, 29.7, 5.0, lat);
  m.count_arrival(ServiceClass::BestEffortData, 1.0);
  m.count_admitted(ServiceClass::BestEffortData, 1.0);
  m.count_arrival(ServiceClass::BestEffortData, 2.0);
  m.count_blocked(ServiceClass::BestEffortData, 2.0);
  m.finalize(100.0);
  const auto rep = m.report();
  CHECK(rep.blocking_data == doctest::Approx(0.5));
  CHECK(std::isnan(rep.blocking_video));
  CHECK(rep.arrivals_data == 2);
  CHECK(rep.admitted_data == 1);
  CHECK(rep.blocked_data == 1);
}

TEST_CASE("events outside the window are not counted") {
  LatencyParams lat;
  MetricsCollector m(10.0, 20.0, 29.7, 5.0, lat);
  m.count_arrival(ServiceClass::BestEffortData, 5.0);   // before warmup
  m.count_arrival(ServiceClass::BestEffortData, 15.0);  // inside
  m.count_arrival(ServiceClass::BestEffortData, 25.0);  // after end
  m.finalize(30.0);
  CHECK(m.report().arrivals_data == 1);
}
