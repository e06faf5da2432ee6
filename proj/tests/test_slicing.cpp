#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "mrsdn/random.hpp"
#include "mrsdn/slicing.hpp"

using namespace mrsdn::slicing;
using mrsdn::dp::NodeId;
using mrsdn::dp::NodeKind;

namespace {

const NodeId kLte{NodeKind::LteDbs, 0};
const NodeId kWlan{NodeKind::WlanDbs, 0};

SliceManager two_slices() {
  SliceManager m;
  m.register_node(kLte, 50.0);
  m.register_node(kWlan, 29.7);
  SliceDescriptor video{"video", ServiceClass::RealTimeVideo, {{kLte, 0.3}}};
  SliceDescriptor data{"data", ServiceClass::BestEffortData,
                       {{kLte, 0.7}, {kWlan, 1.0}}};
  m.create_slice(video);
  m.create_slice(data);
  return m;
}

}  // namespace

TEST_CASE("slice capacities follow share * node capacity") {
  auto m = two_slices();
  CHECK(m.slice_capacity("video", kLte) == doctest::Approx(15.0));
  CHECK(m.slice_capacity("data", kLte) == doctest::Approx(35.0));
  CHECK(m.slice_capacity("data", kWlan) == doctest::Approx(29.7));
}

TEST_CASE("share sum above 1 at any node is rejected") {
  auto m = two_slices();
  SliceDescriptor greedy{"extra", ServiceClass::BestEffortData, {{kLte, 0.01}}};
  CHECK_THROWS_AS(m.create_slice(greedy), std::runtime_error);
  SliceDescriptor fits{"extra", ServiceClass::BestEffortData, {{kWlan, 0.0}}};
  CHECK_NOTHROW(m.create_slice(fits));
}

TEST_CASE("grants accumulate to the boundary and then deny") {
  auto m = two_slices();
  // 37 video flows of 0.4 Mbps = 14.8 <= 15.0; the 38th (15.2) must fail.
  for (int f = 1; f <= 37; ++f) {
    CHECK(m.grant("video", kLte, f, 0.4) == GrantResult::Granted);
  }
  CHECK(m.admitted_sum("video", kLte) == doctest::Approx(14.8));
  CHECK_FALSE(m.can_admit("video", kLte, 0.4));
  CHECK(m.grant("video", kLte, 38, 0.4) == GrantResult::Denied);

  // A release opens exactly one slot again.
  m.release("video", kLte, 20);
  CHECK(m.can_admit("video", kLte, 0.4));
  CHECK(m.grant("video", kLte, 38, 0.4) == GrantResult::Granted);
  CHECK(m.no_overcommit());
}

TEST_CASE("a grant exactly at capacity is admitted") {
  SliceManager m;
  m.register_node(kLte, 10.0);
  m.create_slice({"s", ServiceClass::BestEffortData, {{kLte, 0.5}}});
  CHECK(m.grant("s", kLte, 1, 5.0) == GrantResult::Granted);
  CHECK(m.grant("s", kLte, 2, 1e-6) == GrantResult::Denied);
}

TEST_CASE("duplicate or unknown flow ids are controller bugs") {
  auto m = two_slices();
  m.grant("data", kLte, 1, 5.0);
  CHECK_THROWS_AS(m.grant("data", kLte, 1, 5.0), std::logic_error);
  CHECK_THROWS_AS(m.release("data", kLte, 99), std::logic_error);
  CHECK_THROWS_AS(m.grant("nope", kLte, 2, 1.0), std::invalid_argument);
  CHECK(m.has_grant("data", kLte, 1));
  CHECK_FALSE(m.has_grant("data", kLte, 2));
}

TEST_CASE("shrink with active flows defers and drains") {
  auto m = two_slices();
  for (int f = 1; f <= 6; ++f) m.grant("data", kLte, f, 5.0);  // 30 of 35

  // Shrinking to 0.5 (25 Mbps) leaves 5 Mbps of overhang draining.
  CHECK(m.resize_slice("data", kLte, 0.5) == ResizeResult::Deferred);
  CHECK(m.no_overcommit());
  CHECK_FALSE(m.can_admit("data", kLte, 5.0));

  // One departure absorbs the overhang; the next slot frees normally.
  m.release("data", kLte, 1);
  CHECK_FALSE(m.can_admit("data", kLte, 5.0));
  m.release("data", kLte, 2);
  CHECK(m.can_admit("data", kLte, 5.0));
  CHECK(m.no_overcommit());
}

TEST_CASE("shrink with headroom applies immediately") {
  auto m = two_slices();
  m.grant("data", kLte, 1, 5.0);
  CHECK(m.resize_slice("data", kLte, 0.2) == ResizeResult::Ok);
  CHECK(m.slice_capacity("data", kLte) == doctest::Approx(10.0));
}

TEST_CASE("growth beyond the share-sum invariant is rejected") {
  auto m = two_slices();
  CHECK_THROWS_AS(m.resize_slice("video", kLte, 0.4), std::runtime_error);
  // Freeing share on one slice lets the other grow into it.
  CHECK(m.resize_slice("data", kLte, 0.5) == ResizeResult::Ok);
  CHECK_NOTHROW(m.resize_slice("video", kLte, 0.4));
}

TEST_CASE("accounting for one slice is independent of the other") {
  // Run a random grant/release sequence on the data slice and check after
  // every step that the video slice's books never move.
  auto m = two_slices();
  for (int f = 1; f <= 10; ++f) m.grant("video", kLte, f, 0.4);
  const double video_before = m.admitted_sum("video", kLte);

  mrsdn::sim::RandomStream rng(17, "slice-iso");
  std::vector<int> active;
  int next_flow = 1000;
  for (int step = 0; step < 2000; ++step) {
    if (active.empty() || rng.uniform01() < 0.55) {
      if (m.can_admit("data", kLte, 5.0)) {
        m.grant("data", kLte, next_flow, 5.0);
        active.push_back(next_flow++);
      }
    } else {
      const auto pick =
          static_cast<std::size_t>(rng.uniform01() * static_cast<double>(active.size()));
      m.release("data", kLte, active[pick]);
      active.erase(active.begin() + static_cast<long>(pick));
    }
    CHECK(m.admitted_sum("video", kLte) == video_before);
    CHECK(m.no_overcommit());
  }
}
