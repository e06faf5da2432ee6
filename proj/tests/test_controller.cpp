#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "mrsdn/messages.hpp"
#include "mrsdn/simulation.hpp"

using namespace mrsdn;
using harness::Policy;
using harness::SimConfig;
using harness::Simulation;
using slicing::ServiceClass;

namespace {

const dp::NodeId kLte{dp::NodeKind::LteDbs, 0};
const dp::NodeId kWlan{dp::NodeKind::WlanDbs, 0};
const dp::Position kDual{150.0, 0.0};   // inside both footprints
const dp::Position kLteOnly{600.0, 0.0};

SimConfig base_config() {
  SimConfig cfg;
  cfg.workload.duration_s = 1000.0;
  cfg.workload.warmup_s = 0.0;
  return cfg;
}

SimConfig sliced_config() {
  SimConfig cfg = base_config();
  slicing::SliceDescriptor video{"video", ServiceClass::RealTimeVideo, {{kLte, 0.3}}};
  slicing::SliceDescriptor data{"data", ServiceClass::BestEffortData,
                                {{kLte, 0.7}, {kWlan, 1.0}}};
  cfg.slices = {video, data};
  return cfg;
}

std::vector<std::string> kinds_for(Simulation& sim, int ue) {
  std::vector<std::string> out;
  for (const auto& rec : sim.trace().for_ue(ue)) out.push_back(rec.kind);
  return out;
}

int count_kind(Simulation& sim, int ue, const std::string& kind) {
  int n = 0;
  for (const auto& rec : sim.trace().for_ue(ue)) {
    if (rec.kind == kind) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("LTE association runs the nine-step setup sequence") {
  Simulation sim(base_config(), nullptr, /*retain_trace=*/true);
  const int ue = sim.add_manual_arrival(1.0, ServiceClass::BestEffortData,
                                        kLteOnly, 100.0, kLte);
  sim.run_until(2.0);

  REQUIRE(sim.ue_active(ue));
  const auto kinds = kinds_for(sim, ue);
  const std::vector<std::string> expected{
      "RrcConnectionRequest", "AdmissionRequest",     "AdmissionResponse",
      "RrcConnectionSetup",   "BearerSetup-Signaling", "AttachRequest",
      "AuthTransition",       "AttachAccept",          "BearerSetup-Default"};
  REQUIRE(kinds.size() >= expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(kinds[i] == expected[i]);

  CHECK(sim.lte().attached(ue));
  CHECK(sim.lte().has_bearer(ue, dp::BearerKind::Signaling));
  CHECK(sim.lte().has_bearer(ue, dp::BearerKind::Default));
  CHECK(sim.controller().protocol_errors() == 0);
  CHECK(sim.controller().order_errors() == 0);
}

TEST_CASE("WLAN association uses the WLAN-specific handshake") {
  Simulation sim(base_config(), nullptr, true);
  const int ue = sim.add_manual_arrival(1.0, ServiceClass::BestEffortData,
                                        kDual, 100.0, kWlan);
  sim.run_until(2.0);

  REQUIRE(sim.ue_active(ue));
  const auto kinds = kinds_for(sim, ue);
  REQUIRE(kinds.size() >= 4);
  CHECK(kinds[0] == "WlanAssocRequest");
  CHECK(kinds[3] == "WlanAssocResponse");
  CHECK(count_kind(sim, ue, "RrcConnectionRequest") == 0);
  CHECK(count_kind(sim, ue, "AuthTransition") == 1);
  CHECK(sim.wlan().attached(ue));
}

TEST_CASE("data flow setup installs rules on the serving dBS and the gateway") {
  Simulation sim(base_config(), nullptr, true);
  const int ue = sim.add_manual_arrival(1.0, ServiceClass::BestEffortData,
                                        kDual, 100.0, kWlan);
  sim.run_until(2.0);

  // Table-miss punt followed by paired installs.
  CHECK(count_kind(sim, ue, "PacketIn") >= 1);
  CHECK(count_kind(sim, ue, "FlowMod") >= 2);
  CHECK(sim.wlan().flow_table().size() == 2);  // uplink + downlink
  CHECK(sim.gateway().flow_table().size() == 2);
  const auto out = sim.wlan().handle_flow_start(ue, ue, dp::Direction::Uplink);
  CHECK(out.kind == dp::FlowStartOutcome::Kind::Forwarded);
  CHECK(out.action.next == sim.gateway().id());
}

TEST_CASE("video admission fills exactly the reserved slot count") {
  Simulation sim(sliced_config(), nullptr, true);
  // 0.3 * 50 / 0.4 = 37 slots; the 38th concurrent video user is refused.
  std::vector<int> ues;
  for (int i = 0; i < 38; ++i) {
    ues.push_back(sim.add_manual_arrival(1.0 + 0.1 * i, ServiceClass::RealTimeVideo,
                                         kLteOnly, 500.0, kLte));
  }
  sim.run_until(10.0);

  for (int i = 0; i < 37; ++i) CHECK(sim.ue_active(ues[static_cast<std::size_t>(i)]));
  CHECK_FALSE(sim.ue_active(ues.back()));
  CHECK(sim.slices().admitted_sum("video", kLte) == doctest::Approx(14.8));
  // The video slice never spills into the data share.
  CHECK(sim.slices().admitted_sum("data", kLte) == doctest::Approx(0.0));
  CHECK(sim.slices().no_overcommit());

  // Still full: a later arrival is refused too, until a slot drains.
  const int late = sim.add_manual_arrival(20.0, ServiceClass::RealTimeVideo,
                                          kLteOnly, 500.0, kLte);
  sim.run_until(21.0);
  CHECK_FALSE(sim.ue_active(late));

  // After every first-wave hold expires (arrivals by t=4.7 + 500 s), a
  // fresh video user is admitted again.
  const int fresh = sim.add_manual_arrival(520.0, ServiceClass::RealTimeVideo,
                                           kLteOnly, 500.0, kLte);
  sim.run_until(521.0);
  CHECK(sim.ue_active(fresh));
}

TEST_CASE("video flows get a dedicated bearer toward the gateway") {
  Simulation sim(sliced_config(), nullptr, true);
  const int ue = sim.add_manual_arrival(1.0, ServiceClass::RealTimeVideo,
                                        kLteOnly, 100.0, kLte);
  sim.run_until(2.0);
  REQUIRE(sim.ue_active(ue));
  CHECK(sim.lte().has_bearer(ue, dp::BearerKind::Dedicated));
  CHECK(count_kind(sim, ue, "BearerSetup-Dedicated") == 1);
}

TEST_CASE("flow translation is per-RAT") {
  Simulation sim(base_config());
  ctrl::FlowSpec video;
  video.qos = ServiceClass::RealTimeVideo;
  ctrl::FlowSpec data;
  data.qos = ServiceClass::BestEffortData;

  const auto lte_video = sim.controller().raf_translate(video, dp::Rat::Lte);
  CHECK(lte_video.bearer_kind == dp::BearerKind::Dedicated);
  CHECK(lte_video.rate_mbps == doctest::Approx(0.4));

  const auto lte_data = sim.controller().raf_translate(data, dp::Rat::Lte);
  CHECK(lte_data.bearer_kind == dp::BearerKind::Default);
  CHECK(lte_data.rate_mbps == doctest::Approx(5.0));

  const auto wlan_data = sim.controller().raf_translate(data, dp::Rat::Wlan);
  CHECK(wlan_data.rate_mbps == 0.0);  // elastic airtime share
  CHECK(wlan_data.airtime_share > 0.0);

  CHECK_THROWS_AS(sim.controller().raf_translate(video, dp::Rat::Wlan),
                  std::invalid_argument);
}

TEST_CASE("RAT-specific kinds never cross into the common layers") {
  using ctrl::MsgKind;
  CHECK(ctrl::is_rat_specific(MsgKind::RrcConnectionRequest));
  CHECK(ctrl::is_rat_specific(MsgKind::RrcConnectionSetup));
  CHECK(ctrl::is_rat_specific(MsgKind::WlanAssocRequest));
  CHECK(ctrl::is_rat_specific(MsgKind::WlanAssocResponse));
  CHECK_FALSE(ctrl::is_rat_specific(MsgKind::AdmissionRequest));
  CHECK_FALSE(ctrl::is_rat_specific(MsgKind::FlowMod));
  CHECK_FALSE(ctrl::is_rat_specific(MsgKind::BearerSetup));
  CHECK_FALSE(ctrl::is_rat_specific(MsgKind::PacketIn));
}

TEST_CASE("load-aware selection: WLAN first, LTE next, WLAN overflow") {
  Simulation sim(sliced_config(), nullptr, true);
  auto& ctl = sim.controller();

  // Empty network: lightly loaded WLAN wins for data, LTE always for video.
  CHECK(ctl.acpf_select_rat(ServiceClass::BestEffortData, kDual) == kWlan);
  CHECK(ctl.acpf_select_rat(ServiceClass::RealTimeVideo, kDual) == kLte);
  CHECK(ctl.acpf_select_rat(ServiceClass::BestEffortData, kLteOnly) == kLte);

  // Fill WLAN to the user threshold (N_w = 5): data shifts to LTE.
  double t = 1.0;
  for (int i = 0; i < 5; ++i) {
    sim.add_manual_arrival(t, ServiceClass::BestEffortData, kDual, 900.0, kWlan);
    t += 0.1;
  }
  sim.run_until(t + 1.0);
  t = sim.queue().now();
  CHECK(ctl.data_user_count(kWlan) == 5);
  CHECK(ctl.acpf_select_rat(ServiceClass::BestEffortData, kDual) == kLte);

  // Fill the LTE data share (0.7 * 50 / 5 = 7 users): overflow to WLAN.
  for (int i = 0; i < 7; ++i) {
    t += 0.1;
    sim.add_manual_arrival(t, ServiceClass::BestEffortData, kLteOnly, 900.0, kLte);
    t += 0.1;
  }
  sim.run_until(t + 1.0);
  CHECK_FALSE(sim.slices().can_admit("data", kLte, 5.0));
  CHECK(ctl.acpf_select_rat(ServiceClass::BestEffortData, kDual) == kWlan);
  // Outside WLAN coverage there is nowhere left to go.
  CHECK_FALSE(ctl.acpf_select_rat(ServiceClass::BestEffortData, kLteOnly).has_value());
}

TEST_CASE("selection matches a brute-force oracle over occupancy states") {
  // Drive WLAN occupancy 0..6 and LTE data occupancy 0..7 via scripted
  // arrivals, and compare the policy's pick with the rule written out
  // directly from the three-step decision.
  for (int wlan_n : {0, 2, 4, 5, 6}) {
    for (int lte_n : {0, 3, 7}) {
      Simulation sim(sliced_config());
      double t = 1.0;
      for (int i = 0; i < wlan_n; ++i) {
        sim.add_manual_arrival(t, ServiceClass::BestEffortData, kDual, 900.0, kWlan);
        t += 0.05;
      }
      for (int i = 0; i < lte_n; ++i) {
        sim.add_manual_arrival(t, ServiceClass::BestEffortData, kLteOnly, 900.0, kLte);
        t += 0.05;
      }
      sim.run_until(t + 1.0);
      REQUIRE(sim.controller().data_user_count(kWlan) == wlan_n);

      const auto pick =
          sim.controller().acpf_select_rat(ServiceClass::BestEffortData, kDual);
      dp::NodeId expected;
      if (wlan_n < 5) {
        expected = kWlan;
      } else if (lte_n < 7) {
        expected = kLte;
      } else {
        expected = kWlan;
      }
      CHECK(pick == expected);
    }
  }
}

TEST_CASE("legacy baselines pick without load awareness") {
  Simulation sim(base_config());
  std::vector<dp::DataPlaneNode*> nodes{&sim.lte(), &sim.wlan(), &sim.gateway()};

  CHECK(harness::baseline_legacy_select(Policy::LegacyWlanFirst, kDual,
                                        sim.config().radio, nodes) == kWlan);
  CHECK(harness::baseline_legacy_select(Policy::LegacyWlanFirst, kLteOnly,
                                        sim.config().radio, nodes) == kLte);

  // Signal-based: at (150,0) the 23 dB tx-power gap outweighs WLAN's 50 m
  // vs 150 m distance edge (37.6*log10(3) ~ 18 dB), so LTE wins there; at
  // the AP itself the WLAN signal dominates.
  const double wlan_dbm = radio::rx_power_dbm(23.0, 0.05);
  const double lte_dbm = radio::rx_power_dbm(46.0, 0.15);
  REQUIRE(lte_dbm > wlan_dbm);
  CHECK(harness::baseline_legacy_select(Policy::LegacySignalBased, kDual,
                                        sim.config().radio, nodes) == kLte);
  const dp::Position at_ap{200.0, 0.0};
  CHECK(harness::baseline_legacy_select(Policy::LegacySignalBased, at_ap,
                                        sim.config().radio, nodes) == kWlan);
  CHECK(harness::baseline_legacy_select(Policy::LegacySignalBased, kLteOnly,
                                        sim.config().radio, nodes) == kLte);
}

TEST_CASE("handover to a stronger cell skips re-authentication") {
  Simulation sim(base_config(), nullptr, true);
  const int ue = sim.add_manual_arrival(1.0, ServiceClass::BestEffortData,
                                        kDual, 500.0, kWlan);
  sim.run_until(2.0);
  REQUIRE(sim.ue_serving(ue) == kWlan);

  sim.inject_measurement_report(3.0, ue, {{kLte, -60.0}, {kWlan, -70.0}});
  sim.run_until(4.0);

  CHECK(sim.handovers_completed() == 1);
  CHECK(sim.ue_serving(ue) == kLte);
  CHECK(sim.ue_active(ue));
  CHECK(count_kind(sim, ue, "HandoverCommand") == 1);
  // One authentication for the whole UE lifetime.
  CHECK(count_kind(sim, ue, "AuthTransition") == 1);
  // Old-path teardown: nothing referencing the UE is left on the WLAN node.
  CHECK(sim.wlan().clean_of_ue(ue));
  CHECK(sim.lte().attached(ue));
  CHECK(sim.lte().has_bearer(ue, dp::BearerKind::Default));
  CHECK(sim.slices().no_overcommit());
}

TEST_CASE("no handover inside the hysteresis margin") {
  Simulation sim(base_config(), nullptr, true);
  const int ue = sim.add_manual_arrival(1.0, ServiceClass::BestEffortData,
                                        kDual, 500.0, kWlan);
  sim.run_until(2.0);

  // 2 dB better than serving: below the 3 dB hysteresis, stay put.
  sim.inject_measurement_report(3.0, ue, {{kLte, -68.0}, {kWlan, -70.0}});
  sim.run_until(4.0);
  CHECK(sim.handovers_completed() == 0);
  CHECK(sim.ue_serving(ue) == kWlan);
  CHECK(count_kind(sim, ue, "HandoverCommand") == 0);

  // Exactly at the margin qualifies (>= H).
  sim.inject_measurement_report(5.0, ue, {{kLte, -67.0}, {kWlan, -70.0}});
  sim.run_until(6.0);
  CHECK(sim.handovers_completed() == 1);
}

TEST_CASE("handover is admission-gated at the target") {
  // Give the data slice no LTE share at all: the stronger LTE signal must
  // not trigger a handover the target cannot carry.
  SimConfig cfg = base_config();
  slicing::SliceDescriptor data{"data", ServiceClass::BestEffortData,
                                {{kLte, 0.0}, {kWlan, 1.0}}};
  cfg.slices = {data};
  Simulation sim(cfg, nullptr, true);
  const int ue = sim.add_manual_arrival(1.0, ServiceClass::BestEffortData,
                                        kDual, 500.0, kWlan);
  sim.run_until(2.0);
  REQUIRE(sim.ue_serving(ue) == kWlan);

  sim.inject_measurement_report(3.0, ue, {{kLte, -50.0}, {kWlan, -70.0}});
  sim.run_until(4.0);
  CHECK(sim.handovers_completed() == 0);
  CHECK(sim.ue_serving(ue) == kWlan);
  CHECK(sim.ue_active(ue));
}

TEST_CASE("authentication is monotone across the lifetime") {
  Simulation sim(base_config(), nullptr, true);
  const int ue = sim.add_manual_arrival(1.0, ServiceClass::BestEffortData,
                                        kDual, 500.0, kWlan);
  sim.run_until(2.0);
  auto* ctx = sim.controller().ue_context(ue);
  REQUIRE(ctx != nullptr);
  CHECK(ctx->authenticated);

  // Bounce between RATs twice; authenticated never flips back.
  sim.inject_measurement_report(3.0, ue, {{kLte, -50.0}, {kWlan, -90.0}});
  sim.run_until(4.0);
  sim.inject_measurement_report(5.0, ue, {{kLte, -90.0}, {kWlan, -50.0}});
  sim.run_until(6.0);
  CHECK(sim.handovers_completed() == 2);
  CHECK(sim.controller().ue_context(ue)->authenticated);
  CHECK(count_kind(sim, ue, "AuthTransition") == 1);
}

TEST_CASE("departure scrubs every node and releases the grant") {
  Simulation sim(sliced_config(), nullptr, true);
  const int data_ue = sim.add_manual_arrival(1.0, ServiceClass::BestEffortData,
                                             kLteOnly, 5.0, kLte);
  const int video_ue = sim.add_manual_arrival(1.0, ServiceClass::RealTimeVideo,
                                              kLteOnly, 5.0, kLte);
  sim.run_until(2.0);
  REQUIRE(sim.ue_active(data_ue));
  REQUIRE(sim.ue_active(video_ue));
  CHECK(sim.slices().admitted_sum("data", kLte) == doctest::Approx(5.0));
  CHECK(sim.slices().admitted_sum("video", kLte) == doctest::Approx(0.4));

  sim.run_until(10.0);  // both holds expire at t = 6
  CHECK_FALSE(sim.ue_active(data_ue));
  CHECK(sim.lte().clean_of_ue(data_ue));
  CHECK(sim.lte().clean_of_ue(video_ue));
  CHECK(sim.gateway().clean_of_ue(data_ue));
  CHECK(sim.slices().admitted_sum("data", kLte) == doctest::Approx(0.0));
  CHECK(sim.slices().admitted_sum("video", kLte) == doctest::Approx(0.0));
  CHECK(sim.controller().ue_context(data_ue) == nullptr);
}

TEST_CASE("malformed ingress counts protocol errors instead of crashing") {
  Simulation sim(base_config());
  ctrl::ControlMessage bogus;
  bogus.kind = ctrl::MsgKind::PacketIn;
  bogus.origin_node = dp::NodeId{dp::NodeKind::WlanDbs, 9};  // unregistered
  bogus.ue_id = 1;
  sim.controller().dcif_ingress(bogus);
  CHECK(sim.controller().protocol_errors() == 1);

  // Flow setup for a UE that never associated is an ordering violation.
  sim.controller().fcf_setup_flow(999, ServiceClass::BestEffortData, kWlan);
  CHECK(sim.controller().order_errors() == 1);
}
