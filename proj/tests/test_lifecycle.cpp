#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fedslice/lifecycle.hpp"

using namespace fedslice;

TEST_CASE("happy path transitions") {
  SliceState s = SliceState::Requested;
  for (SliceEvent e : {SliceEvent::Admit, SliceEvent::PlanReady, SliceEvent::BeginInstantiation,
                       SliceEvent::AllConstituentsReady}) {
    auto next = next_state(s, e);
    REQUIRE(next.ok());
    s = next.value();
  }
  CHECK(s == SliceState::Operational);
  CHECK(next_state(s, SliceEvent::Decommission).value() == SliceState::Decommissioned);
}

TEST_CASE("decommissioned is terminal") {
  for (SliceEvent e : {SliceEvent::Admit, SliceEvent::BeginModify, SliceEvent::Decommission, SliceEvent::Recovered})
    CHECK(next_state(SliceState::Decommissioned, e).code() == Errc::invalid_transition);
}

TEST_CASE("transition table is closed under event fuzzing") {
  // Every (state, event) pair either yields a defined state or a typed
  // error; random walks can never leave the enum.
  std::mt19937_64 rng(99);
  const SliceEvent all_events[] = {
      SliceEvent::Admit,          SliceEvent::Reject,          SliceEvent::PlanReady,
      SliceEvent::BeginInstantiation, SliceEvent::AllConstituentsReady, SliceEvent::InstantiationFailed,
      SliceEvent::BeginModify,    SliceEvent::ModifySucceeded, SliceEvent::ModifyExhausted,
      SliceEvent::DegradationDetected, SliceEvent::Recovered,  SliceEvent::Decommission};
  for (int run = 0; run < 2000; ++run) {
    SliceState s = SliceState::Requested;
    for (int step = 0; step < 30; ++step) {
      SliceEvent e = all_events[rng() % std::size(all_events)];
      auto next = next_state(s, e);
      if (next.ok()) {
        s = next.value();
        REQUIRE(parse_state(state_name(s)).has_value());
      } else {
        REQUIRE(next.code() == Errc::invalid_transition);
      }
    }
  }
}

TEST_CASE("nsi record json round trip is field identical") {
  NsiRecord r;
  r.nsi_id = "nsi-1";
  r.tenant_id = "t1";
  r.state = SliceState::Operational;
  r.nssis = {"nsi-1@A", "nsi-1@B"};
  InterconnectReservation ic;
  ic.wan_link_id = "wan.ab";
  ic.reservation_id = "rsv-3";
  ic.domain_a = "A";
  ic.domain_b = "B";
  ic.border_a = {"A", "A.b1"};
  ic.border_b = {"B", "B.b1"};
  ic.bandwidth_mbps = Qty(50);
  ic.state = InterconnectState::Reserved;
  r.interconnects.push_back(ic);
  r.requirements.service_type = "embb";
  r.requirements.bandwidth_mbps = Qty(50);
  r.requirements.latency_budget_ms = Qty(77, 2);
  r.requirements.jitter_budget_ms = Qty(10);
  r.requirements.max_error_rate = 0.015;
  r.requirements.max_packet_loss = 0.02;
  r.requirements.compute_vcpu = Qty(6);
  r.requirements.memory_gb = Qty(12);
  r.requirements.storage_gb = Qty(60);
  r.requirements.coverage = {"A", "B"};
  r.requirements.endpoints = {{"A", "A.n1"}, {"B", "B.n2"}};
  r.requirements.isolation = Isolation::dedicated;
  r.schedule.start_tick = 3;
  r.schedule.end_tick = 50;

  NsiRecord back = nsi_from_json(to_json(r));
  CHECK(back.nsi_id == r.nsi_id);
  CHECK(back.tenant_id == r.tenant_id);
  CHECK(back.state == r.state);
  CHECK(back.nssis == r.nssis);
  REQUIRE(back.interconnects.size() == 1);
  CHECK(back.interconnects[0].wan_link_id == ic.wan_link_id);
  CHECK(back.interconnects[0].state == InterconnectState::Reserved);
  CHECK(back.interconnects[0].bandwidth_mbps == ic.bandwidth_mbps);
  CHECK(back.requirements.latency_budget_ms == r.requirements.latency_budget_ms);
  CHECK(back.requirements.isolation == Isolation::dedicated);
  CHECK(back.requirements.coverage == r.requirements.coverage);
  CHECK(back.requirements.endpoints == r.requirements.endpoints);
  CHECK(back.schedule.start_tick == 3);
  REQUIRE(back.schedule.end_tick.has_value());
  CHECK(*back.schedule.end_tick == 50);
  // Serialized forms match exactly as well.
  CHECK(to_json(back).dump() == to_json(r).dump());
}

TEST_CASE("nssi record json round trip") {
  NssiRecord n;
  n.nssi_id = "nsi-1@A";
  n.parent_nsi = "nsi-1";
  n.domain_id = "A";
  n.state = SliceState::Instantiating;
  n.embedding["nsi-1@A.ctl"] = {"A.s1", "A.n1"};
  n.paths["nsi-1@A.link0"] = {"A.l1", "A.l2"};
  n.allocated["A.s1"]["vcpu"] = Qty(3, 2);
  NssiRecord back = nssi_from_json(to_json(n));
  CHECK(to_json(back).dump() == to_json(n).dump());
  CHECK(back.allocated["A.s1"]["vcpu"] == Qty(3, 2));
}
