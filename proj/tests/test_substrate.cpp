#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "fedslice/substrate.hpp"

using namespace fedslice;

namespace {

Substrate tiny_substrate() {
  Substrate s;
  s.add_domain({"A", "opA"});
  s.add_subdomain({"A.core", "A", "core"});
  s.add_node({"A.n1", "A", "A.core", false});
  s.add_node({"A.n2", "A", "A.core", true});
  ResourceSlate slate;
  slate.id = "A.s1";
  slate.kind = SlateKind::compute;
  slate.domain = "A";
  slate.subdomain = "A.core";
  slate.node = "A.n1";
  slate.capacity = {Qty(8), Qty(16), Qty(100), Qty(0)};
  s.add_slate(slate);
  SubstrateLink l;
  l.id = "A.l1";
  l.scope = LinkScope::intra_domain;
  l.src = {"A", "A.n1"};
  l.dst = {"A", "A.n2"};
  l.bandwidth_capacity = Qty(100);
  l.qos = {Qty(2), Qty(1, 2), 0.001};
  s.add_link(l);
  return s;
}

Amounts vcpu_amt(std::int64_t n) {
  Amounts a;
  a.vcpu = Qty(n);
  return a;
}

}  // namespace

TEST_CASE("allocation boundary and inverse") {
  Substrate s = tiny_substrate();
  auto r1 = s.allocate("A.s1", "nsi-1", "nsi-1@A", vcpu_amt(8));
  REQUIRE(r1.ok());
  auto r2 = s.allocate("A.s1", "nsi-1", "nsi-1@A", vcpu_amt(1));
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.code() == Errc::insufficient_capacity);
  CHECK(r2.error().detail.find("vcpu") != std::string::npos);

  REQUIRE(s.release(r1.value()).ok());
  CHECK(s.slate("A.s1")->free() == s.slate("A.s1")->capacity);
}

TEST_CASE("release errors") {
  Substrate s = tiny_substrate();
  CHECK(s.release("rsv-404").code() == Errc::unknown_reservation);
  auto r = s.allocate("A.s1", "nsi-1", "nsi-1@A", vcpu_amt(2));
  REQUIRE(s.release(r.value()).ok());
  CHECK(s.release(r.value()).code() == Errc::double_release);
}

TEST_CASE("unknown target and empty amounts rejected") {
  Substrate s = tiny_substrate();
  CHECK(s.allocate("ghost", "nsi-1", "x", vcpu_amt(1)).code() == Errc::unknown_id);
  CHECK_FALSE(s.allocate("A.s1", "nsi-1", "x", Amounts{}).ok());
}

TEST_CASE("dedicated slates reject foreign allocations") {
  Substrate s = tiny_substrate();
  auto r = s.allocate("A.s1", "nsi-1", "nsi-1@A", vcpu_amt(2), /*exclusive=*/true);
  REQUIRE(r.ok());
  CHECK(s.allocate("A.s1", "nsi-2", "nsi-2@A", vcpu_amt(1)).code() == Errc::isolation_conflict);
  // The owner itself may keep allocating.
  CHECK(s.allocate("A.s1", "nsi-1", "nsi-1@A", vcpu_amt(1)).ok());
  // Exclusive request on a slate already carrying another NSI fails too.
  Substrate s2 = tiny_substrate();
  REQUIRE(s2.allocate("A.s1", "nsi-1", "nsi-1@A", vcpu_amt(1)).ok());
  CHECK(s2.allocate("A.s1", "nsi-2", "nsi-2@A", vcpu_amt(1), true).code() == Errc::isolation_conflict);
}

TEST_CASE("conservation under random allocate/release with shadow ledger") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 100; ++round) {
    Substrate s = tiny_substrate();
    // Independent shadow ledger: reservation id -> amounts.
    std::map<std::string, Qty> shadow;
    Qty shadow_sum{0};
    std::vector<std::string> live;
    for (int step = 0; step < 60; ++step) {
      if (live.empty() || rng() % 2 == 0) {
        Qty want(static_cast<std::int64_t>(rng() % 5 + 1));
        auto r = s.allocate("A.s1", "nsi-" + std::to_string(rng() % 3), "x", {want, Qty(0), Qty(0), Qty(0)});
        if (shadow_sum + want <= Qty(8)) {
          REQUIRE(r.ok());
          shadow[r.value()] = want;
          shadow_sum += want;
          live.push_back(r.value());
        } else {
          REQUIRE_FALSE(r.ok());
        }
      } else {
        std::size_t pick = rng() % live.size();
        REQUIRE(s.release(live[pick]).ok());
        shadow_sum -= shadow[live[pick]];
        shadow.erase(live[pick]);
        live.erase(live.begin() + pick);
      }
      REQUIRE(s.slate("A.s1")->allocated().vcpu == shadow_sum);
      REQUIRE(shadow_sum <= Qty(8));
    }
  }
}

TEST_CASE("degrade changes attributes and can oversubscribe") {
  Substrate s = tiny_substrate();
  REQUIRE(s.allocate("A.s1", "nsi-1", "nsi-1@A", vcpu_amt(6)).ok());
  nlohmann::json attrs;
  attrs["capacity"] = {{"vcpu", 4}, {"memory_gb", 16}, {"storage_gb", 100}};
  REQUIRE(s.degrade("A.s1", attrs).ok());
  CHECK(s.slate("A.s1")->oversubscribed());
  // Oversubscribed slates accept no further allocations.
  CHECK_FALSE(s.allocate("A.s1", "nsi-1", "nsi-1@A", vcpu_amt(1)).ok());

  nlohmann::json lat;
  lat["latency_ms"] = 50;
  REQUIRE(s.degrade("A.l1", lat).ok());
  CHECK(s.link("A.l1")->qos.latency_ms == Qty(50));
  CHECK(s.degrade("ghost", lat).code() == Errc::unknown_id);
}

TEST_CASE("capability snapshot aggregates and hides topology") {
  Substrate s = tiny_substrate();
  ResourceSlate extra;
  extra.id = "A.s2";
  extra.kind = SlateKind::compute;
  extra.domain = "A";
  extra.subdomain = "A.core";
  extra.node = "A.n2";
  extra.capacity = {Qty(4), Qty(8), Qty(50), Qty(0)};
  s.add_slate(extra);

  auto snap = s.capability_snapshot("A", {"embb"});
  REQUIRE(snap.ok());
  REQUIRE(snap.value().technologies.size() == 1);
  CHECK(snap.value().technologies[0].free.vcpu == Qty(12));

  REQUIRE(s.allocate("A.s1", "nsi-1", "x", vcpu_amt(3)).ok());
  snap = s.capability_snapshot("A", {"embb"});
  CHECK(snap.value().technologies[0].free.vcpu == Qty(9));

  // Structural assertion: the serialized snapshot never names nodes.
  std::string dumped = to_json(snap.value()).dump();
  CHECK(dumped.find("A.n1") == std::string::npos);
  CHECK(dumped.find("A.n2") == std::string::npos);
  CHECK(dumped.find("node") == std::string::npos);

  CHECK(s.capability_snapshot("Z", {}).code() == Errc::unknown_domain);
}
