#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "fedslice/slice_graph.hpp"

using namespace fedslice;

namespace {

VnfSpec vnf(const std::string& id, int vcpu = 1) {
  VnfSpec v;
  v.id = id;
  v.type = "t";
  v.vcpu = Qty(vcpu);
  return v;
}

LogicalLinkSpec link(const std::string& id, const std::string& a, const std::string& b) {
  LogicalLinkSpec l;
  l.id = id;
  l.src = a;
  l.dst = b;
  l.bandwidth_mbps = Qty(1);
  return l;
}

}  // namespace

TEST_CASE("single vnf with connected endpoint is valid") {
  SliceResourceGraph g;
  g.vnfs.push_back(vnf("v1"));
  g.attachments = {"ep1"};
  g.links.push_back(link("l1", "ep1", "v1"));
  CHECK(validate_graph(g).empty());
}

TEST_CASE("dangling link endpoint is reported") {
  SliceResourceGraph g;
  g.vnfs.push_back(vnf("v1"));
  g.links.push_back(link("l1", "v1", "ghost"));
  auto violations = validate_graph(g);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations[0].kind == "dangling-endpoint");
}

TEST_CASE("negative demand is reported") {
  SliceResourceGraph g;
  g.vnfs.push_back(vnf("v1", -2));
  auto violations = validate_graph(g);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == "negative-demand");
}

TEST_CASE("disconnected clusters detected via independent traversal") {
  // Build two random connected clusters with no edge between them; an
  // independent union-find confirms the component count the validator sees.
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    SliceResourceGraph g;
    int n1 = 2 + static_cast<int>(rng() % 3), n2 = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n1 + n2; ++i) g.vnfs.push_back(vnf("v" + std::to_string(i)));
    int lid = 0;
    auto connect = [&](int from, int count) {
      for (int i = from + 1; i < from + count; ++i) {
        int j = from + static_cast<int>(rng() % (i - from));
        g.links.push_back(link("l" + std::to_string(lid++), "v" + std::to_string(i), "v" + std::to_string(j)));
      }
    };
    connect(0, n1);
    connect(n1, n2);

    // Union-find oracle.
    std::vector<int> parent(n1 + n2);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& l : g.links) parent[find(std::stoi(l.src.substr(1)))] = find(std::stoi(l.dst.substr(1)));
    std::set<int> roots;
    for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
    REQUIRE(roots.size() == 2);

    auto violations = validate_graph(g);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == "disconnected");
  }
}
