#pragma once

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "fedslice/rational.hpp"
#include "fedslice/requirements.hpp"

namespace fedslice {

// One virtualized function in the slice resource graph.
struct VnfSpec {
  VnfId id;
  std::string type;
  Qty vcpu{0};
  Qty memory_gb{0};
  Qty storage_gb{0};
  // Sub-domains whose technology may host this VNF, in preference order.
  std::vector<std::string> technologies;
  std::optional<SubDomainId> pinned_subdomain;
};

// Logical link between two vertices of the graph. Vertices are either VNF
// ids or external attachment node ids.
struct LogicalLinkSpec {
  std::string id;
  std::string src;
  std::string dst;
  Qty bandwidth_mbps{0};
  Qty latency_budget_ms{0};
  Qty jitter_budget_ms{0};
  double loss_budget = 1.0;
};

struct GraphViolation {
  std::string kind;  // "dangling-endpoint" | "disconnected" | "negative-demand" | "duplicate-id"
  std::string where;
};

// The logical network a slice LCM embeds: VNFs, links and the external
// attachment points the slice must reach.
struct SliceResourceGraph {
  std::vector<VnfSpec> vnfs;
  std::vector<LogicalLinkSpec> links;
  std::vector<NodeId> attachments;

  const VnfSpec* find_vnf(const VnfId& id) const {
    for (const auto& v : vnfs)
      if (v.id == id) return &v;
    return nullptr;
  }
  VnfSpec* find_vnf(const VnfId& id) {
    for (auto& v : vnfs)
      if (v.id == id) return &v;
    return nullptr;
  }
};

// Structural validation. Violations are data, not errors: callers decide
// what to do with a bad graph.
inline std::vector<GraphViolation> validate_graph(const SliceResourceGraph& g) {
  std::vector<GraphViolation> out;
  std::set<std::string> vertices;
  for (const auto& v : g.vnfs) {
    if (!vertices.insert(v.id).second) out.push_back({"duplicate-id", v.id});
    if (v.vcpu < Qty(0) || v.memory_gb < Qty(0) || v.storage_gb < Qty(0))
      out.push_back({"negative-demand", v.id});
  }
  for (const auto& a : g.attachments) {
    if (!vertices.insert(a).second) out.push_back({"duplicate-id", a});
  }
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& l : g.links) {
    bool dangling = false;
    for (const std::string* end : {&l.src, &l.dst}) {
      if (!vertices.count(*end)) {
        out.push_back({"dangling-endpoint", l.id + ":" + *end});
        dangling = true;
      }
    }
    if (l.bandwidth_mbps < Qty(0) || l.latency_budget_ms < Qty(0) || l.jitter_budget_ms < Qty(0))
      out.push_back({"negative-demand", l.id});
    if (!dangling) {
      adj[l.src].push_back(l.dst);
      adj[l.dst].push_back(l.src);
    }
  }
  // Connectivity over vnfs + attachments, ignoring dangling links.
  if (vertices.size() > 1) {
    std::set<std::string> seen;
    std::queue<std::string> frontier;
    frontier.push(*vertices.begin());
    seen.insert(*vertices.begin());
    while (!frontier.empty()) {
      std::string cur = frontier.front();
      frontier.pop();
      for (const auto& nxt : adj[cur])
        if (seen.insert(nxt).second) frontier.push(nxt);
    }
    if (seen.size() != vertices.size()) out.push_back({"disconnected", ""});
  }
  return out;
}

inline nlohmann::ordered_json to_json(const SliceResourceGraph& g) {
  nlohmann::ordered_json j;
  auto vnfs = nlohmann::ordered_json::array();
  for (const auto& v : g.vnfs) {
    nlohmann::ordered_json vj;
    vj["id"] = v.id;
    vj["type"] = v.type;
    vj["vcpu"] = qty_to_json(v.vcpu);
    vj["memory_gb"] = qty_to_json(v.memory_gb);
    vj["storage_gb"] = qty_to_json(v.storage_gb);
    vj["technologies"] = v.technologies;
    if (v.pinned_subdomain) vj["pinned_subdomain"] = *v.pinned_subdomain;
    vnfs.push_back(vj);
  }
  j["vnfs"] = vnfs;
  auto links = nlohmann::ordered_json::array();
  for (const auto& l : g.links) {
    nlohmann::ordered_json lj;
    lj["id"] = l.id;
    lj["src"] = l.src;
    lj["dst"] = l.dst;
    lj["bandwidth_mbps"] = qty_to_json(l.bandwidth_mbps);
    lj["latency_budget_ms"] = qty_to_json(l.latency_budget_ms);
    lj["jitter_budget_ms"] = qty_to_json(l.jitter_budget_ms);
    lj["loss_budget"] = l.loss_budget;
    links.push_back(lj);
  }
  j["links"] = links;
  j["attachments"] = g.attachments;
  return j;
}

}  // namespace fedslice
