#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fedslice/qos.hpp"
#include "fedslice/rational.hpp"
#include "fedslice/requirements.hpp"
#include "fedslice/result.hpp"
#include "fedslice/slice_graph.hpp"
#include "fedslice/substrate.hpp"

namespace fedslice {

// Reserved service type for pure pass-through sub-slices (no VNFs, one
// border-to-border chain).
inline constexpr const char* kTransitService = "transit";

// Template VNF: demands are fractions of the sub-request amounts, so a
// template scales with whatever share of the slice lands in this domain.
struct TemplateVnf {
  std::string name;
  std::string type;
  std::vector<std::string> technologies;  // admissible sub-domain technologies, preference order
  Qty vcpu_share{0};
  Qty memory_share{0};
  Qty storage_share{0};
};

struct SliceTemplate {
  std::string id;
  std::string service_type;
  std::vector<TemplateVnf> vnfs;  // service chain order

  std::set<std::string> vnf_types() const {
    std::set<std::string> out;
    for (const auto& v : vnfs) out.insert(v.type);
    return out;
  }
};

// Per-domain catalog: which VNF types realize each service type, plus the
// template shelf. Scenario data, so domains can be heterogeneous.
struct DomainCatalog {
  DomainId domain;
  std::map<std::string, std::vector<std::string>> service_map;  // service type -> required VNF types
  std::vector<SliceTemplate> templates;

  bool supports(const std::string& service_type) const { return service_map.count(service_type) > 0; }

  std::set<std::string> supported_services() const {
    std::set<std::string> out;
    for (const auto& [st, _] : service_map) out.insert(st);
    return out;
  }
};

// What one domain is asked to realize: its share of the demands, its slice
// of the QoS budgets, and the attachment points it must reach.
struct DomainSubRequest {
  NsiId nsi;
  NssiId nssi;
  DomainId domain;
  std::string service_type;
  bool transit = false;
  Amounts demands;  // vcpu/memory/storage share plus bandwidth_mbps
  Qty latency_share_ms{0};
  Qty jitter_share_ms{0};
  double error_share = 1.0;
  double loss_share = 1.0;
  Isolation isolation = Isolation::shared;
  std::vector<NodeId> endpoints;  // tenant attachment nodes in this domain
  std::vector<NodeId> borders;    // WAN attachment nodes from stitching
  int revision = 1;

  std::vector<NodeId> anchors() const {
    std::vector<NodeId> out = endpoints;
    out.insert(out.end(), borders.begin(), borders.end());
    return out;
  }
};

inline Json to_json(const DomainSubRequest& s) {
  Json j;
  j["nsi"] = s.nsi;
  j["nssi"] = s.nssi;
  j["domain"] = s.domain;
  j["service_type"] = s.service_type;
  j["transit"] = s.transit;
  j["demands"] = to_json(s.demands);
  j["latency_share_ms"] = qty_to_json(s.latency_share_ms);
  j["jitter_share_ms"] = qty_to_json(s.jitter_share_ms);
  j["error_share"] = s.error_share;
  j["loss_share"] = s.loss_share;
  j["isolation"] = isolation_name(s.isolation);
  j["endpoints"] = s.endpoints;
  j["borders"] = s.borders;
  j["revision"] = s.revision;
  return j;
}

inline DomainSubRequest sub_request_from_json(const Json& j) {
  DomainSubRequest s;
  s.nsi = j.at("nsi").get<std::string>();
  s.nssi = j.at("nssi").get<std::string>();
  s.domain = j.at("domain").get<std::string>();
  s.service_type = j.at("service_type").get<std::string>();
  s.transit = j.at("transit").get<bool>();
  s.demands = amounts_from_json(j.at("demands"));
  s.latency_share_ms = qty_from_json(j.at("latency_share_ms"));
  s.jitter_share_ms = qty_from_json(j.at("jitter_share_ms"));
  s.error_share = j.at("error_share").get<double>();
  s.loss_share = j.at("loss_share").get<double>();
  s.isolation = j.at("isolation") == "dedicated" ? Isolation::dedicated : Isolation::shared;
  s.endpoints = j.at("endpoints").get<std::vector<std::string>>();
  s.borders = j.at("borders").get<std::vector<std::string>>();
  s.revision = j.at("revision").get<int>();
  return s;
}

// SMF mapping: service type -> required VNF types, straight from the
// catalog. Deterministic by construction.
inline Result<std::vector<std::string>> smf_map(const DomainCatalog& catalog, const std::string& service_type) {
  auto it = catalog.service_map.find(service_type);
  if (it == catalog.service_map.end())
    return make_error(Errc::unsupported_service_type, catalog.domain + " does not support " + service_type);
  return it->second;
}

// Template selection: service type must match and the template's VNF type
// set must cover the requirement; ties break on lowest template id.
inline Result<SliceTemplate> lcm_select_template(const DomainCatalog& catalog, const std::string& service_type,
                                                 const std::vector<std::string>& required_types) {
  const SliceTemplate* best = nullptr;
  for (const auto& t : catalog.templates) {
    if (t.service_type != service_type) continue;
    std::set<std::string> have = t.vnf_types();
    bool covers = true;
    for (const auto& r : required_types)
      if (!have.count(r)) covers = false;
    if (!covers) continue;
    if (!best || t.id < best->id) best = &t;
  }
  if (!best) return make_error(Errc::no_matching_template, catalog.domain + ": " + service_type);
  return *best;
}

// Instantiates a template against a sub-request, producing the slice
// resource graph the LCM will embed. The chain is strung between the
// sub-request's anchors: first anchor -> vnf1 -> ... -> vnfK -> remaining
// anchors (or anchor-to-anchor links for VNF-less transit sub-slices).
inline Result<SliceResourceGraph> instantiate_template(const SliceTemplate& tmpl, const DomainSubRequest& sub) {
  SliceResourceGraph g;
  std::vector<NodeId> anchors = sub.anchors();
  if (anchors.empty()) return make_error(Errc::malformed_requirements, "sub-request has no attachment points");
  g.attachments = anchors;
  for (const auto& tv : tmpl.vnfs) {
    VnfSpec v;
    v.id = sub.nssi + "." + tv.name;
    v.type = tv.type;
    v.technologies = tv.technologies;
    v.vcpu = sub.demands.vcpu * tv.vcpu_share;
    v.memory_gb = sub.demands.memory_gb * tv.memory_share;
    v.storage_gb = sub.demands.storage_gb * tv.storage_share;
    g.vnfs.push_back(v);
  }
  // Wire the chain.
  std::vector<std::pair<std::string, std::string>> edges;
  if (g.vnfs.empty()) {
    for (std::size_t i = 1; i < anchors.size(); ++i) edges.emplace_back(anchors[0], anchors[i]);
  } else {
    edges.emplace_back(anchors[0], g.vnfs.front().id);
    for (std::size_t i = 1; i < g.vnfs.size(); ++i) edges.emplace_back(g.vnfs[i - 1].id, g.vnfs[i].id);
    for (std::size_t i = 1; i < anchors.size(); ++i) edges.emplace_back(g.vnfs.back().id, anchors[i]);
  }
  if (edges.empty()) {
    // Single anchor, no VNFs: nothing to connect.
    if (g.vnfs.empty() && anchors.size() < 2)
      return make_error(Errc::malformed_requirements, "transit sub-slice needs two attachment points");
  }
  const int nlinks = static_cast<int>(edges.size());
  for (int i = 0; i < nlinks; ++i) {
    LogicalLinkSpec l;
    l.id = sub.nssi + ".link" + std::to_string(i);
    l.src = edges[i].first;
    l.dst = edges[i].second;
    l.bandwidth_mbps = sub.demands.bandwidth_mbps;
    l.latency_budget_ms = sub.latency_share_ms / Qty(nlinks);
    l.jitter_budget_ms = sub.jitter_share_ms / Qty(nlinks);
    // Error rate and packet loss compose the same way; the tighter of the
    // two domain shares bounds each link.
    l.loss_budget = equal_error_share(std::min(sub.error_share, sub.loss_share), nlinks);
    g.links.push_back(l);
  }
  auto violations = validate_graph(g);
  if (!violations.empty())
    return make_error(Errc::malformed_requirements, "template instantiation produced invalid graph");
  return g;
}

inline Json to_json(const SliceTemplate& t) {
  Json j;
  j["id"] = t.id;
  j["service_type"] = t.service_type;
  auto vs = Json::array();
  for (const auto& v : t.vnfs) {
    Json vj;
    vj["name"] = v.name;
    vj["type"] = v.type;
    vj["technologies"] = v.technologies;
    vj["vcpu_share"] = qty_to_json(v.vcpu_share);
    vj["memory_share"] = qty_to_json(v.memory_share);
    vj["storage_share"] = qty_to_json(v.storage_share);
    vs.push_back(vj);
  }
  j["vnfs"] = vs;
  return j;
}

}  // namespace fedslice
