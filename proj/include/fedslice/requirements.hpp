#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fedslice/rational.hpp"
#include "fedslice/result.hpp"

namespace fedslice {

using DomainId = std::string;
using SubDomainId = std::string;
using NodeId = std::string;
using TenantId = std::string;
using NsiId = std::string;
using NssiId = std::string;
using VnfId = std::string;

enum class Isolation { shared, dedicated };

inline const char* isolation_name(Isolation i) { return i == Isolation::shared ? "shared" : "dedicated"; }

// One external attachment point of the slice: (domain, node).
struct Endpoint {
  DomainId domain;
  NodeId node;

  auto operator<=>(const Endpoint&) const = default;
};

// Everything a tenant demands from a slice. Coverage is the set of domains
// that must take part; every endpoint's domain has to appear in it.
struct ServiceRequirements {
  std::string service_type;
  Qty bandwidth_mbps{0};
  Qty latency_budget_ms{0};
  Qty jitter_budget_ms{0};
  double max_error_rate = 1.0;
  double max_packet_loss = 1.0;
  Qty compute_vcpu{0};
  Qty memory_gb{0};
  Qty storage_gb{0};
  std::set<DomainId> coverage;
  std::vector<Endpoint> endpoints;
  Isolation isolation = Isolation::shared;

  Status validate() const {
    if (service_type.empty()) return make_error(Errc::malformed_requirements, "service_type empty");
    if (bandwidth_mbps < Qty(0) || latency_budget_ms < Qty(0) || jitter_budget_ms < Qty(0) ||
        compute_vcpu < Qty(0) || memory_gb < Qty(0) || storage_gb < Qty(0))
      return make_error(Errc::malformed_requirements, "negative budget or amount");
    if (compute_vcpu.denominator() != 1)
      return make_error(Errc::malformed_requirements, "compute_vcpu must be an integer");
    if (!(max_error_rate >= 0.0 && max_error_rate <= 1.0))
      return make_error(Errc::malformed_requirements, "max_error_rate outside [0,1]");
    if (!(max_packet_loss >= 0.0 && max_packet_loss <= 1.0))
      return make_error(Errc::malformed_requirements, "max_packet_loss outside [0,1]");
    if (coverage.empty()) return make_error(Errc::malformed_requirements, "coverage empty");
    for (const Endpoint& e : endpoints)
      if (!coverage.count(e.domain))
        return make_error(Errc::malformed_requirements, "endpoint domain " + e.domain + " not in coverage");
    return ok_status();
  }

  std::set<DomainId> endpoint_domains() const {
    std::set<DomainId> out;
    for (const Endpoint& e : endpoints) out.insert(e.domain);
    return out;
  }

  std::vector<Endpoint> endpoints_in(const DomainId& d) const {
    std::vector<Endpoint> out;
    for (const Endpoint& e : endpoints)
      if (e.domain == d) out.push_back(e);
    return out;
  }
};

inline nlohmann::ordered_json to_json(const ServiceRequirements& r) {
  nlohmann::ordered_json j;
  j["service_type"] = r.service_type;
  j["bandwidth_mbps"] = qty_to_json(r.bandwidth_mbps);
  j["latency_budget_ms"] = qty_to_json(r.latency_budget_ms);
  j["jitter_budget_ms"] = qty_to_json(r.jitter_budget_ms);
  j["max_error_rate"] = r.max_error_rate;
  j["max_packet_loss"] = r.max_packet_loss;
  j["compute_vcpu"] = qty_to_json(r.compute_vcpu);
  j["memory_gb"] = qty_to_json(r.memory_gb);
  j["storage_gb"] = qty_to_json(r.storage_gb);
  j["coverage"] = r.coverage;
  auto eps = nlohmann::ordered_json::array();
  for (const Endpoint& e : r.endpoints) eps.push_back({e.domain, e.node});
  j["endpoints"] = eps;
  j["isolation"] = isolation_name(r.isolation);
  return j;
}

inline ServiceRequirements requirements_from_json(const nlohmann::json& j) {
  ServiceRequirements r;
  r.service_type = j.at("service_type").get<std::string>();
  r.bandwidth_mbps = qty_from_json(j.at("bandwidth_mbps"));
  r.latency_budget_ms = qty_from_json(j.at("latency_budget_ms"));
  r.jitter_budget_ms = qty_from_json(j.at("jitter_budget_ms"));
  r.max_error_rate = j.at("max_error_rate").get<double>();
  r.max_packet_loss = j.at("max_packet_loss").get<double>();
  r.compute_vcpu = qty_from_json(j.at("compute_vcpu"));
  r.memory_gb = qty_from_json(j.at("memory_gb"));
  r.storage_gb = qty_from_json(j.at("storage_gb"));
  for (const auto& d : j.at("coverage")) r.coverage.insert(d.get<std::string>());
  for (const auto& e : j.at("endpoints")) r.endpoints.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
  if (j.contains("isolation")) r.isolation = j.at("isolation") == "dedicated" ? Isolation::dedicated : Isolation::shared;
  return r;
}

}  // namespace fedslice
