#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fedslice/broker.hpp"
#include "fedslice/catalog.hpp"
#include "fedslice/kernel.hpp"
#include "fedslice/qos.hpp"

namespace fedslice {

// One negotiated inter-domain segment of a plan: the pair to stitch, the
// bandwidth it must carry and the QoS caps the chosen WAN link has to meet.
struct StitchSpec {
  DomainId domain_a;
  DomainId domain_b;
  Endpoint border_a;
  Endpoint border_b;
  Qty bandwidth_mbps{0};
  Qty max_latency_ms{0};
  Qty max_jitter_ms{0};
  double max_loss = 1.0;
};

struct DecompositionPlan {
  NsiId nsi;
  int version = 1;
  std::vector<DomainId> path;  // domain chain, stitching joins neighbours
  std::vector<DomainSubRequest> sub_requests;
  std::vector<StitchSpec> stitching;

  std::set<DomainId> domain_set() const { return {path.begin(), path.end()}; }
  const DomainSubRequest* sub_for(const DomainId& d) const {
    for (const auto& s : sub_requests)
      if (s.domain == d) return &s;
    return nullptr;
  }
};

inline Json to_json(const StitchSpec& s) {
  Json j;
  j["pair"] = {s.domain_a, s.domain_b};
  j["border_a"] = {s.border_a.domain, s.border_a.node};
  j["border_b"] = {s.border_b.domain, s.border_b.node};
  j["bandwidth_mbps"] = qty_to_json(s.bandwidth_mbps);
  j["max_latency_ms"] = qty_to_json(s.max_latency_ms);
  j["max_jitter_ms"] = qty_to_json(s.max_jitter_ms);
  j["max_loss"] = s.max_loss;
  return j;
}

inline StitchSpec stitch_from_json(const Json& j) {
  StitchSpec s;
  s.domain_a = j.at("pair").at(0).get<std::string>();
  s.domain_b = j.at("pair").at(1).get<std::string>();
  s.border_a = {j.at("border_a").at(0).get<std::string>(), j.at("border_a").at(1).get<std::string>()};
  s.border_b = {j.at("border_b").at(0).get<std::string>(), j.at("border_b").at(1).get<std::string>()};
  s.bandwidth_mbps = qty_from_json(j.at("bandwidth_mbps"));
  s.max_latency_ms = qty_from_json(j.at("max_latency_ms"));
  s.max_jitter_ms = qty_from_json(j.at("max_jitter_ms"));
  s.max_loss = j.at("max_loss").get<double>();
  return s;
}

inline Json to_json(const DecompositionPlan& p) {
  Json j;
  j["nsi"] = p.nsi;
  j["version"] = p.version;
  j["path"] = p.path;
  auto subs = Json::array();
  for (const auto& s : p.sub_requests) subs.push_back(to_json(s));
  j["sub_requests"] = subs;
  auto st = Json::array();
  for (const auto& s : p.stitching) st.push_back(to_json(s));
  j["stitching"] = st;
  return j;
}

inline DecompositionPlan plan_from_json(const Json& j) {
  DecompositionPlan p;
  p.nsi = j.at("nsi").get<std::string>();
  p.version = j.at("version").get<int>();
  p.path = j.at("path").get<std::vector<std::string>>();
  for (const auto& s : j.at("sub_requests")) p.sub_requests.push_back(sub_request_from_json(s));
  for (const auto& s : j.at("stitching")) p.stitching.push_back(stitch_from_json(s));
  return p;
}

struct DecomposeOptions {
  std::set<DomainId> deprioritized;  // domains named in a failure report
  // Per-domain floors reported by failed embeddings; shares are lifted to
  // at least these values when re-splitting.
  std::map<DomainId, Qty> min_latency_ms;
  std::map<DomainId, Qty> min_jitter_ms;
  const DecompositionPlan* previous = nullptr;  // a re-decomposition must differ
};

namespace detail {

// Minimum-latency WAN link between two domains with enough free bandwidth.
inline const SubstrateLink* best_wan_link(const Substrate& substrate, const DomainId& a, const DomainId& b,
                                          const Qty& bandwidth) {
  if (!substrate.trusted(a, b)) return nullptr;
  const SubstrateLink* best = nullptr;
  for (const auto& [id, l] : substrate.links()) {
    if (l.scope != LinkScope::inter_domain_wan) continue;
    const bool match = (l.src.domain == a && l.dst.domain == b) || (l.src.domain == b && l.dst.domain == a);
    if (!match || l.free_bandwidth() < bandwidth) continue;
    if (!best || l.qos.latency_ms < best->qos.latency_ms ||
        (l.qos.latency_ms == best->qos.latency_ms && l.id < best->id))
      best = &l;
  }
  return best;
}

inline void subsets_of_size(const std::vector<DomainId>& pool, std::size_t k, std::vector<DomainId>& cur,
                            std::size_t from, const std::function<void(const std::vector<DomainId>&)>& visit) {
  if (cur.size() == k) {
    visit(cur);
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    subsets_of_size(pool, k, cur, i + 1, visit);
    cur.pop_back();
  }
}

}  // namespace detail

// Decomposes an admitted request across administrative domains: selects the
// domain combination and stitching, splits demands and QoS budgets, and
// returns a plan satisfying the end-to-end budget invariants. The search is
// exhaustive over domain subsets (federations are small at desk scale):
// minimal domain count wins, ties break on total free capacity, then on
// lexicographic domain ids.
//
// Split rules: stitching WAN latencies are subtracted first; the residual
// latency/jitter budget is divided among domains proportional to their edge
// count in the domain path (1 for path ends, 2 for middle domains). Error
// and loss budgets split into equal per-domain survival shares after
// peeling off the WAN contributions. Compute demands split equally among
// the path domains whose repository snapshot supports the service type.
inline Result<DecompositionPlan> decompose(const NsiId& nsi, const ServiceRequirements& req,
                                           const Repository& repo, const Substrate& substrate,
                                           const DecomposeOptions& opts = {}) {
  std::vector<DomainId> pool;
  for (const auto& [d, _] : repo) pool.push_back(d);
  for (const auto& d : req.coverage) {
    if (!std::count(pool.begin(), pool.end(), d))
      return make_error(Errc::no_feasible_combination, "coverage domain " + d + " unknown to repository");
    if (!repo.at(d).supported_service_types.count(req.service_type))
      return make_error(Errc::no_feasible_combination, "coverage domain " + d + " lacks " + req.service_type);
  }

  struct Candidate {
    DecompositionPlan plan;
    Qty free_total{0};
    bool uses_deprioritized = false;
  };
  std::vector<Candidate> feasible;

  auto try_path = [&](const std::vector<DomainId>& path) {
    // Stitch neighbours with the current best links.
    std::vector<StitchSpec> stitching;
    Qty wan_latency{0}, wan_jitter{0};
    double wan_survival = 1.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const SubstrateLink* l = detail::best_wan_link(substrate, path[i], path[i + 1], req.bandwidth_mbps);
      if (!l) return;
      StitchSpec st;
      st.domain_a = path[i];
      st.domain_b = path[i + 1];
      st.border_a = l->src.domain == path[i] ? l->src : l->dst;
      st.border_b = l->src.domain == path[i] ? l->dst : l->src;
      st.bandwidth_mbps = req.bandwidth_mbps;
      st.max_latency_ms = l->qos.latency_ms;
      st.max_jitter_ms = l->qos.jitter_ms;
      st.max_loss = l->qos.loss;
      wan_latency += l->qos.latency_ms;
      wan_jitter += l->qos.jitter_ms;
      wan_survival *= 1.0 - l->qos.loss;
      stitching.push_back(st);
    }
    if (wan_latency > req.latency_budget_ms || wan_jitter > req.jitter_budget_ms) return;
    if (wan_survival <= 0.0) return;
    const double error_survival_needed = (1.0 - req.max_error_rate) / wan_survival;
    const double loss_survival_needed = (1.0 - req.max_packet_loss) / wan_survival;
    if (error_survival_needed > 1.0 || loss_survival_needed > 1.0) return;

    // Compute-capable domains host equal shares of the demands.
    std::vector<DomainId> compute_domains;
    for (const auto& d : path)
      if (repo.at(d).supported_service_types.count(req.service_type)) compute_domains.push_back(d);
    if (compute_domains.empty() &&
        (req.compute_vcpu > Qty(0) || req.memory_gb > Qty(0) || req.storage_gb > Qty(0)))
      return;

    // Weights: middle domains carry through-traffic and get the larger cut.
    std::map<DomainId, int> weight;
    int total_weight = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      int w = (path.size() == 1 || i == 0 || i + 1 == path.size()) ? 1 : 2;
      weight[path[i]] = w;
      total_weight += w;
    }
    const Qty residual_latency = req.latency_budget_ms - wan_latency;
    const Qty residual_jitter = req.jitter_budget_ms - wan_jitter;

    // Shares, lifted to any reported floors.
    std::map<DomainId, Qty> lat_share, jit_share;
    Qty lat_used{0}, jit_used{0};
    for (const auto& d : path) {
      Qty lat = residual_latency * Qty(weight[d]) / Qty(total_weight);
      Qty jit = residual_jitter * Qty(weight[d]) / Qty(total_weight);
      if (auto it = opts.min_latency_ms.find(d); it != opts.min_latency_ms.end() && it->second > lat)
        lat = it->second;
      if (auto it = opts.min_jitter_ms.find(d); it != opts.min_jitter_ms.end() && it->second > jit)
        jit = it->second;
      lat_share[d] = lat;
      jit_share[d] = jit;
      lat_used += lat;
      jit_used += jit;
    }
    if (lat_used > residual_latency || jit_used > residual_jitter) return;
    const double per_domain_error = 1.0 - std::pow(error_survival_needed, 1.0 / static_cast<double>(path.size()));
    const double per_domain_loss = 1.0 - std::pow(loss_survival_needed, 1.0 / static_cast<double>(path.size()));

    // Aggregate capacity check against the snapshots.
    const Qty nc(static_cast<std::int64_t>(compute_domains.size()));
    Amounts compute_share;
    compute_share.vcpu = req.compute_vcpu / nc;
    compute_share.memory_gb = req.memory_gb / nc;
    compute_share.storage_gb = req.storage_gb / nc;
    DecompositionPlan plan;
    plan.nsi = nsi;
    plan.path = path;
    plan.stitching = stitching;
    Qty free_total{0};
    for (const auto& d : path) {
      const CapabilitySnapshot& snap = repo.at(d);
      Amounts free = snap.total_free();
      free_total += free.vcpu + free.memory_gb + free.storage_gb + free.bandwidth_mbps;
      const bool computes = std::count(compute_domains.begin(), compute_domains.end(), d) > 0;
      if (computes) {
        if (free.vcpu < compute_share.vcpu || free.memory_gb < compute_share.memory_gb ||
            free.storage_gb < compute_share.storage_gb)
          return;
      }
      bool has_connectivity_pool = false;
      for (const auto& t : snap.technologies)
        if (t.total.bandwidth_mbps > Qty(0)) has_connectivity_pool = true;
      if (has_connectivity_pool && free.bandwidth_mbps < req.bandwidth_mbps) return;

      DomainSubRequest sub;
      sub.nsi = nsi;
      sub.nssi = nsi + "@" + d;
      sub.domain = d;
      sub.service_type = computes ? req.service_type : kTransitService;
      sub.transit = !computes;
      if (!computes && !snap.supported_service_types.count(kTransitService)) return;
      sub.demands = computes ? compute_share : Amounts{};
      sub.demands.bandwidth_mbps = req.bandwidth_mbps;
      sub.latency_share_ms = lat_share[d];
      sub.jitter_share_ms = jit_share[d];
      sub.error_share = per_domain_error;
      sub.loss_share = per_domain_loss;
      sub.isolation = req.isolation;
      for (const auto& e : req.endpoints_in(d)) sub.endpoints.push_back(e.node);
      for (const auto& st : stitching) {
        if (st.domain_a == d) sub.borders.push_back(st.border_a.node);
        if (st.domain_b == d) sub.borders.push_back(st.border_b.node);
      }
      if (sub.endpoints.empty() && sub.borders.empty()) return;  // unreachable sub-slice
      plan.sub_requests.push_back(sub);
    }

    if (opts.previous && opts.previous->domain_set() == plan.domain_set()) {
      // A re-decomposition must change something: the same domain set is
      // acceptable only when budget shares moved.
      bool same_shares = true;
      for (const auto& s : plan.sub_requests) {
        const DomainSubRequest* old = opts.previous->sub_for(s.domain);
        if (!old || old->latency_share_ms != s.latency_share_ms || old->jitter_share_ms != s.jitter_share_ms ||
            !(old->demands == s.demands))
          same_shares = false;
      }
      if (same_shares) return;
    }

    Candidate c;
    c.plan = std::move(plan);
    c.free_total = free_total;
    for (const auto& d : path)
      if (opts.deprioritized.count(d)) c.uses_deprioritized = true;
    feasible.push_back(std::move(c));
  };

  // Smallest domain set first; within one size, all subsets and all
  // orderings are scored together.
  for (std::size_t size = std::max<std::size_t>(1, req.coverage.size()); size <= pool.size(); ++size) {
    feasible.clear();
    std::vector<DomainId> cur;
    detail::subsets_of_size(pool, size, cur, 0,
                            [&](const std::vector<DomainId>& subset) {
                              for (const auto& d : req.coverage)
                                if (!std::count(subset.begin(), subset.end(), d)) return;
                              std::vector<DomainId> perm = subset;
                              std::sort(perm.begin(), perm.end());
                              do {
                                if (perm.size() > 1 && perm.back() < perm.front()) continue;  // undirected path
                                try_path(perm);
                              } while (std::next_permutation(perm.begin(), perm.end()));
                            });
    if (feasible.empty()) continue;
    // Prefer candidates avoiding deprioritized domains, then max free
    // capacity, then lexicographic ids.
    std::stable_sort(feasible.begin(), feasible.end(), [](const Candidate& a, const Candidate& b) {
      if (a.uses_deprioritized != b.uses_deprioritized) return !a.uses_deprioritized;
      if (a.free_total != b.free_total) return a.free_total > b.free_total;
      auto da = a.plan.domain_set(), db = b.plan.domain_set();
      if (da != db) return da < db;
      return a.plan.path < b.plan.path;
    });
    return feasible.front().plan;
  }
  return make_error(Errc::no_feasible_combination, "no domain combination satisfies the request");
}

// Machine-readable cause taxonomy carried by failure reports.
struct FailureReport {
  NsiId nsi;
  DomainId domain;      // violating domain, empty for interconnect failures
  std::string cause;    // capacity | qos | policy
  std::optional<Qty> min_latency_ms;  // floor the domain reported achievable
  std::optional<Qty> min_jitter_ms;
};

inline Json to_json(const FailureReport& r) {
  Json j;
  j["nsi"] = r.nsi;
  j["domain"] = r.domain;
  j["cause"] = r.cause;
  if (r.min_latency_ms) j["min_latency_ms"] = qty_to_json(*r.min_latency_ms);
  if (r.min_jitter_ms) j["min_jitter_ms"] = qty_to_json(*r.min_jitter_ms);
  return j;
}

inline FailureReport failure_report_from_json(const Json& j) {
  FailureReport r;
  r.nsi = j.at("nsi").get<std::string>();
  r.domain = j.at("domain").get<std::string>();
  r.cause = j.at("cause").get<std::string>();
  if (j.contains("min_latency_ms")) r.min_latency_ms = qty_from_json(j.at("min_latency_ms"));
  if (j.contains("min_jitter_ms")) r.min_jitter_ms = qty_from_json(j.at("min_jitter_ms"));
  return r;
}

}  // namespace fedslice
