#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fedslice/kernel.hpp"
#include "fedslice/lifecycle.hpp"
#include "fedslice/requirements.hpp"
#include "fedslice/substrate.hpp"

namespace fedslice {

// Global service support repository: the only substrate knowledge the
// broker (and, via updates, the conductor) ever reads.
using Repository = std::map<DomainId, CapabilitySnapshot>;

inline Json repository_to_json(const Repository& repo) {
  Json j = Json::object();
  for (const auto& [d, snap] : repo) j[d] = to_json(snap);
  return j;
}

inline Repository repository_from_json(const Json& j) {
  Repository repo;
  for (auto it = j.begin(); it != j.end(); ++it) repo[it.key()] = snapshot_from_json(it.value());
  return repo;
}

enum class Verdict { admit, reject, counter_offer };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::admit: return "admit";
    case Verdict::reject: return "reject";
    case Verdict::counter_offer: return "counter_offer";
  }
  return "?";
}

struct AdmissionDecision {
  Verdict verdict = Verdict::reject;
  std::string reason;
  std::optional<ServiceRequirements> counter;  // present iff counter_offer
  Qty rate{0};                                 // accrual per Operational tick
};

struct TenantPolicy {
  int max_slices = 1;
  std::set<std::string> allowed_service_types;  // empty allows everything
};

// OSS/BSS policy and tariff data, static scenario input.
struct PolicyTable {
  std::map<TenantId, TenantPolicy> tenants;
  std::map<std::string, Qty> rates;  // per service type
  Qty default_rate{1};

  Qty rate_for(const std::string& service_type) const {
    auto it = rates.find(service_type);
    return it == rates.end() ? default_rate : it->second;
  }
};

// Append-only charging record. Contiguous ticks at one rate coalesce into a
// single range entry; amount is always rate times covered ticks.
struct BillingEntry {
  NsiId nsi;
  Tick first_tick = 0;
  Tick last_tick = 0;
  Qty rate{0};

  Qty amount() const { return rate * Qty(last_tick - first_tick + 1); }
};

class BillingLedger {
 public:
  void accrue(const NsiId& nsi, Tick t, const Qty& rate) {
    if (!entries_.empty()) {
      BillingEntry& last = entries_.back();
      if (last.nsi == nsi && last.rate == rate && last.last_tick + 1 == t) {
        last.last_tick = t;
        return;
      }
    }
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
      if (it->nsi != nsi) continue;
      if (it->rate == rate && it->last_tick + 1 == t) {
        it->last_tick = t;
        return;
      }
      break;
    }
    entries_.push_back({nsi, t, t, rate});
  }

  Qty total(const NsiId& nsi) const {
    Qty sum{0};
    for (const auto& e : entries_)
      if (e.nsi == nsi) sum += e.amount();
    return sum;
  }
  const std::vector<BillingEntry>& entries() const { return entries_; }

 private:
  std::vector<BillingEntry> entries_;
};

// Pure admission decision, separated from the message plumbing so it can be
// exercised directly. Admission is intentionally optimistic: it checks
// aggregate (snapshot) feasibility only; true feasibility is settled by
// downstream embedding.
inline Result<AdmissionDecision> decide_admission(const ServiceRequirements& req, const Schedule& schedule,
                                                  const TenantId& tenant, Tick now, const Repository& repo,
                                                  const PolicyTable& policy, int active_slices,
                                                  bool negotiated = false) {
  if (auto v = req.validate(); !v.ok()) return v.error();
  auto tp = policy.tenants.find(tenant);
  if (tp == policy.tenants.end()) return make_error(Errc::unknown_tenant, tenant);
  if (schedule.start_tick < now)
    return AdmissionDecision{Verdict::reject, "past-start", std::nullopt, Qty(0)};
  if (schedule.end_tick && *schedule.end_tick < schedule.start_tick)
    return AdmissionDecision{Verdict::reject, "schedule end before start", std::nullopt, Qty(0)};
  if (active_slices >= tp->second.max_slices)
    return AdmissionDecision{Verdict::reject, "policy: slice quota", std::nullopt, Qty(0)};
  if (!tp->second.allowed_service_types.empty() && !tp->second.allowed_service_types.count(req.service_type))
    return AdmissionDecision{Verdict::reject, "policy: service type", std::nullopt, Qty(0)};

  // Aggregate feasibility: every coverage domain must hold its equal share
  // of compute demands plus the full bandwidth.
  const Qty n(static_cast<std::int64_t>(req.coverage.size()));
  Amounts share;
  share.vcpu = req.compute_vcpu / n;
  share.memory_gb = req.memory_gb / n;
  share.storage_gb = req.storage_gb / n;
  share.bandwidth_mbps = req.bandwidth_mbps;
  std::optional<Qty> scale;
  auto consider = [&](const Qty& free, const Qty& need) {
    if (need <= Qty(0)) return;
    Qty f = free < Qty(0) ? Qty(0) : free;
    Qty s = f / need;
    if (!scale || s < *scale) scale = s;
  };
  for (const auto& d : req.coverage) {
    auto snap = repo.find(d);
    if (snap == repo.end())
      return AdmissionDecision{Verdict::reject, "no capability information for domain " + d, std::nullopt, Qty(0)};
    Amounts free = snap->second.total_free();
    consider(free.vcpu, share.vcpu);
    consider(free.memory_gb, share.memory_gb);
    consider(free.storage_gb, share.storage_gb);
    consider(free.bandwidth_mbps, share.bandwidth_mbps);
  }
  Qty rate = policy.rate_for(req.service_type);
  if (!scale || *scale >= Qty(1)) return AdmissionDecision{Verdict::admit, "", std::nullopt, rate};
  if (*scale <= Qty(0) || negotiated)
    return AdmissionDecision{Verdict::reject, "insufficient aggregate capacity", std::nullopt, Qty(0)};
  // Capacity is the only blocker here: offer the largest feasible uniform
  // scale-down of bandwidth and compute.
  ServiceRequirements counter = req;
  counter.bandwidth_mbps = req.bandwidth_mbps * *scale;
  Qty scaled_vcpu = req.compute_vcpu * *scale;
  counter.compute_vcpu = Qty(scaled_vcpu.numerator() / scaled_vcpu.denominator());  // floor to integer
  counter.memory_gb = req.memory_gb * *scale;
  counter.storage_gb = req.storage_gb * *scale;
  AdmissionDecision d{Verdict::counter_offer, "scaled to fit aggregate capacity", counter, rate};
  return d;
}

// Service broker stratum: admission control and negotiation, scheduling,
// revenue management, and the capability repository. Holds no reference to
// the substrate; snapshots arrive as RepositoryRefresh messages.
class Broker : public Actor {
 public:
  explicit Broker(PolicyTable policy) : policy_(std::move(policy)) {}

  std::string name() const override { return "broker"; }

  const Repository& repository() const { return repo_; }
  const BillingLedger& billing() const { return billing_; }
  const std::map<NsiId, std::string>& nsi_status() const { return status_; }

  void handle(Kernel& k, const Message& m) override {
    switch (m.kind) {
      case MsgKind::SliceRequest: return on_slice_request(k, m);
      case MsgKind::RepositoryRefresh: {
        // Atomic replacement of one domain's snapshot.
        CapabilitySnapshot snap = snapshot_from_json(m.payload.at("snapshot"));
        repo_[snap.domain] = std::move(snap);
        forward_repository(k);
        return;
      }
      case MsgKind::BrokerUpdate: {
        const std::string status = m.payload.at("status").get<std::string>();
        status_[m.nsi] = status;
        if (status == "decommissioned") active_count_[tenant_of_.at(m.nsi)]--;
        return;
      }
      case MsgKind::NsiFailed: {
        // Late reject: an admitted request turned out unembeddable.
        status_[m.nsi] = "failed";
        active_count_[tenant_of_.at(m.nsi)]--;
        Json p;
        p["nsi"] = m.nsi;
        p["cause"] = m.payload.at("cause");
        k.post({0, 0, name(), "tenant/" + tenant_of_.at(m.nsi), MsgKind::NsiFailed, m.nsi, false, p});
        return;
      }
      default:
        return;
    }
  }

  // Revenue management: one accrual per Operational tick at the
  // admission-time rate. Degraded ticks accrue nothing.
  void on_tick(Kernel& k, Tick t) override {
    (void)k;
    for (const auto& [nsi, status] : status_)
      if (status == "operational") billing_.accrue(nsi, t, rate_.at(nsi));
  }

 private:
  void on_slice_request(Kernel& k, const Message& m) {
    const std::string tenant = stratum_of(m.sender) == "tenant" ? m.sender.substr(7) : m.sender;
    const std::string label = m.payload.at("label").get<std::string>();
    ServiceRequirements req = requirements_from_json(m.payload.at("requirements"));
    Schedule schedule;
    schedule.start_tick = m.payload.at("schedule").at("start").get<Tick>();
    if (m.payload.at("schedule").contains("end"))
      schedule.end_tick = m.payload.at("schedule").at("end").get<Tick>();
    const bool negotiated = m.payload.value("negotiated", false);

    auto decision = decide_admission(req, schedule, tenant, k.now(), repo_, policy_,
                                     active_count_[tenant], negotiated);
    Json ack;
    ack["label"] = label;
    if (!decision.ok()) {
      ack["verdict"] = "reject";
      ack["reason"] = errc_name(decision.error().code);
      k.post({0, 0, name(), m.sender, MsgKind::AdmitAck, "", false, ack});
      return;
    }
    const AdmissionDecision& d = decision.value();
    ack["verdict"] = verdict_name(d.verdict);
    if (!d.reason.empty()) ack["reason"] = d.reason;
    if (d.counter) ack["counter"] = to_json(*d.counter);

    if (d.verdict == Verdict::admit) {
      const NsiId nsi = "nsi-" + std::to_string(++nsi_seq_);
      ack["nsi"] = nsi;
      active_count_[tenant]++;
      tenant_of_[nsi] = tenant;
      rate_[nsi] = d.rate;
      status_[nsi] = "admitted";
      k.note_transition(nsi, state_name(SliceState::Requested), state_name(SliceState::Admitted));
      // Composition at the scheduled start, decommission at the end.
      Json fwd;
      fwd["nsi"] = nsi;
      fwd["tenant"] = tenant;
      fwd["label"] = label;
      fwd["requirements"] = to_json(req);
      fwd["schedule"] = m.payload.at("schedule");
      fwd["rate"] = qty_to_json(d.rate);
      fwd["repository"] = repository_to_json(repo_);
      k.post_at({0, 0, name(), "conductor", MsgKind::AdmittedRequest, nsi, false, fwd},
                schedule.start_tick);
      if (schedule.end_tick) {
        Json dc;
        dc["nsi"] = nsi;
        k.post_at({0, 0, name(), "conductor", MsgKind::DecommissionCmd, nsi, false, dc}, *schedule.end_tick);
      }
    }
    k.post({0, 0, name(), m.sender, MsgKind::AdmitAck, ack.contains("nsi") ? ack["nsi"].get<std::string>() : "",
            false, ack});
  }

  void forward_repository(Kernel& k) {
    Json p;
    p["repository"] = repository_to_json(repo_);
    k.post({0, 0, name(), "conductor", MsgKind::RepositoryUpdate, "", false, p});
  }

  PolicyTable policy_;
  Repository repo_;
  BillingLedger billing_;
  std::map<TenantId, int> active_count_;
  std::map<NsiId, TenantId> tenant_of_;
  std::map<NsiId, Qty> rate_;
  std::map<NsiId, std::string> status_;
  std::int64_t nsi_seq_ = 0;
};

}  // namespace fedslice
