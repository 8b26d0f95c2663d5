#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedslice/rational.hpp"
#include "fedslice/requirements.hpp"
#include "fedslice/result.hpp"

namespace fedslice {

using SlateId = std::string;
using LinkId = std::string;
using ReservationId = std::string;

enum class SlateKind { compute, storage, connectivity };

inline const char* slate_kind_name(SlateKind k) {
  switch (k) {
    case SlateKind::compute: return "compute";
    case SlateKind::storage: return "storage";
    case SlateKind::connectivity: return "connectivity";
  }
  return "?";
}

// Component-wise resource vector. Compute/storage slates use vcpu,
// memory_gb and storage_gb; connectivity slates and links use
// bandwidth_mbps. Unused components stay zero.
struct Amounts {
  Qty vcpu{0};
  Qty memory_gb{0};
  Qty storage_gb{0};
  Qty bandwidth_mbps{0};

  bool any_positive() const {
    return vcpu > Qty(0) || memory_gb > Qty(0) || storage_gb > Qty(0) || bandwidth_mbps > Qty(0);
  }
  bool all_nonneg() const {
    return vcpu >= Qty(0) && memory_gb >= Qty(0) && storage_gb >= Qty(0) && bandwidth_mbps >= Qty(0);
  }
  Amounts& operator+=(const Amounts& o) {
    vcpu += o.vcpu;
    memory_gb += o.memory_gb;
    storage_gb += o.storage_gb;
    bandwidth_mbps += o.bandwidth_mbps;
    return *this;
  }
  Amounts& operator-=(const Amounts& o) {
    vcpu -= o.vcpu;
    memory_gb -= o.memory_gb;
    storage_gb -= o.storage_gb;
    bandwidth_mbps -= o.bandwidth_mbps;
    return *this;
  }
  friend Amounts operator+(Amounts a, const Amounts& b) { return a += b; }
  friend Amounts operator-(Amounts a, const Amounts& b) { return a -= b; }
  bool operator==(const Amounts&) const = default;

  // Name of some component of `this` exceeding `cap`, if any.
  std::optional<std::string> component_exceeding(const Amounts& cap) const {
    if (vcpu > cap.vcpu) return "vcpu";
    if (memory_gb > cap.memory_gb) return "memory_gb";
    if (storage_gb > cap.storage_gb) return "storage_gb";
    if (bandwidth_mbps > cap.bandwidth_mbps) return "bandwidth_mbps";
    return std::nullopt;
  }
};

inline nlohmann::ordered_json to_json(const Amounts& a) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (a.vcpu != Qty(0)) j["vcpu"] = qty_to_json(a.vcpu);
  if (a.memory_gb != Qty(0)) j["memory_gb"] = qty_to_json(a.memory_gb);
  if (a.storage_gb != Qty(0)) j["storage_gb"] = qty_to_json(a.storage_gb);
  if (a.bandwidth_mbps != Qty(0)) j["bandwidth_mbps"] = qty_to_json(a.bandwidth_mbps);
  return j;
}

inline Amounts amounts_from_json(const nlohmann::json& j) {
  Amounts a;
  if (j.contains("vcpu")) a.vcpu = qty_from_json(j.at("vcpu"));
  if (j.contains("memory_gb")) a.memory_gb = qty_from_json(j.at("memory_gb"));
  if (j.contains("storage_gb")) a.storage_gb = qty_from_json(j.at("storage_gb"));
  if (j.contains("bandwidth_mbps")) a.bandwidth_mbps = qty_from_json(j.at("bandwidth_mbps"));
  return a;
}

// One ledger entry; `exclusive` marks allocations of dedicated-isolation
// slices, which lock the slate against every other NSI.
struct LedgerEntry {
  ReservationId id;
  NsiId nsi;
  NssiId nssi;
  Amounts amounts;
  bool exclusive = false;
};

struct QosAttrs {
  Qty latency_ms{0};
  Qty jitter_ms{0};
  double loss = 0.0;
};

// A typed capacity pool assigned to NSSIs. The ledger is the single source
// of capacity truth.
struct ResourceSlate {
  SlateId id;
  SlateKind kind = SlateKind::compute;
  DomainId domain;
  SubDomainId subdomain;
  NodeId node;  // host node, used for path endpoints of placed VNFs
  Amounts capacity;
  std::vector<LedgerEntry> ledger;
  nlohmann::json vendor_descriptor;  // heterogeneous capability description

  Amounts allocated() const {
    Amounts sum;
    for (const auto& e : ledger) sum += e.amounts;
    return sum;
  }
  Amounts free() const { return capacity - allocated(); }
  bool oversubscribed() const { return allocated().component_exceeding(capacity).has_value(); }
  // NSI holding this slate exclusively, if any.
  std::optional<NsiId> dedicated_owner() const {
    for (const auto& e : ledger)
      if (e.exclusive) return e.nsi;
    return std::nullopt;
  }
  std::set<NsiId> nsis_present() const {
    std::set<NsiId> out;
    for (const auto& e : ledger) out.insert(e.nsi);
    return out;
  }
};

enum class LinkScope { intra_domain, inter_domain_wan };

// Substrate connectivity: intra-domain links between nodes, or WAN links
// between border nodes of two domains. Undirected, one shared ledger.
struct SubstrateLink {
  LinkId id;
  LinkScope scope = LinkScope::intra_domain;
  Endpoint src;  // (domain, node)
  Endpoint dst;
  Qty bandwidth_capacity{0};
  QosAttrs qos;
  std::vector<LedgerEntry> ledger;

  Qty allocated_bandwidth() const {
    Qty sum{0};
    for (const auto& e : ledger) sum += e.amounts.bandwidth_mbps;
    return sum;
  }
  Qty free_bandwidth() const { return bandwidth_capacity - allocated_bandwidth(); }
  bool oversubscribed() const { return allocated_bandwidth() > bandwidth_capacity; }
  bool touches(const NodeId& n) const { return src.node == n || dst.node == n; }
  NodeId other_end(const NodeId& n) const { return src.node == n ? dst.node : src.node; }
};

struct SubDomain {
  SubDomainId id;
  DomainId domain;
  std::string technology;  // ran | transport | core | cloud
};

struct SubstrateNode {
  NodeId id;
  DomainId domain;
  SubDomainId subdomain;
  bool border = false;
};

struct Domain {
  DomainId id;
  std::string owner;
};

// Ledger mutation notification, consumed by the trace recorder.
struct LedgerDelta {
  std::string target;  // slate or link id
  NsiId nsi;
  NssiId nssi;
  Amounts amounts;  // positive magnitudes
  bool release = false;
};

// Per-technology aggregate view published to the broker repository. By
// construction it carries no node-level topology.
struct TechnologySnapshot {
  std::string technology;
  Amounts total;
  Amounts free;
  Qty min_link_latency_ms{0};
  Qty max_link_latency_ms{0};
  double min_link_loss = 0.0;
  double max_link_loss = 0.0;
  // (dialect, aggregated descriptor) pairs for the cloud mediator
  std::vector<std::pair<std::string, nlohmann::json>> vendor_descriptors;
};

struct CapabilitySnapshot {
  DomainId domain;
  std::vector<TechnologySnapshot> technologies;
  std::set<std::string> supported_service_types;

  Amounts total_free() const {
    Amounts sum;
    for (const auto& t : technologies) sum += t.free;
    return sum;
  }
};

// The simulated federated infrastructure. All mutation happens from the
// kernel's single logical thread; snapshots taken from it are plain values
// and safe to retain.
class Substrate {
 public:
  using DeltaObserver = std::function<void(const LedgerDelta&)>;

  void set_delta_observer(DeltaObserver obs) { observer_ = std::move(obs); }

  void add_domain(Domain d) { domains_[d.id] = d; }
  void add_subdomain(SubDomain s) { subdomains_[s.id] = s; }
  void add_node(SubstrateNode n) { nodes_[n.id] = n; }
  void add_slate(ResourceSlate s) { slates_[s.id] = std::move(s); }
  void add_link(SubstrateLink l) { links_[l.id] = std::move(l); }
  void set_untrusted(const DomainId& a, const DomainId& b) {
    untrusted_.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  }

  const std::map<DomainId, Domain>& domains() const { return domains_; }
  const std::map<SubDomainId, SubDomain>& subdomains() const { return subdomains_; }
  const std::map<NodeId, SubstrateNode>& nodes() const { return nodes_; }
  const std::map<SlateId, ResourceSlate>& slates() const { return slates_; }
  const std::map<LinkId, SubstrateLink>& links() const { return links_; }

  const ResourceSlate* slate(const SlateId& id) const {
    auto it = slates_.find(id);
    return it == slates_.end() ? nullptr : &it->second;
  }
  const SubstrateLink* link(const LinkId& id) const {
    auto it = links_.find(id);
    return it == links_.end() ? nullptr : &it->second;
  }
  const SubstrateNode* node(const NodeId& id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
  }

  bool trusted(const DomainId& a, const DomainId& b) const {
    return !untrusted_.count(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  }

  // Domains marked dirty since the last snapshot publication.
  std::set<DomainId> take_dirty() {
    std::set<DomainId> out;
    out.swap(dirty_);
    return out;
  }

  // Atomic reservation against one slate or link. Fails without side
  // effects when any component would exceed remaining capacity, when the
  // slate is dedicated to another NSI, or when `exclusive` is requested on
  // a slate already carrying foreign allocations.
  Result<ReservationId> allocate(const std::string& target, const NsiId& nsi, const NssiId& nssi,
                                 const Amounts& amounts, bool exclusive = false) {
    if (!amounts.any_positive() || !amounts.all_nonneg())
      return make_error(Errc::invalid_value, "amounts must be positive in at least one component");
    if (auto it = slates_.find(target); it != slates_.end()) {
      ResourceSlate& s = it->second;
      if (auto owner = s.dedicated_owner(); owner && *owner != nsi)
        return make_error(Errc::isolation_conflict, target + " dedicated to " + *owner);
      if (exclusive)
        for (const auto& e : s.ledger)
          if (e.nsi != nsi)
            return make_error(Errc::isolation_conflict, target + " already shared with " + e.nsi);
      if (auto comp = (s.allocated() + amounts).component_exceeding(s.capacity))
        return make_error(Errc::insufficient_capacity, target + ": " + *comp);
      ReservationId rid = next_reservation_id();
      s.ledger.push_back({rid, nsi, nssi, amounts, exclusive});
      note_delta({target, nsi, nssi, amounts, false});
      mark_dirty(s.domain);
      reservations_[rid] = target;
      return rid;
    }
    if (auto it = links_.find(target); it != links_.end()) {
      SubstrateLink& l = it->second;
      if (amounts.bandwidth_mbps <= Qty(0))
        return make_error(Errc::invalid_value, "link allocation needs bandwidth");
      if (l.allocated_bandwidth() + amounts.bandwidth_mbps > l.bandwidth_capacity)
        return make_error(Errc::insufficient_capacity, target + ": bandwidth_mbps");
      ReservationId rid = next_reservation_id();
      l.ledger.push_back({rid, nsi, nssi, amounts, exclusive});
      note_delta({target, nsi, nssi, amounts, false});
      mark_dirty(l.src.domain);
      mark_dirty(l.dst.domain);
      reservations_[rid] = target;
      return rid;
    }
    return make_error(Errc::unknown_id, target);
  }

  // Exact inverse of allocate. Double release is an error.
  Status release(const ReservationId& rid) {
    auto it = reservations_.find(rid);
    if (it == reservations_.end()) {
      if (released_.count(rid)) return make_error(Errc::double_release, rid);
      return make_error(Errc::unknown_reservation, rid);
    }
    const std::string target = it->second;
    auto drop = [&](auto& ledger) -> std::optional<LedgerEntry> {
      for (auto e = ledger.begin(); e != ledger.end(); ++e)
        if (e->id == rid) {
          LedgerEntry out = *e;
          ledger.erase(e);
          return out;
        }
      return std::nullopt;
    };
    if (auto s = slates_.find(target); s != slates_.end()) {
      auto entry = drop(s->second.ledger);
      note_delta({target, entry->nsi, entry->nssi, entry->amounts, true});
      mark_dirty(s->second.domain);
    } else if (auto l = links_.find(target); l != links_.end()) {
      auto entry = drop(l->second.ledger);
      note_delta({target, entry->nsi, entry->nssi, entry->amounts, true});
      mark_dirty(l->second.src.domain);
      mark_dirty(l->second.dst.domain);
    }
    reservations_.erase(it);
    released_.insert(rid);
    return ok_status();
  }

  // Releases every reservation tagged with the given NSI. Used for
  // all-or-nothing rollback and decommissioning.
  void release_all_for_nsi(const NsiId& nsi) {
    std::vector<ReservationId> to_release;
    for (const auto& [id, s] : slates_)
      for (const auto& e : s.ledger)
        if (e.nsi == nsi) to_release.push_back(e.id);
    for (const auto& [id, l] : links_)
      for (const auto& e : l.ledger)
        if (e.nsi == nsi) to_release.push_back(e.id);
    for (const auto& rid : to_release) (void)release(rid);
  }

  // Attribute/capacity change at a given tick. Shrinking below current
  // allocation is allowed; the target is then flagged oversubscribed.
  Status degrade(const std::string& target, const nlohmann::json& attrs) {
    if (auto it = slates_.find(target); it != slates_.end()) {
      if (attrs.contains("capacity")) it->second.capacity = amounts_from_json(attrs.at("capacity"));
      mark_dirty(it->second.domain);
      return ok_status();
    }
    if (auto it = links_.find(target); it != links_.end()) {
      SubstrateLink& l = it->second;
      if (attrs.contains("bandwidth_mbps")) l.bandwidth_capacity = qty_from_json(attrs.at("bandwidth_mbps"));
      if (attrs.contains("latency_ms")) l.qos.latency_ms = qty_from_json(attrs.at("latency_ms"));
      if (attrs.contains("jitter_ms")) l.qos.jitter_ms = qty_from_json(attrs.at("jitter_ms"));
      if (attrs.contains("loss")) l.qos.loss = attrs.at("loss").get<double>();
      mark_dirty(l.src.domain);
      mark_dirty(l.dst.domain);
      return ok_status();
    }
    return make_error(Errc::unknown_id, target);
  }

  // Abstracted per-domain capability summary: aggregates and ranges only,
  // never node identities.
  Result<CapabilitySnapshot> capability_snapshot(const DomainId& domain,
                                                 const std::set<std::string>& supported_services) const {
    if (!domains_.count(domain)) return make_error(Errc::unknown_domain, domain);
    CapabilitySnapshot snap;
    snap.domain = domain;
    snap.supported_service_types = supported_services;
    std::map<std::string, TechnologySnapshot> by_tech;
    for (const auto& [sid, sub] : subdomains_) {
      if (sub.domain != domain) continue;
      by_tech.try_emplace(sub.technology, TechnologySnapshot{sub.technology, {}, {}, {}, {}, 0, 0, {}});
    }
    for (const auto& [id, s] : slates_) {
      if (s.domain != domain) continue;
      const std::string tech = subdomains_.at(s.subdomain).technology;
      auto& t = by_tech[tech];
      t.technology = tech;
      t.total += s.capacity;
      Amounts free = s.free();
      if (free.all_nonneg()) t.free += free;  // oversubscribed slates contribute no free capacity
      if (!s.vendor_descriptor.is_null() && s.vendor_descriptor.contains("dialect"))
        merge_descriptor(t.vendor_descriptors, s.vendor_descriptor);
    }
    std::set<std::string> seen_links;
    for (const auto& [id, l] : links_) {
      if (l.scope != LinkScope::intra_domain || l.src.domain != domain) continue;
      const std::string tech = subdomains_.at(nodes_.at(l.src.node).subdomain).technology;
      auto& t = by_tech[tech];
      t.technology = tech;
      bool first = seen_links.insert(tech).second;
      if (first || l.qos.latency_ms < t.min_link_latency_ms) t.min_link_latency_ms = l.qos.latency_ms;
      if (first || l.qos.latency_ms > t.max_link_latency_ms) t.max_link_latency_ms = l.qos.latency_ms;
      if (first || l.qos.loss < t.min_link_loss) t.min_link_loss = l.qos.loss;
      if (first || l.qos.loss > t.max_link_loss) t.max_link_loss = l.qos.loss;
    }
    for (auto& [tech, t] : by_tech) snap.technologies.push_back(std::move(t));
    return snap;
  }

 private:
  static void merge_descriptor(std::vector<std::pair<std::string, nlohmann::json>>& into,
                               const nlohmann::json& descriptor) {
    const std::string dialect = descriptor.at("dialect").get<std::string>();
    for (auto& [d, agg] : into) {
      if (d != dialect) continue;
      for (auto it = descriptor.begin(); it != descriptor.end(); ++it) {
        if (it.key() == "dialect") continue;
        if (it.value().is_number() && agg.contains(it.key()))
          agg[it.key()] = agg[it.key()].get<double>() + it.value().get<double>();
        else if (!agg.contains(it.key()))
          agg[it.key()] = it.value();
      }
      return;
    }
    into.emplace_back(dialect, descriptor);
  }

  ReservationId next_reservation_id() { return "rsv-" + std::to_string(++reservation_seq_); }

  void note_delta(const LedgerDelta& d) {
    if (observer_) observer_(d);
  }
  void mark_dirty(const DomainId& d) { dirty_.insert(d); }

  std::map<DomainId, Domain> domains_;
  std::map<SubDomainId, SubDomain> subdomains_;
  std::map<NodeId, SubstrateNode> nodes_;
  std::map<SlateId, ResourceSlate> slates_;
  std::map<LinkId, SubstrateLink> links_;
  std::set<std::pair<DomainId, DomainId>> untrusted_;
  std::map<ReservationId, std::string> reservations_;
  std::set<ReservationId> released_;
  std::set<DomainId> dirty_;
  DeltaObserver observer_;
  std::int64_t reservation_seq_ = 0;
};

inline CapabilitySnapshot snapshot_from_json(const nlohmann::json& j) {
  CapabilitySnapshot snap;
  snap.domain = j.at("domain").get<std::string>();
  for (const auto& tj : j.at("technologies")) {
    TechnologySnapshot t;
    t.technology = tj.at("technology").get<std::string>();
    t.total = amounts_from_json(tj.at("total"));
    t.free = amounts_from_json(tj.at("free"));
    t.min_link_latency_ms = qty_from_json(tj.at("link_latency_ms").at(0));
    t.max_link_latency_ms = qty_from_json(tj.at("link_latency_ms").at(1));
    t.min_link_loss = tj.at("link_loss").at(0).get<double>();
    t.max_link_loss = tj.at("link_loss").at(1).get<double>();
    for (const auto& vd : tj.at("vendor_descriptors"))
      t.vendor_descriptors.emplace_back(vd.at("dialect").get<std::string>(), vd);
    snap.technologies.push_back(std::move(t));
  }
  for (const auto& s : j.at("supported_service_types"))
    snap.supported_service_types.insert(s.get<std::string>());
  return snap;
}

inline nlohmann::ordered_json to_json(const CapabilitySnapshot& snap) {
  nlohmann::ordered_json j;
  j["domain"] = snap.domain;
  auto techs = nlohmann::ordered_json::array();
  for (const auto& t : snap.technologies) {
    nlohmann::ordered_json tj;
    tj["technology"] = t.technology;
    tj["total"] = to_json(t.total);
    tj["free"] = to_json(t.free);
    tj["link_latency_ms"] = {qty_to_json(t.min_link_latency_ms), qty_to_json(t.max_link_latency_ms)};
    tj["link_loss"] = {t.min_link_loss, t.max_link_loss};
    auto vds = nlohmann::ordered_json::array();
    for (const auto& [dialect, desc] : t.vendor_descriptors)
      vds.push_back(nlohmann::ordered_json::parse(desc.dump()));
    tj["vendor_descriptors"] = vds;
    techs.push_back(tj);
  }
  j["technologies"] = techs;
  j["supported_service_types"] = snap.supported_service_types;
  return j;
}

}  // namespace fedslice
