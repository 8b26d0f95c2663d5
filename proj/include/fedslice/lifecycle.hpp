#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fedslice/rational.hpp"
#include "fedslice/requirements.hpp"
#include "fedslice/result.hpp"

namespace fedslice {

// Shared lifecycle state machine for NSIs and NSSIs. Decommissioned is
// terminal; every other transition is listed in the table below and
// anything else is rejected with a typed error.
enum class SliceState {
  Requested,
  Admitted,
  Decomposed,
  Instantiating,
  Operational,
  Modifying,
  Degraded,
  Decommissioned,
};

enum class SliceEvent {
  Admit,
  Reject,
  PlanReady,
  BeginInstantiation,
  AllConstituentsReady,
  InstantiationFailed,
  BeginModify,
  ModifySucceeded,
  ModifyExhausted,
  DegradationDetected,
  Recovered,
  Decommission,
};

inline const char* state_name(SliceState s) {
  switch (s) {
    case SliceState::Requested: return "Requested";
    case SliceState::Admitted: return "Admitted";
    case SliceState::Decomposed: return "Decomposed";
    case SliceState::Instantiating: return "Instantiating";
    case SliceState::Operational: return "Operational";
    case SliceState::Modifying: return "Modifying";
    case SliceState::Degraded: return "Degraded";
    case SliceState::Decommissioned: return "Decommissioned";
  }
  return "?";
}

inline const char* event_name(SliceEvent e) {
  switch (e) {
    case SliceEvent::Admit: return "Admit";
    case SliceEvent::Reject: return "Reject";
    case SliceEvent::PlanReady: return "PlanReady";
    case SliceEvent::BeginInstantiation: return "BeginInstantiation";
    case SliceEvent::AllConstituentsReady: return "AllConstituentsReady";
    case SliceEvent::InstantiationFailed: return "InstantiationFailed";
    case SliceEvent::BeginModify: return "BeginModify";
    case SliceEvent::ModifySucceeded: return "ModifySucceeded";
    case SliceEvent::ModifyExhausted: return "ModifyExhausted";
    case SliceEvent::DegradationDetected: return "DegradationDetected";
    case SliceEvent::Recovered: return "Recovered";
    case SliceEvent::Decommission: return "Decommission";
  }
  return "?";
}

inline std::optional<SliceState> parse_state(const std::string& s) {
  for (SliceState st : {SliceState::Requested, SliceState::Admitted, SliceState::Decomposed,
                        SliceState::Instantiating, SliceState::Operational, SliceState::Modifying,
                        SliceState::Degraded, SliceState::Decommissioned})
    if (s == state_name(st)) return st;
  return std::nullopt;
}

// Closed transition table: (state, event) -> next state or invalid-transition.
inline Result<SliceState> next_state(SliceState s, SliceEvent e) {
  using S = SliceState;
  using E = SliceEvent;
  if (s == S::Decommissioned)
    return make_error(Errc::invalid_transition, "Decommissioned is terminal");
  if (e == E::Decommission) return S::Decommissioned;
  switch (s) {
    case S::Requested:
      if (e == E::Admit) return S::Admitted;
      if (e == E::Reject) return S::Decommissioned;
      break;
    case S::Admitted:
      if (e == E::PlanReady) return S::Decomposed;
      if (e == E::Reject) return S::Decommissioned;  // late reject: no feasible plan
      break;
    case S::Decomposed:
      if (e == E::BeginInstantiation) return S::Instantiating;
      break;
    case S::Instantiating:
      if (e == E::AllConstituentsReady) return S::Operational;
      if (e == E::InstantiationFailed) return S::Decomposed;  // conductor may replan
      if (e == E::Reject) return S::Decommissioned;
      break;
    case S::Operational:
      if (e == E::BeginModify) return S::Modifying;
      if (e == E::DegradationDetected) return S::Degraded;
      break;
    case S::Modifying:
      if (e == E::ModifySucceeded) return S::Operational;
      if (e == E::ModifyExhausted) return S::Degraded;
      break;
    case S::Degraded:
      if (e == E::Recovered) return S::Operational;
      if (e == E::BeginModify) return S::Modifying;
      if (e == E::ModifyExhausted) return S::Degraded;
      break;
    default:
      break;
  }
  return make_error(Errc::invalid_transition,
                    std::string(state_name(s)) + " cannot take " + event_name(e));
}

// A reserved inter-domain connectivity segment of a federated slice.
enum class InterconnectState { Negotiating, Reserved, Released };

inline const char* interconnect_state_name(InterconnectState s) {
  switch (s) {
    case InterconnectState::Negotiating: return "Negotiating";
    case InterconnectState::Reserved: return "Reserved";
    case InterconnectState::Released: return "Released";
  }
  return "?";
}

struct InterconnectReservation {
  std::string wan_link_id;
  std::string reservation_id;  // substrate ledger entry, empty unless Reserved
  DomainId domain_a;
  DomainId domain_b;
  Endpoint border_a;
  Endpoint border_b;
  Qty bandwidth_mbps{0};
  InterconnectState state = InterconnectState::Negotiating;
};

// Per-domain constituent of a federated slice.
struct NssiRecord {
  NssiId nssi_id;
  NsiId parent_nsi;
  DomainId domain_id;
  SliceState state = SliceState::Requested;
  // vnf id -> (slate id, host node)
  std::map<VnfId, std::pair<std::string, NodeId>> embedding;
  // logical link id -> substrate path (link ids)
  std::map<std::string, std::vector<std::string>> paths;
  // slate or link id -> reserved amounts by component name
  std::map<std::string, std::map<std::string, Qty>> allocated;
};

struct Schedule {
  std::int64_t start_tick = 0;
  std::optional<std::int64_t> end_tick;
};

// Federated slice instance as the coordinator tracks it.
struct NsiRecord {
  NsiId nsi_id;
  TenantId tenant_id;
  SliceState state = SliceState::Requested;
  std::vector<NssiId> nssis;
  std::vector<InterconnectReservation> interconnects;
  ServiceRequirements requirements;
  Schedule schedule;
};

inline nlohmann::ordered_json to_json(const NssiRecord& r) {
  nlohmann::ordered_json j;
  j["nssi_id"] = r.nssi_id;
  j["parent_nsi"] = r.parent_nsi;
  j["domain_id"] = r.domain_id;
  j["state"] = state_name(r.state);
  nlohmann::ordered_json emb = nlohmann::ordered_json::object();
  for (const auto& [vnf, place] : r.embedding) emb[vnf] = {place.first, place.second};
  j["embedding"] = emb;
  nlohmann::ordered_json paths = nlohmann::ordered_json::object();
  for (const auto& [link, path] : r.paths) paths[link] = path;
  j["paths"] = paths;
  nlohmann::ordered_json alloc = nlohmann::ordered_json::object();
  for (const auto& [target, comps] : r.allocated) {
    nlohmann::ordered_json cj = nlohmann::ordered_json::object();
    for (const auto& [name, amt] : comps) cj[name] = qty_to_json(amt);
    alloc[target] = cj;
  }
  j["allocated"] = alloc;
  return j;
}

inline NssiRecord nssi_from_json(const nlohmann::json& j) {
  NssiRecord r;
  r.nssi_id = j.at("nssi_id").get<std::string>();
  r.parent_nsi = j.at("parent_nsi").get<std::string>();
  r.domain_id = j.at("domain_id").get<std::string>();
  r.state = *parse_state(j.at("state").get<std::string>());
  for (auto it = j.at("embedding").begin(); it != j.at("embedding").end(); ++it)
    r.embedding[it.key()] = {it.value().at(0).get<std::string>(), it.value().at(1).get<std::string>()};
  for (auto it = j.at("paths").begin(); it != j.at("paths").end(); ++it)
    r.paths[it.key()] = it.value().get<std::vector<std::string>>();
  for (auto it = j.at("allocated").begin(); it != j.at("allocated").end(); ++it)
    for (auto c = it.value().begin(); c != it.value().end(); ++c)
      r.allocated[it.key()][c.key()] = qty_from_json(c.value());
  return r;
}

inline nlohmann::ordered_json to_json(const NsiRecord& r) {
  nlohmann::ordered_json j;
  j["nsi_id"] = r.nsi_id;
  j["tenant_id"] = r.tenant_id;
  j["state"] = state_name(r.state);
  j["nssis"] = r.nssis;
  auto ics = nlohmann::ordered_json::array();
  for (const auto& ic : r.interconnects) {
    nlohmann::ordered_json cj;
    cj["wan_link_id"] = ic.wan_link_id;
    cj["reservation_id"] = ic.reservation_id;
    cj["domain_a"] = ic.domain_a;
    cj["domain_b"] = ic.domain_b;
    cj["border_a"] = {ic.border_a.domain, ic.border_a.node};
    cj["border_b"] = {ic.border_b.domain, ic.border_b.node};
    cj["bandwidth_mbps"] = qty_to_json(ic.bandwidth_mbps);
    cj["state"] = interconnect_state_name(ic.state);
    ics.push_back(cj);
  }
  j["interconnects"] = ics;
  j["requirements"] = to_json(r.requirements);
  j["schedule"]["start"] = r.schedule.start_tick;
  if (r.schedule.end_tick) j["schedule"]["end"] = *r.schedule.end_tick;
  return j;
}

inline NsiRecord nsi_from_json(const nlohmann::json& j) {
  NsiRecord r;
  r.nsi_id = j.at("nsi_id").get<std::string>();
  r.tenant_id = j.at("tenant_id").get<std::string>();
  r.state = *parse_state(j.at("state").get<std::string>());
  r.nssis = j.at("nssis").get<std::vector<std::string>>();
  for (const auto& cj : j.at("interconnects")) {
    InterconnectReservation ic;
    ic.wan_link_id = cj.at("wan_link_id").get<std::string>();
    ic.reservation_id = cj.at("reservation_id").get<std::string>();
    ic.domain_a = cj.at("domain_a").get<std::string>();
    ic.domain_b = cj.at("domain_b").get<std::string>();
    ic.border_a = {cj.at("border_a").at(0).get<std::string>(), cj.at("border_a").at(1).get<std::string>()};
    ic.border_b = {cj.at("border_b").at(0).get<std::string>(), cj.at("border_b").at(1).get<std::string>()};
    ic.bandwidth_mbps = qty_from_json(cj.at("bandwidth_mbps"));
    for (InterconnectState s : {InterconnectState::Negotiating, InterconnectState::Reserved, InterconnectState::Released})
      if (cj.at("state") == interconnect_state_name(s)) ic.state = s;
    r.interconnects.push_back(ic);
  }
  r.requirements = requirements_from_json(j.at("requirements"));
  r.schedule.start_tick = j.at("schedule").at("start").get<std::int64_t>();
  if (j.at("schedule").contains("end")) r.schedule.end_tick = j.at("schedule").at("end").get<std::int64_t>();
  return r;
}

}  // namespace fedslice
