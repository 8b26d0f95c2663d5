#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedslice/result.hpp"

namespace fedslice {

using Tick = std::int64_t;
using Json = nlohmann::ordered_json;

// Closed message vocabulary: one kind per arrow of the slice creation and
// modification choreographies, plus repository bookkeeping and injected
// environment events.
enum class MsgKind {
  SliceRequest,        // tenant -> broker
  AdmitAck,            // broker -> tenant
  AdmittedRequest,     // broker -> conductor (at scheduled start)
  RepositoryRefresh,   // domain -> broker
  RepositoryUpdate,    // broker -> conductor
  ProgramCoordinator,  // conductor -> coordinator (SLA/policy upload)
  Decomposition,       // conductor -> coordinator (the plan)
  MediateRequest,      // coordinator -> mediator
  MediateResult,       // mediator -> coordinator
  InterconnectRequest,  // coordinator -> ucrm
  InterconnectResult,   // ucrm -> coordinator
  InterconnectRelease,  // coordinator -> ucrm
  SubRequest,           // coordinator -> smf@domain
  MapAck,               // smf -> coordinator (capability feedback)
  MapResult,            // smf -> lcm
  TemplateSelected,     // lcm -> nfvo (graph + reserved embedding)
  SlateConfig,          // nfvo -> vim | nfvo -> vnfm -> vim
  SlateAck,             // vim -> nfvo
  ManoAck,              // nfvo -> lcm
  ChainRequest,         // lcm -> sdn
  ChainInstalled,       // sdn -> lcm
  NssiOperational,      // lcm -> coordinator
  NssiFailed,           // lcm -> coordinator
  NsiOperational,       // coordinator -> tenant
  NsiFailed,            // coordinator -> conductor -> broker -> tenant
  BrokerUpdate,         // coordinator -> broker
  ModifyRequest,        // tenant -> coordinator -> lcm
  ScaleResult,          // lcm -> coordinator -> tenant
  EscalateToConductor,  // coordinator -> conductor
  ReDecomposition,      // conductor -> coordinator
  DecommissionCmd,      // broker -> conductor -> coordinator -> lcm
  NssiDecommissioned,   // lcm -> coordinator
  NsiDecommissioned,    // coordinator -> tenant
  DegradationEvent,     // environment -> substrate agent
};

inline const char* kind_name(MsgKind k) {
  switch (k) {
    case MsgKind::SliceRequest: return "SliceRequest";
    case MsgKind::AdmitAck: return "AdmitAck";
    case MsgKind::AdmittedRequest: return "AdmittedRequest";
    case MsgKind::RepositoryRefresh: return "RepositoryRefresh";
    case MsgKind::RepositoryUpdate: return "RepositoryUpdate";
    case MsgKind::ProgramCoordinator: return "ProgramCoordinator";
    case MsgKind::Decomposition: return "Decomposition";
    case MsgKind::MediateRequest: return "MediateRequest";
    case MsgKind::MediateResult: return "MediateResult";
    case MsgKind::InterconnectRequest: return "InterconnectRequest";
    case MsgKind::InterconnectResult: return "InterconnectResult";
    case MsgKind::InterconnectRelease: return "InterconnectRelease";
    case MsgKind::SubRequest: return "SubRequest";
    case MsgKind::MapAck: return "MapAck";
    case MsgKind::MapResult: return "MapResult";
    case MsgKind::TemplateSelected: return "TemplateSelected";
    case MsgKind::SlateConfig: return "SlateConfig";
    case MsgKind::SlateAck: return "SlateAck";
    case MsgKind::ManoAck: return "ManoAck";
    case MsgKind::ChainRequest: return "ChainRequest";
    case MsgKind::ChainInstalled: return "ChainInstalled";
    case MsgKind::NssiOperational: return "NssiOperational";
    case MsgKind::NssiFailed: return "NssiFailed";
    case MsgKind::NsiOperational: return "NsiOperational";
    case MsgKind::NsiFailed: return "NsiFailed";
    case MsgKind::BrokerUpdate: return "BrokerUpdate";
    case MsgKind::ModifyRequest: return "ModifyRequest";
    case MsgKind::ScaleResult: return "ScaleResult";
    case MsgKind::EscalateToConductor: return "EscalateToConductor";
    case MsgKind::ReDecomposition: return "ReDecomposition";
    case MsgKind::DecommissionCmd: return "DecommissionCmd";
    case MsgKind::NssiDecommissioned: return "NssiDecommissioned";
    case MsgKind::NsiDecommissioned: return "NsiDecommissioned";
    case MsgKind::DegradationEvent: return "DegradationEvent";
  }
  return "?";
}

inline std::optional<MsgKind> parse_kind(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(MsgKind::DegradationEvent); ++k)
    if (s == kind_name(static_cast<MsgKind>(k))) return static_cast<MsgKind>(k);
  return std::nullopt;
}

// Required payload fields per kind; the kind/payload pairing is total and
// post() rejects anything that does not carry its shape.
inline const std::vector<std::string>& payload_shape(MsgKind k) {
  static const std::map<MsgKind, std::vector<std::string>> shapes = {
      {MsgKind::SliceRequest, {"label", "requirements", "schedule"}},
      {MsgKind::AdmitAck, {"label", "verdict"}},
      {MsgKind::AdmittedRequest, {"nsi", "requirements", "repository"}},
      {MsgKind::RepositoryRefresh, {"snapshot"}},
      {MsgKind::RepositoryUpdate, {"repository"}},
      {MsgKind::ProgramCoordinator, {"sla", "policy"}},
      {MsgKind::Decomposition, {"plan"}},
      {MsgKind::MediateRequest, {"domain", "descriptors"}},
      {MsgKind::MediateResult, {"domain", "ok"}},
      {MsgKind::InterconnectRequest, {"pair", "bandwidth_mbps", "qos"}},
      {MsgKind::InterconnectResult, {"pair", "ok"}},
      {MsgKind::InterconnectRelease, {"reservation"}},
      {MsgKind::SubRequest, {"sub_request"}},
      {MsgKind::MapAck, {"domain", "ok"}},
      {MsgKind::MapResult, {"sub_request", "vnf_types"}},
      {MsgKind::TemplateSelected, {"template", "nssi"}},
      {MsgKind::SlateConfig, {"nssi", "slate", "route"}},
      {MsgKind::SlateAck, {"nssi", "slate", "ok"}},
      {MsgKind::ManoAck, {"nssi", "ok"}},
      {MsgKind::ChainRequest, {"nssi", "chain"}},
      {MsgKind::ChainInstalled, {"nssi", "ok"}},
      {MsgKind::NssiOperational, {"nssi", "domain", "summary"}},
      {MsgKind::NssiFailed, {"nssi", "domain", "cause"}},
      {MsgKind::NsiOperational, {"nsi"}},
      {MsgKind::NsiFailed, {"nsi", "cause"}},
      {MsgKind::BrokerUpdate, {"nsi", "status"}},
      {MsgKind::ModifyRequest, {"change"}},
      {MsgKind::ScaleResult, {"outcome"}},
      {MsgKind::EscalateToConductor, {"nsi", "report"}},
      {MsgKind::ReDecomposition, {"plan"}},
      {MsgKind::DecommissionCmd, {"nsi"}},
      {MsgKind::NssiDecommissioned, {"nssi", "domain"}},
      {MsgKind::NsiDecommissioned, {"nsi"}},
      {MsgKind::DegradationEvent, {"target", "attrs"}},
  };
  return shapes.at(k);
}

struct Message {
  std::int64_t seq = 0;  // global enqueue id
  Tick tick = 0;         // delivery tick
  std::string sender;    // "stratum" or "stratum/instance"
  std::string receiver;
  MsgKind kind = MsgKind::SliceRequest;
  std::string nsi;  // scoping id, empty for non-NSI traffic
  bool external = false;  // injected from the scenario timeline
  Json payload;
};

inline std::string stratum_of(const std::string& actor) {
  auto slash = actor.find('/');
  return slash == std::string::npos ? actor : actor.substr(0, slash);
}

}  // namespace fedslice
