#pragma once

#include <string>
#include <vector>

#include "fedslice/messages.hpp"
#include "fedslice/substrate.hpp"

namespace fedslice {

struct StateTransition {
  std::string entity;
  std::string from;
  std::string to;
};

// One delivered message together with everything it caused: state machine
// transitions and ledger mutations. Replaying a trace's external inputs
// reproduces the full sequence byte for byte.
struct TraceEvent {
  std::int64_t seq = 0;  // delivery order, strictly increasing
  Message msg;
  std::vector<StateTransition> transitions;
  std::vector<LedgerDelta> deltas;
};

inline Json to_json(const TraceEvent& e) {
  Json j;
  j["seq"] = e.seq;
  j["tick"] = e.msg.tick;
  j["kind"] = kind_name(e.msg.kind);
  j["sender"] = e.msg.sender;
  j["receiver"] = e.msg.receiver;
  if (!e.msg.nsi.empty()) j["nsi"] = e.msg.nsi;
  if (e.msg.external) j["external"] = true;
  j["payload"] = e.msg.payload;
  if (!e.transitions.empty()) {
    auto ts = Json::array();
    for (const auto& t : e.transitions) ts.push_back({{"entity", t.entity}, {"from", t.from}, {"to", t.to}});
    j["transitions"] = ts;
  }
  if (!e.deltas.empty()) {
    auto ds = Json::array();
    for (const auto& d : e.deltas) {
      Json dj;
      dj["target"] = d.target;
      dj["nsi"] = d.nsi;
      if (!d.nssi.empty()) dj["nssi"] = d.nssi;
      dj["amounts"] = to_json(d.amounts);
      dj["release"] = d.release;
      ds.push_back(dj);
    }
    j["deltas"] = ds;
  }
  return j;
}

inline TraceEvent trace_event_from_json(const Json& j) {
  TraceEvent e;
  e.seq = j.at("seq").get<std::int64_t>();
  e.msg.tick = j.at("tick").get<Tick>();
  e.msg.kind = *parse_kind(j.at("kind").get<std::string>());
  e.msg.sender = j.at("sender").get<std::string>();
  e.msg.receiver = j.at("receiver").get<std::string>();
  if (j.contains("nsi")) e.msg.nsi = j.at("nsi").get<std::string>();
  if (j.contains("external")) e.msg.external = j.at("external").get<bool>();
  e.msg.payload = j.at("payload");
  if (j.contains("transitions"))
    for (const auto& t : j.at("transitions"))
      e.transitions.push_back({t.at("entity"), t.at("from"), t.at("to")});
  if (j.contains("deltas"))
    for (const auto& d : j.at("deltas")) {
      LedgerDelta ld;
      ld.target = d.at("target").get<std::string>();
      ld.nsi = d.at("nsi").get<std::string>();
      if (d.contains("nssi")) ld.nssi = d.at("nssi").get<std::string>();
      ld.amounts = amounts_from_json(d.at("amounts"));
      ld.release = d.at("release").get<bool>();
      e.deltas.push_back(ld);
    }
  return e;
}

// Ordered, line-oriented run record. The first line is a meta header, the
// last a footer with the final tick.
class Trace {
 public:
  std::vector<TraceEvent> events;
  Json meta;     // {"format":..., "scenario":..., "seed":...}
  Tick final_tick = 0;
  bool quiescent = true;

  std::string serialize() const {
    std::string out;
    Json head;
    head["meta"] = meta;
    out += head.dump() + "\n";
    for (const auto& e : events) out += to_json(e).dump() + "\n";
    Json foot;
    foot["end"] = {{"final_tick", final_tick}, {"quiescent", quiescent}};
    out += foot.dump() + "\n";
    return out;
  }

  static Trace parse(const std::string& text) {
    Trace t;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string::npos) nl = text.size();
      std::string line = text.substr(pos, nl - pos);
      pos = nl + 1;
      if (line.empty()) continue;
      Json j = Json::parse(line);
      if (j.contains("meta")) {
        t.meta = j.at("meta");
      } else if (j.contains("end")) {
        t.final_tick = j.at("end").at("final_tick").get<Tick>();
        t.quiescent = j.at("end").at("quiescent").get<bool>();
      } else {
        t.events.push_back(trace_event_from_json(j));
      }
    }
    return t;
  }

  // Timeline-injected messages, the inputs a replay feeds back in.
  std::vector<Message> external_inputs() const {
    std::vector<Message> out;
    for (const auto& e : events)
      if (e.msg.external) out.push_back(e.msg);
    return out;
  }
};

}  // namespace fedslice
