#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fedslice/trace.hpp"

namespace fedslice {

// A conformance pattern is a partial order over message kinds, checked per
// NSI: whenever `after` occurs for a slice, `before` must already have
// occurred for the same slice. `requires_kinds` must appear at least once,
// `forbids` never.
struct ConformancePattern {
  std::string name;
  std::vector<std::pair<std::string, std::string>> precedence;  // (before, after)
  std::vector<std::string> requires_kinds;
  std::vector<std::string> forbids;
};

struct SequenceVerdict {
  bool conforms = true;
  std::string violation;  // first violated constraint, human readable

  static SequenceVerdict fail(std::string why) { return {false, std::move(why)}; }
};

inline ConformancePattern pattern_from_json(const Json& j) {
  ConformancePattern p;
  p.name = j.at("name").get<std::string>();
  for (const auto& pair : j.at("precedence"))
    p.precedence.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
  if (j.contains("requires"))
    for (const auto& r : j.at("requires")) p.requires_kinds.push_back(r.get<std::string>());
  if (j.contains("forbids"))
    for (const auto& f : j.at("forbids")) p.forbids.push_back(f.get<std::string>());
  return p;
}

// Checks the trace against the pattern, scoped per NSI. Events without an
// NSI tag are outside every scope.
inline SequenceVerdict assert_sequence(const Trace& trace, const ConformancePattern& pattern) {
  std::map<std::string, std::vector<const TraceEvent*>> by_nsi;
  for (const auto& e : trace.events)
    if (!e.msg.nsi.empty()) by_nsi[e.msg.nsi].push_back(&e);

  for (const auto& [nsi, events] : by_nsi) {
    std::map<std::string, std::int64_t> first_seen;
    bool any_pattern_kind = false;
    for (const TraceEvent* e : events) {
      const std::string kind = kind_name(e->msg.kind);
      for (const auto& f : pattern.forbids)
        if (kind == f)
          return SequenceVerdict::fail(nsi + ": forbidden kind " + f + " at seq " + std::to_string(e->seq));
      for (const auto& [before, after] : pattern.precedence) {
        if (kind == before || kind == after) any_pattern_kind = true;
        if (kind == after && !first_seen.count(before))
          return SequenceVerdict::fail(nsi + ": " + after + " at seq " + std::to_string(e->seq) +
                                       " without preceding " + before);
      }
      first_seen.try_emplace(kind, e->seq);
    }
    if (any_pattern_kind)
      for (const auto& r : pattern.requires_kinds)
        if (!first_seen.count(r)) return SequenceVerdict::fail(nsi + ": required kind " + r + " never occurred");
  }
  return {};
}

}  // namespace fedslice
