#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace fedslice {

// Closed error taxonomy. Tests match on these codes, so every failure path
// in the library maps to exactly one of them.
enum class Errc {
  no_segments,
  invalid_value,
  invalid_probability,
  insufficient_capacity,
  isolation_conflict,
  unknown_id,
  unknown_reservation,
  double_release,
  unknown_domain,
  malformed_requirements,
  unknown_tenant,
  past_start,
  unknown_nsi,
  unknown_nssi,
  no_feasible_combination,
  coordinator_already_exists,
  unknown_dialect,
  no_wan_capacity,
  qos_unreachable,
  domain_instantiation_failed,
  interconnect_failed,
  mediation_failed,
  unsupported_service_type,
  no_matching_template,
  embedding_infeasible,
  slate_ack_timeout,
  path_install_failed,
  escalation_exhausted,
  invalid_transition,
  malformed_message,
  tick_budget_exhausted,
  parse_error,
  schema_violation,
  instance_too_large,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::no_segments: return "no-segments";
    case Errc::invalid_value: return "invalid-value";
    case Errc::invalid_probability: return "invalid-probability";
    case Errc::insufficient_capacity: return "insufficient-capacity";
    case Errc::isolation_conflict: return "isolation-conflict";
    case Errc::unknown_id: return "unknown-id";
    case Errc::unknown_reservation: return "unknown-reservation";
    case Errc::double_release: return "double-release";
    case Errc::unknown_domain: return "unknown-domain";
    case Errc::malformed_requirements: return "malformed-requirements";
    case Errc::unknown_tenant: return "unknown-tenant";
    case Errc::past_start: return "past-start";
    case Errc::unknown_nsi: return "unknown-nsi";
    case Errc::unknown_nssi: return "unknown-nssi";
    case Errc::no_feasible_combination: return "no-feasible-combination";
    case Errc::coordinator_already_exists: return "coordinator-already-exists";
    case Errc::unknown_dialect: return "unknown-dialect";
    case Errc::no_wan_capacity: return "no-wan-capacity";
    case Errc::qos_unreachable: return "qos-unreachable";
    case Errc::domain_instantiation_failed: return "domain-instantiation-failed";
    case Errc::interconnect_failed: return "interconnect-failed";
    case Errc::mediation_failed: return "mediation-failed";
    case Errc::unsupported_service_type: return "unsupported-service-type";
    case Errc::no_matching_template: return "no-matching-template";
    case Errc::embedding_infeasible: return "embedding-infeasible";
    case Errc::slate_ack_timeout: return "slate-ack-timeout";
    case Errc::path_install_failed: return "path-install-failed";
    case Errc::escalation_exhausted: return "escalation-exhausted";
    case Errc::invalid_transition: return "invalid-transition";
    case Errc::malformed_message: return "malformed-message";
    case Errc::tick_budget_exhausted: return "tick-budget-exhausted";
    case Errc::parse_error: return "parse-error";
    case Errc::schema_violation: return "schema-violation";
    case Errc::instance_too_large: return "instance-too-large";
  }
  return "unknown";
}

struct Error {
  Errc code;
  std::string detail;
};

inline Error make_error(Errc code, std::string detail = {}) { return Error{code, std::move(detail)}; }

template <class T>
class [[nodiscard]] Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Error e) : v_(std::move(e)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    assert(ok());
    return std::get<T>(v_);
  }
  T& value() & {
    assert(ok());
    return std::get<T>(v_);
  }
  T&& value() && {
    assert(ok());
    return std::get<T>(std::move(v_));
  }
  const Error& error() const {
    assert(!ok());
    return std::get<Error>(v_);
  }
  Errc code() const { return error().code; }

 private:
  std::variant<T, Error> v_;
};

// Result for operations that only succeed or fail.
using Status = Result<std::monostate>;

inline Status ok_status() { return Status(std::monostate{}); }

}  // namespace fedslice
