#pragma once

#include <cmath>
#include <vector>

#include "fedslice/rational.hpp"
#include "fedslice/result.hpp"

namespace fedslice {

// End-to-end QoS bounds compose one of two ways across path segments:
// additively (latency, jitter) or multiplicatively on the survival
// probability (error rate, packet loss). These two functions are the only
// composition rules used anywhere in the simulator.

// Additive composition. Works on Qty for exact budget arithmetic and on
// double for measured values.
template <class Num>
Result<Num> end_to_end_latency(const std::vector<Num>& segments_ms) {
  if (segments_ms.empty()) return make_error(Errc::no_segments, "no segments");
  Num total{};
  for (const Num& s : segments_ms) {
    if (s < Num{}) return make_error(Errc::invalid_value, "negative segment");
    total += s;
  }
  return total;
}

template <class Num>
Result<Num> end_to_end_jitter(const std::vector<Num>& segments_ms) {
  return end_to_end_latency(segments_ms);
}

// Multiplicative composition: 1 - prod(1 - e_i). Empty input composes to 0.
inline Result<double> end_to_end_error_rate(const std::vector<double>& segments) {
  double survival = 1.0;
  for (double e : segments) {
    if (!(e >= 0.0 && e <= 1.0)) return make_error(Errc::invalid_probability, "invalid probability");
    survival *= 1.0 - e;
  }
  return 1.0 - survival;
}

inline Result<double> end_to_end_packet_loss(const std::vector<double>& segments) {
  return end_to_end_error_rate(segments);
}

// Largest per-segment failure probability x such that n segments of x still
// compose under the given end-to-end budget: x = 1 - (1 - budget)^(1/n).
inline double equal_error_share(double budget, int segments) {
  if (segments <= 0) return 0.0;
  if (budget >= 1.0) return 1.0;
  return 1.0 - std::pow(1.0 - budget, 1.0 / segments);
}

}  // namespace fedslice
