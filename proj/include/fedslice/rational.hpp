#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace fedslice {

// Exact quantity type used for every capacity, demand and budget in the
// simulator. Probabilities are the one exception and stay as doubles.
using Qty = boost::rational<std::int64_t>;

inline Qty qty(std::int64_t num, std::int64_t den = 1) { return Qty(num, den); }

inline double to_double(const Qty& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

// Canonical text form: "n" when integral, "n/d" otherwise.
inline std::string to_string(const Qty& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

namespace detail {

inline std::int64_t checked_pow10(int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > INT64_MAX / 10) throw std::overflow_error("decimal exponent too large");
    v *= 10;
  }
  return v;
}

}  // namespace detail

// Parses "12", "-3.25", "1e-3", "2.5e2" or the canonical "n/d" form into an
// exact rational. Throws std::invalid_argument on junk input.
inline Qty qty_parse(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty quantity");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t num = std::stoll(std::string(s.substr(0, slash)));
    std::int64_t den = std::stoll(std::string(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Qty(num, den);
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::int64_t mantissa = 0;
  int frac_digits = 0;
  bool seen_digit = false, in_frac = false;
  int exponent = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      if (mantissa > (INT64_MAX - (c - '0')) / 10) throw std::overflow_error("quantity too large");
      mantissa = mantissa * 10 + (c - '0');
      if (in_frac) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exponent = std::stoi(std::string(s.substr(i + 1)));
      break;
    } else {
      throw std::invalid_argument("bad quantity: " + std::string(s));
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad quantity: " + std::string(s));
  if (neg) mantissa = -mantissa;
  int shift = exponent - frac_digits;
  Qty q(mantissa, 1);
  if (shift > 0) q *= Qty(detail::checked_pow10(shift), 1);
  if (shift < 0) q /= Qty(detail::checked_pow10(-shift), 1);
  return q;
}

// JSON scenario files carry quantities as plain numbers or as strings
// ("3/2", "0.25"). Doubles are converted through their shortest decimal
// rendering so that a literal like 2.5 means exactly 5/2.
inline Qty qty_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Qty(j.get<std::int64_t>(), 1);
  if (j.is_number_unsigned()) return Qty(static_cast<std::int64_t>(j.get<std::uint64_t>()), 1);
  if (j.is_number_float()) return qty_parse(j.dump());
  if (j.is_string()) return qty_parse(j.get<std::string>());
  throw std::invalid_argument("quantity must be a number or string");
}

inline nlohmann::json qty_to_json(const Qty& q) {
  if (q.denominator() == 1) return q.numerator();
  return to_string(q);
}

}  // namespace fedslice
