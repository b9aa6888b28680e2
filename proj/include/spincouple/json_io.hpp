// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "spincouple/qsqrt.hpp"

namespace spincouple {

/// Serializes to a canonical array of terms sorted by ascending radicand:
/// [{"c":"p/q","d":n}, ...].  Round-trips bit-exactly through qsqrt_from_json.
inline nlohmann::json qsqrt_to_json(const QSqrt& q) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [d, c] : q.terms()) {
    if (d > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("radicand exceeds the JSON integer range");
    arr.push_back({{"c", rational_str(c)}, {"d", d.convert_to<std::int64_t>()}});
  }
  return arr;
}

inline QSqrt qsqrt_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("radical sum JSON must be an array");
  QSqrt q;
  for (const auto& term : j) {
    const auto c = rational_parse(term.at("c").get<std::string>());
    if (!c) throw std::invalid_argument("bad rational coefficient in JSON term");
    const std::int64_t d = term.at("d").get<std::int64_t>();
    if (d < 1) throw std::invalid_argument("radicand must be a positive integer");
    q += QSqrt::from_parts(*c, Int(d));
  }
  return q;
}

inline nlohmann::json cqsqrt_to_json(const CQSqrt& z) {
  return {{"re", qsqrt_to_json(z.re)}, {"im", qsqrt_to_json(z.im)}};
}

inline CQSqrt cqsqrt_from_json(const nlohmann::json& j) {
  return {qsqrt_from_json(j.at("re")), qsqrt_from_json(j.at("im"))};
}

}  // namespace spincouple
