#pragma once

// JSON shapes shared by the command-line tool.

#include <nlohmann/json.hpp>

#include "trichor/bounds.hpp"
#include "trichor/charging.hpp"
#include "trichor/enumerate.hpp"

namespace trichor {

inline nlohmann::json to_json(const EnumerationResult& r) {
  nlohmann::json totals = nlohmann::json::object();
  for (const auto& [i, c] : r.degree_totals) totals[std::to_string(i)] = c.str();
  nlohmann::json j = {{"n", r.n}, {"count", r.count.str()}, {"degree_totals", std::move(totals)}, {"exhaustive", r.exhaustive}};
  if (r.exhaustive && r.count > 0) {
    j["vhat3"] = fraction_json(Rational(r.degree_total(3), r.count));
  } else {
    j["vhat3"] = nullptr;
  }
  return j;
}

inline nlohmann::json to_json(const V3RecursionReport& r) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& c : r.deletions) parts.push_back(c.str());
  return {{"lhs", r.lhs.str()}, {"rhs", r.rhs.str()}, {"deletions", std::move(parts)}, {"holds", r.holds}};
}

inline nlohmann::json to_json(const std::vector<BoundEntry>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"quantity", quantity_name(r.quantity)},
                   {"description", r.description},
                   {"multiplier", fraction_json(r.multiplier)},
                   {"base", fraction_json(r.base)},
                   {"rendered", render_base(r)}});
  }
  return out;
}

}  // namespace trichor
