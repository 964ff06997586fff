#pragma once

#include <string>

#include <json.hpp>

#include "partx/identities.hpp"

namespace partx {

// lhs/rhs are emitted as decimal strings: counts outgrow JSON's safe integer range.

inline nlohmann::json to_json(const IdentityReport& report) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : report.params) params[name] = value;
  return {
      {"identity", std::string(to_string(report.identity))},
      {"params", std::move(params)},
      {"lhs", report.lhs.str()},
      {"rhs", report.rhs.str()},
      {"passed", report.passed},
      {"backend", std::string(to_string(report.backend))},
  };
}

inline nlohmann::json to_json(const SweepResult& result) {
  const SweepRequest& req = result.request;
  nlohmann::json range = {{"n", {req.n.lo, req.n.hi}}};
  if (req.k) range["k"] = {req.k->lo, req.k->hi};
  if (req.family) range["modulus"] = form_of(*req.family).modulus;
  if (req.congruence) range["congruence"] = std::string(to_string(*req.congruence));

  nlohmann::json failures = nlohmann::json::array();
  for (const auto& report : result.failures) failures.push_back(to_json(report));
  return {
      {"identity", std::string(to_string(req.identity))},
      {"range", std::move(range)},
      {"total", result.total_checked},
      {"failures", std::move(failures)},
  };
}

}  // namespace partx
