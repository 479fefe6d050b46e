#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace azumaya {

using Json = nlohmann::json;

enum class Status { Pass, Fail, ContradictsTheorem, NotFound, PreconditionUnmet };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct Precondition {
  std::string name;
  bool held = false;
  bool operator==(const Precondition&) const = default;
};

// Result of one check. Fail and ContradictsTheorem always carry a witness.
struct CheckReport {
  std::string check;
  std::string subject;
  Status status = Status::Pass;
  Json witness;  // null when absent
  Json details = Json::object();
  std::vector<Precondition> preconditions;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> count;
  double timing_ms = 0.0;

  bool ok() const { return status == Status::Pass || status == Status::NotFound; }
  bool all_preconditions_held() const;
  void precondition(std::string name, bool held) { preconditions.push_back({std::move(name), held}); }
};

// Everything except timing, keys sorted; identical for identical (config, seed).
Json comparable_json(const CheckReport& r);
Json to_json(const CheckReport& r);
CheckReport report_from_json(const Json& j);

// 0 when every report passed or was not-found, 3 if any contradicts a
// theorem, otherwise 1.
int exit_code_for(const std::vector<CheckReport>& reports);

}  // namespace azumaya
