#include "azumaya/report.hpp"

#include <algorithm>

#include "azumaya/error.hpp"

namespace azumaya {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::ContradictsTheorem: return "contradicts-theorem";
    case Status::NotFound: return "not-found";
    case Status::PreconditionUnmet: return "precondition-unmet";
  }
  return "fail";
}

Status status_from_string(const std::string& s) {
  for (Status st : {Status::Pass, Status::Fail, Status::ContradictsTheorem, Status::NotFound, Status::PreconditionUnmet})
    if (to_string(st) == s) return st;
  throw Error(ErrorCode::ParseError, "unknown report status '" + s + "'");
}

bool CheckReport::all_preconditions_held() const {
  return std::all_of(preconditions.begin(), preconditions.end(), [](const Precondition& p) { return p.held; });
}

Json comparable_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["subject"] = r.subject;
  j["status"] = to_string(r.status);
  if (!r.witness.is_null()) j["witness"] = r.witness;
  j["details"] = r.details;
  Json pre = Json::array();
  for (const auto& p : r.preconditions) pre.push_back({{"name", p.name}, {"held", p.held}});
  j["preconditions"] = pre;
  Json seeds = Json::object();
  if (r.seed) seeds["seed"] = *r.seed;
  if (r.count) seeds["count"] = *r.count;
  j["seeds"] = seeds;
  return j;
}

Json to_json(const CheckReport& r) {
  Json j = comparable_json(r);
  j["timing_ms"] = r.timing_ms;
  return j;
}

CheckReport report_from_json(const Json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  r.subject = j.at("subject").get<std::string>();
  r.status = status_from_string(j.at("status").get<std::string>());
  if (j.contains("witness")) r.witness = j.at("witness");
  r.details = j.value("details", Json::object());
  for (const auto& p : j.value("preconditions", Json::array())) r.preconditions.push_back({p.at("name"), p.at("held")});
  const Json seeds = j.value("seeds", Json::object());
  if (seeds.contains("seed")) r.seed = seeds.at("seed").get<std::uint64_t>();
  if (seeds.contains("count")) r.count = seeds.at("count").get<std::uint64_t>();
  r.timing_ms = j.value("timing_ms", 0.0);
  return r;
}

int exit_code_for(const std::vector<CheckReport>& reports) {
  bool any_fail = false;
  for (const auto& r : reports) {
    if (r.status == Status::ContradictsTheorem) return 3;
    any_fail |= !r.ok();
  }
  return any_fail ? 1 : 0;
}

}  // namespace azumaya
