#pragma once

// JSON forms of rings, algebras, ideals, homs and identities, and the run
// configuration: named objects plus an ordered list of check descriptors.
// Every error raised while reading a config is ParseError or
// ValidationError and names the JSON location it refers to.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "azumaya/pi.hpp"

namespace azumaya {

Json ring_to_json(const RingPtr& r);
RingPtr ring_from_json(const Json& j, const std::string& where = "");

// Structure-constant form; algebra_from_json of it rebuilds an equal algebra.
Json algebra_to_json(const AlgebraPtr& a);

Json ideal_to_json(const RingIdeal& i);
RingIdeal ideal_from_json(const RingPtr& r, const Json& j, const std::string& where = "");

Json identity_to_json(const MultilinearIdentity& id);
MultilinearIdentity identity_from_json(const Json& j, const std::string& where = "");

// Text -> JSON; duplicate object keys are rejected. Throws ParseError with line and column.
Json parse_config_text(const std::string& text);

struct Limits {
  std::uint64_t max_tuples = 10000000;
  Int max_elements = 16;
};

struct RunContext {
  std::uint64_t seed = 0;  // already derived for this check
  Limits limits;
};

struct PlannedCheck {
  std::string name;  // "name" field, defaults to the check kind
  std::string kind;
  bool sampled = false;
  std::function<CheckReport(const RunContext&)> run;
};

struct Workspace {
  std::map<std::string, RingPtr> rings;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, AlgebraHom> homs;
  std::map<std::string, MultilinearIdentity> identities;
  std::vector<std::string> claimed_verified;  // hom names, sorted
  std::vector<PlannedCheck> checks;
  std::optional<std::uint64_t> seed;
};

// Resolves every object and plans every check; nothing is executed yet.
Workspace load_workspace(const Json& cfg, const Limits& limits = {});

// Canonical forms of every named object.
Json canonical_json(const Workspace& ws);

// verify_hom reports for homs claimed verified, then the planned checks
// (all, or those whose name or kind equals only), in order. Sampled checks
// get derive_seed(seed, index). Throws ValidationError when a sampled check
// runs without a seed or `only` matches nothing.
std::vector<CheckReport> run_workspace(const Workspace& ws, std::optional<std::uint64_t> seed, const Limits& limits,
                                       const std::optional<std::string>& only = std::nullopt,
                                       const std::function<void(const CheckReport&)>& emit = {});

}  // namespace azumaya
