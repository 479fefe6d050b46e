#pragma once

// The deterministic hom corpus and the built-in theorem suites.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "azumaya/config.hpp"

namespace azumaya {

struct Corpus {
  std::vector<AlgebraHom> homs;
  std::vector<std::string> families;  // parallel to homs
  std::map<std::string, AlgebraFacts> facts;  // by algebra label

  const AlgebraFacts& facts_of(const AlgebraPtr& a) const { return facts.at(a->label()); }
  // Verified, equal constant rank, both Azumaya, reduced target base.
  bool qualifies(const AlgebraHom& f) const;
};

// Order: conjugations (with Frobenius twists), reductions, diagonal
// embeddings, CRT splittings, Weyl splittings, then depth-2 compositions.
// Random conjugating matrices are drawn from derive_seed(seed, i).
// Algebras are shared by label, so equal algebras are the same object.
Corpus build_corpus(std::uint64_t seed);

const std::vector<std::string>& builtin_suites();
bool suite_needs_seed(const std::string& name);

// Runs a suite ("theorem41" and "all" are aliases for groups). Throws
// ValidationError for an empty or unknown name, or a missing seed.
std::vector<CheckReport> run_suite(const std::string& name, std::optional<std::uint64_t> seed, const Limits& limits = {},
                                   const std::function<void(const CheckReport&)>& emit = {});

// The default counterexample searches: M_2(F_2) -> M_2(Z/4) and
// M_2(Z/4) -> M_2(Z/4) seeded with conjugations.
std::vector<CheckReport> default_counterexample_searches(std::uint64_t seed, std::uint64_t budget);

}  // namespace azumaya
