#pragma once

// Multilinear polynomial identities with integer coefficients, the
// standard identities s_k, and Amitsur-Levitzki style checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "azumaya/homs.hpp"

namespace azumaya {

struct Word {
  Int coef = 0;
  std::vector<std::size_t> vars;  // 0-based; a permutation of 0..arity-1
};

struct MultilinearIdentity {
  std::size_t arity = 0;
  std::vector<Word> terms;
  std::optional<std::size_t> standard;  // set for s_k, enables the fast evaluator

  // Throws ValidationError unless every word uses each variable exactly once
  // and every coefficient is nonzero.
  static MultilinearIdentity make(std::size_t arity, std::vector<Word> terms);
  std::string name() const;
};

inline constexpr std::size_t kMaxStandardDegree = 8;

// s_k = sum over S_k of sgn(sigma) x_sigma(1) ... x_sigma(k); 1 <= k <= 8.
MultilinearIdentity standard_identity(std::size_t k);

// Term-by-term evaluation. Throws ArityMismatch / AlgebraMismatch.
AlgElem evaluate(const MultilinearIdentity& id, const std::vector<AlgElem>& xs);
Vec evaluate(const MultilinearIdentity& id, const AlgebraPtr& a, const std::vector<Vec>& xs);

// s_k by expansion along the first letter over subsets: s(S) = sum over
// i in S of (-1)^(#{j in S, j < i}) x_i s(S \ {i}). k 2^(k-1) products.
Vec evaluate_standard(const AlgebraPtr& a, const std::vector<Vec>& xs);

struct AlMode {
  bool exhaustive = true;
  std::uint64_t count = 0;  // samples
  std::uint64_t seed = 0;
  std::uint64_t max_tuples = 10000000;
};

// s_{2n} on all (exhaustive) or `count` seeded random 2n-tuples.
// Throws BudgetExceeded when exhaustive would exceed max_tuples.
CheckReport al_vanishing_check(const AlgebraPtr& a, std::size_t n, const AlMode& mode);

struct Witness {
  CheckReport report;
  std::optional<std::vector<Vec>> tuple;
};
// A k-tuple with s_k != 0: flattened-generator tuples first, then seeded random tuples.
Witness nonvanishing_witness(const AlgebraPtr& a, std::size_t k, std::uint64_t budget, std::uint64_t seed);

// phi(id(xs)) == id(phi(xs)) on `trials` seeded random tuples.
CheckReport identity_transfer_check(const AlgebraHom& f, const MultilinearIdentity& id, std::uint64_t trials,
                                    std::uint64_t seed);

}  // namespace azumaya
