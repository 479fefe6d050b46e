#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a serial version kept as the reference for tests and benches.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "azumaya/ring.hpp"

namespace azumaya::kernels {

// Rank of a dense matrix over F_p (rows of equal length). The input is consumed.
std::size_t rank_mod_prime(std::vector<Vec> rows, Int p);
std::size_t rank_mod_prime_serial(std::vector<Vec> rows, Int p);

// Smallest index in [0, count) for which pred returns true, or nullopt.
// pred must be safe to call concurrently.
using IndexPredicate = std::function<bool(std::uint64_t)>;
std::optional<std::uint64_t> first_match(std::uint64_t count, const IndexPredicate& pred);
std::optional<std::uint64_t> first_match_serial(std::uint64_t count, const IndexPredicate& pred);

// Deterministic per-index seed derivation (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

int max_threads();

}  // namespace azumaya::kernels
