#include "azumaya/kernels.hpp"

#include <atomic>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace azumaya::kernels {

namespace {

Int inverse_prime(Int a, Int p) { return *nt::inverse_mod(a, p); }

}  // namespace

std::size_t rank_mod_prime_serial(std::vector<Vec> rows, Int p) {
  if (rows.empty()) return 0;
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t piv = rank;
    while (piv < m && rows[piv][c] % p == 0) ++piv;
    if (piv == m) continue;
    std::swap(rows[piv], rows[rank]);
    Vec& pr = rows[rank];
    const Int s = inverse_prime(nt::mod(pr[c], p), p);
    for (std::size_t j = c; j < n; ++j) pr[j] = nt::mod(pr[j], p) * s % p;
    for (std::size_t i = rank + 1; i < m; ++i) {
      const Int f = nt::mod(rows[i][c], p);
      if (f == 0) continue;
      const Int nf = p - f;
      Vec& ri = rows[i];
      for (std::size_t j = c; j < n; ++j) ri[j] = (nt::mod(ri[j], p) + nf * pr[j]) % p;
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_prime(std::vector<Vec> rows, Int p) {
  if (rows.empty()) return 0;
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  for (auto& r : rows)
    for (Int& x : r) x = nt::mod(x, p);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t piv = rank;
    while (piv < m && rows[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(rows[piv], rows[rank]);
    Vec& pr = rows[rank];
    const Int s = inverse_prime(pr[c], p);
    for (std::size_t j = c; j < n; ++j) pr[j] = pr[j] * s % p;
    const auto first = static_cast<std::ptrdiff_t>(rank + 1);
    const auto last = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (m - rank > 64)
    for (std::ptrdiff_t i = first; i < last; ++i) {
      Vec& ri = rows[static_cast<std::size_t>(i)];
      const Int f = ri[c];
      if (f == 0) continue;
      const Int nf = p - f;
      for (std::size_t j = c; j < n; ++j) ri[j] = (ri[j] + nf * pr[j]) % p;
    }
    ++rank;
  }
  return rank;
}

std::optional<std::uint64_t> first_match_serial(std::uint64_t count, const IndexPredicate& pred) {
  for (std::uint64_t i = 0; i < count; ++i)
    if (pred(i)) return i;
  return std::nullopt;
}

std::optional<std::uint64_t> first_match(std::uint64_t count, const IndexPredicate& pred) {
  constexpr std::uint64_t none = ~std::uint64_t{0};
  std::atomic<std::uint64_t> best{none};
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if (idx >= best.load(std::memory_order_relaxed)) continue;
    if (pred(idx)) {
      std::uint64_t cur = best.load();
      while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
      }
    }
  }
  if (best.load() == none) return std::nullopt;
  return best.load();
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace azumaya::kernels
