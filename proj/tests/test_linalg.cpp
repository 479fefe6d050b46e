#include <gtest/gtest.h>

#include <random>
#include <set>

#include "azumaya/kernels.hpp"
#include "azumaya/linalg.hpp"

using namespace azumaya;

namespace {

// Additive closure of the generators inside (+)Z/m_j, by breadth-first search.
std::set<Vec> brute_span(const Rows& gens, const Vec& moduli) {
  std::set<Vec> seen{Vec(moduli.size(), 0)};
  std::vector<Vec> frontier{Vec(moduli.size(), 0)};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& g : gens) {
        Vec w(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) w[j] = nt::mod(v[j] + g[j], moduli[j]);
        if (seen.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return seen;
}

Rows random_rows(std::mt19937_64& rng, std::size_t r, std::size_t c, Int n) {
  Rows m(r, Vec(c));
  for (auto& row : m)
    for (auto& x : row) x = static_cast<Int>(rng() % static_cast<std::uint64_t>(n));
  return m;
}

Int product_of(const Vec& m) {
  Int o = 1;
  for (Int x : m) o *= x;
  return o;
}

}  // namespace

TEST(Howell, Examples) {
  auto h = howell_mod({{2, 0}, {0, 2}}, 2, 4);
  EXPECT_EQ(h.rows, (Rows{{2, 0}, {0, 2}}));
  EXPECT_TRUE(howell_mod({{0}}, 1, 4).rows.empty());
  auto a = howell_mod({{1, 1}, {0, 2}}, 2, 4);
  auto b = howell_mod({{1, 3}, {0, 2}}, 2, 4);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(brute_span({{1, 1}, {0, 2}}, {4, 4}), brute_span({{1, 3}, {0, 2}}, {4, 4}));
  EXPECT_EQ(brute_span(h.rows, {4, 4}).size(), 4u);
}

TEST(Howell, IdempotentAndCertified) {
  std::mt19937_64 rng(7);
  for (Int n : {2, 3, 4, 6, 8, 9, 12}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 3;
      Rows m = random_rows(rng, r, c, n);
      auto h = howell_mod(m, c, n, true);
      auto again = howell_mod(h.rows, c, n);
      ASSERT_EQ(again.rows, h.rows);
      // rows == transform * m
      for (std::size_t i = 0; i < h.rows.size(); ++i)
        for (std::size_t j = 0; j < c; ++j) {
          Int s = 0;
          for (std::size_t k = 0; k < r; ++k) s = nt::mod(s + h.transform[i][k] * m[k][j], n);
          ASSERT_EQ(s, h.rows[i][j]);
        }
      const Vec mods(c, n);
      ASSERT_EQ(brute_span(h.rows, mods), brute_span(m, mods));
    }
  }
}

TEST(Howell, EqualSpansGiveEqualForms) {
  std::mt19937_64 rng(11);
  for (Int n : {4, 6, 8, 12}) {
    for (int trial = 0; trial < 300; ++trial) {
      Rows m = random_rows(rng, 3, 3, n);
      // random unimodular mixing: add multiples of rows into others, shuffle
      Rows m2 = m;
      for (int s = 0; s < 6; ++s) {
        const std::size_t i = rng() % 3, j = rng() % 3;
        if (i == j) continue;
        const Int k = static_cast<Int>(rng() % static_cast<std::uint64_t>(n));
        for (std::size_t c = 0; c < 3; ++c) m2[i][c] = nt::mod(m2[i][c] + k * m2[j][c], n);
      }
      std::shuffle(m2.begin(), m2.end(), rng);
      ASSERT_EQ(howell_mod(m, 3, n).rows, howell_mod(m2, 3, n).rows);
    }
  }
}

TEST(Linalg, KernelAndSolveExamples) {
  auto z4 = FiniteCommRing::zmod(4);
  auto k = kernel(Matrix::from_ints(z4, {{2}}));
  EXPECT_EQ(brute_span(k, {4}), (std::set<Vec>{{0}, {2}}));
  EXPECT_TRUE(kernel(Matrix::identity(FiniteCommRing::zmod(5), 3)).empty());
  auto f3 = FiniteCommRing::zmod(3);
  EXPECT_EQ(brute_span(kernel(Matrix::zeros(f3, 2, 2)), {3, 3}).size(), 9u);

  auto s = solve(Matrix::from_ints(z4, {{2}}), Vec{2});
  EXPECT_TRUE(s.particular == Vec{1} || s.particular == Vec{3});
  try {
    solve(Matrix::from_ints(z4, {{2}}), Vec{1});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSolution);
  }
  auto id = solve(Matrix::identity(z4, 2), Vec{3, 1});
  EXPECT_EQ(id.particular, (Vec{3, 1}));
}

TEST(Linalg, SolveMatchesEnumeration) {
  std::mt19937_64 rng(3);
  std::vector<RingPtr> rings{FiniteCommRing::zmod(2), FiniteCommRing::zmod(4), FiniteCommRing::zmod(6),
                             FiniteCommRing::zmod(9), FiniteCommRing::galois(2, {1, 1, 1}),
                             FiniteCommRing::product({FiniteCommRing::zmod(2), FiniteCommRing::zmod(3)})};
  for (const auto& r : rings) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
      Matrix m = Matrix::zeros(r, rows, cols);
      for (auto& x : m.entries) x = static_cast<Int>(rng() % 64);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r->reduce(m.at(i, j));
      AdditiveMap f = flatten(m);
      Vec b(rows * r->width());
      for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<Int>(rng() % static_cast<std::uint64_t>(f.target_moduli[i]));
      if (trial % 2 == 0) b = f.apply(Vec(f.source_moduli.size(), 1));

      std::set<Vec> solutions, kern;
      const Int total = product_of(f.source_moduli);
      for (Int idx = 0; idx < total; ++idx) {
        Vec x(f.source_moduli.size());
        Int t = idx;
        for (std::size_t j = 0; j < x.size(); ++j) {
          x[j] = t % f.source_moduli[j];
          t /= f.source_moduli[j];
        }
        const Vec y = f.apply(x);
        if (y == b) solutions.insert(x);
        if (std::all_of(y.begin(), y.end(), [](Int c) { return c == 0; })) kern.insert(x);
      }
      ASSERT_EQ(brute_span(kernel(m), f.source_moduli), kern);
      if (solutions.empty()) {
        EXPECT_THROW(solve(m, b), Error);
        continue;
      }
      auto s = solve(m, b);
      std::set<Vec> got;
      for (const auto& k : brute_span(s.kernel, f.source_moduli)) {
        Vec x(k.size());
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = nt::mod(s.particular[j] + k[j], f.source_moduli[j]);
        got.insert(x);
      }
      ASSERT_EQ(got, solutions);
    }
  }
}

TEST(Linalg, Bijectivity) {
  AdditiveMap id{{{1, 0}, {0, 1}}, {4, 4}, {4, 4}};
  EXPECT_TRUE(is_bijective_additive(id));
  AdditiveMap twice{{{2}}, {4}, {4}};
  EXPECT_FALSE(is_bijective_additive(twice));
  AdditiveMap embed{{{2}}, {2}, {4}};
  EXPECT_TRUE(embed.well_defined());
  EXPECT_FALSE(is_bijective_additive(embed));
  AdditiveMap bad{{{1}}, {2}, {4}};
  EXPECT_FALSE(bad.well_defined());
  EXPECT_THROW(is_bijective_additive(bad), Error);
  // Z/2 x Z/3 -> Z/6 is bijective, orders agree but moduli differ
  AdditiveMap crt{{{3, 2}}, {2, 3}, {6}};
  EXPECT_TRUE(is_bijective_additive(crt));
}

TEST(Linalg, SpanOperationsMatchBruteForce) {
  std::mt19937_64 rng(5);
  const Vec moduli{4, 6, 2};
  for (int trial = 0; trial < 300; ++trial) {
    Rows a(1 + rng() % 2, Vec(3)), b(1 + rng() % 2, Vec(3));
    for (auto* m : {&a, &b})
      for (auto& row : *m)
        for (std::size_t j = 0; j < 3; ++j) row[j] = static_cast<Int>(rng() % static_cast<std::uint64_t>(moduli[j]));
    Span sa(moduli, a), sb(moduli, b);
    const auto ea = brute_span(a, moduli), eb = brute_span(b, moduli);
    ASSERT_EQ(static_cast<std::size_t>(*sa.order()), ea.size());
    std::set<Vec> meet;
    for (const auto& x : ea)
      if (eb.count(x)) meet.insert(x);
    ASSERT_EQ(brute_span(sa.intersect(sb).generators(), moduli), meet);
    Rows ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    ASSERT_EQ(brute_span(sa.sum(sb).generators(), moduli), brute_span(ab, moduli));
    for (const auto& x : brute_span({{1, 1, 1}, {0, 1, 0}}, moduli)) ASSERT_EQ(sa.contains(x), ea.count(x) == 1);
    const Rows listed = sa.enumerate(1000);
    ASSERT_EQ(std::set<Vec>(listed.begin(), listed.end()), ea);
  }
}

TEST(Linalg, GaloisMatrixInverse) {
  auto f = FiniteCommRing::galois(2, {1, 1, 1});
  Matrix u = Matrix::zeros(f, 2, 2);
  // [[t, 1], [1, 0]]
  u.at(0, 0)[1] = 1;
  u.at(0, 1)[0] = 1;
  u.at(1, 0)[0] = 1;
  ASSERT_TRUE(is_invertible(u));
  EXPECT_EQ(u * inverse(u), Matrix::identity(f, 2));
  auto h = howell_form(u);
  EXPECT_TRUE(h.certify(u));
}

TEST(Kernels, RankParallelMatchesSerial) {
  std::mt19937_64 rng(9);
  for (Int p : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = 1 + rng() % 120, c = 1 + rng() % 120;
      Rows m = random_rows(rng, r, c, p);
      if (trial % 3 == 0)
        for (std::size_t i = 1; i < r; ++i) m[i] = m[0];
      EXPECT_EQ(kernels::rank_mod_prime(m, p), kernels::rank_mod_prime_serial(m, p));
    }
  }
}

TEST(Kernels, FirstMatchParallelMatchesSerial) {
  for (std::uint64_t target : {0ULL, 5ULL, 999ULL, 123456ULL}) {
    auto pred = [target](std::uint64_t i) { return i >= target && i % 7 == target % 7; };
    EXPECT_EQ(kernels::first_match(200000, pred), kernels::first_match_serial(200000, pred));
  }
  auto never = [](std::uint64_t) { return false; };
  EXPECT_FALSE(kernels::first_match(1000, never));
  EXPECT_NE(kernels::derive_seed(1, 0), kernels::derive_seed(1, 1));
  EXPECT_EQ(kernels::derive_seed(42, 7), kernels::derive_seed(42, 7));
}
