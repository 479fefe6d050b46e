#include <gtest/gtest.h>

#include <random>

#include "azumaya/suites.hpp"

using namespace azumaya;

namespace {

const Corpus& corpus() {
  static const Corpus c = build_corpus(42);
  return c;
}

// An integer-coefficient polynomial in k noncommuting variables, not
// necessarily multilinear: a list of (coef, word) with repeated letters.
struct Poly {
  std::vector<std::pair<Int, std::vector<std::size_t>>> terms;
};

Poly random_poly(std::mt19937_64& rng, std::size_t k) {
  Poly p;
  const std::size_t nterms = 1 + rng() % 4;
  for (std::size_t t = 0; t < nterms; ++t) {
    std::vector<std::size_t> w(rng() % 5);
    for (auto& v : w) v = rng() % k;
    p.terms.emplace_back(static_cast<Int>(rng() % 11) - 5, w);
  }
  return p;
}

Vec eval(const AlgebraPtr& a, const Poly& p, const std::vector<Vec>& xs) {
  Vec acc = a->zero();
  for (const auto& [c, w] : p.terms) {
    Vec m = a->one();
    for (auto v : w) m = a->mul(m, xs[v]);
    acc = a->add(acc, a->scale_int(c, m));
  }
  return acc;
}

Vec random_elem(const AlgebraPtr& a, std::mt19937_64& rng) {
  Vec x = a->flat_moduli();
  for (auto& v : x) v = static_cast<Int>(rng() % static_cast<std::uint64_t>(v));
  return x;
}

}  // namespace

TEST(Corpus, DeterministicForASeed) {
  const Corpus b = build_corpus(42);
  ASSERT_EQ(b.homs.size(), corpus().homs.size());
  for (std::size_t i = 0; i < b.homs.size(); ++i) {
    EXPECT_EQ(b.homs[i].label, corpus().homs[i].label);
    EXPECT_EQ(b.homs[i].matrix, corpus().homs[i].matrix);
  }
}

TEST(Corpus, EveryHomVerifiedAndEnoughQualify) {
  std::size_t q = 0;
  for (const auto& f : corpus().homs) {
    EXPECT_TRUE(f.verified()) << f.label;
    q += corpus().qualifies(f);
  }
  EXPECT_GE(q, 50u);
}

TEST(Corpus, FamiliesAppearInDocumentedOrder) {
  const std::vector<std::string> order{"conjugation", "frobenius", "reduction", "diagonal", "crt", "weyl", "composition"};
  std::size_t at = 0;
  for (const auto& fam : corpus().families) {
    while (at < order.size() && order[at] != fam) ++at;
    ASSERT_LT(at, order.size()) << fam << " out of order";
  }
}

TEST(Property, HomsCommuteWithPolynomialEvaluation) {
  std::mt19937_64 rng(9);
  const auto& c = corpus();
  for (std::size_t i = 0; i < c.homs.size(); i += 3) {
    const auto& f = c.homs[i];
    for (int t = 0; t < 10; ++t) {
      const std::size_t k = 1 + rng() % 3;
      const Poly p = random_poly(rng, k);
      std::vector<Vec> xs, ys;
      for (std::size_t v = 0; v < k; ++v) {
        xs.push_back(random_elem(f.source, rng));
        ys.push_back(f.apply(xs.back()));
      }
      EXPECT_EQ(f.apply(eval(f.source, p, xs)), eval(f.target, p, ys)) << f.label;
    }
  }
}

TEST(Suites, NamesAndSeedRules) {
  EXPECT_EQ(builtin_suites().size(), 10u);
  EXPECT_THROW(run_suite("", 1), Error);
  EXPECT_THROW(run_suite("no-such-suite", 1), Error);
  EXPECT_THROW(run_suite("al-thm26", std::nullopt), Error);
  EXPECT_FALSE(suite_needs_seed("split-cor29"));
  const auto r = run_suite("split-cor29", std::nullopt);
  EXPECT_EQ(r.size(), 4u + 9u + 25u);
  EXPECT_EQ(exit_code_for(r), 0);
}

TEST(Suites, SuiteAloneMatchesSuiteInsideAll) {
  const auto alone = run_suite("jordan-lem32", 5);
  std::vector<CheckReport> from_all;
  for (const auto& r : run_suite("all", 5))
    if (r.details.value("suite", "") == "jordan-lem32") from_all.push_back(r);
  ASSERT_EQ(alone.size(), from_all.size());
  for (std::size_t i = 0; i < alone.size(); ++i) EXPECT_EQ(comparable_json(alone[i]).dump(), comparable_json(from_all[i]).dump());
}
