#include <gtest/gtest.h>

#include <random>

#include "azumaya/kernels.hpp"
#include "azumaya/pi.hpp"

using namespace azumaya;

namespace {

RingPtr Z(Int n) { return FiniteCommRing::zmod(n); }

Vec random_element(const AlgebraPtr& a, std::mt19937_64& rng) {
  const Vec m = a->flat_moduli();
  Vec v(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = static_cast<Int>(rng() % static_cast<std::uint64_t>(m[i]));
  return v;
}

}  // namespace

TEST(Pi, StandardIdentityShape) {
  auto s2 = standard_identity(2);
  ASSERT_EQ(s2.terms.size(), 2u);
  EXPECT_EQ(s2.terms[0].coef, 1);
  EXPECT_EQ(s2.terms[0].vars, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s2.terms[1].coef, -1);
  EXPECT_EQ(standard_identity(1).terms.size(), 1u);
  EXPECT_EQ(standard_identity(3).terms.size(), 6u);
  EXPECT_EQ(standard_identity(8).terms.size(), 40320u);
  EXPECT_THROW(standard_identity(9), Error);
  EXPECT_THROW(MultilinearIdentity::make(2, {{1, {0, 0}}}), Error);
  EXPECT_THROW(MultilinearIdentity::make(2, {{0, {0, 1}}}), Error);
}

TEST(Pi, EvaluateExamples) {
  auto m = matrix_algebra(Z(2), 2);
  auto e11 = AlgElem::basis(m, 0), e12 = AlgElem::basis(m, 1);
  EXPECT_EQ(evaluate(standard_identity(2), {e11, e12}), e12);
  EXPECT_TRUE(evaluate(standard_identity(2), {e12, e12}).is_zero());
  auto m4 = matrix_algebra(Z(4), 2);
  std::vector<AlgElem> basis;
  for (std::size_t i = 0; i < 4; ++i) basis.push_back(AlgElem::basis(m4, i));
  EXPECT_TRUE(evaluate(standard_identity(4), basis).is_zero());
  EXPECT_TRUE(evaluate_standard(m4, {basis[0].coords, basis[1].coords, basis[2].coords, basis[3].coords}) == m4->zero());

  try {
    evaluate(standard_identity(3), {e11, e12});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
  try {
    evaluate(standard_identity(2), {e11, AlgElem::basis(m4, 0)});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlgebraMismatch);
  }
}

TEST(Pi, FastEvaluatorMatchesTermSum) {
  std::mt19937_64 rng(17);
  std::vector<AlgebraPtr> algs{matrix_algebra(Z(6), 2), matrix_algebra(Z(3), 3), weyl_quotient(3, 1, 2),
                               matrix_algebra(FiniteCommRing::galois(2, {1, 1, 1}), 2), upper_triangular_2x2(Z(4))};
  for (const auto& a : algs)
    for (std::size_t k = 1; k <= 6; ++k) {
      const auto id = standard_identity(k);
      for (int t = 0; t < 10; ++t) {
        std::vector<Vec> xs;
        for (std::size_t i = 0; i < k; ++i) xs.push_back(random_element(a, rng));
        ASSERT_EQ(evaluate_standard(a, xs), evaluate(id, a, xs)) << a->label() << " k=" << k;
      }
    }
}

TEST(Pi, AlternatingAndMultilinear) {
  std::mt19937_64 rng(23);
  std::vector<AlgebraPtr> algs{matrix_algebra(Z(4), 2), matrix_algebra(Z(5), 3), weyl_quotient(2, 1, 0)};
  for (const auto& a : algs)
    for (std::size_t k = 2; k <= 5; ++k) {
      for (int t = 0; t < 20; ++t) {
        std::vector<Vec> xs;
        for (std::size_t i = 0; i < k; ++i) xs.push_back(random_element(a, rng));
        auto rep = xs;
        const std::size_t i = rng() % k, j = (i + 1 + rng() % (k - 1)) % k;
        rep[j] = rep[i];
        ASSERT_TRUE(a->is_zero(evaluate_standard(a, rep)));
        // additivity in slot i
        auto left = xs, right = xs, both = xs;
        const Vec y = random_element(a, rng);
        right[i] = y;
        both[i] = a->add(xs[i], y);
        ASSERT_EQ(evaluate_standard(a, both), a->add(evaluate_standard(a, left), evaluate_standard(a, right)));
      }
    }
}

TEST(Pi, AlVanishing) {
  auto r = al_vanishing_check(matrix_algebra(Z(2), 2), 2, {});
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.details["tuples"], 65536);
  EXPECT_EQ(al_vanishing_check(weyl_quotient(2, 1, 1), 2, {}).status, Status::Pass);
  auto s = al_vanishing_check(matrix_algebra(Z(6), 3), 3, {false, 200, 42});
  EXPECT_EQ(s.status, Status::Pass);
  EXPECT_EQ(s.seed, 42u);
  try {
    al_vanishing_check(matrix_algebra(Z(4), 2), 2, {});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  // s_2 = commutator does not vanish on M_2: a non-Azumaya-rank failure, reported as fail
  auto bad = al_vanishing_check(matrix_algebra(Z(2), 2), 1, {});
  EXPECT_EQ(bad.status, Status::Fail);
  EXPECT_FALSE(bad.witness.is_null());
}

TEST(Pi, NonvanishingWitness) {
  auto m = matrix_algebra(Z(2), 2);
  auto w = nonvanishing_witness(m, 2, 1000, 1);
  ASSERT_TRUE(w.tuple);
  EXPECT_EQ((*w.tuple)[0], m->basis(0));
  EXPECT_EQ((*w.tuple)[1], m->basis(1));
  EXPECT_TRUE(nonvanishing_witness(matrix_algebra(Z(4), 2), 2, 1000, 1).tuple);
  EXPECT_TRUE(nonvanishing_witness(matrix_algebra(Z(3), 3), 4, 100000, 1).tuple);
  auto comm = nonvanishing_witness(diagonal_algebra(Z(5), 3), 2, 500, 1);
  EXPECT_EQ(comm.report.status, Status::NotFound);
}

TEST(Pi, Transfer) {
  auto m6 = matrix_algebra(Z(6), 2);
  auto red = reduction_hom(m6, RingIdeal::zmod(Z(6), 2));
  EXPECT_EQ(identity_transfer_check(red, standard_identity(2), 100, 3).status, Status::Pass);
  Rows id(4, Vec(4, 0));
  for (std::size_t i = 0; i < 4; ++i) id[i][i] = 1;
  EXPECT_EQ(identity_transfer_check(verify_hom(m6, m6, id), standard_identity(3), 100, 3).status, Status::Pass);
  auto d = diagonal_embed(matrix_algebra(Z(3), 2), 2);
  EXPECT_EQ(identity_transfer_check(d, standard_identity(4), 100, 3).status, Status::Pass);
  // custom identity x1 x2 x3 - x3 x2 x1
  auto custom = MultilinearIdentity::make(3, {{1, {0, 1, 2}}, {-1, {2, 1, 0}}});
  EXPECT_EQ(identity_transfer_check(d, custom, 50, 3).status, Status::Pass);
}

TEST(Pi, ParallelSweepMatchesSerial) {
  auto a = matrix_algebra(Z(3), 2);
  auto pred = [&](std::uint64_t idx) {
    std::vector<Vec> xs;
    for (int i = 0; i < 3; ++i) {
      xs.push_back(a->element_at(static_cast<Int>(idx % 81)));
      idx /= 81;
    }
    return !a->is_zero(evaluate_standard(a, xs)) && xs[0][1] == 2;
  };
  EXPECT_EQ(kernels::first_match(81 * 81 * 81, pred), kernels::first_match_serial(81 * 81 * 81, pred));
}
