#include <gtest/gtest.h>

#include <random>

#include "azumaya/homs.hpp"
#include "oracles.hpp"

using namespace azumaya;

namespace {

RingPtr Z(Int n) { return FiniteCommRing::zmod(n); }

Rows identity_rows(std::size_t d) {
  Rows h(d, Vec(d, 0));
  for (std::size_t i = 0; i < d; ++i) h[i][i] = 1;
  return h;
}

}  // namespace

TEST(Homs, VerifyExamples) {
  auto m = matrix_algebra(Z(3), 2);
  EXPECT_TRUE(verify_hom(m, m, identity_rows(4)).verified());

  auto zero = verify_hom(m, m, Rows(4, Vec(4, 0)));
  EXPECT_EQ(zero.status, HomStatus::Refuted);
  EXPECT_EQ(zero.witness["kind"], "unit");

  // transpose: E_ij -> E_ji
  Rows t(4, Vec(4, 0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t[j * 2 + i][i * 2 + j] = 1;
  auto tr = verify_hom(m, m, t);
  EXPECT_EQ(tr.status, HomStatus::Refuted);
  EXPECT_EQ(tr.witness["kind"], "multiplicativity");
  // first failing pair is (E_11, E_12)
  EXPECT_EQ(tr.witness["left"], 0);
  EXPECT_EQ(tr.witness["right"], 1);

  EXPECT_THROW(verify_hom(m, m, Rows(3, Vec(4, 0))), Error);

  // Z/2 -> Z/4 by 1 -> 1 is not well defined
  auto bad = verify_hom(matrix_algebra(Z(2), 1), matrix_algebra(Z(4), 1), {{1}});
  EXPECT_EQ(bad.witness["kind"], "ill-defined");
}

TEST(Homs, Conjugation) {
  auto f3 = Z(3);
  auto m = matrix_algebra(f3, 2);
  auto id = conjugation_auto(m, Matrix::identity(f3, 2));
  EXPECT_EQ(id.matrix, identity_rows(4));

  auto swap = conjugation_auto(m, Matrix::from_ints(f3, {{0, 1}, {1, 0}}));
  EXPECT_TRUE(swap.verified());
  EXPECT_EQ(swap.apply(Vec{1, 0, 0, 2}), (Vec{2, 0, 0, 1}));

  auto z4 = Z(4);
  auto m4 = matrix_algebra(z4, 2);
  auto c = conjugation_auto(m4, Matrix::from_ints(z4, {{1, 1}, {0, 1}}));
  EXPECT_TRUE(c.verified());
  try {
    conjugation_auto(m4, Matrix::from_ints(z4, {{2, 0}, {0, 1}}));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
  }

  // spot check multiplicativity on random non-basis pairs
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Vec x = m4->element_at(static_cast<Int>(rng() % 256)), y = m4->element_at(static_cast<Int>(rng() % 256));
    ASSERT_EQ(c.apply(m4->mul(x, y)), m4->mul(c.apply(x), c.apply(y)));
  }
}

TEST(Homs, ReductionAndKernel) {
  auto m4 = matrix_algebra(Z(4), 2);
  auto red = reduction_hom(m4, RingIdeal::zmod(m4->base(), 2));
  ASSERT_TRUE(red.verified());
  EXPECT_EQ(*red.target, *matrix_algebra(Z(2), 2));
  auto ki = kernel_ideal(red);
  EXPECT_EQ(ki.ideal, RingIdeal::zmod(m4->base(), 2));
  EXPECT_EQ(ki.report.status, Status::Pass);
  EXPECT_EQ(ki.kernel, expand_ideal(m4, RingIdeal::zmod(m4->base(), 2)));

  auto iso = reduction_hom(m4, RingIdeal::zero(m4->base()));
  EXPECT_TRUE(is_bijective_additive(iso.additive()));
  try {
    reduction_hom(m4, RingIdeal::unit(m4->base()));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroRing);
  }

  auto m12 = matrix_algebra(Z(12), 2);
  auto r2 = reduction_hom(m12, RingIdeal::zmod(Z(12), 2));
  EXPECT_EQ(kernel_ideal(r2).ideal, RingIdeal::zmod(Z(12), 2));
  auto conj = conjugation_auto(m12, Matrix::from_ints(Z(12), {{1, 5}, {0, 1}}));
  EXPECT_TRUE(kernel_ideal(conj).ideal.is_zero());

  // reduce 12 -> 6 -> 2 equals reduce 12 -> 2; likewise for 3.
  auto r6 = reduction_hom(m12, RingIdeal::zmod(Z(12), 6));
  for (Int p : {2, 3}) {
    auto direct = reduction_hom(m12, RingIdeal::zmod(Z(12), p));
    auto second = reduction_hom(r6.target, RingIdeal::zmod(r6.target->base(), p));
    auto composed = compose(second, r6);
    EXPECT_TRUE(composed.verified());
    EXPECT_EQ(composed.matrix, direct.matrix);
  }
  EXPECT_THROW(compose(r6, r2), Error);
}

TEST(Homs, CrtSplit) {
  auto m = matrix_algebra(Z(6), 2);
  auto [fwd, back] = crt_split(m);
  EXPECT_TRUE(fwd.verified());
  EXPECT_TRUE(back.verified());
  EXPECT_EQ(compose(back, fwd).matrix, identity_rows(4));
  EXPECT_TRUE(is_azumaya(fwd.target).ok());
}

TEST(Homs, DiagonalEmbedding) {
  auto r = matrix_algebra(Z(5), 1);
  auto d = diagonal_embed(r, 2);
  EXPECT_TRUE(d.verified());
  EXPECT_EQ(d.apply(Vec{3}), (Vec{3, 0, 0, 3}));
  auto m2 = matrix_algebra(Z(2), 2);
  auto e = diagonal_embed(m2, 2);
  EXPECT_TRUE(e.verified());
  auto rc = rank_comparison_check(e);
  EXPECT_EQ(rc.status, Status::Pass);
  EXPECT_EQ(rc.details["target_rank"], 16);
  auto conj = conjugation_auto(e.target, Matrix::from_ints(Z(2), {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 1}}));
  EXPECT_TRUE(compose(conj, e).verified());
  auto big = diagonal_embed(m2, 3);
  EXPECT_EQ(rank_comparison_check(big).details["target_rank"], 36);
}

TEST(Homs, WeylSplittingMatrices) {
  auto s = weyl_splitting(2, 0, 0);
  // images of x (index 1) and y (index 2) as 2x2 matrices
  EXPECT_EQ(oracle::to_mat(std::vector<Int>{s.matrix[0][1], s.matrix[1][1], s.matrix[2][1], s.matrix[3][1]}, 2),
            (oracle::Mat{{0, 0}, {1, 0}}));
  EXPECT_EQ(oracle::to_mat(std::vector<Int>{s.matrix[0][2], s.matrix[1][2], s.matrix[2][2], s.matrix[3][2]}, 2),
            (oracle::Mat{{0, 1}, {0, 0}}));
  auto s1 = weyl_splitting(2, 1, 0);
  EXPECT_EQ(oracle::to_mat(std::vector<Int>{s1.matrix[0][1], s1.matrix[1][1], s1.matrix[2][1], s1.matrix[3][1]}, 2),
            (oracle::Mat{{1, 0}, {1, 1}}));
  for (Int p : {2, 3})
    for (Int a = 0; a < p; ++a)
      for (Int b = 0; b < p; ++b) {
        auto f = weyl_splitting(p, a, b);
        EXPECT_EQ(f.apply(f.source->one()), f.target->one());
        // yx - xy = 1 on images, checked with plain matrix products
        const auto up = static_cast<std::size_t>(p);
        const oracle::Mat x = oracle::to_mat(f.apply(f.source->basis(1)), up);
        const oracle::Mat y = oracle::to_mat(f.apply(f.source->basis(up)), up);
        const oracle::Mat yx = oracle::matmul(y, x, p), xy = oracle::matmul(x, y, p);
        for (std::size_t i = 0; i < up; ++i)
          for (std::size_t j = 0; j < up; ++j) EXPECT_EQ(nt::mod(yx[i][j] - xy[i][j], p), i == j ? 1 : 0);
      }
}

TEST(Homs, CenterPreservation) {
  auto m6 = matrix_algebra(Z(6), 2);
  auto conj = conjugation_auto(m6, Matrix::from_ints(Z(6), {{1, 1}, {1, 2}}));
  auto cc = center_preservation_check(conj);
  EXPECT_EQ(cc.report.status, Status::Pass);
  ASSERT_TRUE(cc.map);
  EXPECT_EQ(cc.map->images, cc.map->generators);
  EXPECT_TRUE(cc.map->bijective);
  EXPECT_TRUE(cc.report.all_preconditions_held());

  auto red = reduction_hom(m6, RingIdeal::zmod(Z(6), 2));
  auto rc = center_preservation_check(red);
  EXPECT_EQ(rc.report.status, Status::Pass);
  ASSERT_TRUE(rc.map);
  for (std::size_t i = 0; i < rc.map->generators.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(rc.map->images[i][k], rc.map->generators[i][k] % 2);
  EXPECT_FALSE(rc.map->bijective);

  EXPECT_EQ(center_preservation_check(weyl_splitting(3, 1, 2)).report.status, Status::Pass);
}

TEST(Homs, JordanProbe) {
  auto m2f5 = matrix_algebra(Z(5), 2);
  auto r = jordan_obstruction_probe(3, m2f5, 42, 10000);
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.details["found"], false);
  EXPECT_EQ(r.details["mode"], "samples");
  auto m2f2 = matrix_algebra(Z(2), 2);
  auto ex = jordan_obstruction_probe(3, m2f2, 1);
  EXPECT_EQ(ex.details["mode"], "exhaustive");
  EXPECT_EQ(ex.status, Status::Pass);
  auto found = jordan_obstruction_probe(2, m2f2, 1);
  EXPECT_EQ(found.status, Status::Pass);
  EXPECT_EQ(found.details["found"], true);
  EXPECT_EQ(jordan_obstruction_probe(1, m2f2, 1).details["vacuous"], true);
  // sampled mode does find index-3 nilpotents in M_3(F_5)
  auto m3 = matrix_algebra(Z(5), 3);
  EXPECT_EQ(jordan_obstruction_probe(3, m3, 7, 2000).details["found"], true);
}

TEST(Homs, Isomorphism) {
  auto m6 = matrix_algebra(Z(6), 2);
  auto conj = conjugation_auto(m6, Matrix::from_ints(Z(6), {{1, 1}, {1, 2}}));
  auto r = isomorphism_check(conj);
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.details["verdict"], "iso");
  EXPECT_EQ(r.details["d_route"], true);

  auto w = isomorphism_check(weyl_splitting(2, 1, 1));
  EXPECT_EQ(w.status, Status::Pass);
  EXPECT_EQ(w.details["verdict"], "iso");

  auto d = isomorphism_check(diagonal_embed(matrix_algebra(Z(2), 2), 2));
  EXPECT_EQ(d.status, Status::Pass);
  EXPECT_EQ(d.details["verdict"], "not-iso");
  EXPECT_EQ(d.details["b_rank_condition"], false);

  auto crt = isomorphism_check(crt_split(m6).first);
  EXPECT_EQ(crt.status, Status::Pass);
  EXPECT_EQ(crt.details["verdict"], "iso");

  auto red = isomorphism_check(reduction_hom(m6, RingIdeal::zmod(Z(6), 3)));
  EXPECT_EQ(red.status, Status::Pass);
  EXPECT_EQ(red.details["verdict"], "not-iso");

  auto gf4 = FiniteCommRing::galois(2, {1, 1, 1});
  auto mg = matrix_algebra(gf4, 2);
  auto frob = frobenius_twist(mg, Matrix::identity(gf4, 2));
  ASSERT_TRUE(frob.verified());
  EXPECT_EQ(isomorphism_check(frob).details["verdict"], "iso");
  EXPECT_EQ(endo_auto_check(frob).status, Status::PreconditionUnmet);
}

TEST(Homs, CommutantTau) {
  auto m2 = matrix_algebra(Z(5), 2);
  auto e = diagonal_embed(m2, 2);
  std::vector<Vec> gens;
  for (std::size_t t = 0; t < 4; ++t) gens.push_back(e.apply(m2->basis(t)));
  auto r = commutant_tau_check(e.target, gens, "diag M_2 in M_4(F_5)");
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.details["commutant_rank"], 4);
  EXPECT_EQ(r.details["tau_bijective"], true);

  // A2 = scalars: C = A1 and tau is R (x) A1 -> A1
  auto m = matrix_algebra(Z(4), 2);
  EXPECT_TRUE(tau_bijective(m, scalar_span(m).span, whole(m).span));
  // A2 = C = A1 is too big
  EXPECT_FALSE(tau_bijective(m, whole(m).span, whole(m).span));
}

TEST(Homs, EndoAuto) {
  auto m4 = matrix_algebra(Z(4), 2);
  for (auto rows : std::vector<std::vector<Vec>>{{{1, 1}, {0, 1}}, {{1, 0}, {2, 1}}, {{0, 1}, {1, 0}}, {{3, 1}, {1, 0}}})
    EXPECT_EQ(endo_auto_check(conjugation_auto(m4, Matrix::from_ints(Z(4), rows))).status, Status::Pass);
  EXPECT_EQ(endo_auto_check(verify_hom(m4, m4, identity_rows(4))).status, Status::Pass);
}

TEST(Homs, CounterexampleSearch) {
  auto src = matrix_algebra(Z(2), 2), tgt = matrix_algebra(Z(4), 2);
  auto r = counterexample_search({src, tgt, {}, 2000, 5});
  EXPECT_EQ(r.status, Status::NotFound);
  EXPECT_EQ(r.details["verified_candidates"], 0);
  auto empty = counterexample_search({src, tgt, {}, 0, 5});
  EXPECT_EQ(empty.status, Status::NotFound);
  EXPECT_EQ(empty.details["candidates"], 0);
  try {
    counterexample_search({src, matrix_algebra(Z(3), 2), {}, 10, 5});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionUnmet);
  }
  // Perturbing conjugations of M_2(Z/4) only produces more automorphisms.
  auto seedhom = conjugation_auto(tgt, Matrix::from_ints(Z(4), {{1, 1}, {0, 1}}));
  auto again = counterexample_search({tgt, tgt, {seedhom}, 4000, 9});
  EXPECT_EQ(again.status, Status::NotFound);
  EXPECT_GT(again.details["verified_candidates"].get<int>(), 0);
  EXPECT_EQ(comparable_json(again), comparable_json(counterexample_search({tgt, tgt, {seedhom}, 4000, 9})));
}
