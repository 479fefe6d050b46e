#include <gtest/gtest.h>

#include <set>

#include "azumaya/ring.hpp"

using namespace azumaya;

namespace {

RingPtr gf4() { return FiniteCommRing::galois(2, {1, 1, 1}); }

std::vector<RingPtr> small_rings() {
  return {FiniteCommRing::zmod(2),
          FiniteCommRing::zmod(4),
          FiniteCommRing::zmod(6),
          FiniteCommRing::zmod(12),
          gf4(),
          FiniteCommRing::galois(3, {1, 0, 1}),
          FiniteCommRing::product({FiniteCommRing::zmod(4), FiniteCommRing::zmod(3)}),
          FiniteCommRing::product({FiniteCommRing::zmod(2), gf4()})};
}

}  // namespace

TEST(Ring, Construction) {
  auto z12 = FiniteCommRing::zmod(12);
  EXPECT_EQ(z12->width(), 1u);
  EXPECT_EQ(z12->moduli()[0], 12);
  EXPECT_EQ(gf4()->order(), 4);
  EXPECT_EQ(z12->describe(), "Z/12");

  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ValidationError;
  };
  EXPECT_EQ(code_of([] { FiniteCommRing::galois(2, {1, 0, 1}); }), ErrorCode::ReduciblePolynomial);
  EXPECT_EQ(code_of([] { FiniteCommRing::galois(4, {1, 1, 1}); }), ErrorCode::NonPrimeModulus);
  EXPECT_EQ(code_of([] { FiniteCommRing::product({}); }), ErrorCode::EmptyProduct);
  EXPECT_EQ(code_of([] { FiniteCommRing::zmod(1); }), ErrorCode::InvalidDescriptor);
}

TEST(Ring, IrreducibilityAgreesWithRootSearch) {
  // Degree 2 and 3 over small primes: irreducible iff no root.
  for (Int p : {2, 3, 5}) {
    for (Int c0 = 0; c0 < p; ++c0)
      for (Int c1 = 0; c1 < p; ++c1) {
        Vec f{c0, c1, 1};
        bool has_root = false;
        for (Int t = 0; t < p; ++t) has_root |= (c0 + c1 * t + t * t) % p == 0;
        EXPECT_EQ(poly::is_irreducible(f, p), !has_root) << p << " " << c0 << " " << c1;
      }
  }
  for (Int c0 = 0; c0 < 2; ++c0)
    for (Int c1 = 0; c1 < 2; ++c1)
      for (Int c2 = 0; c2 < 2; ++c2) {
        Vec f{c0, c1, c2, 1};
        const bool root = c0 == 0 || (c0 + c1 + c2 + 1) % 2 == 0;
        EXPECT_EQ(poly::is_irreducible(f, 2), !root);
      }
}

TEST(Ring, ArithmeticExamples) {
  auto z12 = FiniteCommRing::zmod(12);
  EXPECT_EQ(inv(RingElem::of(z12, 5)).coords, Vec{5});
  EXPECT_THROW(inv(RingElem::of(z12, 2)), Error);

  auto f = gf4();
  RingElem t{f, {0, 1}};
  EXPECT_EQ((t * t).coords, (Vec{1, 1}));
  // t * (t + 1) = t^2 + t = 1
  RingElem t1{f, {1, 1}};
  EXPECT_EQ((t * t1).coords, (Vec{1, 0}));
}

TEST(Ring, AxiomsExhaustive) {
  for (const auto& r : small_rings()) {
    ASSERT_LE(r->order(), 256);
    const Int q = r->order();
    for (Int i = 0; i < q; ++i) {
      const Vec x = r->element_at(i);
      EXPECT_EQ(r->mul(x, r->one()), x);
      EXPECT_EQ(r->add(x, r->zero()), x);
      for (Int j = 0; j < q; ++j) {
        const Vec y = r->element_at(j);
        EXPECT_EQ(r->mul(x, y), r->mul(y, x));
        EXPECT_EQ(r->add(x, y), r->add(y, x));
        if (q > 16) continue;
        for (Int k = 0; k < q; ++k) {
          const Vec z = r->element_at(k);
          EXPECT_EQ(r->mul(r->mul(x, y), z), r->mul(x, r->mul(y, z)));
          EXPECT_EQ(r->mul(x, r->add(y, z)), r->add(r->mul(x, y), r->mul(x, z)));
        }
      }
    }
  }
}

TEST(Ring, UnitsAndEulerPhi) {
  for (Int n : {2, 6, 8, 9, 12, 30, 49}) {
    auto r = FiniteCommRing::zmod(n);
    Int units = 0;
    for (Int i = 0; i < n; ++i) {
      const Vec x = r->element_at(i);
      if (auto y = r->inverse(x)) {
        ++units;
        EXPECT_EQ(r->mul(x, *y), r->one());
      }
    }
    EXPECT_EQ(units, nt::euler_phi(n));
  }
  auto f = FiniteCommRing::galois_default(3, 2);
  for (Int i = 1; i < f->order(); ++i) {
    const Vec x = f->element_at(i);
    auto y = f->inverse(x);
    ASSERT_TRUE(y);
    EXPECT_EQ(f->mul(x, *y), f->one());
  }
}

TEST(Ring, MaximalIdeals) {
  auto m = maximal_ideals(*FiniteCommRing::zmod(12));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].prime, 2);
  EXPECT_EQ(m[1].prime, 3);
  EXPECT_EQ(maximal_ideals(*FiniteCommRing::zmod(3)).size(), 1u);
  auto prod = FiniteCommRing::product({FiniteCommRing::zmod(4), FiniteCommRing::zmod(3)});
  auto mp = maximal_ideals(*prod);
  ASSERT_EQ(mp.size(), 2u);
  EXPECT_EQ(mp[0].factor_path, std::vector<std::size_t>{0});
  EXPECT_EQ(mp[0].prime, 2);
  EXPECT_EQ(mp[1].factor_path, std::vector<std::size_t>{1});
  EXPECT_EQ(mp[1].prime, 3);
}

TEST(Ring, ResidueFieldsAreSurjectiveHomsWithRightKernel) {
  for (const auto& r : small_rings()) {
    for (const auto& m : maximal_ideals(*r)) {
      auto rf = residue_field(r, m);
      EXPECT_TRUE(rf.field->is_field());
      EXPECT_TRUE(rf.projection.verify());
      std::set<Vec> image;
      Int kernel_size = 0;
      for (Int i = 0; i < r->order(); ++i) {
        const Vec y = rf.projection.apply(r->element_at(i));
        image.insert(y);
        kernel_size += rf.field->is_zero(y);
      }
      EXPECT_EQ(static_cast<Int>(image.size()), rf.field->order());
      EXPECT_EQ(kernel_size * rf.field->order(), r->order());
    }
  }
  auto z12 = FiniteCommRing::zmod(12);
  auto rf = residue_field(z12, {{}, 2});
  EXPECT_EQ(rf.field->describe(), "Z/2");
  EXPECT_EQ(rf.projection.apply(Vec{7}), Vec{1});
  EXPECT_THROW(residue_field(z12, {{}, 5}), Error);
}

TEST(Ring, ReducedAgreesWithNilpotentSearch) {
  std::vector<RingPtr> rings = small_rings();
  for (Int n = 2; n <= 60; ++n) rings.push_back(FiniteCommRing::zmod(n));
  rings.push_back(FiniteCommRing::product({FiniteCommRing::zmod(4), FiniteCommRing::zmod(3)}));
  for (const auto& r : rings) {
    bool nilpotent = false;
    for (Int i = 1; i < r->order() && !nilpotent; ++i) {
      const Vec x = r->element_at(i);
      Vec p = x;
      for (Int e = 1; e <= r->order() && !nilpotent; ++e) {
        if (r->is_zero(p)) nilpotent = true;
        p = r->mul(p, x);
      }
    }
    EXPECT_EQ(is_reduced(*r), !nilpotent) << r->describe();
  }
}

TEST(Ring, CrtRoundTrip) {
  for (Int n : {8, 12, 30, 36, 360, 9991}) {
    auto r = FiniteCommRing::zmod(n);
    auto crt = crt_decompose(r);
    EXPECT_TRUE(crt.to_product.verify());
    EXPECT_TRUE(crt.from_product.verify());
    for (Int i = 0; i < n; ++i) {
      const Vec x = r->element_at(i);
      EXPECT_EQ(crt.from_product.apply(crt.to_product.apply(x)), x);
    }
    for (Int i = 0; i < crt.product->order(); ++i) {
      const Vec y = crt.product->element_at(i);
      EXPECT_EQ(crt.to_product.apply(crt.from_product.apply(y)), y);
    }
  }
  auto crt = crt_decompose(FiniteCommRing::zmod(12));
  EXPECT_EQ(crt.product->describe(), "(Z/4 x Z/3)");
  EXPECT_EQ(crt.to_product.apply(Vec{7}), (Vec{3, 1}));
  auto c8 = crt_decompose(FiniteCommRing::zmod(8));
  ASSERT_EQ(c8.product->width(), 1u);
  EXPECT_EQ(c8.product->moduli()[0], 8);
}

TEST(Ring, IdealIntersection) {
  auto z12 = FiniteCommRing::zmod(12);
  auto i2 = RingIdeal::zmod(z12, 2), i3 = RingIdeal::zmod(z12, 3);
  EXPECT_EQ(i2.intersect(i3), RingIdeal::zmod(z12, 6));
  EXPECT_TRUE(RingIdeal::zmod(z12, 12).is_zero());
  EXPECT_TRUE(RingIdeal::zmod(z12, 5).is_unit());
  // brute-force membership
  for (Int d : {1, 2, 3, 4, 6, 12}) {
    auto id = RingIdeal::zmod(z12, d);
    for (Int x = 0; x < 12; ++x) EXPECT_EQ(id.contains(Vec{x}), x % d == 0);
  }
}
