#pragma once

// Free algebras of finite rank over a finite commutative base ring, given by
// structure constants e_i * e_j = sum_k c[i][j][k] e_k and a unit vector.
//
// Elements are stored in flattened coordinates: rank() blocks of
// base()->width() integers. The flattened generators eps_t (t < dim()) are
// b_l * e_i with b_l the additive basis of the base ring; every additive
// map in this library is expressed against them.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "azumaya/linalg.hpp"
#include "azumaya/report.hpp"
#include "azumaya/ring.hpp"

namespace azumaya {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

struct WeylParams {
  Int p = 0;
  Int a = 0;
  Int b = 0;
  bool operator==(const WeylParams&) const = default;
};

class Algebra {
 public:
  struct Family {
    std::optional<std::size_t> matrix_degree;
    std::optional<WeylParams> weyl;
  };

  // table holds rank^3 ring elements, c[i][j][k] at ((i*rank + j)*rank + k)*width.
  // Throws AssociativityViolated / UnitViolated / DimensionMismatch.
  static AlgebraPtr create(RingPtr base, std::size_t rank, Vec table, Vec unit, std::string label, Family family = {});

  const RingPtr& base() const { return base_; }
  std::size_t rank() const { return rank_; }
  std::size_t width() const { return base_->width(); }
  std::size_t dim() const { return rank_ * base_->width(); }
  const std::string& label() const { return label_; }
  const Family& family() const { return family_; }
  const Vec& table() const { return table_; }
  std::span<const Int> unit() const { return unit_; }
  Vec flat_moduli() const;
  std::optional<Int> order() const;

  // c[i][j] as an element (rank * width coordinates).
  std::span<const Int> basis_product(std::size_t i, std::size_t j) const;

  Vec zero() const { return Vec(dim(), 0); }
  Vec one() const { return unit_; }
  Vec basis(std::size_t i) const;
  Vec flat_generator(std::size_t t) const;
  Vec element_at(Int index) const;
  Vec scalar(std::span<const Int> r) const;  // r * 1

  void mul(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const;
  Vec mul(std::span<const Int> a, std::span<const Int> b) const;
  Vec add(std::span<const Int> a, std::span<const Int> b) const;
  Vec sub(std::span<const Int> a, std::span<const Int> b) const;
  Vec neg(std::span<const Int> a) const;
  Vec scale(std::span<const Int> r, std::span<const Int> a) const;  // r * a, r in base
  Vec scale_int(Int k, std::span<const Int> a) const;
  Vec commutator(std::span<const Int> a, std::span<const Int> b) const;
  bool is_zero(std::span<const Int> a) const;

  bool operator==(const Algebra& o) const;

 private:
  Algebra() = default;
  void index_sparse();

  struct PairTerms {
    std::uint32_t i, j, begin, end;
  };

  RingPtr base_;
  std::size_t rank_ = 0;
  Vec table_;
  Vec unit_;
  std::string label_;
  Family family_;
  std::vector<PairTerms> pairs_;
  std::vector<std::uint32_t> terms_;  // k indices, grouped per pair
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

struct AlgElem {
  AlgebraPtr alg;
  Vec coords;

  static AlgElem zero(AlgebraPtr a);
  static AlgElem one(AlgebraPtr a);
  static AlgElem basis(AlgebraPtr a, std::size_t i);
  bool is_zero() const { return alg->is_zero(coords); }
  bool operator==(const AlgElem& o) const { return same_algebra(alg, o.alg) && coords == o.coords; }
};

AlgElem operator+(const AlgElem& x, const AlgElem& y);
AlgElem operator-(const AlgElem& x, const AlgElem& y);
AlgElem operator*(const AlgElem& x, const AlgElem& y);
AlgElem operator*(Int k, const AlgElem& x);
AlgElem pow(const AlgElem& x, Int e);

// Additive subgroup of an algebra, canonical via Span.
struct Submodule {
  AlgebraPtr alg;
  Span span;

  static Submodule of(AlgebraPtr a, const Rows& generators);
  Rows generators() const { return span.generators(); }
  bool contains(std::span<const Int> x) const { return span.contains(x); }
  bool operator==(const Submodule& o) const { return span == o.span; }
};

// --- constructors ----------------------------------------------------------

AlgebraPtr matrix_algebra(const RingPtr& r, std::size_t n);
AlgebraPtr weyl_quotient(Int p, Int a, Int b);
AlgebraPtr opposite(const AlgebraPtr& a);
AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b);
// Throws InvalidBaseHom when f is not a verified ring homomorphism from a->base().
AlgebraPtr base_change(const AlgebraPtr& a, const BaseHom& f);
// Upper-triangular 2x2 matrices over r (rank 3; basis E11, E12, E22).
AlgebraPtr upper_triangular_2x2(const RingPtr& r);
// r^k with componentwise multiplication (rank k, commutative).
AlgebraPtr diagonal_algebra(const RingPtr& r, std::size_t k);

// Coefficients of y^j x^k in the normal-ordered basis x^s y^t of W(p,a,b),
// index s + p*t. Computed by rewriting y x -> x y + 1.
Vec weyl_normal_order(Int p, Int a, Int b, Int j, Int k);

// --- structure -------------------------------------------------------------

Submodule scalar_span(const AlgebraPtr& a);  // R * 1
Submodule whole(const AlgebraPtr& a);
Submodule center(const AlgebraPtr& a);
bool is_central(const AlgebraPtr& a);
Submodule commutant(const AlgebraPtr& a, const std::vector<Vec>& gens);
// Contains 1 and is closed under products of its generators.
bool is_subalgebra(const Submodule& s);

// d^2 x d^2 matrix over the base: column a*d+b is x -> e_a x e_b, row c*d+k
// is the e_k coefficient of e_a e_c e_b.
Matrix env_map(const AlgebraPtr& a);
bool env_map_bijective(const AlgebraPtr& a);

CheckReport is_azumaya(const AlgebraPtr& a);

// Dimension of A (x) R/m over R/m, computed from the group order.
Int rank_at(const AlgebraPtr& a, const MaxIdeal& m);
std::pair<bool, Int> has_constant_rank(const AlgebraPtr& a);
// azumaya_passed records the precondition; the rank is checked regardless.
CheckReport square_rank_check(const AlgebraPtr& a, bool azumaya_passed);

Submodule expand_ideal(const AlgebraPtr& a, const RingIdeal& ideal);

struct QuotientAlgebra {
  AlgebraPtr algebra;
  BaseHom projection;
};
// Throws ZeroRing for the unit ideal.
QuotientAlgebra quotient_algebra(const AlgebraPtr& a, const RingIdeal& ideal);

CheckReport ideal_intersection_check(const AlgebraPtr& a, const std::vector<RingIdeal>& ideals);

// Least e <= cap with x^e = 0.
std::optional<Int> nilpotency_index(const AlgElem& x, Int cap);
// Superdiagonal ones in M_n(r): column i is e_{i-1}.
AlgElem jordan_cell(const RingPtr& r, std::size_t n);

// --- serialization helpers used by witnesses ---------------------------------

Json element_json(const AlgebraPtr& a, std::span<const Int> coords);

}  // namespace azumaya
