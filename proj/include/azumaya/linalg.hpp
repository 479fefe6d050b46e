#pragma once

// Exact linear algebra over Z/N and over the flattened coordinates of the
// base rings. Everything reduces to additive maps between finite abelian
// groups (+)Z/m_j; the R-linear structure is recovered by the callers.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "azumaya/ring.hpp"

namespace azumaya {

using Rows = std::vector<Vec>;

// Row-canonical form over Z/N with the Howell property: for every k, the
// elements of the row span with zeros in the first k columns are spanned
// by the rows whose pivot lies at or after column k. Pivots divide N and
// entries above a pivot are reduced into [0, pivot).
struct HowellForm {
  Int modulus = 0;
  std::size_t cols = 0;
  Rows rows;
  std::vector<std::size_t> pivots;
  // rows == transform * input (mod N); filled only when requested.
  Rows transform;
};

HowellForm howell_mod(Rows input, std::size_t cols, Int modulus, bool track_transform = false);

// Remainder of v after reduction by h; zero iff v lies in the row span.
Vec howell_reduce(const HowellForm& h, Vec v);

// Additive map (+)Z/source_j -> (+)Z/target_i; matrix is target x source.
struct AdditiveMap {
  Rows matrix;
  Vec source_moduli;
  Vec target_moduli;

  // N_j * H[i][j] == 0 mod M_i for every entry.
  bool well_defined() const;
  Vec apply(std::span<const Int> x) const;
};

// Throws IllFormedMap when the map is not well defined.
void require_well_defined(const AdditiveMap& f);

// Generators of {x : f(x) = 0} in source coordinates.
Rows kernel(const AdditiveMap& f);

// Generators of the image in target coordinates (the columns, reduced).
Rows image_generators(const AdditiveMap& f);

// Injective with equal group orders; throws IllFormedMap.
bool is_bijective_additive(const AdditiveMap& f);

struct Solution {
  Vec particular;
  Rows kernel;
};

// One solution of f(x) = b plus kernel generators; throws NoSolution.
Solution solve(const AdditiveMap& f, const Vec& b);

// Subgroup of (+)Z/m_j held in canonical form: generators are embedded in
// (Z/N)^n with N = lcm(m_j) via x_j -> x_j * N / m_j, then put in Howell
// form. Two spans are equal iff their forms are identical.
class Span {
 public:
  Span() = default;
  Span(Vec moduli, const Rows& generators);

  const Vec& moduli() const { return moduli_; }
  std::size_t ambient_dim() const { return moduli_.size(); }
  // Canonical generators in the ambient coordinates.
  Rows generators() const;
  bool contains(std::span<const Int> x) const;
  bool is_zero() const { return form_.rows.empty(); }
  Span intersect(const Span& other) const;
  Span sum(const Span& other) const;
  // Number of elements, or nullopt past 2^62.
  std::optional<Int> order() const;
  // All elements in a fixed order; throws BudgetExceeded when order() > limit.
  Rows enumerate(Int limit) const;
  const HowellForm& form() const { return form_; }

  bool operator==(const Span& o) const;

 private:
  Vec moduli_;
  Int lcm_ = 1;
  HowellForm form_;
};

// Matrix over a finite commutative ring; entries flattened row-major, each
// entry occupying ring->width() coordinates.
struct Matrix {
  RingPtr ring;
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec entries;

  static Matrix zeros(RingPtr r, std::size_t rows, std::size_t cols);
  static Matrix identity(RingPtr r, std::size_t n);
  // Integer entries reduced into the ring (scalars n * 1).
  static Matrix from_ints(RingPtr r, const std::vector<Vec>& rows);

  std::span<Int> at(std::size_t i, std::size_t j);
  std::span<const Int> at(std::size_t i, std::size_t j) const;
  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
};

// The R-linear map R^cols -> R^rows, as an additive map on flattened coordinates.
AdditiveMap flatten(const Matrix& m);

struct HowellResult {
  Matrix h;
  Matrix t;
  std::vector<std::size_t> pivots;
  // h == t * m and every row of m lies in the row span of h.
  bool certify(const Matrix& m) const;
};

// ZMod rings use the Howell form; prime and Galois fields use reduced row
// echelon form; products throw UnsupportedRing.
HowellResult howell_form(const Matrix& m);

// Generators of {v : m v = 0} as vectors of R^cols (flattened).
Rows kernel(const Matrix& m);
Solution solve(const Matrix& m, const Vec& b);

// Multiplication by u on the left of R^n is bijective.
bool is_invertible(const Matrix& u);
// Throws NotInvertible.
Matrix inverse(const Matrix& u);

}  // namespace azumaya
