#pragma once

// Finite commutative rings: Z/n, GF(p^k) given by a monic irreducible
// polynomial, and finite products of those. Every ring flattens to a
// vector of integer coordinates, each reduced modulo its own modulus; an
// element has exactly one such encoding, so equality is vector equality.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "azumaya/error.hpp"

namespace azumaya {

using Int = std::int64_t;
using Vec = std::vector<Int>;

enum class RingKind { ZMod, GaloisField, Product };

class FiniteCommRing;
using RingPtr = std::shared_ptr<const FiniteCommRing>;

// A ZMod or GaloisField component sitting at a fixed flattened offset.
struct RingLeaf {
  RingKind kind;
  Int modulus;   // n for ZMod, p for GaloisField
  Vec poly;      // GaloisField only: monic f, low-to-high, size width + 1
  std::size_t offset;
  std::size_t width;
};

class FiniteCommRing {
 public:
  static RingPtr zmod(Int n);
  static RingPtr galois(Int p, Vec f);
  // Lexicographically smallest monic irreducible of degree k over F_p.
  static RingPtr galois_default(Int p, int k);
  static RingPtr product(std::vector<RingPtr> factors);

  RingKind kind() const { return kind_; }
  Int n() const { return modulus_; }
  Int p() const { return modulus_; }
  const Vec& poly() const { return poly_; }
  const std::vector<RingPtr>& factors() const { return factors_; }

  std::size_t width() const { return moduli_.size(); }
  std::span<const Int> moduli() const { return moduli_; }
  const std::vector<RingLeaf>& leaves() const { return leaves_; }
  // Number of elements. Rings here are desk-scale; overflow is rejected at construction.
  Int order() const { return order_; }
  bool is_field() const;
  std::string describe() const;

  bool operator==(const FiniteCommRing& other) const;

  Vec zero() const { return Vec(width(), 0); }
  Vec one() const;
  Vec from_int(Int x) const;
  // Additive basis b_0..b_{w-1}: the coordinate unit vectors.
  Vec basis(std::size_t l) const;

  void reduce(std::span<Int> a) const;
  void add(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const;
  void sub(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const;
  void neg(std::span<const Int> a, std::span<Int> out) const;
  void mul(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const;
  // out += a * b
  void mul_add(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const;
  void scale(std::span<const Int> a, Int k, std::span<Int> out) const;
  bool is_zero(std::span<const Int> a) const;
  std::optional<Vec> inverse(std::span<const Int> a) const;

  Vec add(std::span<const Int> a, std::span<const Int> b) const;
  Vec sub(std::span<const Int> a, std::span<const Int> b) const;
  Vec mul(std::span<const Int> a, std::span<const Int> b) const;
  Vec pow(std::span<const Int> a, Int e) const;

  // Element <-> integer index in [0, order()) (mixed radix on moduli).
  Vec element_at(Int index) const;

 private:
  FiniteCommRing() = default;
  void finalize();

  RingKind kind_ = RingKind::ZMod;
  Int modulus_ = 0;
  Vec poly_;
  std::vector<RingPtr> factors_;
  Vec moduli_;
  std::vector<RingLeaf> leaves_;
  Int order_ = 1;
};

// Value-semantic ring element; coords are always canonical.
struct RingElem {
  RingPtr ring;
  Vec coords;

  static RingElem of(RingPtr r, Int x);
  bool operator==(const RingElem& o) const { return *ring == *o.ring && coords == o.coords; }
};

RingElem operator+(const RingElem& x, const RingElem& y);
RingElem operator-(const RingElem& x, const RingElem& y);
RingElem operator-(const RingElem& x);
RingElem operator*(const RingElem& x, const RingElem& y);
// Throws NotAUnit.
RingElem inv(const RingElem& x);

// Maximal ideal: a path of factor indices down to a leaf, plus the prime
// p | n for a ZMod leaf (0 for a field leaf, meaning the zero ideal).
struct MaxIdeal {
  std::vector<std::size_t> factor_path;
  Int prime = 0;
  bool operator==(const MaxIdeal&) const = default;
};

std::vector<MaxIdeal> maximal_ideals(const FiniteCommRing& r);
std::string describe(const MaxIdeal& m);

// Ideal of a finite commutative ring, one generator per leaf. For a ZMod(n)
// leaf the generator is the divisor d | n (d = n is the zero ideal); for a
// field leaf it is 1 (unit ideal) or 0 (zero ideal).
struct RingIdeal {
  RingPtr ring;
  Vec leaf_generators;

  static RingIdeal zero(RingPtr r);
  static RingIdeal unit(RingPtr r);
  // Principal ideal of Z/n (d reduced to gcd(d, n)). Ring must be ZMod.
  static RingIdeal zmod(RingPtr r, Int d);
  static RingIdeal from_leaves(RingPtr r, Vec gens);

  bool is_zero() const;
  bool is_unit() const;
  bool contains(std::span<const Int> x) const;
  // Generators of the ideal as an additive group.
  std::vector<Vec> additive_generators() const;
  RingIdeal intersect(const RingIdeal& other) const;
  bool operator==(const RingIdeal& o) const { return *ring == *o.ring && leaf_generators == o.leaf_generators; }
};

std::string describe(const RingIdeal& i);

// Additive map between flattened coordinates of two rings, claimed to be a
// unital ring homomorphism. matrix is target.width x source.width.
struct BaseHom {
  RingPtr source;
  RingPtr target;
  std::vector<Vec> matrix;

  Vec apply(std::span<const Int> x) const;
  // Well-definedness, unit and multiplicativity on additive basis pairs.
  bool verify() const;
  static BaseHom identity(RingPtr r);
};

struct ResidueField {
  RingPtr field;
  BaseHom projection;
};

// Throws InvalidIdeal when m is not a maximal ideal of r.
ResidueField residue_field(const RingPtr& r, const MaxIdeal& m);

// R -> R/I. Throws ZeroRing when I is the unit ideal.
ResidueField quotient_ring(const RingIdeal& ideal);

bool is_reduced(const FiniteCommRing& r);

struct CrtDecomposition {
  RingPtr product;   // prime-power ZMod factors, increasing primes
  BaseHom to_product;
  BaseHom from_product;
};

// Ring must be ZMod.
CrtDecomposition crt_decompose(const RingPtr& r);

// Local factors: Z/p^e pieces of every ZMod leaf and every field leaf, each
// with the projection from r.
std::vector<ResidueField> local_components(const RingPtr& r);

namespace nt {
Int mod(Int a, Int n);
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);
// g = s*a + t*b
struct Xgcd {
  Int g, s, t;
};
Xgcd xgcd(Int a, Int b);
std::optional<Int> inverse_mod(Int a, Int n);
bool is_prime(Int n);
std::vector<std::pair<Int, int>> factorize(Int n);
bool is_squarefree(Int n);
Int euler_phi(Int n);
}  // namespace nt

namespace poly {
// Over F_p, coefficient vectors low-to-high.
bool is_irreducible(const Vec& f, Int p);
}  // namespace poly

}  // namespace azumaya
