#pragma once

// Unital ring homomorphisms between algebras over possibly different base
// rings, stored as integer matrices on flattened coordinates, and the
// theorem checks that run over them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "azumaya/algebra.hpp"

namespace azumaya {

enum class HomStatus { Unverified, Verified, Refuted };

std::string to_string(HomStatus s);

struct AlgebraHom {
  AlgebraPtr source;
  AlgebraPtr target;
  Rows matrix;  // target.dim() x source.dim()
  HomStatus status = HomStatus::Unverified;
  Json witness;  // set when refuted
  std::string label;

  bool verified() const { return status == HomStatus::Verified; }
  Vec apply(std::span<const Int> x) const;
  AdditiveMap additive() const;
};

// Well-definedness, phi(1) = 1 and phi(eps_s eps_t) = phi(eps_s) phi(eps_t)
// on all flattened generator pairs; multiplication is Z-bilinear, so this
// is full multiplicativity. Throws DimensionMismatch.
AlgebraHom verify_hom(AlgebraPtr source, AlgebraPtr target, Rows matrix, std::string label = {});

// x -> u x u^-1 on M_n(R). Throws NotInvertible.
AlgebraHom conjugation_auto(const AlgebraPtr& a, const Matrix& u);
// Apply a base-ring map to every coordinate block. The target defaults to base_change(a, f).
AlgebraHom coefficient_hom(const AlgebraPtr& a, const BaseHom& f, AlgebraPtr target = nullptr);
// x -> u sigma(x) u^-1 on M_n(GF(p^k)) with sigma the Frobenius; not base-linear.
AlgebraHom frobenius_twist(const AlgebraPtr& a, const Matrix& u);
// A -> A / IA. Throws ZeroRing for the unit ideal.
AlgebraHom reduction_hom(const AlgebraPtr& a, const RingIdeal& ideal);
// M_m(R) -> M_km(R), x -> diag(x, ..., x).
AlgebraHom diagonal_embed(const AlgebraPtr& a, std::size_t k);
// A over Z/n -> A over the CRT product of prime-power rings, and back.
std::pair<AlgebraHom, AlgebraHom> crt_split(const AlgebraPtr& a);
// W(p,a,b) -> M_p(F_p): x -> multiplication by t + a on F_p[t]/(t^p),
// y -> d/dt + b. Throws VerificationFailed unless it is a bijective hom.
AlgebraHom weyl_splitting(Int p, Int a, Int b);
// g after f. Throws ComposabilityMismatch.
AlgebraHom compose(const AlgebraHom& g, const AlgebraHom& f);

// What the theorem checks need to know about an algebra; computing it
// runs is_azumaya, so callers sweeping many homs should cache it.
struct AlgebraFacts {
  bool azumaya = false;
  bool constant_rank = false;
  Int rank = 0;
  bool base_reduced = false;
};
AlgebraFacts algebra_facts(const AlgebraPtr& a);

struct KernelIdeal {
  RingIdeal ideal;
  Submodule kernel;
  CheckReport report;
};
// ker f as a submodule, its contraction I = {r : r*1 in ker}, and the check ker == IA.
KernelIdeal kernel_ideal(const AlgebraHom& f);

// Images of the canonical center generators of the source.
struct CenterMap {
  Rows generators;
  Rows images;
  bool bijective = false;  // onto Z(target)
};

struct CenterCheck {
  CheckReport report;
  std::optional<CenterMap> map;
};
CenterCheck center_preservation_check(const AlgebraHom& f, const AlgebraFacts& src, const AlgebraFacts& tgt);
CenterCheck center_preservation_check(const AlgebraHom& f);

CheckReport rank_comparison_check(const AlgebraHom& f, const AlgebraFacts& src, const AlgebraFacts& tgt);
CheckReport rank_comparison_check(const AlgebraHom& f);

// Searches M_{n'}(k) for an element of nilpotency index exactly n.
// Exhaustive when |A'| <= max_elements, otherwise `samples` seeded draws.
CheckReport jordan_obstruction_probe(std::size_t n, const AlgebraPtr& target, std::uint64_t seed,
                                     std::uint64_t samples = 10000, Int max_elements = 16);

// The canonical map A2 (x) C -> A1, a (x) c -> a c, over the base of A1,
// for R-submodules A2, C of A1. Decided on presentations, so A2 and C need
// not be free.
bool tau_bijective(const AlgebraPtr& a1, const Span& a2, const Span& c);
// Commutant of the subalgebra spanned by gens and bijectivity of tau.
CheckReport commutant_tau_check(const AlgebraPtr& a1, const std::vector<Vec>& gens, const std::string& subject);

CheckReport isomorphism_check(const AlgebraHom& f, const AlgebraFacts& src, const AlgebraFacts& tgt);
CheckReport isomorphism_check(const AlgebraHom& f);

CheckReport endo_auto_check(const AlgebraHom& f, const AlgebraFacts& facts);
CheckReport endo_auto_check(const AlgebraHom& f);

struct SearchConfig {
  AlgebraPtr source;
  AlgebraPtr target;
  std::vector<AlgebraHom> seeds;  // known homs to perturb
  std::uint64_t budget = 100000;
  std::uint64_t seed = 0;
};
// Looks for a verified hom that fails center preservation. Throws
// PreconditionUnmet when the target base is reduced.
CheckReport counterexample_search(const SearchConfig& cfg);

Json hom_json(const AlgebraHom& f);

}  // namespace azumaya
