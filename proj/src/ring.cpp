#include "azumaya/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace azumaya {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::EmptyProduct: return "EmptyProduct";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::InvalidIdeal: return "InvalidIdeal";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::IllFormedMap: return "IllFormedMap";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AssociativityViolated: return "AssociativityViolated";
    case ErrorCode::UnitViolated: return "UnitViolated";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::InvalidBaseHom: return "InvalidBaseHom";
    case ErrorCode::ZeroRing: return "ZeroRing";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::ComposabilityMismatch: return "ComposabilityMismatch";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace nt {

Int mod(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int lcm(Int a, Int b) { return std::lcm(a, b); }

Xgcd xgcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::optional<Int> inverse_mod(Int a, Int n) {
  auto [g, s, t] = xgcd(mod(a, n), n);
  (void)t;
  if (g != 1) return std::nullopt;
  return mod(s, n);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  for (Int d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(Int n) {
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

Int euler_phi(Int n) {
  Int r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

}  // namespace nt

namespace poly {
namespace {

// Remainder of f modulo monic g over F_p.
Vec remainder(Vec f, const Vec& g, Int p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t d = f.size(); d-- > dg;) {
    Int c = f[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) f[d - dg + i] = nt::mod(f[d - dg + i] - c * g[i], p);
  }
  f.resize(std::min(f.size(), dg));
  return f;
}

}  // namespace

bool is_irreducible(const Vec& f, Int p) {
  const std::size_t k = f.size() - 1;
  // Every monic divisor of degree 1..k/2, enumerated exhaustively.
  for (std::size_t d = 1; d <= k / 2; ++d) {
    Int count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (Int idx = 0; idx < count; ++idx) {
      Vec g(d + 1, 0);
      g[d] = 1;
      Int x = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = x % p;
        x /= p;
      }
      Vec r = remainder(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](Int c) { return c == 0; })) return false;
    }
  }
  return true;
}

}  // namespace poly

// ---------------------------------------------------------------------------

RingPtr FiniteCommRing::zmod(Int n) {
  if (n < 2) throw Error(ErrorCode::InvalidDescriptor, "ZMod modulus must be >= 2, got " + std::to_string(n));
  if (n > (Int{1} << 30)) throw Error(ErrorCode::InvalidDescriptor, "ZMod modulus too large");
  auto r = std::shared_ptr<FiniteCommRing>(new FiniteCommRing());
  r->kind_ = RingKind::ZMod;
  r->modulus_ = n;
  r->finalize();
  return r;
}

RingPtr FiniteCommRing::galois(Int p, Vec f) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::NonPrimeModulus, std::to_string(p) + " is not prime");
  if (p > (Int{1} << 30)) throw Error(ErrorCode::InvalidDescriptor, "characteristic too large");
  if (f.size() < 2) throw Error(ErrorCode::InvalidDescriptor, "GaloisField polynomial must have degree >= 1");
  for (Int& c : f) c = nt::mod(c, p);
  if (f.back() != 1) throw Error(ErrorCode::InvalidDescriptor, "GaloisField polynomial must be monic");
  if (!poly::is_irreducible(f, p)) throw Error(ErrorCode::ReduciblePolynomial, "polynomial is reducible over F_" + std::to_string(p));
  auto r = std::shared_ptr<FiniteCommRing>(new FiniteCommRing());
  r->kind_ = RingKind::GaloisField;
  r->modulus_ = p;
  r->poly_ = std::move(f);
  r->finalize();
  return r;
}

RingPtr FiniteCommRing::galois_default(Int p, int k) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::NonPrimeModulus, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorCode::InvalidDescriptor, "degree must be >= 1");
  Int count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  // idx runs through (f_0, ..., f_{k-1}) in lexicographic order.
  for (Int idx = 0; idx < count; ++idx) {
    Vec f(k + 1, 0);
    f[k] = 1;
    Int x = idx;
    for (int i = k - 1; i >= 0; --i) {
      f[i] = x % p;
      x /= p;
    }
    if (poly::is_irreducible(f, p)) return galois(p, f);
  }
  throw Error(ErrorCode::ReduciblePolynomial, "no irreducible polynomial found");
}

RingPtr FiniteCommRing::product(std::vector<RingPtr> factors) {
  if (factors.empty()) throw Error(ErrorCode::EmptyProduct, "product needs at least one factor");
  auto r = std::shared_ptr<FiniteCommRing>(new FiniteCommRing());
  r->kind_ = RingKind::Product;
  r->factors_ = std::move(factors);
  r->finalize();
  return r;
}

void FiniteCommRing::finalize() {
  moduli_.clear();
  leaves_.clear();
  switch (kind_) {
    case RingKind::ZMod:
      moduli_ = {modulus_};
      leaves_.push_back({RingKind::ZMod, modulus_, {}, 0, 1});
      break;
    case RingKind::GaloisField: {
      std::size_t k = poly_.size() - 1;
      moduli_.assign(k, modulus_);
      leaves_.push_back({RingKind::GaloisField, modulus_, poly_, 0, k});
      break;
    }
    case RingKind::Product:
      for (const auto& f : factors_) {
        std::size_t off = moduli_.size();
        for (RingLeaf leaf : f->leaves()) {
          leaf.offset += off;
          leaves_.push_back(std::move(leaf));
        }
        moduli_.insert(moduli_.end(), f->moduli().begin(), f->moduli().end());
      }
      break;
  }
  order_ = 1;
  for (Int m : moduli_) {
    if (order_ > (Int{1} << 40) / m) throw Error(ErrorCode::InvalidDescriptor, "ring too large");
    order_ *= m;
  }
}

bool FiniteCommRing::is_field() const {
  if (leaves_.size() != 1) return false;
  const auto& l = leaves_.front();
  return l.kind == RingKind::GaloisField || nt::is_prime(l.modulus);
}

std::string FiniteCommRing::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case RingKind::ZMod:
      os << "Z/" << modulus_;
      break;
    case RingKind::GaloisField:
      os << "GF(" << modulus_ << "^" << poly_.size() - 1 << ":";
      for (Int c : poly_) os << c;
      os << ")";
      break;
    case RingKind::Product:
      os << "(";
      for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " x " : "") << factors_[i]->describe();
      os << ")";
      break;
  }
  return os.str();
}

bool FiniteCommRing::operator==(const FiniteCommRing& o) const {
  if (this == &o) return true;
  if (kind_ != o.kind_ || modulus_ != o.modulus_ || poly_ != o.poly_ || factors_.size() != o.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!(*factors_[i] == *o.factors_[i])) return false;
  return true;
}

Vec FiniteCommRing::one() const {
  Vec v(width(), 0);
  for (const auto& l : leaves_) v[l.offset] = 1;
  return v;
}

Vec FiniteCommRing::from_int(Int x) const {
  Vec v(width(), 0);
  for (const auto& l : leaves_) v[l.offset] = nt::mod(x, l.modulus);
  return v;
}

Vec FiniteCommRing::basis(std::size_t l) const {
  Vec v(width(), 0);
  v.at(l) = 1;
  return v;
}

void FiniteCommRing::reduce(std::span<Int> a) const {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = nt::mod(a[i], moduli_[i]);
}

void FiniteCommRing::add(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const {
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    Int s = a[i] + b[i];
    out[i] = s >= moduli_[i] ? s - moduli_[i] : s;
  }
}

void FiniteCommRing::sub(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const {
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    Int s = a[i] - b[i];
    out[i] = s < 0 ? s + moduli_[i] : s;
  }
}

void FiniteCommRing::neg(std::span<const Int> a, std::span<Int> out) const {
  for (std::size_t i = 0; i < moduli_.size(); ++i) out[i] = a[i] == 0 ? 0 : moduli_[i] - a[i];
}

void FiniteCommRing::mul(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const {
  Vec tmp(width(), 0);
  mul_add(a, b, tmp);
  std::copy(tmp.begin(), tmp.end(), out.begin());
}

void FiniteCommRing::mul_add(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const {
  for (const auto& l : leaves_) {
    const std::size_t o = l.offset;
    if (l.kind == RingKind::ZMod) {
      out[o] = (out[o] + a[o] * b[o]) % l.modulus;
      continue;
    }
    const std::size_t k = l.width;
    const Int p = l.modulus;
    Int prod[64] = {0};
    Vec big;
    Int* c = prod;
    if (2 * k > 64) {
      big.assign(2 * k, 0);
      c = big.data();
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (a[o + i] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) c[i + j] = (c[i + j] + a[o + i] * b[o + j]) % p;
    }
    for (std::size_t d = 2 * k - 1; d-- > k;) {
      Int t = c[d];
      if (t == 0) continue;
      for (std::size_t i = 0; i < k; ++i) c[d - k + i] = nt::mod(c[d - k + i] - t * l.poly[i], p);
    }
    for (std::size_t i = 0; i < k; ++i) out[o + i] = (out[o + i] + c[i]) % p;
  }
}

void FiniteCommRing::scale(std::span<const Int> a, Int k, std::span<Int> out) const {
  for (std::size_t i = 0; i < moduli_.size(); ++i) out[i] = nt::mod(a[i] * nt::mod(k, moduli_[i]), moduli_[i]);
}

bool FiniteCommRing::is_zero(std::span<const Int> a) const {
  return std::all_of(a.begin(), a.end(), [](Int c) { return c == 0; });
}

std::optional<Vec> FiniteCommRing::inverse(std::span<const Int> a) const {
  Vec out(width(), 0);
  for (const auto& l : leaves_) {
    if (l.kind == RingKind::ZMod) {
      auto inv = nt::inverse_mod(a[l.offset], l.modulus);
      if (!inv) return std::nullopt;
      out[l.offset] = *inv;
      continue;
    }
    bool nonzero = false;
    for (std::size_t i = 0; i < l.width; ++i) nonzero |= a[l.offset + i] != 0;
    if (!nonzero) return std::nullopt;
  }
  // Field leaves: x^(q-2), computed on the whole ring with ZMod leaves already done.
  bool any_field = std::any_of(leaves_.begin(), leaves_.end(), [](const RingLeaf& l) { return l.kind == RingKind::GaloisField; });
  if (!any_field) return out;
  for (const auto& l : leaves_) {
    if (l.kind != RingKind::GaloisField) continue;
    Int q = 1;
    for (std::size_t i = 0; i < l.width; ++i) q *= l.modulus;
    // Work on a leaf-local ring.
    auto leaf_ring = galois(l.modulus, l.poly);
    Vec x(a.begin() + static_cast<std::ptrdiff_t>(l.offset), a.begin() + static_cast<std::ptrdiff_t>(l.offset + l.width));
    Vec r = leaf_ring->pow(x, q - 2);
    std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(l.offset));
  }
  return out;
}

Vec FiniteCommRing::add(std::span<const Int> a, std::span<const Int> b) const {
  Vec v(width());
  add(a, b, v);
  return v;
}

Vec FiniteCommRing::sub(std::span<const Int> a, std::span<const Int> b) const {
  Vec v(width());
  sub(a, b, v);
  return v;
}

Vec FiniteCommRing::mul(std::span<const Int> a, std::span<const Int> b) const {
  Vec v(width(), 0);
  mul_add(a, b, v);
  return v;
}

Vec FiniteCommRing::pow(std::span<const Int> a, Int e) const {
  Vec result = one();
  Vec base(a.begin(), a.end());
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Vec FiniteCommRing::element_at(Int index) const {
  Vec v(width());
  for (std::size_t i = 0; i < width(); ++i) {
    v[i] = index % moduli_[i];
    index /= moduli_[i];
  }
  return v;
}

// ---------------------------------------------------------------------------

RingElem RingElem::of(RingPtr r, Int x) {
  Vec c = r->from_int(x);
  return {std::move(r), std::move(c)};
}

namespace {

void same_ring(const RingElem& x, const RingElem& y) {
  if (!(*x.ring == *y.ring)) throw Error(ErrorCode::RingMismatch, x.ring->describe() + " vs " + y.ring->describe());
}

}  // namespace

RingElem operator+(const RingElem& x, const RingElem& y) {
  same_ring(x, y);
  return {x.ring, x.ring->add(x.coords, y.coords)};
}

RingElem operator-(const RingElem& x, const RingElem& y) {
  same_ring(x, y);
  return {x.ring, x.ring->sub(x.coords, y.coords)};
}

RingElem operator-(const RingElem& x) {
  Vec v(x.ring->width());
  x.ring->neg(x.coords, v);
  return {x.ring, std::move(v)};
}

RingElem operator*(const RingElem& x, const RingElem& y) {
  same_ring(x, y);
  return {x.ring, x.ring->mul(x.coords, y.coords)};
}

RingElem inv(const RingElem& x) {
  auto r = x.ring->inverse(x.coords);
  if (!r) throw Error(ErrorCode::NotAUnit, "element is not a unit in " + x.ring->describe());
  return {x.ring, std::move(*r)};
}

// ---------------------------------------------------------------------------

std::vector<MaxIdeal> maximal_ideals(const FiniteCommRing& r) {
  std::vector<MaxIdeal> out;
  switch (r.kind()) {
    case RingKind::ZMod:
      for (auto [p, e] : nt::factorize(r.n())) out.push_back({{}, p});
      break;
    case RingKind::GaloisField:
      out.push_back({{}, 0});
      break;
    case RingKind::Product:
      for (std::size_t i = 0; i < r.factors().size(); ++i)
        for (MaxIdeal m : maximal_ideals(*r.factors()[i])) {
          m.factor_path.insert(m.factor_path.begin(), i);
          out.push_back(std::move(m));
        }
      break;
  }
  return out;
}

std::string describe(const MaxIdeal& m) {
  std::ostringstream os;
  for (std::size_t i : m.factor_path) os << "factor " << i << ": ";
  if (m.prime == 0)
    os << "(0)";
  else
    os << "(" << m.prime << ")";
  return os.str();
}

namespace {

struct Located {
  const FiniteCommRing* ring;
  std::size_t offset;
};

Located locate(const FiniteCommRing& r, const std::vector<std::size_t>& path) {
  const FiniteCommRing* cur = &r;
  std::size_t off = 0;
  for (std::size_t idx : path) {
    if (cur->kind() != RingKind::Product || idx >= cur->factors().size())
      throw Error(ErrorCode::InvalidIdeal, "factor path does not match ring structure");
    for (std::size_t i = 0; i < idx; ++i) off += cur->factors()[i]->width();
    cur = cur->factors()[idx].get();
  }
  return {cur, off};
}

std::vector<Vec> zero_matrix(std::size_t rows, std::size_t cols) { return std::vector<Vec>(rows, Vec(cols, 0)); }

}  // namespace

ResidueField residue_field(const RingPtr& r, const MaxIdeal& m) {
  auto [leaf, off] = locate(*r, m.factor_path);
  if (leaf->kind() == RingKind::Product) throw Error(ErrorCode::InvalidIdeal, "factor path stops at a product");
  if (leaf->kind() == RingKind::ZMod) {
    if (m.prime < 2 || !nt::is_prime(m.prime) || leaf->n() % m.prime != 0)
      throw Error(ErrorCode::InvalidIdeal, "(" + std::to_string(m.prime) + ") is not maximal in " + leaf->describe());
    auto k = FiniteCommRing::zmod(m.prime);
    auto mat = zero_matrix(1, r->width());
    mat[0][off] = 1;
    return {k, {r, k, std::move(mat)}};
  }
  if (m.prime != 0) throw Error(ErrorCode::InvalidIdeal, "field leaf only has the zero maximal ideal");
  auto k = FiniteCommRing::galois(leaf->p(), leaf->poly());
  auto mat = zero_matrix(k->width(), r->width());
  for (std::size_t i = 0; i < k->width(); ++i) mat[i][off + i] = 1;
  return {k, {r, k, std::move(mat)}};
}

namespace {

// Quotient of the sub-ring at `offset` by the leaf generators starting at
// `leaf_index`. Returns nullptr when the quotient is zero.
RingPtr quotient_rec(const FiniteCommRing& r, const Vec& gens, std::size_t& leaf_index,
                     std::vector<std::pair<std::size_t, Int>>& kept, std::size_t offset) {
  switch (r.kind()) {
    case RingKind::ZMod: {
      Int d = gens[leaf_index++];
      if (d == 1) return nullptr;
      kept.emplace_back(offset, d);
      return FiniteCommRing::zmod(d);
    }
    case RingKind::GaloisField: {
      Int g = gens[leaf_index++];
      if (g == 1) return nullptr;
      for (std::size_t i = 0; i < r.width(); ++i) kept.emplace_back(offset + i, r.p());
      return FiniteCommRing::galois(r.p(), r.poly());
    }
    case RingKind::Product: {
      std::vector<RingPtr> fs;
      std::size_t off = offset;
      for (const auto& f : r.factors()) {
        if (auto q = quotient_rec(*f, gens, leaf_index, kept, off)) fs.push_back(std::move(q));
        off += f->width();
      }
      if (fs.empty()) return nullptr;
      return FiniteCommRing::product(std::move(fs));
    }
  }
  return nullptr;
}

}  // namespace

ResidueField quotient_ring(const RingIdeal& ideal) {
  std::size_t leaf_index = 0;
  std::vector<std::pair<std::size_t, Int>> kept;
  auto q = quotient_rec(*ideal.ring, ideal.leaf_generators, leaf_index, kept, 0);
  if (!q) throw Error(ErrorCode::ZeroRing, "quotient by the unit ideal is the zero ring");
  auto mat = zero_matrix(q->width(), ideal.ring->width());
  for (std::size_t i = 0; i < kept.size(); ++i) mat[i][kept[i].first] = 1;
  return {q, {ideal.ring, q, std::move(mat)}};
}

bool is_reduced(const FiniteCommRing& r) {
  return std::all_of(r.leaves().begin(), r.leaves().end(),
                     [](const RingLeaf& l) { return l.kind == RingKind::GaloisField || nt::is_squarefree(l.modulus); });
}

CrtDecomposition crt_decompose(const RingPtr& r) {
  if (r->kind() != RingKind::ZMod) throw Error(ErrorCode::UnsupportedRing, "crt_decompose needs a ZMod ring");
  const Int n = r->n();
  std::vector<RingPtr> fs;
  Vec qs;
  for (auto [p, e] : nt::factorize(n)) {
    Int q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    qs.push_back(q);
    fs.push_back(FiniteCommRing::zmod(q));
  }
  auto prod = FiniteCommRing::product(std::move(fs));
  auto to = zero_matrix(qs.size(), 1);
  auto from = zero_matrix(1, qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    to[i][0] = 1;
    // Idempotent e_i: 1 mod q_i, 0 mod n / q_i.
    Int rest = n / qs[i];
    Int inv = *nt::inverse_mod(rest % qs[i], qs[i]);
    from[0][i] = nt::mod(rest * inv, n);
  }
  return {prod, {r, prod, std::move(to)}, {prod, r, std::move(from)}};
}

std::vector<ResidueField> local_components(const RingPtr& r) {
  std::vector<ResidueField> out;
  for (const auto& l : r->leaves()) {
    if (l.kind == RingKind::GaloisField) {
      auto k = FiniteCommRing::galois(l.modulus, l.poly);
      auto mat = zero_matrix(l.width, r->width());
      for (std::size_t i = 0; i < l.width; ++i) mat[i][l.offset + i] = 1;
      out.push_back({k, {r, k, std::move(mat)}});
      continue;
    }
    for (auto [p, e] : nt::factorize(l.modulus)) {
      Int q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      auto z = FiniteCommRing::zmod(q);
      auto mat = zero_matrix(1, r->width());
      mat[0][l.offset] = 1;
      out.push_back({z, {r, z, std::move(mat)}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

RingIdeal RingIdeal::zero(RingPtr r) {
  Vec g;
  for (const auto& l : r->leaves()) g.push_back(l.kind == RingKind::ZMod ? l.modulus : 0);
  return {std::move(r), std::move(g)};
}

RingIdeal RingIdeal::unit(RingPtr r) {
  Vec g(r->leaves().size(), 1);
  return {std::move(r), std::move(g)};
}

RingIdeal RingIdeal::zmod(RingPtr r, Int d) {
  if (r->kind() != RingKind::ZMod) throw Error(ErrorCode::InvalidIdeal, "principal (d) ideals need a ZMod ring");
  Int g = nt::gcd(nt::mod(d, r->n()), r->n());
  return {std::move(r), {g}};
}

RingIdeal RingIdeal::from_leaves(RingPtr r, Vec gens) {
  if (gens.size() != r->leaves().size()) throw Error(ErrorCode::InvalidIdeal, "one generator per leaf required");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& l = r->leaves()[i];
    if (l.kind == RingKind::ZMod) {
      gens[i] = nt::gcd(nt::mod(gens[i], l.modulus), l.modulus);
    } else if (gens[i] != 0 && gens[i] != 1) {
      throw Error(ErrorCode::InvalidIdeal, "field leaf ideal must be 0 or 1");
    }
  }
  return {std::move(r), std::move(gens)};
}

bool RingIdeal::is_zero() const { return *this == zero(ring); }

bool RingIdeal::is_unit() const {
  return std::all_of(leaf_generators.begin(), leaf_generators.end(), [](Int g) { return g == 1; });
}

bool RingIdeal::contains(std::span<const Int> x) const {
  for (std::size_t i = 0; i < ring->leaves().size(); ++i) {
    const auto& l = ring->leaves()[i];
    Int g = leaf_generators[i];
    if (l.kind == RingKind::ZMod) {
      if (x[l.offset] % g != 0) return false;
    } else if (g == 0) {
      for (std::size_t j = 0; j < l.width; ++j)
        if (x[l.offset + j] != 0) return false;
    }
  }
  return true;
}

std::vector<Vec> RingIdeal::additive_generators() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < ring->leaves().size(); ++i) {
    const auto& l = ring->leaves()[i];
    Int g = leaf_generators[i];
    if (l.kind == RingKind::ZMod) {
      if (g == l.modulus) continue;
      Vec v = ring->zero();
      v[l.offset] = g;
      out.push_back(std::move(v));
    } else if (g == 1) {
      for (std::size_t j = 0; j < l.width; ++j) out.push_back(ring->basis(l.offset + j));
    }
  }
  return out;
}

RingIdeal RingIdeal::intersect(const RingIdeal& other) const {
  if (!(*ring == *other.ring)) throw Error(ErrorCode::RingMismatch, "ideals of different rings");
  Vec g(leaf_generators.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& l = ring->leaves()[i];
    if (l.kind == RingKind::ZMod)
      g[i] = nt::gcd(nt::lcm(leaf_generators[i], other.leaf_generators[i]), l.modulus);
    else
      g[i] = leaf_generators[i] & other.leaf_generators[i];
  }
  return {ring, std::move(g)};
}

std::string describe(const RingIdeal& ideal) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < ideal.leaf_generators.size(); ++i) os << (i ? "," : "") << ideal.leaf_generators[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

Vec BaseHom::apply(std::span<const Int> x) const {
  Vec y(target->width(), 0);
  auto mod = target->moduli();
  for (std::size_t i = 0; i < y.size(); ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc = (acc + nt::mod(matrix[i][j], mod[i]) * x[j]) % mod[i];
    y[i] = acc;
  }
  return y;
}

bool BaseHom::verify() const {
  if (matrix.size() != target->width()) return false;
  auto sm = source->moduli();
  auto tm = target->moduli();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != source->width()) return false;
    for (std::size_t j = 0; j < sm.size(); ++j)
      if (nt::mod(sm[j] * matrix[i][j], tm[i]) != 0) return false;
  }
  if (apply(source->one()) != target->one()) return false;
  for (std::size_t a = 0; a < source->width(); ++a)
    for (std::size_t b = 0; b < source->width(); ++b) {
      Vec ea = source->basis(a), eb = source->basis(b);
      if (apply(source->mul(ea, eb)) != target->mul(apply(ea), apply(eb))) return false;
    }
  return true;
}

BaseHom BaseHom::identity(RingPtr r) {
  auto mat = zero_matrix(r->width(), r->width());
  for (std::size_t i = 0; i < r->width(); ++i) mat[i][i] = 1;
  return {r, r, std::move(mat)};
}

}  // namespace azumaya
