#include "azumaya/algebra.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace azumaya {

namespace {

std::span<const Int> block(std::span<const Int> v, std::size_t i, std::size_t w) { return v.subspan(i * w, w); }
std::span<Int> block(std::span<Int> v, std::size_t i, std::size_t w) { return v.subspan(i * w, w); }

}  // namespace

AlgebraPtr Algebra::create(RingPtr base, std::size_t rank, Vec table, Vec unit, std::string label, Family family) {
  if (rank == 0) throw Error(ErrorCode::DimensionMismatch, "algebra rank must be >= 1");
  const std::size_t w = base->width();
  if (table.size() != rank * rank * rank * w) throw Error(ErrorCode::DimensionMismatch, "structure constant table has wrong size");
  if (unit.size() != rank * w) throw Error(ErrorCode::DimensionMismatch, "unit vector has wrong size");
  for (std::size_t t = 0; t < table.size(); t += w) base->reduce(std::span<Int>(table).subspan(t, w));
  for (std::size_t t = 0; t < unit.size(); t += w) base->reduce(std::span<Int>(unit).subspan(t, w));

  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->base_ = std::move(base);
  a->rank_ = rank;
  a->table_ = std::move(table);
  a->unit_ = std::move(unit);
  a->label_ = std::move(label);
  a->family_ = family;
  a->index_sparse();

  for (std::size_t i = 0; i < rank; ++i) {
    const Vec ei = a->basis(i);
    if (a->mul(a->unit_, ei) != ei || a->mul(ei, a->unit_) != ei)
      throw Error(ErrorCode::UnitViolated, a->label_ + ": unit fails on basis element " + std::to_string(i));
  }
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) {
      const Vec eij(a->basis_product(i, j).begin(), a->basis_product(i, j).end());
      const Vec ei = a->basis(i);
      for (std::size_t k = 0; k < rank; ++k) {
        const Vec ejk(a->basis_product(j, k).begin(), a->basis_product(j, k).end());
        if (a->mul(eij, a->basis(k)) != a->mul(ei, ejk))
          throw Error(ErrorCode::AssociativityViolated, a->label_ + ": (e" + std::to_string(i) + " e" + std::to_string(j) + ") e" +
                                                            std::to_string(k) + " differs from e" + std::to_string(i) + " (e" +
                                                            std::to_string(j) + " e" + std::to_string(k) + ")");
      }
    }
  return a;
}

void Algebra::index_sparse() {
  const std::size_t d = rank_, w = width();
  pairs_.clear();
  terms_.clear();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto begin = static_cast<std::uint32_t>(terms_.size());
      for (std::size_t k = 0; k < d; ++k) {
        auto c = std::span<const Int>(table_).subspan(((i * d + j) * d + k) * w, w);
        if (!base_->is_zero(c)) terms_.push_back(static_cast<std::uint32_t>(k));
      }
      const auto end = static_cast<std::uint32_t>(terms_.size());
      if (end != begin) pairs_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), begin, end});
    }
}

Vec Algebra::flat_moduli() const {
  Vec m;
  m.reserve(dim());
  for (std::size_t i = 0; i < rank_; ++i) m.insert(m.end(), base_->moduli().begin(), base_->moduli().end());
  return m;
}

std::optional<Int> Algebra::order() const {
  Int o = 1;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (o > (Int{1} << 62) / base_->order()) return std::nullopt;
    o *= base_->order();
  }
  return o;
}

std::span<const Int> Algebra::basis_product(std::size_t i, std::size_t j) const {
  return std::span<const Int>(table_).subspan((i * rank_ + j) * rank_ * width(), dim());
}

Vec Algebra::basis(std::size_t i) const {
  Vec v(dim(), 0);
  const Vec one = base_->one();
  std::copy(one.begin(), one.end(), v.begin() + static_cast<std::ptrdiff_t>(i * width()));
  return v;
}

Vec Algebra::flat_generator(std::size_t t) const {
  Vec v(dim(), 0);
  v.at(t) = 1;
  return v;
}

Vec Algebra::element_at(Int index) const {
  const Vec m = flat_moduli();
  Vec v(dim());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = index % m[i];
    index /= m[i];
  }
  return v;
}

Vec Algebra::scalar(std::span<const Int> r) const { return scale(r, unit_); }

void Algebra::mul(std::span<const Int> a, std::span<const Int> b, std::span<Int> out) const {
  std::fill(out.begin(), out.end(), 0);
  const std::size_t d = rank_, w = width();
  if (w == 1) {
    const Int n = base_->moduli()[0];
    for (const auto& pr : pairs_) {
      const Int ai = a[pr.i];
      if (ai == 0) continue;
      const Int bj = b[pr.j];
      if (bj == 0) continue;
      const Int t = ai * bj % n;
      const Int* c = table_.data() + (static_cast<std::size_t>(pr.i) * d + pr.j) * d;
      for (std::uint32_t s = pr.begin; s < pr.end; ++s) {
        const std::uint32_t k = terms_[s];
        out[k] = (out[k] + c[k] * t) % n;
      }
    }
    return;
  }
  Vec t(w);
  for (const auto& pr : pairs_) {
    auto ai = block(a, pr.i, w);
    if (base_->is_zero(ai)) continue;
    auto bj = block(b, pr.j, w);
    if (base_->is_zero(bj)) continue;
    std::fill(t.begin(), t.end(), 0);
    base_->mul_add(ai, bj, t);
    if (base_->is_zero(t)) continue;
    for (std::uint32_t s = pr.begin; s < pr.end; ++s) {
      const std::uint32_t k = terms_[s];
      auto c = std::span<const Int>(table_).subspan(((static_cast<std::size_t>(pr.i) * d + pr.j) * d + k) * w, w);
      base_->mul_add(c, t, block(out, k, w));
    }
  }
}

Vec Algebra::mul(std::span<const Int> a, std::span<const Int> b) const {
  Vec out(dim(), 0);
  mul(a, b, out);
  return out;
}

Vec Algebra::add(std::span<const Int> a, std::span<const Int> b) const {
  Vec out(dim());
  for (std::size_t i = 0; i < rank_; ++i) base_->add(block(a, i, width()), block(b, i, width()), block(std::span<Int>(out), i, width()));
  return out;
}

Vec Algebra::sub(std::span<const Int> a, std::span<const Int> b) const {
  Vec out(dim());
  for (std::size_t i = 0; i < rank_; ++i) base_->sub(block(a, i, width()), block(b, i, width()), block(std::span<Int>(out), i, width()));
  return out;
}

Vec Algebra::neg(std::span<const Int> a) const {
  Vec out(dim());
  for (std::size_t i = 0; i < rank_; ++i) base_->neg(block(a, i, width()), block(std::span<Int>(out), i, width()));
  return out;
}

Vec Algebra::scale(std::span<const Int> r, std::span<const Int> a) const {
  Vec out(dim(), 0);
  for (std::size_t i = 0; i < rank_; ++i) base_->mul_add(r, block(a, i, width()), block(std::span<Int>(out), i, width()));
  return out;
}

Vec Algebra::scale_int(Int k, std::span<const Int> a) const {
  Vec out(dim());
  const Vec m = flat_moduli();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = nt::mod(nt::mod(k, m[i]) * a[i], m[i]);
  return out;
}

Vec Algebra::commutator(std::span<const Int> a, std::span<const Int> b) const { return sub(mul(a, b), mul(b, a)); }

bool Algebra::is_zero(std::span<const Int> a) const {
  return std::all_of(a.begin(), a.end(), [](Int c) { return c == 0; });
}

bool Algebra::operator==(const Algebra& o) const {
  if (this == &o) return true;
  return *base_ == *o.base_ && rank_ == o.rank_ && table_ == o.table_ && unit_ == o.unit_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a.get() == b.get() || *a == *b; }

// ---------------------------------------------------------------------------

AlgElem AlgElem::zero(AlgebraPtr a) {
  Vec z = a->zero();
  return {std::move(a), std::move(z)};
}

AlgElem AlgElem::one(AlgebraPtr a) {
  Vec u = a->one();
  return {std::move(a), std::move(u)};
}

AlgElem AlgElem::basis(AlgebraPtr a, std::size_t i) {
  Vec e = a->basis(i);
  return {std::move(a), std::move(e)};
}

namespace {

void same(const AlgElem& x, const AlgElem& y) {
  if (!same_algebra(x.alg, y.alg)) throw Error(ErrorCode::AlgebraMismatch, x.alg->label() + " vs " + y.alg->label());
}

}  // namespace

AlgElem operator+(const AlgElem& x, const AlgElem& y) {
  same(x, y);
  return {x.alg, x.alg->add(x.coords, y.coords)};
}

AlgElem operator-(const AlgElem& x, const AlgElem& y) {
  same(x, y);
  return {x.alg, x.alg->sub(x.coords, y.coords)};
}

AlgElem operator*(const AlgElem& x, const AlgElem& y) {
  same(x, y);
  return {x.alg, x.alg->mul(x.coords, y.coords)};
}

AlgElem operator*(Int k, const AlgElem& x) { return {x.alg, x.alg->scale_int(k, x.coords)}; }

AlgElem pow(const AlgElem& x, Int e) {
  AlgElem r = AlgElem::one(x.alg);
  for (Int i = 0; i < e; ++i) r = r * x;
  return r;
}

Submodule Submodule::of(AlgebraPtr a, const Rows& generators) {
  Span s(a->flat_moduli(), generators);
  return {std::move(a), std::move(s)};
}

// ---------------------------------------------------------------------------

AlgebraPtr matrix_algebra(const RingPtr& r, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "matrix algebra size must be >= 1");
  const std::size_t d = n * n, w = r->width();
  Vec table(d * d * d * w, 0), unit(d * w, 0);
  const Vec one = r->one();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        // E_ij E_jl = E_il
        const std::size_t a = i * n + j, b = j * n + l, c = i * n + l;
        std::copy(one.begin(), one.end(), table.begin() + static_cast<std::ptrdiff_t>(((a * d + b) * d + c) * w));
      }
  for (std::size_t i = 0; i < n; ++i) std::copy(one.begin(), one.end(), unit.begin() + static_cast<std::ptrdiff_t>((i * n + i) * w));
  return Algebra::create(r, d, std::move(table), std::move(unit), "M_" + std::to_string(n) + "(" + r->describe() + ")",
                         {n, std::nullopt});
}

Vec weyl_normal_order(Int p, Int a, Int b, Int j, Int k) {
  std::map<std::string, Int> pending{{std::string(static_cast<std::size_t>(j), 'y') + std::string(static_cast<std::size_t>(k), 'x'), 1}};
  Vec out(static_cast<std::size_t>(p * p), 0);
  while (!pending.empty()) {
    auto it = pending.begin();
    std::string word = it->first;
    const Int c = nt::mod(it->second, p);
    pending.erase(it);
    if (c == 0) continue;
    const auto pos = word.find("yx");
    if (pos == std::string::npos) {
      Int s = static_cast<Int>(std::count(word.begin(), word.end(), 'x'));
      Int t = static_cast<Int>(word.size()) - s;
      Int coef = c;
      for (; s >= p; s -= p) coef = coef * a % p;
      for (; t >= p; t -= p) coef = coef * b % p;
      auto& slot = out[static_cast<std::size_t>(s + p * t)];
      slot = (slot + coef) % p;
      continue;
    }
    std::string swapped = word;
    std::swap(swapped[pos], swapped[pos + 1]);
    std::string dropped = word;
    dropped.erase(pos, 2);
    pending[swapped] += c;
    pending[dropped] += c;
  }
  return out;
}

AlgebraPtr weyl_quotient(Int p, Int a, Int b) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::NonPrimeModulus, "Weyl quotient needs a prime characteristic");
  a = nt::mod(a, p);
  b = nt::mod(b, p);
  auto fp = FiniteCommRing::zmod(p);
  const auto up = static_cast<std::size_t>(p);
  const std::size_t d = up * up;
  Vec table(d * d * d, 0);
  std::vector<Vec> memo(d);
  for (std::size_t j = 0; j < up; ++j)
    for (std::size_t k = 0; k < up; ++k) memo[j * up + k] = weyl_normal_order(p, a, b, static_cast<Int>(j), static_cast<Int>(k));
  for (std::size_t i = 0; i < up; ++i)
    for (std::size_t j = 0; j < up; ++j)
      for (std::size_t k = 0; k < up; ++k)
        for (std::size_t l = 0; l < up; ++l) {
          // (x^i y^j)(x^k y^l) = x^i (y^j x^k) y^l
          const std::size_t left = i + up * j, right = k + up * l;
          const Vec& mid = memo[j * up + k];
          for (std::size_t s = 0; s < up; ++s)
            for (std::size_t t = 0; t < up; ++t) {
              Int c = mid[s + up * t];
              if (c == 0) continue;
              std::size_t xs = i + s, yt = t + l;
              if (xs >= up) {
                xs -= up;
                c = c * a % p;
              }
              if (yt >= up) {
                yt -= up;
                c = c * b % p;
              }
              Int& slot = table[(left * d + right) * d + xs + up * yt];
              slot = (slot + c) % p;
            }
        }
  Vec unit(d, 0);
  unit[0] = 1;
  return Algebra::create(fp, d, std::move(table), std::move(unit),
                         "W(" + std::to_string(p) + "," + std::to_string(a) + "," + std::to_string(b) + ")",
                         {std::nullopt, WeylParams{p, a, b}});
}

AlgebraPtr opposite(const AlgebraPtr& a) {
  const std::size_t d = a->rank(), w = a->width();
  Vec table(a->table().size());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto src = a->basis_product(j, i);
      std::copy(src.begin(), src.end(), table.begin() + static_cast<std::ptrdiff_t>((i * d + j) * d * w));
    }
  std::string label = a->label();
  const std::string suffix = "^op";
  if (label.size() > suffix.size() && label.ends_with(suffix))
    label.resize(label.size() - suffix.size());
  else
    label += suffix;
  return Algebra::create(a->base(), d, std::move(table), a->one(), label);
}

AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!(*a->base() == *b->base())) throw Error(ErrorCode::BaseMismatch, a->base()->describe() + " vs " + b->base()->describe());
  const auto& R = *a->base();
  const std::size_t da = a->rank(), db = b->rank(), d = da * db, w = R.width();
  Vec table(d * d * d * w, 0);
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t i2 = 0; i2 < da; ++i2) {
      auto ca = a->basis_product(i1, i2);
      for (std::size_t k = 0; k < da; ++k) {
        auto cak = ca.subspan(k * w, w);
        if (R.is_zero(cak)) continue;
        for (std::size_t j1 = 0; j1 < db; ++j1)
          for (std::size_t j2 = 0; j2 < db; ++j2) {
            auto cb = b->basis_product(j1, j2);
            for (std::size_t l = 0; l < db; ++l) {
              auto cbl = cb.subspan(l * w, w);
              if (R.is_zero(cbl)) continue;
              const std::size_t left = i1 * db + j1, right = i2 * db + j2, out = k * db + l;
              R.mul_add(cak, cbl, std::span<Int>(table).subspan(((left * d + right) * d + out) * w, w));
            }
          }
      }
    }
  Vec unit(d * w, 0);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      R.mul_add(a->unit().subspan(i * w, w), b->unit().subspan(j * w, w), std::span<Int>(unit).subspan((i * db + j) * w, w));
  return Algebra::create(a->base(), d, std::move(table), std::move(unit), "(" + a->label() + " (x) " + b->label() + ")");
}

AlgebraPtr base_change(const AlgebraPtr& a, const BaseHom& f) {
  if (!(*f.source == *a->base())) throw Error(ErrorCode::InvalidBaseHom, "base map does not start at " + a->base()->describe());
  if (!f.verify()) throw Error(ErrorCode::InvalidBaseHom, "base map is not a unital ring homomorphism");
  const std::size_t d = a->rank(), w = a->width(), w2 = f.target->width();
  Vec table(d * d * d * w2), unit(d * w2);
  for (std::size_t t = 0; t < d * d * d; ++t) {
    Vec img = f.apply(std::span<const Int>(a->table()).subspan(t * w, w));
    std::copy(img.begin(), img.end(), table.begin() + static_cast<std::ptrdiff_t>(t * w2));
  }
  for (std::size_t t = 0; t < d; ++t) {
    Vec img = f.apply(a->unit().subspan(t * w, w));
    std::copy(img.begin(), img.end(), unit.begin() + static_cast<std::ptrdiff_t>(t * w2));
  }
  Algebra::Family fam;
  std::string label;
  if (auto n = a->family().matrix_degree) {
    fam.matrix_degree = n;
    label = "M_" + std::to_string(*n) + "(" + f.target->describe() + ")";
  } else if (auto wp = a->family().weyl; wp && *f.target == *a->base()) {
    fam.weyl = wp;
    label = a->label();
  } else {
    label = "(" + a->label() + " (x) " + f.target->describe() + ")";
  }
  return Algebra::create(f.target, d, std::move(table), std::move(unit), label, fam);
}

AlgebraPtr upper_triangular_2x2(const RingPtr& r) {
  const std::size_t d = 3, w = r->width();
  Vec table(d * d * d * w, 0), unit(d * w, 0);
  const Vec one = r->one();
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
    std::copy(one.begin(), one.end(), table.begin() + static_cast<std::ptrdiff_t>(((i * d + j) * d + k) * w));
  };
  // basis E11 = 0, E12 = 1, E22 = 2
  set(0, 0, 0);
  set(0, 1, 1);
  set(1, 2, 1);
  set(2, 2, 2);
  std::copy(one.begin(), one.end(), unit.begin());
  std::copy(one.begin(), one.end(), unit.begin() + static_cast<std::ptrdiff_t>(2 * w));
  return Algebra::create(r, d, std::move(table), std::move(unit), "T_2(" + r->describe() + ")");
}

AlgebraPtr diagonal_algebra(const RingPtr& r, std::size_t k) {
  const std::size_t w = r->width();
  Vec table(k * k * k * w, 0), unit(k * w, 0);
  const Vec one = r->one();
  for (std::size_t i = 0; i < k; ++i) {
    std::copy(one.begin(), one.end(), table.begin() + static_cast<std::ptrdiff_t>(((i * k + i) * k + i) * w));
    std::copy(one.begin(), one.end(), unit.begin() + static_cast<std::ptrdiff_t>(i * w));
  }
  return Algebra::create(r, k, std::move(table), std::move(unit), r->describe() + "^" + std::to_string(k));
}

// ---------------------------------------------------------------------------

Submodule scalar_span(const AlgebraPtr& a) {
  Rows gens;
  for (std::size_t l = 0; l < a->width(); ++l) gens.push_back(a->scalar(a->base()->basis(l)));
  return Submodule::of(a, gens);
}

Submodule whole(const AlgebraPtr& a) {
  Rows gens;
  for (std::size_t t = 0; t < a->dim(); ++t) gens.push_back(a->flat_generator(t));
  return Submodule::of(a, gens);
}

namespace {

// Kernel of z -> ([z, g])_g as a submodule.
Submodule centralizer_of(const AlgebraPtr& a, const std::vector<Vec>& gens) {
  const std::size_t dim = a->dim();
  const Vec mod = a->flat_moduli();
  AdditiveMap f;
  f.source_moduli = mod;
  for (std::size_t g = 0; g < gens.size(); ++g) f.target_moduli.insert(f.target_moduli.end(), mod.begin(), mod.end());
  f.matrix.assign(f.target_moduli.size(), Vec(dim, 0));
  for (std::size_t t = 0; t < dim; ++t) {
    const Vec eps = a->flat_generator(t);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const Vec c = a->commutator(eps, gens[g]);
      for (std::size_t r = 0; r < dim; ++r) f.matrix[g * dim + r][t] = c[r];
    }
  }
  if (gens.empty()) return whole(a);
  return Submodule::of(a, kernel(f));
}

Vec mul_basis_right(const Algebra& a, std::span<const Int> x, std::size_t b) {
  const std::size_t d = a.rank(), w = a.width();
  Vec out(a.dim(), 0);
  const auto& R = *a.base();
  for (std::size_t s = 0; s < d; ++s) {
    auto xs = x.subspan(s * w, w);
    if (R.is_zero(xs)) continue;
    auto c = a.basis_product(s, b);
    for (std::size_t k = 0; k < d; ++k) {
      auto ck = c.subspan(k * w, w);
      if (!R.is_zero(ck)) R.mul_add(xs, ck, std::span<Int>(out).subspan(k * w, w));
    }
  }
  return out;
}

}  // namespace

Submodule center(const AlgebraPtr& a) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < a->rank(); ++i) gens.push_back(a->basis(i));
  return centralizer_of(a, gens);
}

bool is_central(const AlgebraPtr& a) { return center(a) == scalar_span(a); }

Submodule commutant(const AlgebraPtr& a, const std::vector<Vec>& gens) { return centralizer_of(a, gens); }

bool is_subalgebra(const Submodule& s) {
  if (!s.contains(s.alg->one())) return false;
  const Rows g = s.generators();
  for (const auto& x : g)
    for (const auto& y : g)
      if (!s.contains(s.alg->mul(x, y))) return false;
  return true;
}

Matrix env_map(const AlgebraPtr& a) {
  const std::size_t d = a->rank(), w = a->width();
  Matrix m = Matrix::zeros(a->base(), d * d, d * d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t c = 0; c < d; ++c) {
      auto ac = a->basis_product(x, c);
      for (std::size_t b = 0; b < d; ++b) {
        const Vec acb = mul_basis_right(*a, ac, b);
        for (std::size_t k = 0; k < d; ++k) {
          auto src = std::span<const Int>(acb).subspan(k * w, w);
          std::copy(src.begin(), src.end(), m.at(c * d + k, x * d + b).begin());
        }
      }
    }
  return m;
}

bool env_map_bijective(const AlgebraPtr& a) { return is_bijective_additive(flatten(env_map(a))); }

Json element_json(const AlgebraPtr& a, std::span<const Int> coords) {
  return Json{{"algebra", a->label()}, {"coords", Vec(coords.begin(), coords.end())}};
}

CheckReport is_azumaya(const AlgebraPtr& a) {
  CheckReport rep;
  rep.check = "is_azumaya";
  rep.subject = a->label();
  rep.status = Status::Pass;
  Json per_ideal = Json::array();
  for (const auto& m : maximal_ideals(*a->base())) {
    const auto rf = residue_field(a->base(), m);
    const auto am = base_change(a, rf.projection);
    const auto cen = center(am);
    const auto sc = scalar_span(am);
    const bool central = cen == sc;
    const auto env = flatten(env_map(am));
    const bool env_ok = is_bijective_additive(env);
    per_ideal.push_back({{"ideal", describe(m)}, {"field", rf.field->describe()}, {"central", central}, {"env_bijective", env_ok}});
    if ((central && env_ok) || rep.status != Status::Pass) continue;
    rep.status = Status::Fail;
    if (!central) {
      for (const auto& g : cen.generators())
        if (!sc.contains(g)) {
          rep.witness = {{"ideal", describe(m)}, {"kind", "non-scalar central element"}, {"element", element_json(am, g)}};
          break;
        }
    } else {
      const Rows ker = kernel(env);
      rep.witness = {{"ideal", describe(m)}, {"kind", "env-map kernel vector"}, {"tensor_coords", ker.empty() ? Vec{} : ker.front()}};
    }
  }
  rep.details["maximal_ideals"] = per_ideal;
  return rep;
}

Int rank_at(const AlgebraPtr& a, const MaxIdeal& m) {
  const auto rf = residue_field(a->base(), m);
  const auto am = base_change(a, rf.projection);
  // Over a residue field every flattened modulus is the characteristic, so
  // each Howell row of the full span contributes one factor p.
  const auto all = whole(am);
  const std::size_t rows = all.span.form().rows.size();
  if (rows % rf.field->width() != 0) throw Error(ErrorCode::VerificationFailed, "residue algebra order is not a power of |k|");
  return static_cast<Int>(rows / rf.field->width());
}

std::pair<bool, Int> has_constant_rank(const AlgebraPtr& a) {
  std::optional<Int> r;
  bool constant = true;
  for (const auto& m : maximal_ideals(*a->base())) {
    const Int rm = rank_at(a, m);
    if (r && *r != rm) constant = false;
    if (!r) r = rm;
  }
  return {constant, r.value_or(0)};
}

CheckReport square_rank_check(const AlgebraPtr& a, bool azumaya_passed) {
  CheckReport rep;
  rep.check = "square_rank";
  rep.subject = a->label();
  rep.precondition("is_azumaya", azumaya_passed);
  const auto [constant, r] = has_constant_rank(a);
  Int n = 0;
  while ((n + 1) * (n + 1) <= r) ++n;
  rep.details = {{"constant_rank", constant}, {"rank", r}, {"n", n}};
  if (constant && n * n == r) {
    rep.status = Status::Pass;
  } else {
    rep.status = azumaya_passed ? Status::ContradictsTheorem : Status::Fail;
    rep.witness = {{"rank", r}, {"constant", constant}};
  }
  return rep;
}

Submodule expand_ideal(const AlgebraPtr& a, const RingIdeal& ideal) {
  if (!(*ideal.ring == *a->base())) throw Error(ErrorCode::RingMismatch, "ideal is not an ideal of the base ring");
  Rows gens;
  const std::size_t w = a->width();
  for (const auto& g : ideal.additive_generators())
    for (std::size_t i = 0; i < a->rank(); ++i) {
      Vec v = a->zero();
      std::copy(g.begin(), g.end(), v.begin() + static_cast<std::ptrdiff_t>(i * w));
      gens.push_back(std::move(v));
    }
  return Submodule::of(a, gens);
}

QuotientAlgebra quotient_algebra(const AlgebraPtr& a, const RingIdeal& ideal) {
  auto q = quotient_ring(ideal);
  return {base_change(a, q.projection), q.projection};
}

CheckReport ideal_intersection_check(const AlgebraPtr& a, const std::vector<RingIdeal>& ideals) {
  if (ideals.empty()) throw Error(ErrorCode::InvalidIdeal, "need at least one ideal");
  CheckReport rep;
  rep.check = "ideal_intersection";
  rep.subject = a->label();
  Span lhs = expand_ideal(a, ideals.front()).span;
  RingIdeal meet = ideals.front();
  Json names = Json::array();
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    names.push_back(describe(ideals[i]));
    if (i == 0) continue;
    lhs = lhs.intersect(expand_ideal(a, ideals[i]).span);
    meet = meet.intersect(ideals[i]);
  }
  const Span rhs = expand_ideal(a, meet).span;
  rep.details = {{"ideals", names}, {"intersection_ideal", describe(meet)}};
  if (auto o = lhs.order()) rep.details["lhs_order"] = *o;
  if (auto o = rhs.order()) rep.details["rhs_order"] = *o;
  if (lhs == rhs) {
    rep.status = Status::Pass;
    return rep;
  }
  rep.status = Status::Fail;
  for (const auto& g : lhs.generators())
    if (!rhs.contains(g)) {
      rep.witness = {{"side", "intersection of expansions"}, {"element", element_json(a, g)}};
      return rep;
    }
  for (const auto& g : rhs.generators())
    if (!lhs.contains(g)) {
      rep.witness = {{"side", "expansion of intersection"}, {"element", element_json(a, g)}};
      return rep;
    }
  return rep;
}

std::optional<Int> nilpotency_index(const AlgElem& x, Int cap) {
  AlgElem p = x;
  for (Int e = 1; e <= cap; ++e) {
    if (p.is_zero()) return e;
    p = p * x;
  }
  return std::nullopt;
}

AlgElem jordan_cell(const RingPtr& r, std::size_t n) {
  auto a = matrix_algebra(r, n);
  AlgElem x = AlgElem::zero(a);
  const Vec one = r->one();
  for (std::size_t i = 0; i + 1 < n; ++i)
    std::copy(one.begin(), one.end(), x.coords.begin() + static_cast<std::ptrdiff_t>((i * n + i + 1) * r->width()));
  return x;
}

}  // namespace azumaya
