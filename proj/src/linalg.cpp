#include "azumaya/linalg.hpp"

#include <algorithm>
#include <map>

#include "azumaya/kernels.hpp"

namespace azumaya {

namespace {

// Unit w of Z/N with a * w == gcd(a, N).
Int unit_normalizer(Int a, Int n) {
  const Int g = nt::gcd(a, n);
  const Int ng = n / g;
  if (ng == 1) return 1;
  Int w = *nt::inverse_mod(a / g, ng);
  while (nt::gcd(w, n) != 1) w += ng;
  return w % n;
}

void combine_rows(Vec& ri, Vec& rj, std::size_t from, Int s, Int t, Int u, Int v, Int n) {
  for (std::size_t c = from; c < ri.size(); ++c) {
    const Int x = ri[c], y = rj[c];
    ri[c] = nt::mod(s * x + t * y, n);
    rj[c] = nt::mod(u * x + v * y, n);
  }
}

void axpy(Vec& dst, const Vec& src, Int q, Int n, std::size_t from = 0) {
  if (q == 0) return;
  const Int nq = nt::mod(-q, n);
  for (std::size_t c = from; c < dst.size(); ++c)
    if (src[c] != 0) dst[c] = (dst[c] + nq * src[c]) % n;
}

}  // namespace

HowellForm howell_mod(Rows a, std::size_t cols, Int n, bool track) {
  HowellForm out;
  out.modulus = n;
  out.cols = cols;
  const std::size_t m0 = a.size();
  for (auto& row : a) {
    row.resize(cols, 0);
    for (Int& x : row) x = nt::mod(x, n);
  }
  Rows t;
  if (track) {
    t.assign(m0, Vec(m0, 0));
    for (std::size_t i = 0; i < m0; ++i) t[i][i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t k = 0; k < cols && r < a.size(); ++k) {
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][k] == 0) continue;
      if (a[r][k] == 0) {
        std::swap(a[r], a[i]);
        if (track) std::swap(t[r], t[i]);
        continue;
      }
      const Int x = a[r][k], y = a[i][k];
      const auto [g, s, tt] = nt::xgcd(x, y);
      const Int u = -(y / g), v = x / g;
      combine_rows(a[r], a[i], k, s, tt, u, v, n);
      if (track) combine_rows(t[r], t[i], 0, s, tt, u, v, n);
    }
    if (a[r][k] == 0) continue;
    const Int w = unit_normalizer(a[r][k], n);
    if (w != 1) {
      for (std::size_t c = k; c < cols; ++c) a[r][c] = a[r][c] * w % n;
      if (track)
        for (Int& x : t[r]) x = x * w % n;
    }
    const Int piv = a[r][k];
    for (std::size_t j = 0; j < r; ++j) {
      const Int q = a[j][k] / piv;
      if (q == 0) continue;
      axpy(a[j], a[r], q, n, k);
      if (track) axpy(t[j], t[r], q, n);
    }
    const Int ann = n / piv;
    if (ann != n) {
      Vec sat(cols, 0);
      bool nonzero = false;
      for (std::size_t c = k + 1; c < cols; ++c) {
        sat[c] = a[r][c] * ann % n;
        nonzero |= sat[c] != 0;
      }
      if (nonzero) {
        a.push_back(std::move(sat));
        if (track) {
          Vec ts(m0);
          for (std::size_t c = 0; c < m0; ++c) ts[c] = t[r][c] * ann % n;
          t.push_back(std::move(ts));
        }
      }
    }
    out.pivots.push_back(k);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  if (track) {
    t.resize(r);
    out.transform = std::move(t);
  }
  return out;
}

Vec howell_reduce(const HowellForm& h, Vec v) {
  const Int n = h.modulus;
  for (Int& x : v) x = nt::mod(x, n);
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    const std::size_t c = h.pivots[i];
    const Int q = v[c] / h.rows[i][c];
    axpy(v, h.rows[i], q, n, c);
  }
  return v;
}

// ---------------------------------------------------------------------------

bool AdditiveMap::well_defined() const {
  if (matrix.size() != target_moduli.size()) return false;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != source_moduli.size()) return false;
    for (std::size_t j = 0; j < source_moduli.size(); ++j)
      if (nt::mod(nt::mod(matrix[i][j], target_moduli[i]) * source_moduli[j], target_moduli[i]) != 0) return false;
  }
  return true;
}

void require_well_defined(const AdditiveMap& f) {
  if (!f.well_defined()) throw Error(ErrorCode::IllFormedMap, "additive map is not well defined on the source moduli");
}

Vec AdditiveMap::apply(std::span<const Int> x) const {
  Vec y(target_moduli.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Int m = target_moduli[i];
    Int acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) acc = (acc + nt::mod(matrix[i][j], m) * nt::mod(x[j], m)) % m;
    y[i] = acc;
  }
  return y;
}

namespace {

Int lcm_of(const Vec& a, Int start = 1) {
  Int l = start;
  for (Int m : a) l = nt::lcm(l, m);
  return l;
}

// Rows [ (N/M_i) H[i][j] ]_i ++ e_j, one per source coordinate j.
Rows augmented_columns(const AdditiveMap& f, Int n) {
  const std::size_t m = f.target_moduli.size();
  const std::size_t s = f.source_moduli.size();
  Rows rows(s, Vec(m + s, 0));
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const Int mi = f.target_moduli[i];
      rows[j][i] = nt::mod(f.matrix[i][j], mi) * (n / mi) % n;
    }
    rows[j][m + j] = 1;
  }
  return rows;
}

std::map<Int, Int> order_exponents(const Vec& moduli) {
  std::map<Int, Int> e;
  for (Int m : moduli)
    for (auto [p, k] : nt::factorize(m)) e[p] += k;
  return e;
}

}  // namespace

Rows kernel(const AdditiveMap& f) {
  require_well_defined(f);
  const Int n = lcm_of(f.target_moduli, lcm_of(f.source_moduli));
  const std::size_t m = f.target_moduli.size();
  const auto h = howell_mod(augmented_columns(f, n), m + f.source_moduli.size(), n);
  Rows out;
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    if (h.pivots[i] < m) continue;
    Vec v(h.rows[i].begin() + static_cast<std::ptrdiff_t>(m), h.rows[i].end());
    bool nonzero = false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = nt::mod(v[j], f.source_moduli[j]);
      nonzero |= v[j] != 0;
    }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

Rows image_generators(const AdditiveMap& f) {
  Rows out;
  for (std::size_t j = 0; j < f.source_moduli.size(); ++j) {
    Vec col(f.target_moduli.size());
    for (std::size_t i = 0; i < col.size(); ++i) col[i] = nt::mod(f.matrix[i][j], f.target_moduli[i]);
    out.push_back(std::move(col));
  }
  return out;
}

bool is_bijective_additive(const AdditiveMap& f) {
  require_well_defined(f);
  if (order_exponents(f.source_moduli) != order_exponents(f.target_moduli)) return false;
  if (f.source_moduli.empty()) return true;
  const Int p = f.source_moduli.front();
  const bool prime_field = nt::is_prime(p) &&
                           std::all_of(f.source_moduli.begin(), f.source_moduli.end(), [p](Int m) { return m == p; }) &&
                           std::all_of(f.target_moduli.begin(), f.target_moduli.end(), [p](Int m) { return m == p; });
  if (prime_field) return kernels::rank_mod_prime(f.matrix, p) == f.source_moduli.size();
  return kernel(f).empty();
}

Solution solve(const AdditiveMap& f, const Vec& b) {
  require_well_defined(f);
  if (b.size() != f.target_moduli.size()) throw Error(ErrorCode::DimensionMismatch, "right-hand side has wrong length");
  const Int n = lcm_of(f.target_moduli, lcm_of(f.source_moduli));
  const std::size_t m = f.target_moduli.size();
  const std::size_t s = f.source_moduli.size();
  const auto h = howell_mod(augmented_columns(f, n), m + s, n);
  Vec v(m + s, 0);
  for (std::size_t i = 0; i < m; ++i) v[i] = nt::mod(b[i], f.target_moduli[i]) * (n / f.target_moduli[i]) % n;
  for (std::size_t i = 0; i < h.rows.size() && h.pivots[i] < m; ++i) {
    const std::size_t c = h.pivots[i];
    const Int q = v[c] / h.rows[i][c];
    axpy(v, h.rows[i], q, n, c);
  }
  for (std::size_t i = 0; i < m; ++i)
    if (v[i] != 0) throw Error(ErrorCode::NoSolution, "right-hand side is not in the image");
  Solution sol;
  sol.particular.resize(s);
  for (std::size_t j = 0; j < s; ++j) sol.particular[j] = nt::mod(-v[m + j], f.source_moduli[j]);
  if (f.apply(sol.particular) != [&] {
        Vec bb(m);
        for (std::size_t i = 0; i < m; ++i) bb[i] = nt::mod(b[i], f.target_moduli[i]);
        return bb;
      }())
    throw Error(ErrorCode::VerificationFailed, "solver produced a non-solution");
  sol.kernel = kernel(f);
  return sol;
}

// ---------------------------------------------------------------------------

Span::Span(Vec moduli, const Rows& generators) : moduli_(std::move(moduli)) {
  lcm_ = lcm_of(moduli_);
  Rows emb;
  emb.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.size() != moduli_.size()) throw Error(ErrorCode::DimensionMismatch, "generator length does not match ambient moduli");
    Vec e(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) e[j] = nt::mod(g[j], moduli_[j]) * (lcm_ / moduli_[j]);
    emb.push_back(std::move(e));
  }
  form_ = howell_mod(std::move(emb), moduli_.size(), lcm_);
}

Rows Span::generators() const {
  Rows out;
  for (const auto& r : form_.rows) {
    Vec v(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) v[j] = r[j] / (lcm_ / moduli_[j]);
    out.push_back(std::move(v));
  }
  return out;
}

bool Span::contains(std::span<const Int> x) const {
  if (x.size() != moduli_.size()) return false;
  Vec e(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) e[j] = nt::mod(x[j], moduli_[j]) * (lcm_ / moduli_[j]);
  Vec r = howell_reduce(form_, std::move(e));
  return std::all_of(r.begin(), r.end(), [](Int c) { return c == 0; });
}

Span Span::intersect(const Span& other) const {
  if (other.moduli_ != moduli_) throw Error(ErrorCode::DimensionMismatch, "spans live in different groups");
  const std::size_t n = moduli_.size();
  Rows rows;
  for (const auto& u : form_.rows) {
    Vec r(2 * n);
    std::copy(u.begin(), u.end(), r.begin());
    std::copy(u.begin(), u.end(), r.begin() + static_cast<std::ptrdiff_t>(n));
    rows.push_back(std::move(r));
  }
  for (const auto& v : other.form_.rows) {
    Vec r(2 * n, 0);
    std::copy(v.begin(), v.end(), r.begin());
    rows.push_back(std::move(r));
  }
  const auto h = howell_mod(std::move(rows), 2 * n, lcm_);
  Rows gens;
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    if (h.pivots[i] < n) continue;
    Vec w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = h.rows[i][n + j] / (lcm_ / moduli_[j]);
    gens.push_back(std::move(w));
  }
  return Span(moduli_, gens);
}

Span Span::sum(const Span& other) const {
  if (other.moduli_ != moduli_) throw Error(ErrorCode::DimensionMismatch, "spans live in different groups");
  Rows g = generators();
  for (auto& v : other.generators()) g.push_back(std::move(v));
  return Span(moduli_, g);
}

std::optional<Int> Span::order() const {
  Int o = 1;
  for (std::size_t i = 0; i < form_.rows.size(); ++i) {
    const Int f = lcm_ / form_.rows[i][form_.pivots[i]];
    if (o > (Int{1} << 62) / f) return std::nullopt;
    o *= f;
  }
  return o;
}

Rows Span::enumerate(Int limit) const {
  auto ord = order();
  if (!ord || *ord > limit) throw Error(ErrorCode::BudgetExceeded, "span too large to enumerate");
  const std::size_t n = moduli_.size();
  Vec radix;
  for (std::size_t i = 0; i < form_.rows.size(); ++i) radix.push_back(lcm_ / form_.rows[i][form_.pivots[i]]);
  Rows out;
  out.reserve(static_cast<std::size_t>(*ord));
  for (Int idx = 0; idx < *ord; ++idx) {
    Vec e(n, 0);
    Int x = idx;
    for (std::size_t i = 0; i < radix.size(); ++i) {
      const Int c = x % radix[i];
      x /= radix[i];
      if (c)
        for (std::size_t j = 0; j < n; ++j) e[j] = (e[j] + c * form_.rows[i][j]) % lcm_;
    }
    for (std::size_t j = 0; j < n; ++j) e[j] /= (lcm_ / moduli_[j]);
    out.push_back(std::move(e));
  }
  return out;
}

bool Span::operator==(const Span& o) const { return moduli_ == o.moduli_ && form_.rows == o.form_.rows; }

// ---------------------------------------------------------------------------

Matrix Matrix::zeros(RingPtr r, std::size_t rows, std::size_t cols) {
  Matrix m{r, rows, cols, Vec(rows * cols * r->width(), 0)};
  return m;
}

Matrix Matrix::identity(RingPtr r, std::size_t n) {
  Matrix m = zeros(r, n, n);
  const Vec one = r->one();
  for (std::size_t i = 0; i < n; ++i) std::copy(one.begin(), one.end(), m.at(i, i).begin());
  return m;
}

Matrix Matrix::from_ints(RingPtr r, const std::vector<Vec>& rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr ? rows.front().size() : 0;
  Matrix m = zeros(r, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows[i].size() != nc) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) {
      Vec v = r->from_int(rows[i][j]);
      std::copy(v.begin(), v.end(), m.at(i, j).begin());
    }
  }
  return m;
}

std::span<Int> Matrix::at(std::size_t i, std::size_t j) {
  const std::size_t w = ring->width();
  return std::span<Int>(entries).subspan((i * cols + j) * w, w);
}

std::span<const Int> Matrix::at(std::size_t i, std::size_t j) const {
  const std::size_t w = ring->width();
  return std::span<const Int>(entries).subspan((i * cols + j) * w, w);
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (!(*ring == *o.ring)) throw Error(ErrorCode::RingMismatch, "matrices over different rings");
  if (cols != o.rows) throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ");
  Matrix out = zeros(ring, rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      auto a = at(i, k);
      if (ring->is_zero(a)) continue;
      for (std::size_t j = 0; j < o.cols; ++j) ring->mul_add(a, o.at(k, j), out.at(i, j));
    }
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return *ring == *o.ring && rows == o.rows && cols == o.cols && entries == o.entries;
}

AdditiveMap flatten(const Matrix& m) {
  const std::size_t w = m.ring->width();
  AdditiveMap f;
  f.matrix.assign(m.rows * w, Vec(m.cols * w, 0));
  for (std::size_t k = 0; k < m.cols; ++k)
    for (std::size_t j = 0; j < w; ++j) f.source_moduli.push_back(m.ring->moduli()[j]);
  for (std::size_t k = 0; k < m.rows; ++k)
    for (std::size_t j = 0; j < w; ++j) f.target_moduli.push_back(m.ring->moduli()[j]);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t l = 0; l < w; ++l) {
      const Vec bl = m.ring->basis(l);
      for (std::size_t i = 0; i < m.rows; ++i) {
        const Vec img = m.ring->mul(m.at(i, j), bl);
        for (std::size_t lp = 0; lp < w; ++lp) f.matrix[i * w + lp][j * w + l] = img[lp];
      }
    }
  return f;
}

namespace {

// Reduced row echelon form over a field ring (ZMod p or GF), tracking the
// transform. Pivots are normalised to 1.
HowellResult field_rref(const Matrix& m) {
  const auto& R = *m.ring;
  Matrix a = m;
  Matrix t = Matrix::identity(m.ring, m.rows);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  auto row_axpy = [&](Matrix& x, std::size_t dst, std::size_t src, std::span<const Int> q) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      Vec prod = R.mul(q, x.at(src, c));
      R.sub(x.at(dst, c), prod, x.at(dst, c));
    }
  };
  auto row_scale = [&](Matrix& x, std::size_t row, std::span<const Int> s) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      Vec v = R.mul(s, x.at(row, c));
      std::copy(v.begin(), v.end(), x.at(row, c).begin());
    }
  };
  auto row_swap = [&](Matrix& x, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < x.cols; ++c) std::swap_ranges(x.at(i, c).begin(), x.at(i, c).end(), x.at(j, c).begin());
  };
  for (std::size_t k = 0; k < a.cols && r < a.rows; ++k) {
    std::size_t piv = r;
    while (piv < a.rows && R.is_zero(a.at(piv, k))) ++piv;
    if (piv == a.rows) continue;
    row_swap(a, piv, r);
    row_swap(t, piv, r);
    const Vec s = *R.inverse(a.at(r, k));
    row_scale(a, r, s);
    row_scale(t, r, s);
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == r || R.is_zero(a.at(i, k))) continue;
      const Vec q(a.at(i, k).begin(), a.at(i, k).end());
      row_axpy(a, i, r, q);
      row_axpy(t, i, r, q);
    }
    pivots.push_back(k);
    ++r;
  }
  HowellResult out{Matrix::zeros(m.ring, r, m.cols), Matrix::zeros(m.ring, r, m.rows), pivots};
  const std::size_t w = R.width();
  std::copy(a.entries.begin(), a.entries.begin() + static_cast<std::ptrdiff_t>(r * m.cols * w), out.h.entries.begin());
  std::copy(t.entries.begin(), t.entries.begin() + static_cast<std::ptrdiff_t>(r * m.rows * w), out.t.entries.begin());
  return out;
}

}  // namespace

bool HowellResult::certify(const Matrix& m) const {
  if (m.rows != t.cols || h.rows != t.rows) return false;
  if (!(t * m == h)) return false;
  const auto& R = *m.ring;
  for (std::size_t i = 0; i < m.rows; ++i) {
    Matrix v = Matrix::zeros(m.ring, 1, m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) std::copy(m.at(i, c).begin(), m.at(i, c).end(), v.at(0, c).begin());
    for (std::size_t r = 0; r < h.rows; ++r) {
      const std::size_t k = pivots[r];
      Vec q;
      if (R.kind() == RingKind::ZMod)
        q = {v.at(0, k)[0] / h.at(r, k)[0]};
      else
        q.assign(v.at(0, k).begin(), v.at(0, k).end());
      for (std::size_t c = 0; c < m.cols; ++c) {
        Vec prod = R.mul(q, h.at(r, c));
        R.sub(v.at(0, c), prod, v.at(0, c));
      }
    }
    if (!R.is_zero(v.entries)) return false;
  }
  return true;
}

HowellResult howell_form(const Matrix& m) {
  switch (m.ring->kind()) {
    case RingKind::ZMod: {
      Rows rows(m.rows, Vec(m.cols));
      for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) rows[i][j] = m.at(i, j)[0];
      auto h = howell_mod(std::move(rows), m.cols, m.ring->n(), true);
      HowellResult out{Matrix::zeros(m.ring, h.rows.size(), m.cols), Matrix::zeros(m.ring, h.rows.size(), m.rows), h.pivots};
      for (std::size_t i = 0; i < h.rows.size(); ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) out.h.at(i, j)[0] = h.rows[i][j];
        for (std::size_t j = 0; j < m.rows; ++j) out.t.at(i, j)[0] = h.transform[i][j];
      }
      return out;
    }
    case RingKind::GaloisField:
      return field_rref(m);
    case RingKind::Product:
      break;
  }
  throw Error(ErrorCode::UnsupportedRing, "row canonical forms are defined for Z/N and fields; decompose products first");
}

Rows kernel(const Matrix& m) { return kernel(flatten(m)); }

Solution solve(const Matrix& m, const Vec& b) { return solve(flatten(m), b); }

bool is_invertible(const Matrix& u) {
  if (u.rows != u.cols) return false;
  return is_bijective_additive(flatten(u));
}

Matrix inverse(const Matrix& u) {
  if (!is_invertible(u)) throw Error(ErrorCode::NotInvertible, "matrix is not invertible");
  const std::size_t n = u.rows;
  const std::size_t w = u.ring->width();
  const auto f = flatten(u);
  Matrix out = Matrix::zeros(u.ring, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec b(n * w, 0);
    const Vec one = u.ring->one();
    std::copy(one.begin(), one.end(), b.begin() + static_cast<std::ptrdiff_t>(j * w));
    const Vec x = solve(f, b).particular;
    for (std::size_t i = 0; i < n; ++i)
      std::copy(x.begin() + static_cast<std::ptrdiff_t>(i * w), x.begin() + static_cast<std::ptrdiff_t>((i + 1) * w), out.at(i, j).begin());
  }
  return out;
}

}  // namespace azumaya
