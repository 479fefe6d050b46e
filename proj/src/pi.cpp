#include "azumaya/pi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "azumaya/kernels.hpp"

namespace azumaya {

MultilinearIdentity MultilinearIdentity::make(std::size_t arity, std::vector<Word> terms) {
  if (arity == 0) throw Error(ErrorCode::ValidationError, "identity arity must be >= 1");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (terms[t].coef == 0) throw Error(ErrorCode::ValidationError, "term " + std::to_string(t) + " has coefficient 0");
    std::vector<std::size_t> sorted = terms[t].vars;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expect(arity);
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) throw Error(ErrorCode::ValidationError, "term " + std::to_string(t) + " is not multilinear");
  }
  return {arity, std::move(terms), std::nullopt};
}

std::string MultilinearIdentity::name() const {
  if (standard) return "s_" + std::to_string(*standard);
  return "identity/" + std::to_string(arity) + "[" + std::to_string(terms.size()) + " terms]";
}

MultilinearIdentity standard_identity(std::size_t k) {
  if (k == 0 || k > kMaxStandardDegree)
    throw Error(ErrorCode::ValidationError, "standard identity degree must be in 1.." + std::to_string(kMaxStandardDegree));
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Word> terms;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    terms.push_back({inversions % 2 == 0 ? 1 : -1, perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto id = MultilinearIdentity::make(k, std::move(terms));
  id.standard = k;
  return id;
}

Vec evaluate(const MultilinearIdentity& id, const AlgebraPtr& a, const std::vector<Vec>& xs) {
  if (xs.size() != id.arity)
    throw Error(ErrorCode::ArityMismatch, id.name() + " takes " + std::to_string(id.arity) + " arguments, got " + std::to_string(xs.size()));
  Vec sum = a->zero();
  for (const auto& t : id.terms) {
    Vec prod = xs[t.vars[0]];
    for (std::size_t i = 1; i < t.vars.size(); ++i) prod = a->mul(prod, xs[t.vars[i]]);
    sum = a->add(sum, a->scale_int(t.coef, prod));
  }
  return sum;
}

AlgElem evaluate(const MultilinearIdentity& id, const std::vector<AlgElem>& xs) {
  if (xs.size() != id.arity)
    throw Error(ErrorCode::ArityMismatch, id.name() + " takes " + std::to_string(id.arity) + " arguments, got " + std::to_string(xs.size()));
  std::vector<Vec> coords;
  for (const auto& x : xs) {
    if (!same_algebra(x.alg, xs.front().alg)) throw Error(ErrorCode::AlgebraMismatch, "arguments live in different algebras");
    coords.push_back(x.coords);
  }
  return {xs.front().alg, evaluate(id, xs.front().alg, coords)};
}

Vec evaluate_standard(const AlgebraPtr& a, const std::vector<Vec>& xs) {
  const std::size_t k = xs.size();
  if (k == 0 || k > kMaxStandardDegree) throw Error(ErrorCode::ArityMismatch, "standard identity degree out of range");
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<Vec> s(full + 1);
  s[0] = a->one();
  Vec tmp(a->dim());
  for (std::size_t mask = 1; mask <= full; ++mask) {
    Vec acc = a->zero();
    std::size_t below = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      a->mul(xs[i], s[mask & ~(std::size_t{1} << i)], tmp);
      acc = below % 2 == 0 ? a->add(acc, tmp) : a->sub(acc, tmp);
      ++below;
    }
    s[mask] = std::move(acc);
  }
  return s[full];
}

namespace {

Vec eval_fast(const MultilinearIdentity& id, const AlgebraPtr& a, const std::vector<Vec>& xs) {
  return id.standard ? evaluate_standard(a, xs) : evaluate(id, a, xs);
}

std::vector<Vec> random_tuple(const AlgebraPtr& a, std::size_t k, std::uint64_t seed, std::uint64_t idx) {
  std::mt19937_64 rng(kernels::derive_seed(seed, idx));
  const Vec m = a->flat_moduli();
  std::vector<Vec> xs(k, Vec(m.size()));
  for (auto& x : xs)
    for (std::size_t i = 0; i < m.size(); ++i) x[i] = static_cast<Int>(rng() % static_cast<std::uint64_t>(m[i]));
  return xs;
}

Json tuple_json(const AlgebraPtr& a, const std::vector<Vec>& xs) {
  Json t = Json::array();
  for (const auto& x : xs) t.push_back(element_json(a, x));
  return t;
}

}  // namespace

CheckReport al_vanishing_check(const AlgebraPtr& a, std::size_t n, const AlMode& mode) {
  if (n == 0) throw Error(ErrorCode::ValidationError, "n must be >= 1");
  const std::size_t k = 2 * n;
  if (k > kMaxStandardDegree) throw Error(ErrorCode::ValidationError, "s_" + std::to_string(k) + " exceeds the degree cap");
  CheckReport rep;
  rep.check = "al_vanishing";
  rep.subject = a->label() + ", s_" + std::to_string(k);
  const auto facts = algebra_facts(a);
  rep.precondition("azumaya", facts.azumaya);
  rep.precondition("rank_n_squared", facts.constant_rank && facts.rank == static_cast<Int>(n * n));

  std::uint64_t count = mode.count;
  Int order = 0;
  if (mode.exhaustive) {
    const auto o = a->order();
    double tuples = o ? std::pow(static_cast<double>(*o), static_cast<double>(k)) : 1e300;
    if (tuples > static_cast<double>(mode.max_tuples))
      throw Error(ErrorCode::BudgetExceeded, rep.subject + ": " + std::to_string(tuples) + " tuples exceed the budget of " +
                                                 std::to_string(mode.max_tuples) + "; use sampling");
    order = *o;
    count = static_cast<std::uint64_t>(tuples + 0.5);
  } else {
    rep.seed = mode.seed;
    rep.count = mode.count;
  }
  auto tuple = [&](std::uint64_t idx) {
    if (!mode.exhaustive) return random_tuple(a, k, mode.seed, idx);
    std::vector<Vec> xs;
    for (std::size_t i = 0; i < k; ++i) {
      xs.push_back(a->element_at(static_cast<Int>(idx % static_cast<std::uint64_t>(order))));
      idx /= static_cast<std::uint64_t>(order);
    }
    return xs;
  };
  const auto hit = kernels::first_match(count, [&](std::uint64_t idx) { return !a->is_zero(evaluate_standard(a, tuple(idx))); });
  rep.details = {{"mode", mode.exhaustive ? "exhaustive" : "samples"}, {"tuples", count}, {"degree", k}};
  if (!hit) {
    rep.status = Status::Pass;
    return rep;
  }
  const auto xs = tuple(*hit);
  rep.status = rep.all_preconditions_held() ? Status::ContradictsTheorem : Status::Fail;
  rep.witness = {{"tuple", tuple_json(a, xs)}, {"value", element_json(a, evaluate_standard(a, xs))}};
  return rep;
}

Witness nonvanishing_witness(const AlgebraPtr& a, std::size_t k, std::uint64_t budget, std::uint64_t seed) {
  Witness out;
  auto& rep = out.report;
  rep.check = "nonvanishing_witness";
  rep.subject = a->label() + ", s_" + std::to_string(k);
  const std::size_t d = a->dim();
  double basis_tuples = std::pow(static_cast<double>(d), static_cast<double>(k));
  const std::uint64_t first = static_cast<std::uint64_t>(std::min(basis_tuples, static_cast<double>(budget)));
  // Lexicographic in (x_1, ..., x_k).
  auto basis_tuple = [&](std::uint64_t idx) {
    std::vector<Vec> xs(k);
    for (std::size_t i = k; i-- > 0;) {
      xs[i] = a->flat_generator(idx % d);
      idx /= d;
    }
    return xs;
  };
  auto nonzero = [&](const std::vector<Vec>& xs) { return !a->is_zero(evaluate_standard(a, xs)); };
  std::vector<Vec> found;
  if (auto hit = kernels::first_match(first, [&](std::uint64_t i) { return nonzero(basis_tuple(i)); })) {
    found = basis_tuple(*hit);
    rep.details = {{"phase", "basis"}, {"index", *hit}};
  } else if (budget > first) {
    rep.seed = seed;
    rep.count = budget - first;
    if (auto r = kernels::first_match(budget - first, [&](std::uint64_t i) { return nonzero(random_tuple(a, k, seed, i)); })) {
      found = random_tuple(a, k, seed, *r);
      rep.details = {{"phase", "random"}, {"index", *r}};
    }
  }
  if (found.empty()) {
    rep.status = Status::NotFound;
    rep.details = {{"searched", budget}};
    return out;
  }
  rep.status = Status::Pass;
  rep.details["tuple"] = tuple_json(a, found);
  rep.details["value"] = element_json(a, evaluate_standard(a, found));
  out.tuple = std::move(found);
  return out;
}

CheckReport identity_transfer_check(const AlgebraHom& f, const MultilinearIdentity& id, std::uint64_t trials,
                                    std::uint64_t seed) {
  CheckReport rep;
  rep.check = "identity_transfer";
  rep.subject = f.label + ", " + id.name();
  rep.seed = seed;
  rep.count = trials;
  rep.precondition("hom_verified", f.verified());
  if (!f.verified()) {
    rep.status = Status::PreconditionUnmet;
    return rep;
  }
  auto mismatch = [&](std::uint64_t idx) {
    const auto xs = random_tuple(f.source, id.arity, seed, idx);
    std::vector<Vec> ys;
    for (const auto& x : xs) ys.push_back(f.apply(x));
    return f.apply(eval_fast(id, f.source, xs)) != eval_fast(id, f.target, ys);
  };
  rep.details = {{"trials", trials}};
  const auto hit = kernels::first_match(trials, mismatch);
  if (!hit) {
    rep.status = Status::Pass;
    return rep;
  }
  const auto xs = random_tuple(f.source, id.arity, seed, *hit);
  rep.status = Status::Fail;
  rep.witness = {{"tuple", tuple_json(f.source, xs)}};
  return rep;
}

}  // namespace azumaya
