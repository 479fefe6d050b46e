#include "azumaya/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "azumaya/kernels.hpp"

namespace azumaya {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

RingPtr zn(Int n) { return FiniteCommRing::zmod(n); }

class Interner {
 public:
  AlgebraPtr operator()(const AlgebraPtr& a) {
    auto [it, fresh] = by_label_.emplace(a->label(), a);
    if (!fresh && !same_algebra(it->second, a)) throw std::logic_error("two different algebras labelled " + a->label());
    if (fresh) order_.push_back(a);
    return it->second;
  }
  const std::vector<AlgebraPtr>& all() const { return order_; }

 private:
  std::map<std::string, AlgebraPtr> by_label_;
  std::vector<AlgebraPtr> order_;
};

Matrix random_invertible(const RingPtr& r, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix u = Matrix::zeros(r, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Vec e = r->element_at(static_cast<Int>(rng() % static_cast<std::uint64_t>(r->order())));
        std::copy(e.begin(), e.end(), u.at(i, j).begin());
      }
    if (is_invertible(u)) return u;
  }
}

// Runs body(i) for i in [0, n) in parallel; results keep index order.
std::vector<CheckReport> sweep(std::size_t n, const std::function<CheckReport(std::size_t)>& body) {
  std::vector<CheckReport> out(n);
  std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    const auto t0 = Clock::now();
    try {
      out[i] = body(i);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
    out[i].timing_ms = ms_since(t0);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!errors[i].empty()) throw std::runtime_error(errors[i]);
  return out;
}

CheckReport timed(const std::function<CheckReport()>& body) {
  const auto t0 = Clock::now();
  CheckReport r = body();
  r.timing_ms = ms_since(t0);
  return r;
}

CheckReport expect_fail(CheckReport r) {
  r.details["expected"] = "fail";
  if (r.status == Status::Fail) {
    r.status = Status::Pass;
    r.details["observed_witness"] = r.witness;
    r.witness = nullptr;
  } else if (r.ok()) {
    r.details["observed_status"] = to_string(r.status);
    r.status = Status::Fail;
    r.witness = {{"unexpected", "pass"}};
  }
  return r;
}

CheckReport env_report(const AlgebraPtr& a) {
  CheckReport r;
  r.check = "env_map";
  r.subject = a->label();
  const bool bij = env_map_bijective(a);
  r.details = {{"bijective", bij}};
  if (!bij) {
    const Rows ker = kernel(env_map(a));
    r.status = Status::Fail;
    r.witness = {{"kind", "non-bijective env map"}, {"kernel_vector", ker.empty() ? Vec{} : ker.front()}};
  }
  return r;
}

CheckReport jordan_cell_report(Int p, std::size_t n) {
  CheckReport rep;
  rep.check = "jordan_cell";
  const auto r = zn(p);
  rep.subject = "J_" + std::to_string(n) + "(F_" + std::to_string(p) + ")";
  const AlgElem j = jordan_cell(r, n);
  const auto idx = nilpotency_index(j, static_cast<Int>(n) + 1);
  rep.details = {{"n", n}, {"index", idx ? Json(*idx) : Json(nullptr)}};
  if (!idx || *idx != static_cast<Int>(n)) {
    rep.status = Status::Fail;
    rep.witness = {{"element", element_json(j.alg, j.coords)}, {"index", rep.details["index"]}};
  }
  return rep;
}

std::vector<AlgebraPtr> azumaya_grid() {
  std::vector<AlgebraPtr> out;
  for (std::size_t n : {1, 2, 3})
    for (Int m : {2, 3, 4, 6, 8, 9, 12}) out.push_back(matrix_algebra(zn(m), n));
  for (Int p : {2, 3, 5})
    for (Int a = 0; a < p; ++a)
      for (Int b = 0; b < p; ++b) out.push_back(weyl_quotient(p, a, b));
  return out;
}

// --- suites ------------------------------------------------------------------

struct SuiteContext {
  std::optional<std::uint64_t> seed;
  Limits limits;
  std::function<const Corpus&()> corpus;
  std::uint64_t sub_seed(std::uint64_t k) const { return kernels::derive_seed(*seed, k); }
};

using Reports = std::vector<CheckReport>;

Reports azumaya_def21(const SuiteContext&) {
  const auto grid = azumaya_grid();
  Reports out = sweep(grid.size() * 2, [&](std::size_t i) {
    const auto& a = grid[i / 2];
    if (i % 2 == 0) return is_azumaya(a);
    return square_rank_check(a, is_azumaya(a).status == Status::Pass);
  });
  for (const auto& a : {upper_triangular_2x2(zn(2)), upper_triangular_2x2(zn(4)), diagonal_algebra(zn(2), 2)})
    out.push_back(timed([&] { return expect_fail(is_azumaya(a)); }));
  return out;
}

Reports al_thm26(const SuiteContext& ctx) {
  struct Job {
    AlgebraPtr a;
    std::size_t n;       // for al_vanishing
    std::size_t k;       // for nonvanishing (0: none)
  };
  std::vector<Job> jobs;
  for (std::size_t n : {1, 2, 3})
    for (Int m : {2, 3, 4, 6}) jobs.push_back({matrix_algebra(zn(m), n), n, n >= 2 ? 2 * n - 2 : 0});
  for (Int p : {2, 3})
    for (Int a = 0; a < p; ++a)
      for (Int b = 0; b < p; ++b) jobs.push_back({weyl_quotient(p, a, b), static_cast<std::size_t>(p), static_cast<std::size_t>(2 * p - 2)});
  jobs.push_back({weyl_quotient(2, 1, 1), 2, 0});  // exhaustive alongside the sampled W(2,1,1) entry

  const std::size_t base = jobs.size();
  Reports out = sweep(base * 2, [&](std::size_t i) -> CheckReport {
    const Job& j = jobs[i / 2];
    const std::uint64_t seed = ctx.sub_seed(i);
    if (i % 2 == 0) {
      AlMode m;
      m.max_tuples = ctx.limits.max_tuples;
      m.seed = seed;
      m.count = 2000;
      const bool last = i / 2 == base - 1;
      const bool weyl = j.a->family().weyl.has_value();
      const double logt = 2.0 * static_cast<double>(j.n) * std::log(static_cast<double>(*j.a->order()));
      m.exhaustive = last || (!weyl && logt <= std::log(static_cast<double>(m.max_tuples)) + 1e-9);
      if (m.exhaustive && logt > std::log(static_cast<double>(m.max_tuples)) + 1e-9) {
        m.exhaustive = false;
        auto r = al_vanishing_check(j.a, j.n, m);
        r.details["mode_switch"] = "exhaustive -> samples (max_tuples " + std::to_string(m.max_tuples) + ")";
        return r;
      }
      return al_vanishing_check(j.a, j.n, m);
    }
    if (j.k == 0) {
      CheckReport skip;
      skip.check = "nonvanishing_witness";
      skip.subject = j.a->label() + ", none requested";
      skip.status = Status::NotFound;
      skip.details = {{"skipped", true}};
      return skip;
    }
    auto w = nonvanishing_witness(j.a, j.k, 100000, seed);
    return w.report;
  });
  // Drop the placeholder entries for jobs without a witness request.
  Reports kept;
  for (auto& r : out)
    if (!r.details.contains("skipped")) kept.push_back(std::move(r));

  std::vector<std::pair<AlgebraHom, std::size_t>> transfers;
  transfers.emplace_back(reduction_hom(matrix_algebra(zn(12), 2), RingIdeal::zmod(zn(12), 4)), 4);
  transfers.emplace_back(weyl_splitting(3, 1, 2), 6);
  transfers.emplace_back(diagonal_embed(matrix_algebra(zn(3), 2), 2), 4);
  transfers.emplace_back(crt_split(matrix_algebra(zn(6), 2)).first, 4);
  Reports tr = sweep(transfers.size(), [&](std::size_t i) {
    return identity_transfer_check(transfers[i].first, standard_identity(transfers[i].second), 100, ctx.sub_seed(1000 + i));
  });
  kept.insert(kept.end(), tr.begin(), tr.end());
  return kept;
}

Reports split_cor29(const SuiteContext&) {
  std::vector<std::array<Int, 3>> params;
  for (Int p : {2, 3, 5})
    for (Int a = 0; a < p; ++a)
      for (Int b = 0; b < p; ++b) params.push_back({p, a, b});
  return sweep(params.size(), [&](std::size_t i) {
    const auto [p, a, b] = params[i];
    CheckReport r;
    r.check = "weyl_splitting";
    r.subject = "W(" + std::to_string(p) + "," + std::to_string(a) + "," + std::to_string(b) + ") -> M_" + std::to_string(p) + "(F_" + std::to_string(p) + ")";
    try {
      const auto f = weyl_splitting(p, a, b);
      r.details = {{"verified", f.verified()}, {"bijective", is_bijective_additive(f.additive())}};
    } catch (const Error& e) {
      r.status = Status::Fail;
      r.witness = {{"error", e.what()}};
    }
    return r;
  });
}

Reports matrixcenter_thm31(const SuiteContext& ctx) {
  const Corpus& c = ctx.corpus();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < c.homs.size(); ++i) {
    const auto& f = c.homs[i];
    const auto ds = f.source->family().matrix_degree, dt = f.target->family().matrix_degree;
    if (ds && dt && *ds == *dt && is_reduced(*f.target->base())) idx.push_back(i);
  }
  return sweep(idx.size(), [&](std::size_t k) {
    const auto& f = c.homs[idx[k]];
    auto r = center_preservation_check(f, c.facts_of(f.source), c.facts_of(f.target)).report;
    r.check = "matrix_center_preservation";
    return r;
  });
}

Reports jordan_lem32(const SuiteContext& ctx) {
  Reports out;
  for (Int p : {2, 3, 5})
    for (std::size_t n = 1; n <= 6; ++n) out.push_back(timed([&] { return jordan_cell_report(p, n); }));
  std::vector<std::tuple<Int, std::size_t, std::size_t>> probes;
  for (Int p : {2, 3, 5})
    for (std::size_t np = 1; np <= 3; ++np)
      for (std::size_t n = np + 1; n <= 4; ++n) probes.emplace_back(p, np, n);
  std::uint64_t k = 0;
  for (const auto& [p, np, n] : probes) {
    const auto target = matrix_algebra(zn(p), np);
    const std::uint64_t s = ctx.sub_seed(k++);
    out.push_back(timed([&] { return jordan_obstruction_probe(n, target, s, 10000, ctx.limits.max_elements); }));
  }
  return out;
}

CheckReport corpus_summary(const Corpus& c) {
  CheckReport r;
  r.check = "corpus_summary";
  r.subject = "default corpus";
  std::size_t qualifying = 0, verified = 0;
  std::map<std::string, std::size_t> per_family;
  for (std::size_t i = 0; i < c.homs.size(); ++i) {
    verified += c.homs[i].verified();
    if (c.qualifies(c.homs[i])) {
      ++qualifying;
      ++per_family[c.families[i]];
    }
  }
  r.details = {{"homs", c.homs.size()}, {"verified", verified}, {"qualifying", qualifying}, {"qualifying_by_family", per_family},
               {"algebras", c.facts.size()}};
  if (qualifying < 50 || verified != c.homs.size()) {
    r.status = Status::Fail;
    r.witness = {{"qualifying", qualifying}, {"verified", verified}, {"required_qualifying", 50}};
  }
  return r;
}

Reports center_thm41(const SuiteContext& ctx) {
  const Corpus& c = ctx.corpus();
  Reports out{timed([&] { return corpus_summary(c); })};
  Reports body = sweep(c.homs.size(), [&](std::size_t i) {
    const auto& f = c.homs[i];
    return center_preservation_check(f, c.facts_of(f.source), c.facts_of(f.target)).report;
  });
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Reports rank_thm41(const SuiteContext& ctx) {
  const Corpus& c = ctx.corpus();
  return sweep(c.homs.size(), [&](std::size_t i) {
    const auto& f = c.homs[i];
    return rank_comparison_check(f, c.facts_of(f.source), c.facts_of(f.target));
  });
}

Reports iso_prop51_thm53(const SuiteContext& ctx) {
  const Corpus& c = ctx.corpus();
  Reports out = sweep(c.homs.size(), [&](std::size_t i) {
    const auto& f = c.homs[i];
    auto r = isomorphism_check(f, c.facts_of(f.source), c.facts_of(f.target));
    r.details["family"] = c.families[i];
    return r;
  });
  CheckReport diag;
  diag.check = "diagonal_not_iso";
  diag.subject = "diagonal embeddings in the corpus";
  Json verdicts = Json::array();
  for (std::size_t i = 0; i < c.homs.size(); ++i) {
    if (c.families[i] != "diagonal") continue;
    const Json v = out[i].details.value("verdict", Json(nullptr));
    verdicts.push_back({{"hom", c.homs[i].label}, {"verdict", v}});
    if (v != "not-iso" && diag.status == Status::Pass) {
      diag.status = Status::Fail;
      diag.witness = {{"hom", c.homs[i].label}, {"verdict", v}};
    }
  }
  diag.details = {{"verdicts", verdicts}};
  out.push_back(diag);
  return out;
}

Reports endo_cor52(const SuiteContext& ctx) {
  const Corpus& c = ctx.corpus();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < c.homs.size(); ++i)
    if (c.homs[i].source == c.homs[i].target) idx.push_back(i);
  return sweep(idx.size(), [&](std::size_t k) {
    const auto& f = c.homs[idx[k]];
    auto r = endo_auto_check(f, c.facts_of(f.source));
    if (r.status != Status::PreconditionUnmet) return r;
    // Not base-identity (Frobenius twists): decided by the isomorphism criteria instead.
    Json unmet = Json::array();
    for (const auto& p : r.preconditions)
      if (!p.held) unmet.push_back(p.name);
    auto iso = isomorphism_check(f, c.facts_of(f.source), c.facts_of(f.target));
    iso.details["routed_from"] = "endo_auto";
    iso.details["unmet"] = unmet;
    return iso;
  });
}

Reports tensor_env_rem23(const SuiteContext& ctx) {
  Reports out;
  const auto m2f2 = matrix_algebra(zn(2), 2), m2f3 = matrix_algebra(zn(3), 2), m2z4 = matrix_algebra(zn(4), 2);
  std::vector<AlgebraPtr> env_algs{m2f2, m2z4, weyl_quotient(3, 1, 2), tensor_product(m2f3, opposite(m2f3))};
  Reports env = sweep(env_algs.size(), [&](std::size_t i) { return env_report(env_algs[i]); });
  out.insert(out.end(), env.begin(), env.end());
  out.push_back(timed([&] { return expect_fail(env_report(diagonal_algebra(zn(2), 2))); }));

  std::vector<AlgebraPtr> az{tensor_product(m2f2, m2f2), opposite(matrix_algebra(zn(6), 2)), tensor_product(weyl_quotient(2, 1, 0), m2f2),
                             tensor_product(m2z4, opposite(m2z4))};
  Reports azr = sweep(az.size(), [&](std::size_t i) { return is_azumaya(az[i]); });
  out.insert(out.end(), azr.begin(), azr.end());

  const Corpus& c = ctx.corpus();
  Reports ker = sweep(c.homs.size(), [&](std::size_t i) { return kernel_ideal(c.homs[i]).report; });
  out.insert(out.end(), ker.begin(), ker.end());

  const auto z12 = zn(12);
  out.push_back(timed([&] {
    return ideal_intersection_check(matrix_algebra(z12, 2), {RingIdeal::zmod(z12, 2), RingIdeal::zmod(z12, 3)});
  }));
  // Random ideal families: a Z/n from a fixed list, M_1 or M_2 over it, and 2-3 random divisors.
  const std::vector<Int> moduli{8, 9, 12, 18, 24, 30, 36, 60, 72};
  std::vector<std::pair<AlgebraPtr, std::vector<RingIdeal>>> fams;
  for (std::uint64_t k = 0; k < 20; ++k) {
    std::mt19937_64 rng(ctx.sub_seed(k));
    const Int n = moduli[rng() % moduli.size()];
    const auto r = zn(n);
    Vec divs;
    for (Int d = 1; d <= n; ++d)
      if (n % d == 0) divs.push_back(d);
    std::vector<RingIdeal> ideals;
    const std::size_t cnt = 2 + rng() % 2;
    for (std::size_t t = 0; t < cnt; ++t) ideals.push_back(RingIdeal::zmod(r, divs[rng() % divs.size()]));
    fams.emplace_back(matrix_algebra(r, 1 + rng() % 2), std::move(ideals));
  }
  Reports fr = sweep(fams.size(), [&](std::size_t i) { return ideal_intersection_check(fams[i].first, fams[i].second); });
  out.insert(out.end(), fr.begin(), fr.end());

  // Commutant of M_2 embedded diagonally in M_4(F_5).
  const auto d = diagonal_embed(matrix_algebra(zn(5), 2), 2);
  std::vector<Vec> gens;
  for (std::size_t t = 0; t < d.source->dim(); ++t) gens.push_back(d.apply(d.source->flat_generator(t)));
  out.push_back(timed([&] { return commutant_tau_check(d.target, gens, "diag M_2(Z/5) in M_4(Z/5)"); }));
  return out;
}

struct SuiteDef {
  std::string name;
  bool needs_seed;
  Reports (*run)(const SuiteContext&);
};

const std::vector<SuiteDef>& suite_defs() {
  static const std::vector<SuiteDef> defs{
      {"azumaya-def21", false, azumaya_def21},
      {"al-thm26", true, al_thm26},
      {"split-cor29", false, split_cor29},
      {"matrixcenter-thm31", true, matrixcenter_thm31},
      {"jordan-lem32", true, jordan_lem32},
      {"center-thm41", true, center_thm41},
      {"rank-thm41", true, rank_thm41},
      {"iso-prop51-thm53", true, iso_prop51_thm53},
      {"endo-cor52", true, endo_cor52},
      {"tensor-env-rem23", true, tensor_env_rem23},
  };
  return defs;
}

std::vector<const SuiteDef*> expand(const std::string& name) {
  std::vector<const SuiteDef*> out;
  for (const auto& d : suite_defs()) {
    const bool hit = name == "all" || d.name == name || (name == "theorem41" && (d.name == "center-thm41" || d.name == "rank-thm41"));
    if (hit) out.push_back(&d);
  }
  return out;
}

}  // namespace

bool Corpus::qualifies(const AlgebraHom& f) const {
  const auto& s = facts_of(f.source);
  const auto& t = facts_of(f.target);
  return f.verified() && s.azumaya && t.azumaya && s.constant_rank && t.constant_rank && s.rank == t.rank && t.base_reduced;
}

Corpus build_corpus(std::uint64_t seed) {
  Corpus c;
  Interner intern;
  auto add = [&](AlgebraHom f, const std::string& family) {
    f.source = intern(f.source);
    f.target = intern(f.target);
    c.homs.push_back(std::move(f));
    c.families.push_back(family);
  };
  std::uint64_t draw = 0;
  auto rng_next = [&] { return std::mt19937_64(kernels::derive_seed(seed, draw++)); };

  const auto f2 = zn(2), f3 = zn(3), f5 = zn(5), z4 = zn(4), z6 = zn(6), z12 = zn(12);
  const auto gf4 = FiniteCommRing::galois_default(2, 2);
  const auto f2xf3 = FiniteCommRing::product({f2, f3});
  const std::vector<std::pair<RingPtr, std::size_t>> conj_algs{{f2, 2}, {f3, 2}, {f5, 2},  {z4, 2},    {z6, 2}, {gf4, 2},
                                                               {z12, 2}, {f2xf3, 2}, {f2, 3}, {f3, 3}, {z6, 3}};
  for (const auto& [r, n] : conj_algs) {
    const auto a = intern(matrix_algebra(r, n));
    for (int k = 0; k < 3; ++k) {
      auto rng = rng_next();
      add(conjugation_auto(a, random_invertible(r, n, rng)), "conjugation");
    }
  }
  {
    const auto a = intern(matrix_algebra(gf4, 2));
    add(frobenius_twist(a, Matrix::identity(gf4, 2)), "frobenius");
    auto rng = rng_next();
    add(frobenius_twist(a, random_invertible(gf4, 2, rng)), "frobenius");
  }

  const std::vector<std::tuple<Int, std::size_t, Int>> reductions{{6, 2, 2}, {6, 2, 3}, {6, 3, 2}, {6, 3, 3}, {12, 2, 2},
                                                                   {12, 2, 3}, {12, 2, 6}, {12, 2, 4}, {4, 2, 2}, {9, 2, 3},
                                                                   {8, 2, 2}, {8, 2, 4}};
  for (const auto& [m, n, d] : reductions) {
    const auto r = zn(m);
    add(reduction_hom(intern(matrix_algebra(r, n)), RingIdeal::zmod(r, d)), "reduction");
  }

  const std::vector<std::tuple<Int, std::size_t, std::size_t>> diagonals{{2, 1, 2}, {2, 2, 2}, {2, 2, 3}, {6, 1, 3}, {5, 2, 2}};
  for (const auto& [m, n, k] : diagonals) add(diagonal_embed(intern(matrix_algebra(zn(m), n)), k), "diagonal");

  for (const auto& [m, n] : std::vector<std::pair<Int, std::size_t>>{{6, 2}, {6, 3}, {12, 2}}) {
    auto [fwd, back] = crt_split(intern(matrix_algebra(zn(m), n)));
    add(std::move(fwd), "crt");
    add(std::move(back), "crt");
  }

  for (Int p : {2, 3, 5})
    for (Int a = 0; a < p; ++a)
      for (Int b = 0; b < p; ++b) add(weyl_splitting(p, a, b), "weyl");

  // Depth 2: each base hom followed by up to two homs out of its target, in corpus order.
  const std::size_t base = c.homs.size();
  for (std::size_t i = 0; i < base; ++i) {
    int taken = 0;
    for (std::size_t j = 0; j < base && taken < 2; ++j) {
      if (c.homs[j].source != c.homs[i].target) continue;
      add(compose(c.homs[j], c.homs[i]), "composition");
      ++taken;
    }
  }

  const auto& algs = intern.all();
  std::vector<AlgebraFacts> facts(algs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < algs.size(); ++i) facts[i] = algebra_facts(algs[i]);
  for (std::size_t i = 0; i < algs.size(); ++i) c.facts.emplace(algs[i]->label(), facts[i]);
  return c;
}

const std::vector<std::string>& builtin_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& d : suite_defs()) v.push_back(d.name);
    return v;
  }();
  return names;
}

bool suite_needs_seed(const std::string& name) {
  for (const auto* d : expand(name))
    if (d->needs_seed) return true;
  return false;
}

std::vector<CheckReport> run_suite(const std::string& name, std::optional<std::uint64_t> seed, const Limits& limits,
                                   const std::function<void(const CheckReport&)>& emit) {
  if (name.empty()) throw Error(ErrorCode::ValidationError, "suite: empty suite name");
  const auto defs = expand(name);
  if (defs.empty()) throw Error(ErrorCode::ValidationError, "suite: unknown suite \"" + name + "\"");
  if (suite_needs_seed(name) && !seed) throw Error(ErrorCode::ValidationError, "suite " + name + ": sampled suite needs --seed");

  std::unique_ptr<Corpus> corpus;
  SuiteContext base{seed, limits, [&]() -> const Corpus& {
                      if (!corpus) corpus = std::make_unique<Corpus>(build_corpus(kernels::derive_seed(*seed, 0)));
                      return *corpus;
                    }};
  std::vector<CheckReport> all;
  for (std::size_t k = 0; k < suite_defs().size(); ++k) {
    const auto& d = suite_defs()[k];
    if (std::find(defs.begin(), defs.end(), &d) == defs.end()) continue;
    SuiteContext ctx = base;
    // Each suite draws from its own stream, so running it alone or inside "all" gives the same reports.
    if (seed) ctx.seed = kernels::derive_seed(*seed, k + 1);
    for (auto& r : d.run(ctx)) {
      r.details["suite"] = d.name;
      if (emit) emit(r);
      all.push_back(std::move(r));
    }
  }
  return all;
}

std::vector<CheckReport> default_counterexample_searches(std::uint64_t seed, std::uint64_t budget) {
  std::vector<CheckReport> out;
  const auto z4 = zn(4);
  SearchConfig a;
  a.source = matrix_algebra(zn(2), 2);
  a.target = matrix_algebra(z4, 2);
  a.budget = budget;
  a.seed = kernels::derive_seed(seed, 0);
  out.push_back(timed([&] { return counterexample_search(a); }));

  SearchConfig b;
  b.source = a.target;
  b.target = a.target;
  b.budget = budget;
  b.seed = kernels::derive_seed(seed, 1);
  std::mt19937_64 rng(kernels::derive_seed(seed, 2));
  for (int k = 0; k < 3; ++k) b.seeds.push_back(conjugation_auto(b.source, random_invertible(z4, 2, rng)));
  out.push_back(timed([&] { return counterexample_search(b); }));
  return out;
}

}  // namespace azumaya
