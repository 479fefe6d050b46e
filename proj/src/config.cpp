#include "azumaya/config.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "azumaya/kernels.hpp"

namespace azumaya {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::ValidationError, (where.empty() ? std::string("/") : where) + ": " + msg);
}

std::string at_key(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at_index(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an object");
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      invalid(at_key(where, k), "unknown field");
  }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  require_object(j, where);
  if (!j.contains(key)) invalid(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) invalid(where, "expected an integer");
  return j.get<Int>();
}

Int get_int(const Json& j, const char* key, const std::string& where) { return as_int(field(j, key, where), at_key(where, key)); }

Int get_int_or(const Json& j, const char* key, Int dflt, const std::string& where) {
  return j.contains(key) ? get_int(j, key, where) : dflt;
}

std::size_t get_size(const Json& j, const char* key, const std::string& where) {
  const Int v = get_int(j, key, where);
  if (v < 0) invalid(at_key(where, key), "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string get_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) invalid(at_key(where, key), "expected a string");
  return v.get<std::string>();
}

Vec int_array(const Json& j, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected an integer array");
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], at_index(where, i)));
  return out;
}

// Library errors raised while building an object become validation errors at that location.
template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::ParseError) throw;
    invalid(where, e.what());
  }
}

Vec reduce_flat(const Vec& moduli, Vec v) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = nt::mod(v[i], moduli[i]);
  return v;
}

Vec ring_entry(const RingPtr& r, const Json& j, const std::string& where) {
  if (j.is_number_integer()) return r->from_int(j.get<Int>());
  Vec c = int_array(j, where);
  if (c.size() != r->width()) invalid(where, "ring element needs " + std::to_string(r->width()) + " coordinates");
  r->reduce(c);
  return c;
}

Matrix matrix_from_json(const RingPtr& r, const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) invalid(where, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix m = Matrix::zeros(r, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string wi = at_index(where, i);
    if (!j[i].is_array() || j[i].size() != n) invalid(wi, "expected a row of length " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) {
      const Vec e = ring_entry(r, j[i][k], at_index(wi, k));
      std::copy(e.begin(), e.end(), m.at(i, k).begin());
    }
  }
  return m;
}

Vec element_from_json(const AlgebraPtr& a, const Json& j, const std::string& where) {
  Vec v = int_array(j, where);
  if (v.size() != a->dim()) invalid(where, "element of " + a->label() + " needs " + std::to_string(a->dim()) + " coordinates");
  return reduce_flat(a->flat_moduli(), std::move(v));
}

CheckReport expect_failure(CheckReport r) {
  r.details["expected"] = "fail";
  if (r.status == Status::Fail) {
    r.status = Status::Pass;
    r.details["observed_witness"] = r.witness;
    r.witness = nullptr;
  } else if (r.status == Status::Pass || r.status == Status::NotFound) {
    r.details["observed_status"] = to_string(r.status);
    r.status = Status::Fail;
    r.witness = {{"unexpected", "pass"}};
  }
  return r;
}

double log_count(const AlgebraPtr& a) {
  double s = 0;
  for (Int m : a->flat_moduli()) s += std::log(static_cast<double>(m));
  return s;
}

class Loader {
 public:
  Loader(const Json& cfg, const Limits& limits, Workspace& ws) : cfg_(cfg), limits_(limits), ws_(ws) {}

  void load() {
    require_object(cfg_, "");
    allow_keys(cfg_, {"seed", "rings", "algebras", "homs", "identities", "checks"}, "");
    if (cfg_.contains("seed")) {
      const Json& s = cfg_.at("seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<Int>() >= 0)) invalid("/seed", "expected a non-negative integer");
      ws_.seed = s.get<std::uint64_t>();
    }
    std::set<std::string> names;
    for (const char* sect : {"rings", "algebras", "homs", "identities"}) {
      if (!cfg_.contains(sect)) continue;
      const std::string w = std::string("/") + sect;
      require_object(cfg_.at(sect), w);
      for (const auto& [k, v] : cfg_.at(sect).items())
        if (!names.insert(k).second) invalid(at_key(w, k), "name \"" + k + "\" is already used");
    }
    for (const char* sect : {"rings", "algebras", "homs", "identities"}) {
      if (!cfg_.contains(sect)) continue;
      for (const auto& [k, v] : cfg_.at(sect).items()) resolve(sect, k);
    }
    for (const auto& [k, f] : ws_.homs) {
      const Json& d = cfg_.at("homs").at(k);
      if (d.is_object() && d.contains("claimed")) {
        const Json& c = d.at("claimed");
        if (c != "verified") invalid("/homs/" + k + "/claimed", "only \"verified\" may be claimed");
        ws_.claimed_verified.push_back(k);
      }
    }
    if (cfg_.contains("checks")) {
      const Json& cs = cfg_.at("checks");
      if (!cs.is_array()) invalid("/checks", "expected an array");
      for (std::size_t i = 0; i < cs.size(); ++i) ws_.checks.push_back(plan(cs[i], at_index("/checks", i)));
    }
  }

 private:
  const Json& cfg_;
  Limits limits_;
  Workspace& ws_;
  std::set<std::string> in_progress_;

  void resolve(const std::string& sect, const std::string& name) {
    const std::string w = "/" + sect + "/" + name;
    if (sect == "rings" && ws_.rings.count(name)) return;
    if (sect == "algebras" && ws_.algebras.count(name)) return;
    if (sect == "homs" && ws_.homs.count(name)) return;
    if (sect == "identities" && ws_.identities.count(name)) return;
    if (!in_progress_.insert(w).second) invalid(w, "circular reference");
    const Json& d = cfg_.at(sect).at(name);
    if (sect == "rings") ws_.rings.emplace(name, ring(d, w));
    if (sect == "algebras") ws_.algebras.emplace(name, algebra(d, w));
    if (sect == "homs") ws_.homs.emplace(name, hom(d, w));
    if (sect == "identities") ws_.identities.emplace(name, identity_from_json(d, w));
    in_progress_.erase(w);
  }

  template <class Map>
  const typename Map::mapped_type& lookup(const char* sect, Map& map, const std::string& name, const std::string& where) {
    if (!cfg_.contains(sect) || !cfg_.at(sect).contains(name)) invalid(where, std::string("unknown ") + sect + " reference \"" + name + "\"");
    resolve(sect, name);
    return map.at(name);
  }

  RingPtr ring_ref(const Json& j, const std::string& where) {
    if (j.is_string()) return lookup("rings", ws_.rings, j.get<std::string>(), where);
    return ring(j, where);
  }

  AlgebraPtr algebra_ref(const Json& j, const std::string& where) {
    if (j.is_string()) return lookup("algebras", ws_.algebras, j.get<std::string>(), where);
    return algebra(j, where);
  }

  AlgebraHom hom_ref(const Json& j, const std::string& where) {
    if (j.is_string()) return lookup("homs", ws_.homs, j.get<std::string>(), where);
    return hom(j, where);
  }

  MultilinearIdentity identity_ref(const Json& j, const std::string& where) {
    if (j.is_string()) return lookup("identities", ws_.identities, j.get<std::string>(), where);
    return identity_from_json(j, where);
  }

  RingPtr ring(const Json& d, const std::string& w) {
    if (d.is_string()) return ring_ref(d, w);
    return ring_from_json(d, w);
  }

  AlgebraPtr algebra(const Json& d, const std::string& w) {
    if (d.is_string()) return algebra_ref(d, w);
    const std::string kind = get_string(d, "kind", w);
    if (kind == "matrix") {
      allow_keys(d, {"kind", "n", "ring"}, w);
      const std::size_t n = get_size(d, "n", w);
      if (n == 0) invalid(at_key(w, "n"), "matrix size must be at least 1");
      const RingPtr r = ring_ref(field(d, "ring", w), at_key(w, "ring"));
      return located(w, [&] { return matrix_algebra(r, n); });
    }
    if (kind == "weyl") {
      allow_keys(d, {"kind", "p", "a", "b"}, w);
      const Int p = get_int(d, "p", w), a = get_int_or(d, "a", 0, w), b = get_int_or(d, "b", 0, w);
      if (!nt::is_prime(p) || p > 7) invalid(at_key(w, "p"), "expected a prime p <= 7");
      return located(w, [&] { return weyl_quotient(p, a, b); });
    }
    if (kind == "tensor") {
      allow_keys(d, {"kind", "left", "right"}, w);
      const auto l = algebra_ref(field(d, "left", w), at_key(w, "left"));
      const auto r = algebra_ref(field(d, "right", w), at_key(w, "right"));
      return located(w, [&] { return tensor_product(l, r); });
    }
    if (kind == "opposite") {
      allow_keys(d, {"kind", "of"}, w);
      return opposite(algebra_ref(field(d, "of", w), at_key(w, "of")));
    }
    if (kind == "upper_triangular") {
      allow_keys(d, {"kind", "ring"}, w);
      return upper_triangular_2x2(ring_ref(field(d, "ring", w), at_key(w, "ring")));
    }
    if (kind == "diagonal") {
      allow_keys(d, {"kind", "ring", "k"}, w);
      const std::size_t k = get_size(d, "k", w);
      if (k == 0) invalid(at_key(w, "k"), "expected k >= 1");
      return diagonal_algebra(ring_ref(field(d, "ring", w), at_key(w, "ring")), k);
    }
    if (kind == "quotient") {
      allow_keys(d, {"kind", "of", "ideal"}, w);
      const auto a = algebra_ref(field(d, "of", w), at_key(w, "of"));
      const auto i = ideal_from_json(a->base(), field(d, "ideal", w), at_key(w, "ideal"));
      return located(w, [&] { return quotient_algebra(a, i).algebra; });
    }
    if (kind == "structure_constants") {
      allow_keys(d, {"kind", "ring", "rank", "table", "unit", "label"}, w);
      const RingPtr r = ring_ref(field(d, "ring", w), at_key(w, "ring"));
      const std::size_t rank = get_size(d, "rank", w);
      if (rank == 0) invalid(at_key(w, "rank"), "rank must be at least 1");
      const std::size_t blk = rank * r->width();
      const Json& t = field(d, "table", w);
      const std::string wt = at_key(w, "table");
      if (!t.is_array() || t.size() != rank) invalid(wt, "expected " + std::to_string(rank) + " rows");
      Vec table;
      table.reserve(rank * rank * blk);
      for (std::size_t i = 0; i < rank; ++i) {
        if (!t[i].is_array() || t[i].size() != rank) invalid(at_index(wt, i), "expected " + std::to_string(rank) + " entries");
        for (std::size_t j = 0; j < rank; ++j) {
          const std::string we = at_index(at_index(wt, i), j);
          const Vec c = int_array(t[i][j], we);
          if (c.size() != blk) invalid(we, "expected " + std::to_string(blk) + " coordinates");
          table.insert(table.end(), c.begin(), c.end());
        }
      }
      Vec unit = int_array(field(d, "unit", w), at_key(w, "unit"));
      if (unit.size() != blk) invalid(at_key(w, "unit"), "expected " + std::to_string(blk) + " coordinates");
      std::string label = d.contains("label") ? get_string(d, "label", w) : "A(rank " + std::to_string(rank) + " over " + r->describe() + ")";
      return located(w, [&] { return Algebra::create(r, rank, std::move(table), std::move(unit), label); });
    }
    invalid(at_key(w, "kind"), "unknown algebra kind \"" + kind + "\"");
  }

  AlgebraHom hom(const Json& d, const std::string& w) {
    if (d.is_string()) return hom_ref(d, w);
    const std::string kind = get_string(d, "kind", w);
    auto source = [&] { return algebra_ref(field(d, "source", w), at_key(w, "source")); };
    if (kind == "conjugation" || kind == "frobenius") {
      allow_keys(d, {"kind", "source", "u", "claimed"}, w);
      const auto a = source();
      if (!a->family().matrix_degree) invalid(at_key(w, "source"), a->label() + " is not a matrix algebra");
      const Matrix u = matrix_from_json(a->base(), field(d, "u", w), at_key(w, "u"));
      if (u.rows != *a->family().matrix_degree) invalid(at_key(w, "u"), "expected a " + std::to_string(*a->family().matrix_degree) + "x" + std::to_string(*a->family().matrix_degree) + " matrix");
      return located(w, [&] { return kind == "conjugation" ? conjugation_auto(a, u) : frobenius_twist(a, u); });
    }
    if (kind == "reduction") {
      allow_keys(d, {"kind", "source", "ideal", "claimed"}, w);
      const auto a = source();
      const auto i = ideal_from_json(a->base(), field(d, "ideal", w), at_key(w, "ideal"));
      return located(w, [&] { return reduction_hom(a, i); });
    }
    if (kind == "diagonal") {
      allow_keys(d, {"kind", "source", "k", "claimed"}, w);
      const auto a = source();
      const std::size_t k = get_size(d, "k", w);
      return located(w, [&] { return diagonal_embed(a, k); });
    }
    if (kind == "crt") {
      allow_keys(d, {"kind", "source", "direction", "claimed"}, w);
      const auto a = source();
      const std::string dir = d.contains("direction") ? get_string(d, "direction", w) : "split";
      if (dir != "split" && dir != "merge") invalid(at_key(w, "direction"), "expected \"split\" or \"merge\"");
      if (a->base()->kind() != RingKind::ZMod) invalid(at_key(w, "source"), "CRT splitting needs a Z/n base");
      return located(w, [&] {
        auto pr = crt_split(a);
        return dir == "split" ? pr.first : pr.second;
      });
    }
    if (kind == "weyl_splitting") {
      allow_keys(d, {"kind", "p", "a", "b", "claimed"}, w);
      const Int p = get_int(d, "p", w);
      if (!nt::is_prime(p) || p > 7) invalid(at_key(w, "p"), "expected a prime p <= 7");
      return located(w, [&] { return weyl_splitting(p, get_int_or(d, "a", 0, w), get_int_or(d, "b", 0, w)); });
    }
    if (kind == "explicit") {
      allow_keys(d, {"kind", "source", "target", "matrix", "label", "claimed"}, w);
      const auto a = source();
      const auto t = algebra_ref(field(d, "target", w), at_key(w, "target"));
      const Json& m = field(d, "matrix", w);
      const std::string wm = at_key(w, "matrix");
      if (!m.is_array() || m.size() != t->dim()) invalid(wm, "expected " + std::to_string(t->dim()) + " rows (target dimension)");
      Rows h;
      for (std::size_t i = 0; i < m.size(); ++i) {
        Vec row = int_array(m[i], at_index(wm, i));
        if (row.size() != a->dim()) invalid(at_index(wm, i), "expected " + std::to_string(a->dim()) + " columns (source dimension)");
        h.push_back(std::move(row));
      }
      std::string label = d.contains("label") ? get_string(d, "label", w) : "explicit " + a->label() + " -> " + t->label();
      return located(w, [&] { return verify_hom(a, t, std::move(h), label); });
    }
    if (kind == "compose") {
      allow_keys(d, {"kind", "outer", "inner", "claimed"}, w);
      const auto g = hom_ref(field(d, "outer", w), at_key(w, "outer"));
      const auto f = hom_ref(field(d, "inner", w), at_key(w, "inner"));
      return located(w, [&] { return compose(g, f); });
    }
    invalid(at_key(w, "kind"), "unknown hom kind \"" + kind + "\"");
  }

  PlannedCheck plan(const Json& d, const std::string& w) {
    PlannedCheck pc;
    pc.kind = get_string(d, "check", w);
    pc.name = d.contains("name") ? get_string(d, "name", w) : pc.kind;
    const bool invert = d.contains("expect") && get_string(d, "expect", w) == "fail";
    if (d.contains("expect") && !invert && get_string(d, "expect", w) != "pass") invalid(at_key(w, "expect"), "expected \"pass\" or \"fail\"");
    auto alg = [&](const char* key = "algebra") { return algebra_ref(field(d, key, w), at_key(w, key)); };
    auto hm = [&] { return hom_ref(field(d, "hom", w), at_key(w, "hom")); };
    const std::string& k = pc.kind;
    std::function<CheckReport(const RunContext&)> run;
    auto keys = [&](std::initializer_list<const char*> extra) {
      std::vector<const char*> all{"check", "name", "expect"};
      all.insert(all.end(), extra.begin(), extra.end());
      for (const auto& [key, v] : d.items())
        if (std::none_of(all.begin(), all.end(), [&](const char* a) { return key == a; })) invalid(at_key(w, key), "unknown field");
    };

    if (k == "is_azumaya") {
      keys({"algebra"});
      run = [a = alg()](const RunContext&) { return is_azumaya(a); };
    } else if (k == "square_rank") {
      keys({"algebra"});
      run = [a = alg()](const RunContext&) { return square_rank_check(a, is_azumaya(a).status == Status::Pass); };
    } else if (k == "center") {
      keys({"algebra"});
      run = [a = alg()](const RunContext&) {
        CheckReport r;
        r.check = "center";
        r.subject = a->label();
        const auto z = center(a);
        Json gens = Json::array();
        for (const auto& g : z.generators()) gens.push_back(g);
        r.details = {{"generators", gens}, {"order", z.span.order() ? Json(*z.span.order()) : Json(nullptr)},
                     {"scalar", z == scalar_span(a)}};
        return r;
      };
    } else if (k == "env_map") {
      keys({"algebra"});
      run = [a = alg()](const RunContext&) {
        CheckReport r;
        r.check = "env_map";
        r.subject = a->label();
        if (env_map_bijective(a)) {
          r.details = {{"bijective", true}};
        } else {
          const Rows ker = kernel(env_map(a));
          r.status = Status::Fail;
          r.details = {{"bijective", false}};
          r.witness = {{"kind", "non-bijective env map"}, {"kernel_vector", ker.empty() ? Vec{} : ker.front()}};
        }
        return r;
      };
    } else if (k == "ideal_intersection") {
      keys({"algebra", "ideals"});
      const auto a = alg();
      const Json& is = field(d, "ideals", w);
      if (!is.is_array() || is.empty()) invalid(at_key(w, "ideals"), "expected a non-empty array of ideals");
      std::vector<RingIdeal> ideals;
      for (std::size_t i = 0; i < is.size(); ++i) ideals.push_back(ideal_from_json(a->base(), is[i], at_index(at_key(w, "ideals"), i)));
      run = [a, ideals](const RunContext&) { return ideal_intersection_check(a, ideals); };
    } else if (k == "verify_hom") {
      keys({"hom"});
      run = [f = hm()](const RunContext&) { return verify_report(f); };
    } else if (k == "kernel_ideal") {
      keys({"hom"});
      run = [f = hm()](const RunContext&) { return kernel_ideal(f).report; };
    } else if (k == "center_preservation") {
      keys({"hom"});
      run = [f = hm()](const RunContext&) { return center_preservation_check(f).report; };
    } else if (k == "rank_comparison") {
      keys({"hom"});
      run = [f = hm()](const RunContext&) { return rank_comparison_check(f); };
    } else if (k == "isomorphism") {
      keys({"hom"});
      run = [f = hm()](const RunContext&) { return isomorphism_check(f); };
    } else if (k == "endo_auto") {
      keys({"hom"});
      run = [f = hm()](const RunContext&) { return endo_auto_check(f); };
    } else if (k == "jordan_cell") {
      keys({"ring", "n"});
      const RingPtr r = ring_ref(field(d, "ring", w), at_key(w, "ring"));
      const std::size_t n = get_size(d, "n", w);
      if (n == 0) invalid(at_key(w, "n"), "expected n >= 1");
      run = [r, n](const RunContext&) { return jordan_cell_report(r, n); };
    } else if (k == "jordan_obstruction") {
      keys({"algebra", "n", "samples"});
      const auto a = alg();
      const std::size_t n = get_size(d, "n", w);
      const auto samples = static_cast<std::uint64_t>(get_int_or(d, "samples", 10000, w));
      pc.sampled = n > 1 && !(a->order() && *a->order() <= limits_.max_elements);
      run = [a, n, samples](const RunContext& ctx) { return jordan_obstruction_probe(n, a, ctx.seed, samples, ctx.limits.max_elements); };
    } else if (k == "commutant_tau") {
      keys({"algebra", "generators", "hom"});
      if (d.contains("hom")) {
        const auto f = hm();
        std::vector<Vec> gens;
        for (std::size_t t = 0; t < f.source->dim(); ++t) gens.push_back(f.apply(f.source->flat_generator(t)));
        run = [f, gens](const RunContext&) { return commutant_tau_check(f.target, gens, "image of " + f.label); };
      } else {
        const auto a = alg();
        const Json& g = field(d, "generators", w);
        if (!g.is_array()) invalid(at_key(w, "generators"), "expected an array of elements");
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(element_from_json(a, g[i], at_index(at_key(w, "generators"), i)));
        run = [a, gens](const RunContext&) { return commutant_tau_check(a, gens, "subalgebra of " + a->label()); };
      }
    } else if (k == "al_vanishing") {
      keys({"algebra", "n", "mode", "count"});
      const auto a = alg();
      const std::size_t n = get_size(d, "n", w);
      if (n == 0 || 2 * n > kMaxStandardDegree) invalid(at_key(w, "n"), "expected 1 <= n <= 4");
      const std::string mode = d.contains("mode") ? get_string(d, "mode", w) : "exhaustive";
      if (mode != "exhaustive" && mode != "samples") invalid(at_key(w, "mode"), "expected \"exhaustive\" or \"samples\"");
      const auto count = static_cast<std::uint64_t>(get_int_or(d, "count", 2000, w));
      const bool too_big = 2.0 * static_cast<double>(n) * log_count(a) > std::log(static_cast<double>(limits_.max_tuples)) + 1e-9;
      pc.sampled = mode == "samples" || too_big;
      run = [a, n, mode, count](const RunContext& ctx) { return al_report(a, n, mode == "exhaustive", count, ctx); };
    } else if (k == "nonvanishing_witness") {
      keys({"algebra", "k", "budget"});
      const auto a = alg();
      const std::size_t kk = get_size(d, "k", w);
      if (kk == 0 || kk > kMaxStandardDegree) invalid(at_key(w, "k"), "expected 1 <= k <= 8");
      const auto budget = static_cast<std::uint64_t>(get_int_or(d, "budget", 100000, w));
      pc.sampled = true;
      run = [a, kk, budget](const RunContext& ctx) { return nonvanishing_witness(a, kk, budget, ctx.seed).report; };
    } else if (k == "identity_transfer") {
      keys({"hom", "identity", "trials"});
      const auto f = hm();
      const auto id = identity_ref(field(d, "identity", w), at_key(w, "identity"));
      const auto trials = static_cast<std::uint64_t>(get_int_or(d, "trials", 100, w));
      pc.sampled = true;
      run = [f, id, trials](const RunContext& ctx) { return identity_transfer_check(f, id, trials, ctx.seed); };
    } else if (k == "evaluate") {
      keys({"identity", "algebra", "tuple", "result"});
      const auto a = alg();
      const auto id = identity_ref(field(d, "identity", w), at_key(w, "identity"));
      const Json& t = field(d, "tuple", w);
      if (!t.is_array() || t.size() != id.arity) invalid(at_key(w, "tuple"), "expected " + std::to_string(id.arity) + " elements");
      std::vector<Vec> xs;
      for (std::size_t i = 0; i < t.size(); ++i) xs.push_back(element_from_json(a, t[i], at_index(at_key(w, "tuple"), i)));
      const std::string want = d.contains("result") ? get_string(d, "result", w) : "zero";
      if (want != "zero" && want != "nonzero") invalid(at_key(w, "result"), "expected \"zero\" or \"nonzero\"");
      run = [a, id, xs, want](const RunContext&) {
        CheckReport r;
        r.check = "evaluate";
        r.subject = id.name() + " on " + a->label();
        const Vec v = evaluate(id, a, xs);
        const bool zero = a->is_zero(v);
        r.details = {{"value", element_json(a, v)}, {"expected", want}};
        if (zero != (want == "zero")) {
          r.status = Status::Fail;
          Json tuple = Json::array();
          for (const auto& x : xs) tuple.push_back(element_json(a, x));
          r.witness = {{"tuple", tuple}, {"value", element_json(a, v)}};
        }
        return r;
      };
    } else if (k == "counterexample_search") {
      keys({"source", "target", "budget", "seeds"});
      SearchConfig sc;
      sc.source = alg("source");
      sc.target = alg("target");
      if (is_reduced(*sc.target->base())) invalid(at_key(w, "target"), "counterexample search needs a non-reduced target base");
      sc.budget = static_cast<std::uint64_t>(get_int_or(d, "budget", 100000, w));
      if (d.contains("seeds")) {
        const Json& s = d.at("seeds");
        if (!s.is_array()) invalid(at_key(w, "seeds"), "expected an array of homs");
        for (std::size_t i = 0; i < s.size(); ++i) sc.seeds.push_back(hom_ref(s[i], at_index(at_key(w, "seeds"), i)));
      }
      pc.sampled = sc.budget > 0;
      run = [sc](const RunContext& ctx) {
        SearchConfig c = sc;
        c.seed = ctx.seed;
        return counterexample_search(c);
      };
    } else {
      invalid(at_key(w, "check"), "unknown check \"" + k + "\"");
    }
    if (invert) {
      pc.run = [run](const RunContext& ctx) { return expect_failure(run(ctx)); };
    } else {
      pc.run = std::move(run);
    }
    return pc;
  }

 public:
  static CheckReport verify_report(const AlgebraHom& f) {
    CheckReport r;
    r.check = "verify_hom";
    r.subject = f.label;
    r.details = {{"source", f.source->label()}, {"target", f.target->label()}, {"hom_status", to_string(f.status)}};
    if (!f.verified()) {
      r.status = Status::Fail;
      r.witness = f.witness.is_null() ? Json{{"kind", "unverified"}} : f.witness;
    }
    return r;
  }

  static CheckReport jordan_cell_report(const RingPtr& r, std::size_t n) {
    CheckReport rep;
    rep.check = "jordan_cell";
    rep.subject = "J_" + std::to_string(n) + "(" + r->describe() + ")";
    const AlgElem j = jordan_cell(r, n);
    const auto idx = nilpotency_index(j, static_cast<Int>(n) + 1);
    rep.details = {{"n", n}, {"index", idx ? Json(*idx) : Json(nullptr)}};
    if (!idx || *idx != static_cast<Int>(n)) {
      rep.status = Status::Fail;
      rep.witness = {{"element", element_json(j.alg, j.coords)}, {"index", rep.details["index"]}};
    }
    return rep;
  }

  static CheckReport al_report(const AlgebraPtr& a, std::size_t n, bool exhaustive, std::uint64_t count, const RunContext& ctx) {
    AlMode m;
    m.exhaustive = exhaustive;
    m.count = count;
    m.seed = ctx.seed;
    m.max_tuples = ctx.limits.max_tuples;
    if (exhaustive) {
      try {
        return al_vanishing_check(a, n, m);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        m.exhaustive = false;
        auto r = al_vanishing_check(a, n, m);
        r.details["mode_switch"] = "exhaustive -> samples (max_tuples " + std::to_string(ctx.limits.max_tuples) + ")";
        return r;
      }
    }
    return al_vanishing_check(a, n, m);
  }
};

}  // namespace

Json ring_to_json(const RingPtr& r) {
  switch (r->kind()) {
    case RingKind::ZMod:
      return {{"kind", "zmod"}, {"n", r->n()}};
    case RingKind::GaloisField:
      return {{"kind", "gf"}, {"p", r->p()}, {"f", r->poly()}};
    case RingKind::Product: {
      Json fs = Json::array();
      for (const auto& f : r->factors()) fs.push_back(ring_to_json(f));
      return {{"kind", "product"}, {"factors", fs}};
    }
  }
  return nullptr;
}

RingPtr ring_from_json(const Json& j, const std::string& w) {
  const std::string kind = get_string(j, "kind", w);
  if (kind == "zmod") {
    allow_keys(j, {"kind", "n"}, w);
    const Int n = get_int(j, "n", w);
    return located(at_key(w, "n"), [&] { return FiniteCommRing::zmod(n); });
  }
  if (kind == "gf") {
    allow_keys(j, {"kind", "p", "f", "k"}, w);
    const Int p = get_int(j, "p", w);
    if (j.contains("f")) {
      Vec f = int_array(j.at("f"), at_key(w, "f"));
      return located(w, [&] { return FiniteCommRing::galois(p, f); });
    }
    const Int k = get_int(j, "k", w);
    if (k < 1 || k > 30) invalid(at_key(w, "k"), "expected 1 <= k <= 30");
    return located(w, [&] { return FiniteCommRing::galois_default(p, static_cast<int>(k)); });
  }
  if (kind == "product") {
    allow_keys(j, {"kind", "factors"}, w);
    const Json& fs = field(j, "factors", w);
    if (!fs.is_array() || fs.empty()) invalid(at_key(w, "factors"), "expected a non-empty array of rings");
    std::vector<RingPtr> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(ring_from_json(fs[i], at_index(at_key(w, "factors"), i)));
    return located(w, [&] { return FiniteCommRing::product(factors); });
  }
  invalid(at_key(w, "kind"), "unknown ring kind \"" + kind + "\"");
}

Json algebra_to_json(const AlgebraPtr& a) {
  const std::size_t d = a->rank();
  Json table = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d; ++j) {
      const auto c = a->basis_product(i, j);
      row.push_back(Vec(c.begin(), c.end()));
    }
    table.push_back(row);
  }
  return {{"kind", "structure_constants"}, {"label", a->label()},           {"ring", ring_to_json(a->base())},
          {"rank", d},                     {"table", table},                {"unit", Vec(a->unit().begin(), a->unit().end())}};
}

Json ideal_to_json(const RingIdeal& i) {
  if (i.ring->kind() == RingKind::ZMod) return i.leaf_generators.at(0);
  return {{"leaves", i.leaf_generators}};
}

RingIdeal ideal_from_json(const RingPtr& r, const Json& j, const std::string& w) {
  if (j.is_string()) {
    if (j == "zero") return RingIdeal::zero(r);
    if (j == "unit") return RingIdeal::unit(r);
    invalid(w, "expected \"zero\", \"unit\", a divisor or {\"leaves\": [...]}");
  }
  if (j.is_number_integer()) {
    if (r->kind() != RingKind::ZMod) invalid(w, "an integer ideal generator needs a Z/n base; use {\"leaves\": [...]}");
    return RingIdeal::zmod(r, j.get<Int>());
  }
  allow_keys(j, {"leaves"}, w);
  Vec g = int_array(field(j, "leaves", w), at_key(w, "leaves"));
  return located(w, [&] { return RingIdeal::from_leaves(r, g); });
}

Json identity_to_json(const MultilinearIdentity& id) {
  if (id.standard) return {{"standard", *id.standard}};
  Json terms = Json::array();
  for (const auto& t : id.terms) {
    Vec word;
    for (auto v : t.vars) word.push_back(static_cast<Int>(v) + 1);
    terms.push_back({{"coef", t.coef}, {"word", word}});
  }
  return {{"arity", id.arity}, {"terms", terms}};
}

MultilinearIdentity identity_from_json(const Json& j, const std::string& w) {
  require_object(j, w);
  if (j.contains("standard")) {
    allow_keys(j, {"standard"}, w);
    const Int k = get_int(j, "standard", w);
    if (k < 1 || k > static_cast<Int>(kMaxStandardDegree)) invalid(at_key(w, "standard"), "expected 1 <= k <= 8");
    return standard_identity(static_cast<std::size_t>(k));
  }
  allow_keys(j, {"arity", "terms"}, w);
  const std::size_t arity = get_size(j, "arity", w);
  const Json& ts = field(j, "terms", w);
  const std::string wt = at_key(w, "terms");
  if (!ts.is_array() || ts.empty()) invalid(wt, "expected a non-empty array of terms");
  std::vector<Word> terms;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string wi = at_index(wt, i);
    allow_keys(ts[i], {"coef", "word"}, wi);
    Word wd;
    wd.coef = get_int(ts[i], "coef", wi);
    for (Int v : int_array(field(ts[i], "word", wi), at_key(wi, "word"))) {
      if (v < 1 || v > static_cast<Int>(arity)) invalid(at_key(wi, "word"), "variable indices run from 1 to the arity");
      wd.vars.push_back(static_cast<std::size_t>(v - 1));
    }
    terms.push_back(std::move(wd));
  }
  return located(w, [&] { return MultilinearIdentity::make(arity, terms); });
}

Json parse_config_text(const std::string& text) {
  std::vector<std::set<std::string>> seen;
  std::string dup;
  auto cb = [&](int, Json::parse_event_t ev, Json& parsed) {
    if (ev == Json::parse_event_t::object_start) seen.emplace_back();
    if (ev == Json::parse_event_t::object_end) seen.pop_back();
    if (ev == Json::parse_event_t::key && !seen.back().insert(parsed.get<std::string>()).second && dup.empty())
      dup = parsed.get<std::string>();
    return true;
  };
  Json j;
  try {
    j = Json::parse(text, cb);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = e.byte > 0 ? std::min<std::size_t>(e.byte - 1, text.size()) : 0;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!dup.empty()) throw Error(ErrorCode::ParseError, "duplicate key \"" + dup + "\"");
  return j;
}

Workspace load_workspace(const Json& cfg, const Limits& limits) {
  Workspace ws;
  Loader(cfg, limits, ws).load();
  return ws;
}

Json canonical_json(const Workspace& ws) {
  Json out = Json::object();
  for (const auto& [k, r] : ws.rings) out["rings"][k] = ring_to_json(r);
  for (const auto& [k, a] : ws.algebras) out["algebras"][k] = algebra_to_json(a);
  for (const auto& [k, f] : ws.homs) out["homs"][k] = hom_json(f);
  for (const auto& [k, id] : ws.identities) out["identities"][k] = identity_to_json(id);
  Json checks = Json::array();
  for (const auto& c : ws.checks) checks.push_back({{"name", c.name}, {"check", c.kind}, {"sampled", c.sampled}});
  out["checks"] = checks;
  if (ws.seed) out["seed"] = *ws.seed;
  return out;
}

std::vector<CheckReport> run_workspace(const Workspace& ws, std::optional<std::uint64_t> seed, const Limits& limits,
                                       const std::optional<std::string>& only,
                                       const std::function<void(const CheckReport&)>& emit) {
  if (!seed) seed = ws.seed;
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < ws.checks.size(); ++i)
    if (!only || ws.checks[i].name == *only || ws.checks[i].kind == *only) selected.push_back(i);
  if (only && selected.empty()) throw Error(ErrorCode::ValidationError, "/checks: no check named \"" + *only + "\"");
  for (std::size_t i : selected)
    if (ws.checks[i].sampled && !seed)
      throw Error(ErrorCode::ValidationError, "/checks/" + std::to_string(i) + ": " + ws.checks[i].kind + " is sampled and needs --seed (or a config seed)");

  std::vector<CheckReport> out;
  auto push = [&](CheckReport r) {
    if (emit) emit(r);
    out.push_back(std::move(r));
  };
  for (const auto& name : ws.claimed_verified) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = Loader::verify_report(ws.homs.at(name));
    r.subject = name + ": " + r.subject;
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    push(std::move(r));
  }
  for (std::size_t i : selected) {
    RunContext ctx{seed ? kernels::derive_seed(*seed, i) : 0, limits};
    const auto t0 = std::chrono::steady_clock::now();
    CheckReport r;
    try {
      r = ws.checks[i].run(ctx);
    } catch (const Error& e) {
      r.check = ws.checks[i].kind;
      r.subject = ws.checks[i].name;
      r.status = Status::Fail;
      r.witness = {{"error", e.what()}};
    }
    if (ws.checks[i].name != ws.checks[i].kind) r.details["name"] = ws.checks[i].name;
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    push(std::move(r));
  }
  return out;
}

}  // namespace azumaya
