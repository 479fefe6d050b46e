#include <gtest/gtest.h>

#include <random>

#include "azumaya/config.hpp"
#include "azumaya/kernels.hpp"

using namespace azumaya;

namespace {

Json parse(const char* s) { return parse_config_text(s); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidDescriptor;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

Json random_ring_json(std::mt19937_64& rng, int depth) {
  const int pick = static_cast<int>(rng() % (depth > 0 ? 3 : 2));
  if (pick == 0) return {{"kind", "zmod"}, {"n", 2 + static_cast<Int>(rng() % 40)}};
  if (pick == 1) {
    const Int p = std::vector<Int>{2, 3, 5}[rng() % 3];
    const auto r = FiniteCommRing::galois_default(p, 1 + static_cast<int>(rng() % 3));
    return ring_to_json(r);
  }
  Json fs = Json::array();
  const std::size_t k = 1 + rng() % 3;
  for (std::size_t i = 0; i < k; ++i) fs.push_back(random_ring_json(rng, depth - 1));
  return {{"kind", "product"}, {"factors", fs}};
}

}  // namespace

TEST(Serialization, RingExamplesRoundTripBitExact) {
  for (const char* s : {R"({"kind":"zmod","n":12})", R"({"f":[1,1,1],"kind":"gf","p":2})",
                        R"({"factors":[{"kind":"zmod","n":4},{"f":[2,1],"kind":"gf","p":3}],"kind":"product"})"}) {
    const Json j = parse(s);
    EXPECT_EQ(ring_to_json(ring_from_json(j)).dump(), j.dump()) << s;
  }
}

TEST(Serialization, RandomRingsRoundTrip) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const Json j = random_ring_json(rng, 2);
    const RingPtr r = ring_from_json(j);
    EXPECT_EQ(ring_to_json(r).dump(), j.dump());
    EXPECT_TRUE(*ring_from_json(ring_to_json(r)) == *r);
  }
}

TEST(Serialization, AlgebrasRoundTripThroughStructureConstants) {
  const auto z6 = FiniteCommRing::zmod(6);
  const auto gf4 = FiniteCommRing::galois_default(2, 2);
  for (const auto& a : {matrix_algebra(z6, 2), weyl_quotient(3, 1, 2), upper_triangular_2x2(gf4),
                        tensor_product(matrix_algebra(FiniteCommRing::zmod(2), 2), weyl_quotient(2, 1, 0))}) {
    const Json cfg = {{"algebras", {{"A", algebra_to_json(a)}}}};
    const auto ws = load_workspace(cfg);
    const auto& b = ws.algebras.at("A");
    EXPECT_TRUE(*a == *b) << a->label();
    EXPECT_EQ(b->label(), a->label());
    EXPECT_EQ(algebra_to_json(b).dump(), algebra_to_json(a).dump());
  }
}

TEST(Serialization, IdentitiesAndIdealsRoundTrip) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto id = standard_identity(k);
    EXPECT_EQ(identity_to_json(identity_from_json(identity_to_json(id))).dump(), identity_to_json(id).dump());
  }
  const Json comm = parse(R"({"arity":2,"terms":[{"coef":1,"word":[1,2]},{"coef":-1,"word":[2,1]}]})");
  EXPECT_EQ(identity_to_json(identity_from_json(comm)).dump(), comm.dump());

  const auto z12 = FiniteCommRing::zmod(12);
  EXPECT_EQ(ideal_from_json(z12, 4), RingIdeal::zmod(z12, 4));
  EXPECT_EQ(ideal_to_json(ideal_from_json(z12, 3)), Json(3));
  const auto p = FiniteCommRing::product({FiniteCommRing::zmod(4), FiniteCommRing::zmod(3)});
  const Json leaves = parse(R"({"leaves":[2,3]})");
  EXPECT_EQ(ideal_to_json(ideal_from_json(p, leaves)).dump(), leaves.dump());
}

TEST(Serialization, ReportsRoundTrip) {
  CheckReport r;
  r.check = "center_preservation";
  r.subject = "x";
  r.status = Status::ContradictsTheorem;
  r.witness = {{"element", {1, 2, 3}}};
  r.details = {{"k", "v"}};
  r.precondition("a", true);
  r.precondition("b", false);
  r.seed = 99;
  r.count = 5;
  r.timing_ms = 1.5;
  const CheckReport back = report_from_json(to_json(r));
  EXPECT_EQ(to_json(back).dump(), to_json(r).dump());
  EXPECT_FALSE(comparable_json(r).contains("timing_ms"));
}

TEST(Config, ValidationErrorsNameTheLocation) {
  const auto n0 = parse(R"({"rings":{"F2":{"kind":"zmod","n":2}},"algebras":{"bad":{"kind":"matrix","n":0,"ring":"F2"}}})");
  EXPECT_EQ(code_of([&] { load_workspace(n0); }), ErrorCode::ValidationError);
  EXPECT_NE(message_of([&] { load_workspace(n0); }).find("/algebras/bad/n"), std::string::npos);

  const auto unknown = parse(R"({"algebras":{"A":{"kind":"matrix","n":2,"ring":"nope"}}})");
  EXPECT_NE(message_of([&] { load_workspace(unknown); }).find("/algebras/A/ring"), std::string::npos);

  const auto cycle = parse(R"({"algebras":{"A":{"kind":"opposite","of":"B"},"B":{"kind":"opposite","of":"A"}}})");
  EXPECT_NE(message_of([&] { load_workspace(cycle); }).find("circular"), std::string::npos);

  const auto clash = parse(R"({"rings":{"X":{"kind":"zmod","n":2}},"algebras":{"X":{"kind":"weyl","p":2}}})");
  EXPECT_EQ(code_of([&] { load_workspace(clash); }), ErrorCode::ValidationError);

  const auto badring = parse(R"({"rings":{"R":{"kind":"gf","p":2,"f":[1,0,1]}}})");
  EXPECT_NE(message_of([&] { load_workspace(badring); }).find("/rings/R"), std::string::npos);

  const auto badcheck = parse(R"({"checks":[{"check":"frobnicate"}]})");
  EXPECT_NE(message_of([&] { load_workspace(badcheck); }).find("/checks/0/check"), std::string::npos);

  const auto reduced_search = parse(
      R"({"algebras":{"A":{"kind":"matrix","n":2,"ring":{"kind":"zmod","n":3}}},
          "checks":[{"check":"counterexample_search","source":"A","target":"A"}]})");
  EXPECT_EQ(code_of([&] { load_workspace(reduced_search); }), ErrorCode::ValidationError);

  EXPECT_EQ(code_of([] { parse_config_text(R"({"a":1,"a":2})"); }), ErrorCode::ParseError);
  EXPECT_NE(message_of([] { parse_config_text("{\n  \"a\": }"); }).find("line 2"), std::string::npos);
}

TEST(Config, SampledChecksNeedASeed) {
  const auto cfg = parse(R"({"algebras":{"A":{"kind":"matrix","n":2,"ring":{"kind":"zmod","n":4}}},
                             "checks":[{"check":"al_vanishing","algebra":"A","n":2,"mode":"samples","count":10}]})");
  const auto ws = load_workspace(cfg);
  ASSERT_TRUE(ws.checks.at(0).sampled);
  EXPECT_EQ(code_of([&] { run_workspace(ws, std::nullopt, {}); }), ErrorCode::ValidationError);
  const auto a = run_workspace(ws, 5, {});
  const auto b = run_workspace(ws, 5, {});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].status, Status::Pass);
  EXPECT_EQ(comparable_json(a[0]).dump(), comparable_json(b[0]).dump());
}

TEST(Config, ExhaustiveSweepSwitchesToSamplesPastTheCap) {
  const auto cfg = parse(R"({"algebras":{"A":{"kind":"matrix","n":2,"ring":{"kind":"zmod","n":2}}},
                             "checks":[{"check":"al_vanishing","algebra":"A","n":2}]})");
  Limits lim;
  lim.max_tuples = 1000;
  const auto ws = load_workspace(cfg, lim);
  EXPECT_TRUE(ws.checks[0].sampled);
  const auto r = run_workspace(ws, 1, lim);
  EXPECT_EQ(r[0].status, Status::Pass);
  EXPECT_TRUE(r[0].details.contains("mode_switch"));
}

TEST(Config, ClaimedVerifiedBuggyHomIsRefuted) {
  const auto cfg = parse(R"({"algebras":{"A":{"kind":"matrix","n":2,"ring":{"kind":"zmod","n":2}}},
    "homs":{"h":{"kind":"explicit","source":"A","target":"A","claimed":"verified",
                 "matrix":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,0]]}}})");
  const auto ws = load_workspace(cfg);
  const auto reps = run_workspace(ws, std::nullopt, {});
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0].status, Status::Fail);
  EXPECT_EQ(reps[0].witness.at("kind"), "unit");
  EXPECT_EQ(exit_code_for(reps), 1);
}

TEST(Config, ExpectFailInvertsNegativeControls) {
  const auto cfg = parse(R"({"algebras":{"T":{"kind":"upper_triangular","ring":{"kind":"zmod","n":2}}},
    "checks":[{"check":"is_azumaya","algebra":"T","expect":"fail"},{"check":"is_azumaya","algebra":"T"}]})");
  const auto reps = run_workspace(load_workspace(cfg), std::nullopt, {});
  EXPECT_EQ(reps[0].status, Status::Pass);
  EXPECT_FALSE(reps[0].details.at("observed_witness").is_null());
  EXPECT_EQ(reps[1].status, Status::Fail);
}

// Homs in a config are checked on random non-basis elements, independently of verify_hom.
TEST(Property, ConfigHomsAreMultiplicativeOnRandomElements) {
  const auto cfg = parse(R"({
    "algebras":{"A":{"kind":"matrix","n":2,"ring":{"kind":"zmod","n":12}},
                "W":{"kind":"weyl","p":3,"a":2,"b":1}},
    "homs":{"red":{"kind":"reduction","source":"A","ideal":4},
            "conj":{"kind":"conjugation","source":"A","u":[[1,5],[0,7]]},
            "crt":{"kind":"crt","source":"A"},
            "w":{"kind":"weyl_splitting","p":3,"a":2,"b":1},
            "c":{"kind":"compose","outer":"red","inner":"conj"}}})");
  const auto ws = load_workspace(cfg);
  std::mt19937_64 rng(3);
  for (const auto& [name, f] : ws.homs) {
    ASSERT_TRUE(f.verified()) << name;
    const Vec sm = f.source->flat_moduli();
    for (int t = 0; t < 200; ++t) {
      Vec x(sm.size()), y(sm.size());
      for (std::size_t i = 0; i < sm.size(); ++i) {
        x[i] = static_cast<Int>(rng() % static_cast<std::uint64_t>(sm[i]));
        y[i] = static_cast<Int>(rng() % static_cast<std::uint64_t>(sm[i]));
      }
      EXPECT_EQ(f.apply(f.source->mul(x, y)), f.target->mul(f.apply(x), f.apply(y))) << name;
      EXPECT_EQ(f.apply(f.source->add(x, y)), f.target->add(f.apply(x), f.apply(y))) << name;
    }
  }
}
