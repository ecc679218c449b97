#include "support.hpp"

#include "plr/engine.hpp"
#include "plr/generate.hpp"
#include "plr/refcheck.hpp"

#include <gtest/gtest.h>

using namespace plr;
using namespace plr::test;

namespace {

struct Befit {
  KnowledgeBase kb = load_kb("befit.kb");
  FullConcept business = load_policy("befit_business.pol");
  FullConcept consent = load_policy("befit_consent.pol");
  FullConcept consentFirst = load_policy("befit_consent_first.pol");
  FullConcept gdpr = load_policy("gdpr_rights.pol");
  FullConcept heartRate = load_policy("heart_rate_avg.pol");
};

} // namespace

TEST(Plr, BefitFixturesForEveryVariant) {
  Befit f;
  for (const auto &name : optimization_variants())
    for (Splitter s : {Splitter::Naive, Splitter::Refined}) {
      Engine e(f.kb, EngineOptions::preset(name, s));
      if (e.options().preNormalized)
        prenormalize(e, {f.business, f.heartRate}, std::vector<FullConcept>{f.consent, f.gdpr, f.consentFirst});
      SCOPED_TRACE(name);
      EXPECT_TRUE(plr::plr(e, f.business, f.gdpr));
      EXPECT_FALSE(plr::plr(e, f.gdpr, f.business));
      EXPECT_TRUE(plr::plr(e, f.heartRate, f.consentFirst));
      EXPECT_TRUE(plr::plr(e, f.heartRate, f.consent));
      EXPECT_FALSE(plr::plr(e, f.consent, f.consentFirst));
      EXPECT_FALSE(plr::plr(e, f.business, f.consent));
      EXPECT_TRUE(plr::plr(e, f.consent, f.consent));
    }
}

TEST(Plr, IntervalQueriesNeedTheSplit) {
  Engine e(KnowledgeBase{});
  EXPECT_TRUE(plr::plr(e, P("f in [1,9]"), P("f in [1,4] | f in [5,12]")));
  EXPECT_FALSE(plr::plr(e, P("f in [1,9]"), P("f in [1,4] | f in [6,12]")));
  EXPECT_TRUE(plr::plr(e, P("some r (f in [1,9])"), P("some r (f in [0,4]) | some r (f in [5,9])")));
}

TEST(Plr, UnsatisfiableLhsIsSubsumedByBottom) {
  Engine e(K("disj A B"));
  EXPECT_TRUE(plr::plr(e, P("A & B"), P("bottom")));
  EXPECT_FALSE(plr::plr(e, P("A"), P("bottom")));
}

TEST(Plr, VariantsAgreeWithBruteForce) {
  Rng rng(61);
  int checked = 0, positive = 0;
  for (int i = 0; i < 250; ++i) {
    auto inst = gen_small_instance(rng);
    bool expected;
    try {
      expected = brute_force_subsumes(inst.kb, inst.c, inst.d);
    } catch (const RefcheckLimitError &) {
      continue;
    }
    for (const auto &name : optimization_variants())
      for (Splitter s : {Splitter::Naive, Splitter::Refined}) {
        Engine e(inst.kb, EngineOptions::preset(name, s));
        if (e.options().preNormalized)
          prenormalize(e, {inst.c}, std::vector<FullConcept>{inst.d});
        ASSERT_EQ(plr::plr(e, inst.c, inst.d), expected)
            << name << " " << to_string(inst.c) << " vs " << to_string(inst.d);
      }
    ++checked;
    positive += expected;
  }
  EXPECT_GT(checked, 200);
  EXPECT_GT(positive, 30);
  EXPECT_GT(checked - positive, 30);
}

TEST(Plr, CachedEngineAnswersRepeatQueriesIdentically) {
  Befit f;
  Engine e(f.kb, EngineOptions::preset("c"));
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(plr::plr(e, f.business, f.gdpr));
    EXPECT_FALSE(plr::plr(e, f.business, f.consent));
  }
  EXPECT_GT(e.stats().normHits, 0u);
  EXPECT_GT(e.stats().cache_hit_rate(), 0.0);
  e.clear_caches();
  EXPECT_TRUE(plr::plr(e, f.business, f.gdpr));
}

TEST(Plr, SubsumptionIsReflexiveAndTransitive) {
  Rng rng(62);
  auto v = gen_ontology_detailed(OntologyProfile::preset("O1", 62));
  auto p = PolicyProfile::preset("P1", 62);
  p.maxSimplePerFull = 3;
  p.maxIntervalsPerSimple = 2;
  Engine e(v.kb, EngineOptions::preset("c2n"));
  std::vector<FullConcept> ps;
  for (int i = 0; i < 12; ++i)
    ps.push_back(random_full_policy(rng, v, p));
  for (const auto &a : ps)
    ASSERT_TRUE(plr::plr(e, a, a));
  for (const auto &a : ps)
    for (const auto &b : ps)
      for (const auto &c : ps)
        if (plr::plr(e, a, b) && plr::plr(e, b, c))
          ASSERT_TRUE(plr::plr(e, a, c));
}

TEST(Plr, PrenormalizeUsesRefinedEndpointRoles) {
  Engine e(KnowledgeBase{}, EngineOptions::preset("pre", Splitter::Refined));
  EndpointProfile declared{{"f", {{1, kLower}, {4, kUpper}, {5, kLower}, {10, kUpper}}}};
  prenormalize(e, {P("f in [1,10]")}, declared);
  EXPECT_EQ(split_refined(P("f in [1,10]"), P("f in [1,4] | f in [5,10]")),
            FullConcept(std::vector<SimpleConcept>{S("f in [1,4]"), S("f in [5,10]")}));
  EXPECT_TRUE(plr::plr(e, P("f in [1,10]"), P("f in [1,4] | f in [5,10]")));
  EXPECT_FALSE(plr::plr(e, P("f in [1,10]"), P("f in [5,10]")));
  EXPECT_EQ(e.stats().preMisses, 0u);
  EXPECT_GT(e.stats().preHits, 0u);
}

TEST(Plr, PrenormalizeFallsBackOnUndeclaredEndpoints) {
  Engine e(KnowledgeBase{}, EngineOptions::preset("pre"));
  prenormalize(e, {P("f in [1,10]")}, std::vector<FullConcept>{P("f in [5,10]")});
  EXPECT_TRUE(plr::plr(e, P("f in [1,10]"), P("f in [1,2] | f in [3,10]")));
  EXPECT_GT(e.stats().preMisses, 0u);
}

TEST(Plr, EmptyPrenormalizeIsNoOp) {
  Befit f;
  Engine e(f.kb, EngineOptions::preset("pre"));
  prenormalize(e, {}, EndpointProfile{});
  EXPECT_TRUE(plr::plr(e, f.business, f.gdpr));
}

TEST(Plr, PrenormalizeRequiresCaches) {
  Engine e(KnowledgeBase{}, EngineOptions::preset("plain"));
  EXPECT_THROW(prenormalize(e, {P("A")}, EndpointProfile{}), PreconditionError);
}

TEST(Plr, TimeoutAndPieceBudgetThrow) {
  Rng rng(63);
  auto inst = sat3_encode(random_3cnf(rng, 14, 60));
  EngineOptions timed;
  timed.timeout = std::chrono::microseconds(200);
  Engine e1(inst.kb, timed);
  EXPECT_THROW(plr::plr(e1, inst.c, inst.d), TimeoutError);
  EngineOptions budget;
  budget.maxSplitPieces = 100;
  Engine e2(inst.kb, budget);
  EXPECT_THROW(plr::plr(e2, inst.c, inst.d), TimeoutError);
}

TEST(Plr, ThreeSatEncodingOfTrivialContradiction) {
  std::vector<Clause> clauses{Clause{Literal{1, true}, Literal{1, true}, Literal{1, true}},
                              Clause{Literal{1, false}, Literal{1, false}, Literal{1, false}}};
  auto inst = sat3_encode(clauses);
  Engine e(inst.kb);
  EXPECT_TRUE(plr::plr(e, inst.c, inst.d));
  auto sat = sat3_encode({clauses[0]});
  Engine e2(sat.kb);
  EXPECT_FALSE(plr::plr(e2, sat.c, sat.d));
}

TEST(Plr, PlainDriverRefusesOracleEngine) {
  Engine e(KnowledgeBase{}, ExternalOntology({OntSub{"A", "B"}}));
  EXPECT_THROW(plr::plr(e, P("A"), P("B")), PreconditionError);
  EXPECT_TRUE(plr_oracle(e, P("A"), P("B")));
}

TEST(Plr, IntervalParameter) {
  EXPECT_EQ(interval_parameter(P("f in [1,2] & g in [3,4] | h in [1,1]")), 2u);
  EXPECT_EQ(interval_parameter(P("A")), 0u);
}
