#include "support.hpp"

#include "plr/engine.hpp"
#include "plr/generate.hpp"
#include "plr/ibq.hpp"
#include "plr/refcheck.hpp"

#include <gtest/gtest.h>

using namespace plr;
using namespace plr::test;

namespace {

ExternalOntology O(const std::string &text) { return parse_ontology(text); }

SimpleConcept canon(SimpleConcept c) {
  c.canonicalize();
  return c;
}

} // namespace

TEST(Ibq, ShiftPartitionsAxioms) {
  auto s = shift_axioms(K("func has_purpose\nsub Marketing AnyPurpose"), ExternalOntology{});
  EXPECT_EQ(s.kMinus, K("func has_purpose"));
  EXPECT_EQ(s.oPlus, O("sub Marketing AnyPurpose"));

  auto d = shift_axioms(K("disj AnyData AnyPurpose\nrange r X"), ExternalOntology{});
  EXPECT_EQ(d.kMinus, K("range r X"));
  EXPECT_EQ(d.oPlus, O("disj AnyData AnyPurpose"));

  auto o = O("sub A B");
  EXPECT_EQ(shift_axioms(K("func r\nrange r A"), o).oPlus, o);
}

TEST(Ibq, ShiftRejectsSharedRoles) {
  EXPECT_THROW(shift_axioms(K("func r"), O("sub-ex A r B")), SignatureError);
  EXPECT_NO_THROW(shift_axioms(K("sub A B"), O("sub B C")));
}

TEST(Ibq, CompileExamples) {
  EXPECT_EQ(compile(K("func has_purpose"), O("sub Marketing AnyPurpose")),
            K("func has_purpose\nsub Marketing AnyPurpose"));

  auto comp = compile({}, O("sub A X\nsub B Y\ndisj X Y"));
  auto idx = build_closure(comp);
  EXPECT_TRUE(normalize_simple(NormalizationMode::plain(idx), S("A & B")).bottom);
  EXPECT_FALSE(normalize_simple(NormalizationMode::plain(idx), S("A & X")).bottom);
}

TEST(Ibq, CompiledKbAnswersProbesLikeTheOracle) {
  auto o = O("sub A X\nsub B Y\ndisj X Y\nsub-ex C s D\nex-sub s D E\nsub A & Z W");
  Engine viaOracle(K("func r"), o);
  Engine viaComp(compile(K("func r"), o));
  const std::vector<std::pair<std::string, std::string>> probes{
      {"A & B", "bottom"}, {"C", "E"}, {"E", "C"}, {"A", "W"}, {"A", "X | Y"}};
  for (const auto &[l, r] : probes)
    EXPECT_EQ(plr_oracle(viaOracle, P(l), P(r)), plr::plr(viaComp, P(l), P(r))) << l << " vs " << r;
}

TEST(Ibq, NameConjunctionsNeedSingleAtomForm) {
  auto o = O("sub A & Z W");
  Engine viaOracle(K("func r"), o);
  auto lhs = P("some r (A & Z)"), rhs = P("some r (W)");
  EXPECT_TRUE(plr_oracle(viaOracle, lhs, rhs));
  Engine raw(compile(K("func r"), o));
  EXPECT_FALSE(plr::plr(raw, lhs, rhs));
  auto compiled = compile_with_policies(K("func r"), o, {lhs});
  Engine viaComp(compiled.kb);
  EXPECT_TRUE(plr::plr(viaComp, compiled.policies[0], rhs));
}

TEST(Ibq, CompileIsAFixpoint) {
  Rng rng(71);
  for (int i = 0; i < 100; ++i) {
    auto inst = gen_plso_instance(rng);
    auto once = compile(inst.k, inst.o);
    ASSERT_EQ(compile(once, ExternalOntology{}), once);
  }
}

TEST(Ibq, CompileSizeIsAtMostQuadratic) {
  Rng rng(72);
  for (int i = 0; i < 100; ++i) {
    auto inst = gen_plso_instance(rng);
    auto s = shift_axioms(inst.k, inst.o);
    std::size_t n = s.oPlus.signature().concepts.size();
    ASSERT_LE(compile(inst.k, inst.o).size(), s.kMinus.size() + n * n);
  }
}

TEST(Ibq, SingleAtomExamples) {
  auto r = single_atom_transform({P("A & B & some R (D)")});
  ASSERT_EQ(r.policies.size(), 1u);
  EXPECT_EQ(r.policies[0][0], canon(SimpleConcept{}.atom("_sa0").some("R", S("D"))));
  EXPECT_EQ(r.definitions, ExternalOntology({OntDef{"_sa0", {"A", "B"}}}));

  auto same = single_atom_transform({P("A & some R (D)")});
  EXPECT_EQ(same.policies[0], P("A & some R (D)"));
  EXPECT_TRUE(same.definitions.empty());

  auto shared = single_atom_transform({P("A & B & f in [1,2] | some R (A & B)")});
  EXPECT_EQ(shared.definitions.size(), 1u);
}

TEST(Ibq, SingleAtomFreshNamesAvoidReservedNames) {
  auto r = single_atom_transform({P("A & B")}, {"_sa0"});
  EXPECT_EQ(r.policies[0][0], S("_sa1"));
}

TEST(Ibq, SingleAtomPreservesMeaningUnderDefinitions) {
  Rng rng(73);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = gen_small_instance(rng);
    auto r = single_atom_transform({inst.c});
    auto oracle = saturate(r.definitions);
    try {
      ASSERT_TRUE(brute_force_subsumes({}, inst.c, r.policies[0], oracle.get())) << to_string(inst.c);
      ASSERT_TRUE(brute_force_subsumes({}, r.policies[0], inst.c, oracle.get())) << to_string(inst.c);
      ++checked;
    } catch (const RefcheckLimitError &) {
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Ibq, EliminatedRolesAreDecidedByTheOracle) {
  auto o = O("sub-ex A s B\nsub B C");
  auto r = eliminate_shared_roles({P("some s (C) & D"), P("some s (C & E)")}, {"s"});
  EXPECT_EQ(r.policies[0], P("_sr0 & D"));
  EXPECT_EQ(r.policies[1], P("_sr1"));
  auto all = o;
  all.merge(r.definitions);
  Engine e(KnowledgeBase{}, all);
  EXPECT_TRUE(plr_oracle(e, P("A & D"), r.policies[0]));
  EXPECT_FALSE(plr_oracle(e, P("A"), r.policies[1]));
  EXPECT_THROW(eliminate_shared_roles({P("some s (f in [1,2])")}, {"s"}), PreconditionError);
}

TEST(Ibq, OracleDriverRejectsSharedSignature) {
  auto o = O("sub-ex A s B");
  EXPECT_THROW(Engine(K("func s"), o), SignatureError);
  Engine e(KnowledgeBase{}, o);
  EXPECT_THROW(plr_oracle(e, P("some s (B)"), P("A")), PreconditionError);
}

TEST(Ibq, OracleDriverMatchesBruteForceAfterShifting) {
  Rng rng(74);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    auto inst = gen_plso_instance(rng);
    auto shifted = shift_axioms(inst.k, inst.o);
    auto oracle = saturate(shifted.oPlus);
    Engine e(inst.k, inst.o);
    for (auto [b, c] : inst.queries) {
      bool expected;
      try {
        expected = brute_force_subsumes(shifted.kMinus, inst.business[b], inst.consents[c], oracle.get());
      } catch (const RefcheckLimitError &) {
        continue;
      }
      ASSERT_EQ(plr_oracle(e, inst.business[b], inst.consents[c]), expected)
          << to_string(inst.business[b]) << " vs " << to_string(inst.consents[c]);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Ibq, CompiledPoliciesAgreeWithOracleDriver) {
  Rng rng(75);
  for (int i = 0; i < 150; ++i) {
    auto inst = gen_plso_instance(rng);
    Engine viaOracle(inst.k, inst.o);
    auto compiled = compile_with_policies(inst.k, inst.o, inst.business);
    Engine viaComp(compiled.kb, EngineOptions::preset("pre"));
    prenormalize(viaComp, compiled.policies, inst.consents);
    for (auto [b, c] : inst.queries)
      ASSERT_EQ(plr::plr(viaComp, compiled.policies[b], inst.consents[c]),
                plr_oracle(viaOracle, inst.business[b], inst.consents[c]))
          << "instance " << i << ": " << to_string(inst.business[b]) << " vs " << to_string(inst.consents[c]);
  }
}

TEST(Ibq, EmptyOracleMatchesPlainDriver) {
  Rng rng(76);
  for (int i = 0; i < 200; ++i) {
    auto inst = gen_small_instance(rng);
    Engine plain(inst.kb);
    Engine oracle(inst.kb, ExternalOntology{});
    ASSERT_EQ(plr_oracle(oracle, inst.c, inst.d), plr::plr(plain, inst.c, inst.d))
        << to_string(inst.c) << " vs " << to_string(inst.d);
  }
}
