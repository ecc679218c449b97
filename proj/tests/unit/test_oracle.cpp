#include "support.hpp"

#include "plr/generate.hpp"
#include "plr/oracle.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace plr;
using namespace plr::test;

namespace {

OracleQuery Q(std::set<std::string> lhs, std::optional<std::string> rhs) { return {std::move(lhs), std::move(rhs)}; }

// Role-free ontologies are propositional Horn theories: S ⊑ A holds iff
// every assignment that satisfies the axioms and makes S true makes A true.
// An empty rhs set stands for bottom; several names for their union.
bool truth_table_entails_any(const ExternalOntology &o, const std::vector<std::string> &names,
                             const std::set<std::string> &lhs, const std::set<std::string> &rhs) {
  std::map<std::string, int> pos;
  for (std::size_t i = 0; i < names.size(); ++i)
    pos[names[i]] = static_cast<int>(i);
  for (std::uint32_t m = 0; m < (1u << names.size()); ++m) {
    auto v = [&](const ConceptName &n) { return (m >> pos.at(n.value)) & 1u; };
    bool model = true;
    for (const auto &ax : o.axioms()) {
      std::visit(
          [&](const auto &a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, OntSub>) {
              model = model && (!v(a.sub) || v(a.sup));
            } else if constexpr (std::is_same_v<T, OntConjSub>) {
              bool all = true;
              for (const auto &x : a.lhs)
                all = all && v(x);
              model = model && (!all || v(a.sup));
            } else if constexpr (std::is_same_v<T, OntDisj>) {
              model = model && !(v(a.a) && v(a.b));
            } else if constexpr (std::is_same_v<T, OntDef>) {
              bool all = true;
              for (const auto &x : a.conj)
                all = all && v(x);
              model = model && (v(a.name) == all);
            }
          },
          ax);
    }
    bool premise = true;
    for (const auto &x : lhs)
      premise = premise && v(ConceptName(x));
    bool some = false;
    for (const auto &x : rhs)
      some = some || v(ConceptName(x));
    if (model && premise && !some)
      return false;
  }
  return true;
}

bool truth_table_entails(const ExternalOntology &o, const std::vector<std::string> &names,
                         const std::set<std::string> &lhs, const std::optional<std::string> &rhs) {
  return truth_table_entails_any(o, names, lhs, rhs ? std::set<std::string>{*rhs} : std::set<std::string>{});
}

} // namespace

TEST(Oracle, SubclassChain) {
  auto o = saturate(ExternalOntology({OntSub{"HeartRate", "BiometricData"}, OntSub{"BiometricData", "AnyData"}}));
  EXPECT_TRUE(o->decide(Q({"HeartRate"}, "AnyData")));
  EXPECT_FALSE(o->decide(Q({"AnyData"}, "HeartRate")));
}

TEST(Oracle, ExistentialRoundTrip) {
  auto o = saturate(ExternalOntology({OntSubEx{"A", "R", "X"}, OntExSub{"R", "X", "B"}}));
  EXPECT_TRUE(o->decide(Q({"A"}, "B")));
  EXPECT_FALSE(o->decide(Q({"B"}, "A")));
}

TEST(Oracle, ExistentialOverSubclassFiller) {
  auto o = saturate(ExternalOntology({OntSubEx{"A", "R", "Y"}, OntSub{"Y", "X"}, OntExSub{"R", "X", "B"}}));
  EXPECT_TRUE(o->decide(Q({"A"}, "B")));
}

TEST(Oracle, UnsatisfiableFillerMakesSubjectUnsatisfiable) {
  auto o = saturate(ExternalOntology({OntSubEx{"A", "R", "X"}, OntDisj{"X", "X"}}));
  EXPECT_TRUE(o->unsatisfiable("A"));
  EXPECT_TRUE(o->decide(Q({"A"}, std::nullopt)));
}

TEST(Oracle, DisjointPairIsInconsistent) {
  auto o = saturate(ExternalOntology({OntDisj{"B", "Bbar"}}));
  EXPECT_TRUE(o->decide(Q({"B", "Bbar"}, std::nullopt)));
  EXPECT_FALSE(o->decide(Q({"B"}, std::nullopt)));
}

TEST(Oracle, DefinitionsWorkBothWays) {
  auto o = saturate(ExternalOntology({OntDef{"B0", {"A", "B"}}, OntSub{"A", "X"}}));
  EXPECT_TRUE(o->decide(Q({"A", "B"}, "B0")));
  EXPECT_TRUE(o->decide(Q({"B0"}, "X")));
  EXPECT_FALSE(o->decide(Q({"A"}, "B0")));
}

TEST(Oracle, AnswersAreMonotoneInLhs) {
  auto o = saturate(ExternalOntology({OntSub{"A", "B"}, OntConjSub{{"B", "C"}, "D"}}));
  EXPECT_FALSE(o->decide(Q({"A"}, "D")));
  EXPECT_TRUE(o->decide(Q({"A", "C"}, "D")));
  EXPECT_TRUE(o->decide(Q({"A", "C", "E"}, "D")));
}

TEST(Oracle, RoleFreeOntologiesMatchTruthTable) {
  Rng rng(21);
  const int n = 7;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    names.push_back("A" + std::to_string(i));
  auto name = [&] { return names[rng.below(n)]; };
  for (int round = 0; round < 150; ++round) {
    ExternalOntology o;
    for (int i = 0; i < 5; ++i)
      o.add(OntSub{name(), name()});
    for (int i = 0; i < 2; ++i)
      o.add(OntConjSub{{name(), name()}, name()});
    if (rng.chance(0.7))
      o.add(OntDisj{name(), name()});
    if (rng.chance(0.5))
      o.add(OntDef{name(), {name(), name()}});
    for (const auto &x : names)
      o.add(OntSub{x, x});
    auto sat = saturate(o);
    for (int q = 0; q < 30; ++q) {
      std::set<std::string> lhs{name()};
      if (rng.chance(0.5))
        lhs.insert(name());
      std::optional<std::string> rhs;
      if (rng.chance(0.8))
        rhs = name();
      ASSERT_EQ(sat->decide(Q(lhs, rhs)), truth_table_entails(o, names, lhs, rhs))
          << "round " << round << " query " << q;
    }
  }
}

TEST(Oracle, BuiltInBackendsAreConvex) {
  Rng rng(22);
  const int n = 6;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    names.push_back("A" + std::to_string(i));
  auto name = [&] { return names[rng.below(n)]; };
  int unions = 0;
  for (int round = 0; round < 300; ++round) {
    ExternalOntology o;
    for (int i = 0; i < 5; ++i)
      o.add(OntSub{name(), name()});
    o.add(OntConjSub{{name(), name()}, name()});
    if (rng.chance(0.5))
      o.add(OntDisj{name(), name()});
    for (const auto &x : names)
      o.add(OntSub{x, x});
    auto sat = saturate(o);
    std::set<std::string> lhs{name(), name()};
    std::string a1 = name(), a2 = name();
    if (!truth_table_entails_any(o, names, lhs, {a1, a2}))
      continue;
    ++unions;
    EXPECT_TRUE(sat->decide(Q(lhs, a1)) || sat->decide(Q(lhs, a2))) << "round " << round;
  }
  EXPECT_GT(unions, 20);
}

TEST(Oracle, KbOracleUsesClosure) {
  KbOracle o(K("sub A B\nsub B C\ndisj C D"));
  EXPECT_TRUE(o.decide(Q({"A"}, "C")));
  EXPECT_FALSE(o.decide(Q({"C"}, "A")));
  EXPECT_TRUE(o.decide(Q({"A", "D"}, std::nullopt)));
  EXPECT_FALSE(o.decide(Q({"A", "B"}, std::nullopt)));
}

TEST(Oracle, UnsupportedShapesAreReportedByDescription) {
  EXPECT_EQ(describe(OntSubEx{"A", "r", "B"}), "sub-ex A r B");
  EXPECT_EQ(describe(OntExSub{"r", "A", "B"}), "ex-sub r A B");
  EXPECT_EQ(describe(OntDisj{"A", "B"}), "disj A B");
}
