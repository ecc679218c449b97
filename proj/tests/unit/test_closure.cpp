#include "support.hpp"

#include "plr/closure.hpp"
#include "plr/generate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

using namespace plr;
using namespace plr::test;

namespace {

// Depth-first reachability over the raw inclusion edges.
std::set<std::string> reach(const KnowledgeBase &kb, const std::string &a) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto &ax : kb.axioms())
    if (const auto *inc = std::get_if<Inclusion>(&ax))
      adj[inc->sub.value].push_back(inc->sup.value);
  std::set<std::string> seen{a};
  std::vector<std::string> stack{a};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (const auto &y : adj[x])
      if (seen.insert(y).second)
        stack.push_back(y);
  }
  return seen;
}

KnowledgeBase random_kb(Rng &rng, int names, int inclusions, int disj) {
  KnowledgeBase kb;
  auto name = [&] { return "N" + std::to_string(rng.below(static_cast<std::uint64_t>(names))); };
  for (int i = 0; i < inclusions; ++i)
    kb.add(Inclusion{name(), name()});
  for (int i = 0; i < disj; ++i)
    kb.add(Disjoint{name(), name()});
  return kb;
}

} // namespace

TEST(Closure, ChainFromFixtureVocabulary) {
  auto idx = build_closure(K("sub Erase Update\nsub Update AnyProcessing"));
  EXPECT_TRUE(is_subclass(idx, "Erase", "AnyProcessing"));
  EXPECT_FALSE(is_subclass(idx, "AnyProcessing", "Erase"));
}

TEST(Closure, EmptyKbIsReflexiveOnly) {
  auto idx = build_closure(KnowledgeBase{});
  EXPECT_TRUE(idx.is_subclass("A", "A"));
  EXPECT_FALSE(idx.is_subclass("A", "B"));
  EXPECT_EQ(idx.up("A"), std::vector<std::string>{"A"});
  EXPECT_FALSE(idx.disjoint("A", "A"));
}

TEST(Closure, DisjointnessLiftsThroughSuperclasses) {
  auto idx = build_closure(K("sub A X\nsub B Y\ndisj X Y"));
  EXPECT_TRUE(idx.disjoint("A", "B"));
  EXPECT_TRUE(idx.disjoint("B", "A"));
  EXPECT_FALSE(idx.disjoint("A", "X"));
}

TEST(Closure, NameBelowBothSidesIsSelfDisjoint) {
  auto idx = build_closure(K("sub A X\nsub A Y\ndisj X Y"));
  EXPECT_TRUE(idx.disjoint("A", "A"));
  EXPECT_FALSE(idx.disjoint("X", "X"));
}

TEST(Closure, CyclesShareUpSets) {
  auto idx = build_closure(K("sub A B\nsub B A\nsub B C"));
  EXPECT_TRUE(idx.is_subclass("A", "B"));
  EXPECT_TRUE(idx.is_subclass("B", "A"));
  EXPECT_EQ(idx.up("A"), idx.up("B"));
}

TEST(Closure, FunctionalAndRangeTablesMirrorKb) {
  auto idx = build_closure(K("func r\nfunc-prop f\nrange r A\nrange r B"));
  EXPECT_TRUE(idx.is_functional("r"));
  EXPECT_TRUE(idx.is_functional("f"));
  EXPECT_FALSE(idx.is_functional("s"));
  EXPECT_EQ(idx.ranges("r"), (std::set<std::string>{"A", "B"}));
  EXPECT_TRUE(idx.ranges("s").empty());
}

TEST(Closure, RandomDagAgreesWithDepthFirstSearch) {
  Rng rng(11);
  for (int round = 0; round < 20; ++round) {
    auto kb = random_kb(rng, 30, 50, 0);
    auto idx = build_closure(kb);
    for (int a = 0; a < 30; ++a) {
      std::string na = "N" + std::to_string(a);
      auto r = reach(kb, na);
      for (int b = 0; b < 30; ++b) {
        std::string nb = "N" + std::to_string(b);
        EXPECT_EQ(idx.is_subclass(na, nb), r.count(nb) > 0) << na << " " << nb;
      }
    }
  }
}

TEST(Closure, ReflexiveTransitiveAndSymmetric) {
  Rng rng(12);
  for (int round = 0; round < 5; ++round) {
    auto kb = random_kb(rng, 100, 180, 8);
    auto idx = build_closure(kb);
    std::vector<std::string> names;
    for (int i = 0; i < 100; ++i)
      names.push_back("N" + std::to_string(i));
    for (const auto &a : names) {
      ASSERT_TRUE(idx.is_subclass(a, a));
      for (const auto &b : idx.up(a))
        for (const auto &c : idx.up(b))
          ASSERT_TRUE(idx.is_subclass(a, c));
    }
    for (std::size_t i = 0; i < names.size(); i += 3)
      for (std::size_t j = 0; j < names.size(); j += 7) {
        ASSERT_EQ(idx.disjoint(names[i], names[j]), idx.disjoint(names[j], names[i]));
        ASSERT_EQ(idx.disjoint(names[i], names[j]), disjoint_by_search(kb, names[i], names[j]));
      }
  }
}

TEST(Closure, AxiomOrderDoesNotMatter) {
  Rng rng(13);
  auto kb = random_kb(rng, 40, 60, 5);
  std::vector<Axiom> axioms(kb.axioms().begin(), kb.axioms().end());
  rng.shuffle(axioms);
  KnowledgeBase shuffled;
  for (const auto &a : axioms)
    shuffled.add(a);
  auto x = build_closure(kb), y = build_closure(shuffled);
  for (int a = 0; a < 40; ++a)
    for (int b = 0; b < 40; ++b) {
      std::string na = "N" + std::to_string(a), nb = "N" + std::to_string(b);
      ASSERT_EQ(x.is_subclass(na, nb), y.is_subclass(na, nb));
      ASSERT_EQ(x.disjoint(na, nb), y.disjoint(na, nb));
    }
}
