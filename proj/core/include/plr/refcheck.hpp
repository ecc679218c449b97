#pragma once

#include "plr/model.hpp"
#include "plr/normalize.hpp"
#include "plr/oracle.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace plr {

struct FiniteInterpretation {
  int domainSize = 0;
  std::map<std::string, std::set<int>> conceptExt;
  std::map<std::string, std::set<std::pair<int, int>>> roleExt;
  std::map<std::string, std::set<std::pair<int, std::uint64_t>>> propExt;

  int add_element() { return domainSize++; }
};

struct PointedModel {
  FiniteInterpretation interp;
  int point = 0;
};

bool model_check(const FiniteInterpretation &interp, int element, const SimpleConcept &c);
bool model_check(const PointedModel &m, const SimpleConcept &c);
bool model_check(const PointedModel &m, const FullConcept &c);

bool axioms_hold(const FiniteInterpretation &interp, const KnowledgeBase &kb);

// c must be normalized for the mode and not bottom. In oracle mode a name
// holds at an element iff the oracle entails it from the element's names.
PointedModel canonical_model(const NormalizationMode &mode, const SimpleConcept &c);

struct RefcheckLimits {
  std::size_t maxNodes = 10;     // existential restrictions per disjunct of c
  std::size_t maxNames = 12;     // concept names in kb, c and d
  std::size_t maxEndpoints = 6;  // distinct endpoint values in c and d
};

// Decides kb (+ oracle) ⊨ c ⊑ d by searching tree-shaped counter-models with
// minimal labels and property values from the endpoint grid. Throws
// RefcheckLimitError beyond the limits.
bool brute_force_subsumes(const KnowledgeBase &kb, const FullConcept &c, const FullConcept &d,
                          const OracleBackend *oracle = nullptr, RefcheckLimits limits = {});

bool brute_force_satisfiable(const KnowledgeBase &kb, const FullConcept &c, const OracleBackend *oracle = nullptr,
                             RefcheckLimits limits = {});

} // namespace plr
