#pragma once

#include "plr/closure.hpp"
#include "plr/model.hpp"
#include "plr/oracle.hpp"

#include <map>
#include <set>
#include <string>

namespace plr {

// lhs must be normalized (or bottom) and lhs ⊑ rhs interval safe.
struct ElementaryQuery {
  const SimpleConcept &lhs;
  const SimpleConcept &rhs;
};

bool sts(const ClosureIndex &idx, const SimpleConcept &lhs, const SimpleConcept &rhs);
bool sts(const ClosureIndex &idx, const ElementaryQuery &q);

// Memo for oracle calls within one query, keyed by (name set, atom).
class OracleMemo {
public:
  explicit OracleMemo(const OracleBackend &oracle) : oracle_(oracle) {}
  bool entails(const std::set<ConceptName> &names, const ConceptName &atom);
  std::size_t calls() const { return calls_; }

private:
  const OracleBackend &oracle_;
  std::map<std::pair<std::set<ConceptName>, ConceptName>, bool> memo_;
  std::size_t calls_ = 0;
};

bool sts_oracle(OracleMemo &memo, const SimpleConcept &lhs, const SimpleConcept &rhs);
bool sts_oracle(const OracleBackend &oracle, const SimpleConcept &lhs, const SimpleConcept &rhs);
bool sts_oracle(const OracleBackend &oracle, const ElementaryQuery &q);

} // namespace plr
