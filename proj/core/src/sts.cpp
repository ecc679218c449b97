#include "plr/sts.hpp"

#include "plr/intervals.hpp"

#include <algorithm>
#include <cassert>

namespace plr {

namespace {

bool intervals_hold(const SimpleConcept &lhs, const SimpleConcept &rhs) {
  for (const auto &k : rhs.constraints) {
    bool ok = false;
    for (auto it = lhs.constraints.lower_bound(Constraint{k.prop, Interval{0, 0}});
         it != lhs.constraints.end() && it->prop == k.prop; ++it)
      if (!it->iv.empty() && k.iv.contains(it->iv)) {
        ok = true;
        break;
      }
    if (!ok)
      return false;
  }
  return true;
}

template <class AtomCheck>
bool structural(const SimpleConcept &lhs, const SimpleConcept &rhs, AtomCheck &&atomHolds) {
  if (lhs.bottom)
    return true;
  if (rhs.bottom)
    return false;
  for (const auto &a : rhs.atoms)
    if (!atomHolds(lhs, a))
      return false;
  if (!intervals_hold(lhs, rhs))
    return false;
  for (const auto &r : rhs.restrictions) {
    bool found = false;
    for (const auto &l : lhs.restrictions) {
      if (l.role != r.role)
        continue;
      if (structural(l.filler, r.filler, atomHolds)) {
        found = true;
        break;
      }
    }
    if (!found)
      return false;
  }
  return true;
}

} // namespace

bool sts(const ClosureIndex &idx, const SimpleConcept &lhs, const SimpleConcept &rhs) {
  auto atomHolds = [&idx](const SimpleConcept &l, const ConceptName &a) {
    return std::any_of(l.atoms.begin(), l.atoms.end(),
                       [&](const ConceptName &x) { return idx.is_subclass(x.value, a.value); });
  };
  return structural(lhs, rhs, atomHolds);
}

bool sts(const ClosureIndex &idx, const ElementaryQuery &q) {
#ifndef NDEBUG
  assert(is_interval_safe(q.lhs, q.rhs));
#endif
  return sts(idx, q.lhs, q.rhs);
}

bool OracleMemo::entails(const std::set<ConceptName> &names, const ConceptName &atom) {
  if (names.empty())
    return false;
  auto key = std::make_pair(names, atom);
  if (auto it = memo_.find(key); it != memo_.end())
    return it->second;
  OracleQuery q;
  for (const auto &n : names)
    q.lhs.insert(n.value);
  q.rhs = atom.value;
  ++calls_;
  bool r = oracle_.decide(q);
  memo_.emplace(std::move(key), r);
  return r;
}

bool sts_oracle(OracleMemo &memo, const SimpleConcept &lhs, const SimpleConcept &rhs) {
  auto atomHolds = [&memo](const SimpleConcept &l, const ConceptName &a) { return memo.entails(l.atoms, a); };
  return structural(lhs, rhs, atomHolds);
}

bool sts_oracle(const OracleBackend &oracle, const SimpleConcept &lhs, const SimpleConcept &rhs) {
  OracleMemo memo(oracle);
  return sts_oracle(memo, lhs, rhs);
}

bool sts_oracle(const OracleBackend &oracle, const ElementaryQuery &q) {
#ifndef NDEBUG
  assert(is_interval_safe(q.lhs, q.rhs));
#endif
  return sts_oracle(oracle, q.lhs, q.rhs);
}

} // namespace plr
