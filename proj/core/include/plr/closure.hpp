#pragma once

#include "plr/model.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace plr {

// Reflexive-transitive subclass reachability plus disjointness labels over a
// knowledge base. Immutable after construction.
class ClosureIndex {
public:
  ClosureIndex() = default;

  bool is_subclass(const std::string &a, const std::string &b) const;
  // Holds iff some superclass of a is declared disjoint with some
  // superclass of b. a == b is allowed.
  bool disjoint(const std::string &a, const std::string &b) const;

  bool is_functional(const std::string &symbol) const { return functional_.count(symbol) > 0; }
  const std::set<std::string> &ranges(const std::string &role) const;

  // All b with a ⊑* b, sorted.
  std::vector<std::string> up(const std::string &a) const;
  const std::vector<std::string> &names() const { return names_; }
  bool known(const std::string &a) const { return ids_.count(a) > 0; }

  const std::set<std::string> &functional() const { return functional_; }
  const std::map<std::string, std::set<std::string>> &range_map() const { return ranges_; }
  const KbSignature &signature() const { return sig_; }

  friend ClosureIndex build_closure(const KnowledgeBase &kb);

private:
  int id(const std::string &a) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::vector<int>> up_;       // sorted
  std::vector<std::vector<int>> disjLabel_; // sorted union of disj partners over up(a)
  std::set<std::string> functional_;
  std::map<std::string, std::set<std::string>> ranges_;
  KbSignature sig_;
};

ClosureIndex build_closure(const KnowledgeBase &kb);

inline bool is_subclass(const ClosureIndex &idx, const std::string &a, const std::string &b) {
  return idx.is_subclass(a, b);
}

// Per-query reference: climbs the inclusion graph from a and b and looks
// for a declared disjoint pair. Slow; used to cross-check the index.
bool disjoint_by_search(const KnowledgeBase &kb, const std::string &a, const std::string &b);

} // namespace plr
