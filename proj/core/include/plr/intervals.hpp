#pragma once

#include "plr/model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace plr {

enum class Splitter { Naive, Refined };

enum EndpointRole : std::uint8_t { kLower = 1, kUpper = 2, kBoth = 3 };

// property -> endpoint value -> role mask
using EndpointProfile = std::map<std::string, std::map<std::uint64_t, std::uint8_t>>;

void add_endpoints(const SimpleConcept &c, EndpointProfile &out);
void add_endpoints(const FullConcept &c, EndpointProfile &out);
EndpointProfile endpoint_profile(const FullConcept &d);
// Restricts p to the properties of c and to endpoints inside one of c's
// intervals on that property. Splitting c only ever looks at those.
EndpointProfile relevant_profile(const SimpleConcept &c, const EndpointProfile &p);
// True if splitting against `declared` is at least as fine as splitting
// against `query` for the given algorithm.
bool profile_covers(const EndpointProfile &declared, const EndpointProfile &query, Splitter s);

struct SplitPlan {
  Splitter splitter = Splitter::Naive;
  // Boundaries per property: a value p starts a new piece at p.
  std::map<std::string, std::vector<std::uint64_t>> perProperty;
  // Called once per produced piece; may throw to abort a large split.
  std::function<void()> onPiece;

  static SplitPlan build(const EndpointProfile &profile, Splitter s);
  std::vector<Interval> pieces(const std::string &prop, const Interval &iv) const;
};

bool is_interval_safe(const FullConcept &c, const FullConcept &d);
bool is_interval_safe(const SimpleConcept &c, const SimpleConcept &d);

std::vector<SimpleConcept> split_simple(const SimpleConcept &c, const SplitPlan &plan);
FullConcept split_with(const FullConcept &c, const SplitPlan &plan);
FullConcept split_naive(const FullConcept &c, const FullConcept &d);
FullConcept split_refined(const FullConcept &c, const FullConcept &d);
FullConcept split(const FullConcept &c, const FullConcept &d, Splitter s);

// Enumerates the disjuncts of the split of one simple concept without
// materializing the top-level product.
class SplitEnumerator {
public:
  SplitEnumerator(const SimpleConcept &c, const SplitPlan &plan);

  bool next(SimpleConcept &out);
  // Number of combinations, saturating at SIZE_MAX.
  std::size_t combinations() const { return total_; }

private:
  const SimpleConcept &base_;
  std::vector<std::pair<PropertyName, std::vector<Interval>>> constraintOptions_;
  std::vector<std::pair<RoleName, std::vector<SimpleConcept>>> restrictionOptions_;
  std::vector<std::size_t> odometer_;
  std::size_t total_ = 1;
  bool done_ = false;
};

} // namespace plr
