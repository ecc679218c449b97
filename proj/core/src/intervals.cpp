#include "plr/intervals.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace plr {

void add_endpoints(const SimpleConcept &c, EndpointProfile &out) {
  for (const auto &k : c.constraints) {
    if (k.iv.empty())
      continue;
    auto &m = out[k.prop.value];
    m[k.iv.lo] |= kLower;
    m[k.iv.hi] |= kUpper;
  }
  for (const auto &r : c.restrictions)
    add_endpoints(r.filler, out);
}

void add_endpoints(const FullConcept &c, EndpointProfile &out) {
  for (const auto &s : c.disjuncts())
    add_endpoints(s, out);
}

EndpointProfile endpoint_profile(const FullConcept &d) {
  EndpointProfile p;
  add_endpoints(d, p);
  return p;
}

namespace {

void collect_intervals(const SimpleConcept &c, std::map<std::string, std::vector<Interval>> &out) {
  for (const auto &k : c.constraints)
    out[k.prop.value].push_back(k.iv);
  for (const auto &r : c.restrictions)
    collect_intervals(r.filler, out);
}

} // namespace

EndpointProfile relevant_profile(const SimpleConcept &c, const EndpointProfile &p) {
  std::map<std::string, std::vector<Interval>> ivs;
  collect_intervals(c, ivs);
  EndpointProfile out;
  for (const auto &[prop, list] : ivs) {
    auto it = p.find(prop);
    if (it == p.end())
      continue;
    for (const auto &[v, role] : it->second)
      for (const auto &iv : list)
        if (iv.contains(v)) {
          out[prop][v] = role;
          break;
        }
  }
  return out;
}

bool profile_covers(const EndpointProfile &declared, const EndpointProfile &query, Splitter s) {
  for (const auto &[prop, m] : query) {
    auto it = declared.find(prop);
    if (it == declared.end()) {
      if (!m.empty())
        return false;
      continue;
    }
    for (const auto &[v, role] : m) {
      auto jt = it->second.find(v);
      if (jt == it->second.end())
        return false;
      if (s == Splitter::Refined && (jt->second & role) != role)
        return false;
    }
  }
  return true;
}

SplitPlan SplitPlan::build(const EndpointProfile &profile, Splitter s) {
  SplitPlan plan;
  plan.splitter = s;
  for (const auto &[prop, m] : profile) {
    auto &b = plan.perProperty[prop];
    for (const auto &[v, role] : m) {
      if (s == Splitter::Naive) {
        b.push_back(v);
        b.push_back(v + 1);
      } else {
        if (role & kLower)
          b.push_back(v);
        if (role & kUpper)
          b.push_back(v + 1);
      }
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  return plan;
}

std::vector<Interval> SplitPlan::pieces(const std::string &prop, const Interval &iv) const {
  if (iv.empty())
    return {iv};
  std::vector<std::uint64_t> cuts;
  auto it = perProperty.find(prop);
  if (it != perProperty.end()) {
    auto lo = std::upper_bound(it->second.begin(), it->second.end(), iv.lo);
    auto hi = std::upper_bound(lo, it->second.end(), iv.hi);
    cuts.assign(lo, hi);
  }
  if (splitter == Splitter::Naive) {
    // once anything is cut, the bounds themselves become singletons too
    if (!cuts.empty() && iv.hi > iv.lo) {
      cuts.push_back(iv.lo + 1);
      cuts.push_back(iv.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  std::vector<Interval> out;
  std::uint64_t start = iv.lo;
  for (auto c : cuts) {
    out.push_back(Interval{start, c - 1});
    start = c;
  }
  out.push_back(Interval{start, iv.hi});
  return out;
}

bool is_interval_safe(const SimpleConcept &c, const SimpleConcept &d) {
  std::map<std::string, std::vector<Interval>> ci, di;
  collect_intervals(c, ci);
  collect_intervals(d, di);
  for (const auto &[prop, list] : ci) {
    auto it = di.find(prop);
    if (it == di.end())
      continue;
    for (const auto &a : list)
      for (const auto &b : it->second)
        if (a.overlaps(b) && !b.contains(a))
          return false;
  }
  return true;
}

bool is_interval_safe(const FullConcept &c, const FullConcept &d) {
  for (const auto &x : c.disjuncts())
    for (const auto &y : d.disjuncts())
      if (!is_interval_safe(x, y))
        return false;
  return true;
}

namespace {

using Memo = std::unordered_map<SimpleConcept, std::vector<SimpleConcept>, ConceptHash>;

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
    return std::numeric_limits<std::size_t>::max();
  return a * b;
}

const std::vector<SimpleConcept> &split_memo(const SimpleConcept &c, const SplitPlan &plan, Memo &memo) {
  if (auto it = memo.find(c); it != memo.end())
    return it->second;

  std::vector<SimpleConcept> out;
  if (c.bottom) {
    out.push_back(c);
  } else {
    std::vector<std::pair<const Constraint *, std::vector<Interval>>> kopts;
    for (const auto &k : c.constraints)
      kopts.emplace_back(&k, plan.pieces(k.prop.value, k.iv));
    std::vector<std::vector<SimpleConcept>> ropts;
    for (const auto &r : c.restrictions)
      ropts.push_back(split_memo(r.filler, plan, memo));

    std::vector<std::size_t> odo(kopts.size() + ropts.size(), 0);
    while (true) {
      SimpleConcept s;
      s.atoms = c.atoms;
      for (std::size_t i = 0; i < kopts.size(); ++i)
        s.constraints.insert(Constraint{kopts[i].first->prop, kopts[i].second[odo[i]]});
      for (std::size_t j = 0; j < ropts.size(); ++j)
        s.restrictions.push_back(Restriction{c.restrictions[j].role, ropts[j][odo[kopts.size() + j]]});
      std::sort(s.restrictions.begin(), s.restrictions.end());
      s.restrictions.erase(std::unique(s.restrictions.begin(), s.restrictions.end()), s.restrictions.end());
      out.push_back(std::move(s));
      if (plan.onPiece)
        plan.onPiece();

      bool done = true;
      for (std::size_t pos = odo.size(); pos-- > 0;) {
        std::size_t lim = pos < kopts.size() ? kopts[pos].second.size() : ropts[pos - kopts.size()].size();
        if (++odo[pos] < lim) {
          done = false;
          break;
        }
        odo[pos] = 0;
      }
      if (done)
        break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return memo.emplace(c, std::move(out)).first->second;
}

} // namespace

std::vector<SimpleConcept> split_simple(const SimpleConcept &c, const SplitPlan &plan) {
  Memo memo;
  return split_memo(c, plan, memo);
}

FullConcept split_with(const FullConcept &c, const SplitPlan &plan) {
  Memo memo;
  std::vector<SimpleConcept> out;
  for (const auto &d : c.disjuncts()) {
    const auto &parts = split_memo(d, plan, memo);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return FullConcept(std::move(out));
}

FullConcept split(const FullConcept &c, const FullConcept &d, Splitter s) {
  return split_with(c, SplitPlan::build(endpoint_profile(d), s));
}

FullConcept split_naive(const FullConcept &c, const FullConcept &d) { return split(c, d, Splitter::Naive); }

FullConcept split_refined(const FullConcept &c, const FullConcept &d) {
  return split(c, d, Splitter::Refined);
}

SplitEnumerator::SplitEnumerator(const SimpleConcept &c, const SplitPlan &plan) : base_(c) {
  if (c.bottom)
    return;
  Memo memo;
  for (const auto &k : c.constraints) {
    constraintOptions_.emplace_back(k.prop, plan.pieces(k.prop.value, k.iv));
    total_ = sat_mul(total_, constraintOptions_.back().second.size());
  }
  for (const auto &r : c.restrictions) {
    restrictionOptions_.emplace_back(r.role, split_memo(r.filler, plan, memo));
    total_ = sat_mul(total_, restrictionOptions_.back().second.size());
  }
  odometer_.assign(constraintOptions_.size() + restrictionOptions_.size(), 0);
}

bool SplitEnumerator::next(SimpleConcept &out) {
  if (done_)
    return false;
  if (base_.bottom) {
    out = base_;
    done_ = true;
    return true;
  }
  SimpleConcept s;
  s.atoms = base_.atoms;
  const std::size_t nk = constraintOptions_.size();
  for (std::size_t i = 0; i < nk; ++i)
    s.constraints.insert(Constraint{constraintOptions_[i].first, constraintOptions_[i].second[odometer_[i]]});
  for (std::size_t j = 0; j < restrictionOptions_.size(); ++j)
    s.restrictions.push_back(
        Restriction{restrictionOptions_[j].first, restrictionOptions_[j].second[odometer_[nk + j]]});
  std::sort(s.restrictions.begin(), s.restrictions.end());
  s.restrictions.erase(std::unique(s.restrictions.begin(), s.restrictions.end()), s.restrictions.end());
  out = std::move(s);

  std::size_t pos = odometer_.size();
  while (true) {
    if (pos == 0) {
      done_ = true;
      break;
    }
    --pos;
    std::size_t lim =
        pos < nk ? constraintOptions_[pos].second.size() : restrictionOptions_[pos - nk].second.size();
    if (++odometer_[pos] < lim)
      break;
    odometer_[pos] = 0;
  }
  return true;
}

} // namespace plr
