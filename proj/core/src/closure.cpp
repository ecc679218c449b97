#include "plr/closure.hpp"

#include <algorithm>
#include <deque>

namespace plr {

namespace {

bool sorted_intersects(const std::vector<int> &a, const std::vector<int> &b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return true;
  }
  return false;
}

const std::set<std::string> kNoRanges;

} // namespace

int ClosureIndex::id(const std::string &a) const {
  auto it = ids_.find(a);
  return it == ids_.end() ? -1 : it->second;
}

bool ClosureIndex::is_subclass(const std::string &a, const std::string &b) const {
  if (a == b)
    return true;
  int ia = id(a);
  int ib = id(b);
  if (ia < 0 || ib < 0)
    return false;
  const auto &u = up_[ia];
  return std::binary_search(u.begin(), u.end(), ib);
}

bool ClosureIndex::disjoint(const std::string &a, const std::string &b) const {
  int ia = id(a);
  int ib = id(b);
  if (ia < 0 || ib < 0)
    return false;
  return sorted_intersects(disjLabel_[ia], up_[ib]);
}

const std::set<std::string> &ClosureIndex::ranges(const std::string &role) const {
  auto it = ranges_.find(role);
  return it == ranges_.end() ? kNoRanges : it->second;
}

std::vector<std::string> ClosureIndex::up(const std::string &a) const {
  int ia = id(a);
  if (ia < 0)
    return {a};
  std::vector<std::string> out;
  for (int j : up_[ia])
    out.push_back(names_[j]);
  std::sort(out.begin(), out.end());
  return out;
}

ClosureIndex build_closure(const KnowledgeBase &kb) {
  ClosureIndex idx;
  idx.sig_ = kb.signature();

  for (const auto &n : idx.sig_.concepts) {
    idx.ids_.emplace(n, static_cast<int>(idx.names_.size()));
    idx.names_.push_back(n);
  }
  const std::size_t n = idx.names_.size();
  std::vector<std::vector<int>> succ(n);
  std::vector<std::vector<int>> partners(n);

  for (const auto &ax : kb.axioms()) {
    if (auto *inc = std::get_if<Inclusion>(&ax)) {
      succ[idx.ids_.at(inc->sub.value)].push_back(idx.ids_.at(inc->sup.value));
    } else if (auto *d = std::get_if<Disjoint>(&ax)) {
      int a = idx.ids_.at(d->a.value);
      int b = idx.ids_.at(d->b.value);
      partners[a].push_back(b);
      partners[b].push_back(a);
    } else if (auto *f = std::get_if<Functional>(&ax)) {
      idx.functional_.insert(f->symbol);
    } else if (auto *r = std::get_if<Range>(&ax)) {
      idx.ranges_[r->role.value].insert(r->cls.value);
    }
  }

  idx.up_.assign(n, {});
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    std::deque<int> queue{static_cast<int>(s)};
    seen[s] = 1;
    auto &u = idx.up_[s];
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      u.push_back(x);
      for (int y : succ[x])
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
    }
    std::sort(u.begin(), u.end());
  }

  idx.disjLabel_.assign(n, {});
  for (std::size_t s = 0; s < n; ++s) {
    auto &lab = idx.disjLabel_[s];
    for (int x : idx.up_[s])
      lab.insert(lab.end(), partners[x].begin(), partners[x].end());
    std::sort(lab.begin(), lab.end());
    lab.erase(std::unique(lab.begin(), lab.end()), lab.end());
  }
  return idx;
}

bool disjoint_by_search(const KnowledgeBase &kb, const std::string &a, const std::string &b) {
  auto climb = [&](const std::string &start) {
    std::set<std::string> reached{start};
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
      std::string x = stack.back();
      stack.pop_back();
      for (const auto &ax : kb.axioms())
        if (auto *inc = std::get_if<Inclusion>(&ax))
          if (inc->sub.value == x && reached.insert(inc->sup.value).second)
            stack.push_back(inc->sup.value);
    }
    return reached;
  };
  auto ua = climb(a);
  auto ub = climb(b);
  for (const auto &ax : kb.axioms())
    if (auto *d = std::get_if<Disjoint>(&ax)) {
      if (ua.count(d->a.value) && ub.count(d->b.value))
        return true;
      if (ua.count(d->b.value) && ub.count(d->a.value))
        return true;
    }
  return false;
}

} // namespace plr
