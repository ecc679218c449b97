#include "plr/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace plr {

namespace {

std::string join_names(const std::vector<ConceptName> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += " & ";
    s += v[i].value;
  }
  return s;
}

} // namespace

ExternalOntology::ExternalOntology(std::vector<OntAxiom> axioms) {
  for (auto &a : axioms)
    add(std::move(a));
}

void ExternalOntology::add(OntAxiom a) {
  if (auto *c = std::get_if<OntConjSub>(&a))
    std::sort(c->lhs.begin(), c->lhs.end());
  axioms_.insert(std::move(a));
}

void ExternalOntology::merge(const ExternalOntology &o) {
  for (const auto &a : o.axioms_)
    axioms_.insert(a);
}

OracleSignature ExternalOntology::signature() const {
  OracleSignature s;
  for (const auto &ax : axioms_) {
    std::visit(
        [&](const auto &a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, OntSub>) {
            s.concepts.insert(a.sub.value);
            s.concepts.insert(a.sup.value);
          } else if constexpr (std::is_same_v<T, OntConjSub>) {
            for (const auto &n : a.lhs)
              s.concepts.insert(n.value);
            s.concepts.insert(a.sup.value);
          } else if constexpr (std::is_same_v<T, OntSubEx>) {
            s.concepts.insert(a.sub.value);
            s.concepts.insert(a.filler.value);
            s.roles.insert(a.role.value);
          } else if constexpr (std::is_same_v<T, OntExSub>) {
            s.concepts.insert(a.filler.value);
            s.concepts.insert(a.sup.value);
            s.roles.insert(a.role.value);
          } else if constexpr (std::is_same_v<T, OntDisj>) {
            s.concepts.insert(a.a.value);
            s.concepts.insert(a.b.value);
          } else {
            s.concepts.insert(a.name.value);
            for (const auto &n : a.conj)
              s.concepts.insert(n.value);
          }
        },
        ax);
  }
  return s;
}

std::string describe(const OntAxiom &ax) {
  return std::visit(
      [](const auto &a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, OntSub>)
          return "sub " + a.sub.value + " " + a.sup.value;
        else if constexpr (std::is_same_v<T, OntConjSub>)
          return "sub " + join_names(a.lhs) + " " + a.sup.value;
        else if constexpr (std::is_same_v<T, OntSubEx>)
          return "sub-ex " + a.sub.value + " " + a.role.value + " " + a.filler.value;
        else if constexpr (std::is_same_v<T, OntExSub>)
          return "ex-sub " + a.role.value + " " + a.filler.value + " " + a.sup.value;
        else if constexpr (std::is_same_v<T, OntDisj>)
          return "disj " + a.a.value + " " + a.b.value;
        else
          return "def " + a.name.value + " = " + join_names(a.conj);
      },
      ax);
}

int SaturatedOracle::id(const std::string &a) const {
  auto it = ids_.find(a);
  return it == ids_.end() ? -1 : it->second;
}

std::shared_ptr<SaturatedOracle> saturate(const ExternalOntology &o) {
  auto sat = std::make_shared<SaturatedOracle>();
  SaturatedOracle &s = *sat;
  s.sig_ = o.signature();
  for (const auto &n : s.sig_.concepts) {
    s.ids_.emplace(n, static_cast<int>(s.names_.size()));
    s.names_.push_back(n);
  }
  std::map<std::string, int> roleIds;
  for (const auto &r : o.signature().roles)
    roleIds.emplace(r, static_cast<int>(roleIds.size()));

  const int n = static_cast<int>(s.names_.size());
  std::vector<std::vector<int>> told(n);
  std::vector<std::vector<std::pair<int, int>>> subEx(n); // x ⊑ ∃r.y
  std::vector<std::vector<std::pair<int, int>>> exSub(roleIds.size()); // ∃r.z ⊑ b

  auto idOf = [&](const ConceptName &c) { return s.ids_.at(c.value); };
  for (const auto &ax : o.axioms()) {
    if (auto *a = std::get_if<OntSub>(&ax)) {
      told[idOf(a->sub)].push_back(idOf(a->sup));
    } else if (auto *a = std::get_if<OntConjSub>(&ax)) {
      if (a->lhs.empty())
        throw PreconditionError("unsupported axiom (empty conjunction): " + describe(ax));
      SaturatedOracle::ConjRule r;
      for (const auto &c : a->lhs)
        r.lhs.push_back(idOf(c));
      r.sup = idOf(a->sup);
      s.conj_.push_back(std::move(r));
    } else if (auto *a = std::get_if<OntSubEx>(&ax)) {
      subEx[idOf(a->sub)].push_back({roleIds.at(a->role.value), idOf(a->filler)});
    } else if (auto *a = std::get_if<OntExSub>(&ax)) {
      exSub[roleIds.at(a->role.value)].push_back({idOf(a->filler), idOf(a->sup)});
    } else if (auto *a = std::get_if<OntDisj>(&ax)) {
      SaturatedOracle::ConjRule r;
      r.lhs = {idOf(a->a)};
      if (a->b != a->a)
        r.lhs.push_back(idOf(a->b));
      r.sup = -1;
      s.conj_.push_back(std::move(r));
    } else if (auto *a = std::get_if<OntDef>(&ax)) {
      if (a->conj.empty())
        throw PreconditionError("unsupported axiom (empty definition): " + describe(ax));
      SaturatedOracle::ConjRule r;
      for (const auto &c : a->conj) {
        told[idOf(a->name)].push_back(idOf(c));
        r.lhs.push_back(idOf(c));
      }
      r.sup = idOf(a->name);
      s.conj_.push_back(std::move(r));
    }
  }

  std::vector<std::vector<char>> S(n, std::vector<char>(n, 0));
  std::vector<std::vector<std::pair<int, int>>> edges(n);
  s.bot_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    S[a][a] = 1;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      if (s.bot_[a])
        continue;
      auto &row = S[a];
      auto set = [&](int b) {
        if (!row[b]) {
          row[b] = 1;
          changed = true;
        }
      };
      for (int x = 0; x < n; ++x) {
        if (!row[x])
          continue;
        for (int b : told[x])
          set(b);
        for (const auto &e : subEx[x])
          if (std::find(edges[a].begin(), edges[a].end(), e) == edges[a].end()) {
            edges[a].push_back(e);
            changed = true;
          }
      }
      for (const auto &r : s.conj_) {
        bool all = std::all_of(r.lhs.begin(), r.lhs.end(), [&](int l) { return row[l] != 0; });
        if (!all)
          continue;
        if (r.sup < 0) {
          s.bot_[a] = 1;
          changed = true;
          break;
        }
        set(r.sup);
      }
      if (s.bot_[a])
        continue;
      for (const auto &[role, y] : edges[a]) {
        if (s.bot_[y]) {
          s.bot_[a] = 1;
          changed = true;
          break;
        }
        for (const auto &[z, b] : exSub[role])
          if (S[y][z])
            set(b);
      }
    }
  }

  s.subs_.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (s.bot_[a] || S[a][b])
        s.subs_[a].push_back(b);
  return sat;
}

bool SaturatedOracle::close(std::vector<char> &in) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &r : conj_) {
      bool all = std::all_of(r.lhs.begin(), r.lhs.end(), [&](int l) { return in[l] != 0; });
      if (!all)
        continue;
      if (r.sup < 0 || bot_[r.sup])
        return true;
      if (!in[r.sup]) {
        for (int b : subs_[r.sup])
          in[b] = 1;
        changed = true;
      }
    }
  }
  return false;
}

bool SaturatedOracle::decide(const OracleQuery &q) const {
  if (q.lhs.empty())
    throw PreconditionError("oracle query with an empty left-hand side");
  std::vector<char> in(names_.size(), 0);
  bool inconsistent = false;
  for (const auto &a : q.lhs) {
    int i = id(a);
    if (i < 0)
      continue;
    if (bot_[i])
      inconsistent = true;
    for (int b : subs_[i])
      in[b] = 1;
  }
  if (!inconsistent)
    inconsistent = close(in);
  if (inconsistent)
    return true;
  if (!q.rhs)
    return false;
  int r = id(*q.rhs);
  if (r < 0)
    return q.lhs.count(*q.rhs) > 0;
  return in[r] != 0;
}

std::vector<std::string> SaturatedOracle::subsumers(const std::string &a) const {
  int i = id(a);
  if (i < 0)
    return {a};
  std::vector<std::string> out;
  for (int b : subs_[i])
    out.push_back(names_[b]);
  return out;
}

bool SaturatedOracle::unsatisfiable(const std::string &a) const {
  int i = id(a);
  if (i < 0)
    return false;
  if (bot_[i])
    return true;
  std::vector<char> in(names_.size(), 0);
  for (int b : subs_[i])
    in[b] = 1;
  return close(in);
}

KbOracle::KbOracle(const KnowledgeBase &kb) : idx_(build_closure(kb)) {
  sig_.concepts = idx_.signature().concepts;
}

bool KbOracle::decide(const OracleQuery &q) const {
  if (q.lhs.empty())
    throw PreconditionError("oracle query with an empty left-hand side");
  for (auto i = q.lhs.begin(); i != q.lhs.end(); ++i)
    for (auto j = i; j != q.lhs.end(); ++j)
      if (idx_.disjoint(*i, *j))
        return true;
  if (!q.rhs)
    return false;
  for (const auto &a : q.lhs)
    if (idx_.is_subclass(a, *q.rhs))
      return true;
  return false;
}

} // namespace plr
