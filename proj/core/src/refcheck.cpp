#include "plr/refcheck.hpp"

#include "plr/closure.hpp"

#include <algorithm>
#include <optional>

namespace plr {

bool model_check(const FiniteInterpretation &I, int e, const SimpleConcept &c) {
  if (c.bottom)
    return false;
  for (const auto &a : c.atoms) {
    auto it = I.conceptExt.find(a.value);
    if (it == I.conceptExt.end() || !it->second.count(e))
      return false;
  }
  for (const auto &k : c.constraints) {
    auto it = I.propExt.find(k.prop.value);
    if (it == I.propExt.end())
      return false;
    bool ok = false;
    for (auto p = it->second.lower_bound({e, 0}); p != it->second.end() && p->first == e; ++p)
      if (k.iv.contains(p->second)) {
        ok = true;
        break;
      }
    if (!ok)
      return false;
  }
  for (const auto &r : c.restrictions) {
    auto it = I.roleExt.find(r.role.value);
    if (it == I.roleExt.end())
      return false;
    bool ok = false;
    for (auto p = it->second.lower_bound({e, 0}); p != it->second.end() && p->first == e; ++p)
      if (model_check(I, p->second, r.filler)) {
        ok = true;
        break;
      }
    if (!ok)
      return false;
  }
  return true;
}

bool model_check(const PointedModel &m, const SimpleConcept &c) { return model_check(m.interp, m.point, c); }

bool model_check(const PointedModel &m, const FullConcept &c) {
  for (const auto &d : c.disjuncts())
    if (model_check(m.interp, m.point, d))
      return true;
  return false;
}

bool axioms_hold(const FiniteInterpretation &I, const KnowledgeBase &kb) {
  static const std::set<int> none;
  auto ext = [&](const ConceptName &a) -> const std::set<int> & {
    auto it = I.conceptExt.find(a.value);
    return it == I.conceptExt.end() ? none : it->second;
  };
  for (const auto &ax : kb.axioms()) {
    if (auto *inc = std::get_if<Inclusion>(&ax)) {
      const auto &sup = ext(inc->sup);
      for (int x : ext(inc->sub))
        if (!sup.count(x))
          return false;
    } else if (auto *d = std::get_if<Disjoint>(&ax)) {
      const auto &b = ext(d->b);
      for (int x : ext(d->a))
        if (b.count(x))
          return false;
    } else if (auto *f = std::get_if<Functional>(&ax)) {
      if (auto it = I.roleExt.find(f->symbol); it != I.roleExt.end()) {
        std::map<int, int> succ;
        for (const auto &[x, y] : it->second)
          if (!succ.emplace(x, y).second)
            return false;
      }
      if (auto it = I.propExt.find(f->symbol); it != I.propExt.end()) {
        std::map<int, std::uint64_t> val;
        for (const auto &[x, v] : it->second)
          if (!val.emplace(x, v).second)
            return false;
      }
    } else if (auto *r = std::get_if<Range>(&ax)) {
      if (auto it = I.roleExt.find(r->role.value); it != I.roleExt.end()) {
        const auto &a = ext(r->cls);
        for (const auto &[x, y] : it->second)
          if (!a.count(y))
            return false;
      }
    }
  }
  return true;
}

namespace {

std::set<std::string> names_holding(const NormalizationMode &mode, const std::set<ConceptName> &atoms,
                                    const std::set<std::string> &candidates) {
  std::set<std::string> out;
  if (atoms.empty())
    return out;
  if (mode.is_ibq()) {
    OracleQuery q;
    for (const auto &a : atoms)
      q.lhs.insert(a.value);
    for (const auto &n : candidates) {
      q.rhs = n;
      if (mode.oracle()->decide(q))
        out.insert(n);
    }
  } else {
    for (const auto &a : atoms)
      for (auto &u : mode.index().up(a.value))
        out.insert(u);
  }
  return out;
}

void build_canonical(const NormalizationMode &mode, const SimpleConcept &c, int e,
                     const std::set<std::string> &candidates, FiniteInterpretation &I) {
  for (const auto &n : names_holding(mode, c.atoms, candidates))
    I.conceptExt[n].insert(e);
  for (const auto &k : c.constraints)
    I.propExt[k.prop.value].insert({e, k.iv.hi});
  for (const auto &r : c.restrictions) {
    int child = I.add_element();
    I.roleExt[r.role.value].insert({e, child});
    build_canonical(mode, r.filler, child, candidates, I);
  }
}

} // namespace

PointedModel canonical_model(const NormalizationMode &mode, const SimpleConcept &c) {
  if (c.bottom)
    throw PreconditionError("canonical model of bottom");
  std::set<std::string> candidates;
  if (mode.is_ibq()) {
    candidates = mode.oracle()->signature().concepts;
    ConceptSignature sig;
    collect_signature(c, sig);
    candidates.insert(sig.concepts.begin(), sig.concepts.end());
    const auto &k = mode.index().signature().concepts;
    candidates.insert(k.begin(), k.end());
  }
  PointedModel m;
  m.point = m.interp.add_element();
  build_canonical(mode, c, m.point, candidates, m.interp);
  return m;
}

namespace {

struct Node {
  std::set<std::string> names;
  bool bottom = false;
  std::vector<std::pair<std::string, int>> kids;
  std::map<std::string, std::vector<Interval>> functionalProps;
  std::vector<Constraint> props;
};

struct Slot {
  int node;
  std::string prop;
  std::vector<std::uint64_t> candidates;
};

class Search {
public:
  Search(const KnowledgeBase &kb, const ClosureIndex &idx, const OracleBackend *oracle,
         const std::set<std::string> &allNames, const std::map<std::string, std::vector<Interval>> &dIntervals,
         const std::map<std::string, std::set<std::uint64_t>> &endpoints)
      : kb_(kb), idx_(idx), oracle_(oracle), allNames_(allNames), dIntervals_(dIntervals), endpoints_(endpoints) {}

  // Looks for a model of kb in which the root satisfies ci and, if d is
  // given, falsifies d.
  bool find_model(const SimpleConcept &ci, const FullConcept *d) {
    nodes_.clear();
    nodes_.emplace_back();
    build(ci, 0);
    for (auto &n : nodes_)
      if (n.bottom || !close_labels(n.names))
        return false;

    slots_.clear();
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      for (const auto &[f, ivs] : nodes_[i].functionalProps)
        if (!add_slot(i, f, ivs))
          return false;
      for (const auto &k : nodes_[i].props)
        if (!add_slot(i, k.prop.value, {k.iv}))
          return false;
    }
    values_.assign(slots_.size(), 0);
    return enumerate(0, ci, d);
  }

private:
  int build_child(int parent, const std::string &role) {
    if (idx_.is_functional(role))
      for (const auto &[r, k] : nodes_[parent].kids)
        if (r == role)
          return k;
    int k = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[parent].kids.emplace_back(role, k);
    for (const auto &a : idx_.ranges(role))
      nodes_[k].names.insert(a);
    return k;
  }

  void build(const SimpleConcept &c, int n) {
    if (c.bottom)
      nodes_[n].bottom = true;
    for (const auto &a : c.atoms)
      nodes_[n].names.insert(a.value);
    for (const auto &k : c.constraints) {
      if (idx_.is_functional(k.prop.value))
        nodes_[n].functionalProps[k.prop.value].push_back(k.iv);
      else
        nodes_[n].props.push_back(k);
    }
    for (const auto &r : c.restrictions) {
      int k = build_child(n, r.role.value);
      build(r.filler, k);
    }
  }

  // Smallest label set containing `names` that is closed under the
  // knowledge base (and the oracle). False if it is inconsistent.
  bool close_labels(std::set<std::string> &names) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::set<std::string> next;
      for (const auto &a : names)
        for (auto &u : idx_.up(a))
          next.insert(u);
      if (oracle_ && !next.empty()) {
        OracleQuery q;
        q.lhs = next;
        if (oracle_->decide(q))
          return false;
        for (const auto &n : allNames_) {
          if (next.count(n))
            continue;
          q.rhs = n;
          if (oracle_->decide(q))
            next.insert(n);
        }
      }
      if (next != names) {
        names = std::move(next);
        changed = true;
      }
    }
    for (auto i = names.begin(); i != names.end(); ++i)
      for (auto j = i; j != names.end(); ++j)
        if (idx_.disjoint(*i, *j))
          return false;
    return true;
  }

  bool add_slot(int node, const std::string &f, const std::vector<Interval> &ivs) {
    std::set<std::uint64_t> grid;
    if (auto it = endpoints_.find(f); it != endpoints_.end())
      for (auto e : it->second) {
        if (e > 0)
          grid.insert(e - 1);
        grid.insert(e);
        grid.insert(e + 1);
      }
    // one value per membership pattern over d's intervals on f
    std::map<std::vector<bool>, std::uint64_t> byPattern;
    static const std::vector<Interval> noIntervals;
    auto dit = dIntervals_.find(f);
    const auto &divs = dit == dIntervals_.end() ? noIntervals : dit->second;
    for (auto v : grid) {
      bool inAll = std::all_of(ivs.begin(), ivs.end(), [v](const Interval &iv) { return iv.contains(v); });
      if (!inAll)
        continue;
      std::vector<bool> pattern;
      for (const auto &iv : divs)
        pattern.push_back(iv.contains(v));
      byPattern.emplace(std::move(pattern), v);
    }
    if (byPattern.empty())
      return false;
    Slot s{node, f, {}};
    for (const auto &[p, v] : byPattern)
      s.candidates.push_back(v);
    slots_.push_back(std::move(s));
    return true;
  }

  FiniteInterpretation materialize() const {
    FiniteInterpretation I;
    I.domainSize = static_cast<int>(nodes_.size());
    for (int i = 0; i < I.domainSize; ++i) {
      for (const auto &n : nodes_[i].names)
        I.conceptExt[n].insert(i);
      for (const auto &[r, k] : nodes_[i].kids)
        I.roleExt[r].insert({i, k});
    }
    for (std::size_t s = 0; s < slots_.size(); ++s)
      I.propExt[slots_[s].prop].insert({slots_[s].node, slots_[s].candidates[values_[s]]});
    return I;
  }

  bool enumerate(std::size_t s, const SimpleConcept &ci, const FullConcept *d) {
    if (s == slots_.size()) {
      FiniteInterpretation I = materialize();
      if (!axioms_hold(I, kb_))
        return false;
      if (!model_check(I, 0, ci))
        throw std::logic_error("brute force: constructed model misses the concept");
      PointedModel m{std::move(I), 0};
      return d == nullptr || !model_check(m, *d);
    }
    for (std::size_t v = 0; v < slots_[s].candidates.size(); ++v) {
      values_[s] = v;
      if (enumerate(s + 1, ci, d))
        return true;
    }
    return false;
  }

  const KnowledgeBase &kb_;
  const ClosureIndex &idx_;
  const OracleBackend *oracle_;
  const std::set<std::string> &allNames_;
  const std::map<std::string, std::vector<Interval>> &dIntervals_;
  const std::map<std::string, std::set<std::uint64_t>> &endpoints_;
  std::vector<Node> nodes_;
  std::vector<Slot> slots_;
  std::vector<std::size_t> values_;
};

void gather(const SimpleConcept &c, std::map<std::string, std::vector<Interval>> &ivs,
            std::map<std::string, std::set<std::uint64_t>> &eps) {
  for (const auto &k : c.constraints) {
    ivs[k.prop.value].push_back(k.iv);
    eps[k.prop.value].insert(k.iv.lo);
    eps[k.prop.value].insert(k.iv.hi);
  }
  for (const auto &r : c.restrictions)
    gather(r.filler, ivs, eps);
}

// Returns true iff some disjunct of c has a model falsifying d (or any model
// when d is null).
bool counter_model_exists(const KnowledgeBase &kb, const FullConcept &c, const FullConcept *d,
                          const OracleBackend *oracle, const RefcheckLimits &limits) {
  ClosureIndex idx = build_closure(kb);

  std::set<std::string> names = idx.signature().concepts;
  auto cs = signature_of(c);
  names.insert(cs.concepts.begin(), cs.concepts.end());
  if (d) {
    auto ds = signature_of(*d);
    names.insert(ds.concepts.begin(), ds.concepts.end());
  }
  if (names.size() > limits.maxNames)
    throw RefcheckLimitError("too many concept names for brute force (" + std::to_string(names.size()) + ")");
  std::set<std::string> candidates = names;
  if (oracle)
    candidates.insert(oracle->signature().concepts.begin(), oracle->signature().concepts.end());

  std::map<std::string, std::vector<Interval>> cIvs, dIvs;
  std::map<std::string, std::set<std::uint64_t>> eps;
  for (const auto &x : c.disjuncts())
    gather(x, cIvs, eps);
  if (d)
    for (const auto &x : d->disjuncts())
      gather(x, dIvs, eps);
  std::set<std::uint64_t> values;
  for (const auto &[f, s] : eps)
    values.insert(s.begin(), s.end());
  if (values.size() > limits.maxEndpoints)
    throw RefcheckLimitError("too many distinct endpoints for brute force (" + std::to_string(values.size()) + ")");

  Search search(kb, idx, oracle, candidates, dIvs, eps);
  for (const auto &ci : c.disjuncts()) {
    if (restriction_count(ci) > limits.maxNodes)
      throw RefcheckLimitError("too many existential restrictions for brute force");
    if (search.find_model(ci, d))
      return true;
  }
  return false;
}

} // namespace

bool brute_force_subsumes(const KnowledgeBase &kb, const FullConcept &c, const FullConcept &d,
                          const OracleBackend *oracle, RefcheckLimits limits) {
  return !counter_model_exists(kb, c, &d, oracle, limits);
}

bool brute_force_satisfiable(const KnowledgeBase &kb, const FullConcept &c, const OracleBackend *oracle,
                             RefcheckLimits limits) {
  return counter_model_exists(kb, c, nullptr, oracle, limits);
}

} // namespace plr
