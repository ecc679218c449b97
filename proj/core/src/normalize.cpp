#include "plr/normalize.hpp"

#include <algorithm>
#include <map>

namespace plr {

NormalizationMode NormalizationMode::plain(const ClosureIndex &idx) {
  return NormalizationMode(&idx, nullptr, Rule5Policy::Gated);
}

NormalizationMode NormalizationMode::ibq(const ClosureIndex &kMinus, const OracleBackend &oracle,
                                         Rule5Policy rule5) {
  return NormalizationMode(&kMinus, &oracle, rule5);
}

namespace {

void conjoin(SimpleConcept &into, SimpleConcept &&c) {
  if (c.bottom)
    into.bottom = true;
  into.atoms.merge(c.atoms);
  into.constraints.merge(c.constraints);
  for (auto &r : c.restrictions)
    into.restrictions.push_back(std::move(r));
}

bool inconsistent_names(const NormalizationMode &mode, const std::set<ConceptName> &atoms) {
  if (atoms.empty())
    return false;
  if (mode.is_ibq()) {
    OracleQuery q;
    for (const auto &a : atoms)
      q.lhs.insert(a.value);
    return mode.oracle()->decide(q);
  }
  const auto &idx = mode.index();
  for (auto i = atoms.begin(); i != atoms.end(); ++i)
    for (auto j = i; j != atoms.end(); ++j)
      if (idx.disjoint(i->value, j->value))
        return true;
  return false;
}

SimpleConcept norm(const NormalizationMode &mode, SimpleConcept c) {
  const auto &idx = mode.index();
  if (c.bottom)
    return SimpleConcept::make_bottom();
  for (const auto &k : c.constraints)
    if (k.iv.empty())
      return SimpleConcept::make_bottom();

  // intervals on one functional property collapse to their intersection
  bool ungated = mode.is_ibq() && mode.rule5() == Rule5Policy::Ungated;
  std::map<PropertyName, Interval> merged;
  std::set<Constraint> kept;
  for (const auto &k : c.constraints) {
    if (!ungated && !idx.is_functional(k.prop.value)) {
      kept.insert(k);
      continue;
    }
    auto [it, fresh] = merged.emplace(k.prop, k.iv);
    if (!fresh) {
      it->second.lo = std::max(it->second.lo, k.iv.lo);
      it->second.hi = std::min(it->second.hi, k.iv.hi);
    }
  }
  for (const auto &[f, iv] : merged) {
    if (iv.empty())
      return SimpleConcept::make_bottom();
    kept.insert(Constraint{f, iv});
  }
  c.constraints = std::move(kept);

  // restrictions on one functional role collapse into one
  std::vector<Restriction> rs;
  std::map<RoleName, std::size_t> slot;
  for (auto &r : c.restrictions) {
    if (idx.is_functional(r.role.value)) {
      auto it = slot.find(r.role);
      if (it != slot.end()) {
        conjoin(rs[it->second].filler, std::move(r.filler));
        continue;
      }
      slot.emplace(r.role, rs.size());
    }
    rs.push_back(std::move(r));
  }

  for (auto &r : rs) {
    if (!r.filler.bottom)
      for (const auto &a : idx.ranges(r.role.value))
        r.filler.atoms.insert(ConceptName{a});
    r.filler = norm(mode, std::move(r.filler));
    if (r.filler.bottom)
      return SimpleConcept::make_bottom();
  }
  c.restrictions = std::move(rs);

  if (inconsistent_names(mode, c.atoms))
    return SimpleConcept::make_bottom();

  std::sort(c.restrictions.begin(), c.restrictions.end());
  c.restrictions.erase(std::unique(c.restrictions.begin(), c.restrictions.end()), c.restrictions.end());
  return c;
}

} // namespace

SimpleConcept normalize_simple(const NormalizationMode &mode, const SimpleConcept &c) {
  return norm(mode, c);
}

FullConcept normalize_full(const NormalizationMode &mode, const FullConcept &c) {
  std::vector<SimpleConcept> out;
  out.reserve(c.size());
  for (const auto &d : c.disjuncts())
    out.push_back(norm(mode, d));
  return FullConcept(std::move(out));
}

void check_oracle_signature(const OracleSignature &o, const ConceptSignature &c) {
  auto clash = [&](const std::string &s) { return o.roles.count(s) || o.concepts.count(s); };
  for (const auto &r : c.roles)
    if (clash(r))
      throw PreconditionError("role '" + r + "' is shared with the external ontology");
  for (const auto &f : c.properties)
    if (clash(f))
      throw PreconditionError("concrete property '" + f + "' is shared with the external ontology");
}

bool is_satisfiable(const NormalizationMode &mode, const FullConcept &c) {
  if (mode.is_ibq())
    check_oracle_signature(mode.oracle()->signature(), signature_of(c));
  for (const auto &d : c.disjuncts())
    if (!norm(mode, d).bottom)
      return true;
  return false;
}

} // namespace plr
