#include "plr/ibq.hpp"

#include <map>

namespace plr {

void check_shared_signature(const KnowledgeBase &k, const ExternalOntology &o) {
  auto ks = k.signature();
  auto os = o.signature();
  auto clash = [&](const std::string &s) { return os.roles.count(s) || os.concepts.count(s); };
  for (const auto &r : ks.roles)
    if (clash(r))
      throw SignatureError("role '" + r + "' occurs in both the knowledge base and the ontology");
  for (const auto &f : ks.functional)
    if (clash(f))
      throw SignatureError("'" + f + "' is functional in the knowledge base and occurs in the ontology");
  for (const auto &c : ks.concepts)
    if (os.roles.count(c))
      throw SignatureError("'" + c + "' is a concept in the knowledge base but a role in the ontology");
}

ShiftedAxioms shift_axioms(const KnowledgeBase &k, const ExternalOntology &o) {
  check_shared_signature(k, o);
  ShiftedAxioms out;
  out.oPlus = o;
  for (const auto &ax : k.axioms()) {
    if (auto *i = std::get_if<Inclusion>(&ax))
      out.oPlus.add(OntSub{i->sub, i->sup});
    else if (auto *d = std::get_if<Disjoint>(&ax))
      out.oPlus.add(OntDisj{d->a, d->b});
    else
      out.kMinus.add(ax);
  }
  return out;
}

KnowledgeBase compile(const KnowledgeBase &k, const ExternalOntology &o) {
  auto shifted = shift_axioms(k, o);
  auto sat = saturate(shifted.oPlus);
  KnowledgeBase out = shifted.kMinus;

  std::vector<std::string> consistent;
  for (const auto &a : sat->signature().concepts) {
    if (sat->unsatisfiable(a)) {
      out.add(Disjoint{a, a});
      continue;
    }
    consistent.push_back(a);
    for (const auto &b : sat->subsumers(a))
      if (b != a)
        out.add(Inclusion{a, b});
  }
  for (std::size_t i = 0; i < consistent.size(); ++i)
    for (std::size_t j = i + 1; j < consistent.size(); ++j) {
      OracleQuery q{{consistent[i], consistent[j]}, std::nullopt};
      if (sat->decide(q))
        out.add(Disjoint{consistent[i], consistent[j]});
    }
  return out;
}

namespace {

class FreshNames {
public:
  FreshNames(std::string prefix, std::set<std::string> taken)
      : prefix_(std::move(prefix)), taken_(std::move(taken)) {}

  std::string next() {
    while (true) {
      std::string n = prefix_ + std::to_string(counter_++);
      if (taken_.insert(n).second)
        return n;
    }
  }

private:
  std::string prefix_;
  std::set<std::string> taken_;
  std::size_t counter_ = 0;
};

std::set<std::string> names_in(const std::vector<FullConcept> &ps, const std::set<std::string> &reserved) {
  std::set<std::string> taken = reserved;
  for (const auto &p : ps) {
    auto s = signature_of(p);
    taken.insert(s.concepts.begin(), s.concepts.end());
    taken.insert(s.roles.begin(), s.roles.end());
    taken.insert(s.properties.begin(), s.properties.end());
  }
  return taken;
}

struct Definer {
  FreshNames fresh;
  ExternalOntology &defs;
  std::map<std::set<ConceptName>, std::string> byConj;

  std::string define(const std::set<ConceptName> &conj) {
    auto it = byConj.find(conj);
    if (it != byConj.end())
      return it->second;
    std::string b = fresh.next();
    defs.add(OntDef{ConceptName{b}, std::vector<ConceptName>(conj.begin(), conj.end())});
    byConj.emplace(conj, b);
    return b;
  }
};

void single_atom(SimpleConcept &c, Definer &def) {
  if (c.atoms.size() >= 2) {
    std::string b = def.define(c.atoms);
    c.atoms = {ConceptName{b}};
  }
  for (auto &r : c.restrictions)
    single_atom(r.filler, def);
  c.canonicalize();
}

} // namespace

SingleAtomResult single_atom_transform(const std::vector<FullConcept> &bp, const std::set<std::string> &reserved) {
  SingleAtomResult out;
  Definer def{FreshNames("_sa", names_in(bp, reserved)), out.definitions, {}};
  for (const auto &p : bp) {
    std::vector<SimpleConcept> ds = p.disjuncts();
    for (auto &d : ds)
      single_atom(d, def);
    out.policies.emplace_back(std::move(ds));
  }
  return out;
}

namespace {

struct RoleEliminator {
  const std::set<std::string> &shared;
  FreshNames fresh;
  Definer conj;
  ExternalOntology &defs;
  std::map<std::pair<std::string, std::string>, std::string> byRestriction;

  void run(SimpleConcept &c) {
    std::vector<Restriction> kept;
    for (auto &r : c.restrictions) {
      if (!shared.count(r.role.value)) {
        run(r.filler);
        kept.push_back(std::move(r));
        continue;
      }
      const auto &f = r.filler;
      if (f.bottom || f.atoms.empty() || !f.constraints.empty() || !f.restrictions.empty())
        throw PreconditionError("restriction on shared role '" + r.role.value +
                                "' has a filler outside the ontology fragment");
      std::string b = f.atoms.size() == 1 ? f.atoms.begin()->value : conj.define(f.atoms);
      auto key = std::make_pair(r.role.value, b);
      auto it = byRestriction.find(key);
      if (it == byRestriction.end()) {
        std::string x = fresh.next();
        defs.add(OntSubEx{ConceptName{x}, r.role, ConceptName{b}});
        defs.add(OntExSub{r.role, ConceptName{b}, ConceptName{x}});
        it = byRestriction.emplace(key, x).first;
      }
      c.atoms.insert(ConceptName{it->second});
    }
    c.restrictions = std::move(kept);
    c.canonicalize();
  }
};

} // namespace

SingleAtomResult eliminate_shared_roles(const std::vector<FullConcept> &policies,
                                        const std::set<std::string> &shared,
                                        const std::set<std::string> &reserved) {
  SingleAtomResult out;
  auto taken = names_in(policies, reserved);
  RoleEliminator el{shared, FreshNames("_sr", taken), Definer{FreshNames("_sb", taken), out.definitions, {}},
                    out.definitions, {}};
  for (const auto &p : policies) {
    std::vector<SimpleConcept> ds = p.disjuncts();
    for (auto &d : ds)
      el.run(d);
    out.policies.emplace_back(std::move(ds));
  }
  return out;
}

CompiledPolicies compile_with_policies(const KnowledgeBase &k, const ExternalOntology &o,
                                       const std::vector<FullConcept> &business, Rule5Policy rule5) {
  check_shared_signature(k, o);
  auto shifted = shift_axioms(k, o);
  auto sat = saturate(shifted.oPlus);
  ClosureIndex idx = build_closure(shifted.kMinus);
  auto mode = NormalizationMode::ibq(idx, *sat, rule5);

  std::vector<FullConcept> normalized;
  for (const auto &bp : business)
    normalized.push_back(normalize_full(mode, bp));

  std::set<std::string> reserved;
  auto ksig = k.signature();
  reserved.insert(ksig.concepts.begin(), ksig.concepts.end());
  reserved.insert(ksig.roles.begin(), ksig.roles.end());
  reserved.insert(ksig.properties.begin(), ksig.properties.end());
  reserved.insert(ksig.functional.begin(), ksig.functional.end());
  auto osig = o.signature();
  reserved.insert(osig.concepts.begin(), osig.concepts.end());
  reserved.insert(osig.roles.begin(), osig.roles.end());

  auto sa = single_atom_transform(normalized, reserved);
  ExternalOntology extended = o;
  extended.merge(sa.definitions);
  return {compile(k, extended), std::move(sa.policies), std::move(sa.definitions)};
}

} // namespace plr
