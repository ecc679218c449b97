#include "plr/model.hpp"

#include <algorithm>

namespace plr {

namespace {

template <class T> int cmp3(const T &a, const T &b) {
  if (a < b)
    return -1;
  if (b < a)
    return 1;
  return 0;
}

std::size_t mix(std::size_t h, std::size_t v) {
  // 64-bit variant of boost::hash_combine
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4));
}

} // namespace

SimpleConcept SimpleConcept::make_bottom() {
  SimpleConcept c;
  c.bottom = true;
  return c;
}

bool SimpleConcept::is_top() const {
  return !bottom && atoms.empty() && constraints.empty() && restrictions.empty();
}

void SimpleConcept::canonicalize() {
  for (auto &r : restrictions)
    r.filler.canonicalize();
  std::sort(restrictions.begin(), restrictions.end());
  restrictions.erase(std::unique(restrictions.begin(), restrictions.end()), restrictions.end());
}

SimpleConcept &SimpleConcept::atom(std::string a) {
  atoms.insert(ConceptName{std::move(a)});
  return *this;
}

SimpleConcept &SimpleConcept::interval(std::string f, std::uint64_t lo, std::uint64_t hi) {
  constraints.insert(Constraint{PropertyName{std::move(f)}, Interval{lo, hi}});
  return *this;
}

SimpleConcept &SimpleConcept::some(std::string r, SimpleConcept filler) {
  filler.canonicalize();
  Restriction res{RoleName{std::move(r)}, std::move(filler)};
  auto it = std::lower_bound(restrictions.begin(), restrictions.end(), res);
  if (it == restrictions.end() || !(*it == res))
    restrictions.insert(it, std::move(res));
  return *this;
}

int compare(const Restriction &a, const Restriction &b) {
  if (int c = cmp3(a.role, b.role))
    return c;
  return compare(a.filler, b.filler);
}

int compare(const SimpleConcept &a, const SimpleConcept &b) {
  if (a.bottom != b.bottom)
    return a.bottom ? -1 : 1;
  if (int c = cmp3(a.atoms, b.atoms))
    return c;
  if (int c = cmp3(a.constraints, b.constraints))
    return c;
  std::size_t n = std::min(a.restrictions.size(), b.restrictions.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(a.restrictions[i], b.restrictions[i]))
      return c;
  return cmp3(a.restrictions.size(), b.restrictions.size());
}

FullConcept::FullConcept(SimpleConcept single) { disjuncts_.push_back(std::move(single)); }

FullConcept::FullConcept(std::vector<SimpleConcept> disjuncts) : disjuncts_(std::move(disjuncts)) {
  if (disjuncts_.empty())
    throw PreconditionError("a union needs at least one disjunct");
}

void FullConcept::canonicalize() {
  for (auto &d : disjuncts_)
    d.canonicalize();
}

std::size_t hash_value(const SimpleConcept &c) {
  std::hash<std::string> hs;
  std::size_t h = c.bottom ? 0x51ed27ULL : 0x2545f491ULL;
  for (const auto &a : c.atoms)
    h = mix(h, hs(a.value));
  h = mix(h, 0xa7);
  for (const auto &k : c.constraints) {
    h = mix(h, hs(k.prop.value));
    h = mix(h, std::hash<std::uint64_t>{}(k.iv.lo));
    h = mix(h, std::hash<std::uint64_t>{}(k.iv.hi));
  }
  h = mix(h, 0xb3);
  for (const auto &r : c.restrictions) {
    h = mix(h, hs(r.role.value));
    h = mix(h, hash_value(r.filler));
  }
  return h;
}

std::size_t hash_value(const FullConcept &c) {
  std::size_t h = c.size();
  for (const auto &d : c.disjuncts())
    h = mix(h, hash_value(d));
  return h;
}

std::size_t interval_count(const SimpleConcept &c) {
  std::size_t n = c.constraints.size();
  for (const auto &r : c.restrictions)
    n += interval_count(r.filler);
  return n;
}

std::size_t restriction_count(const SimpleConcept &c) {
  std::size_t n = c.restrictions.size();
  for (const auto &r : c.restrictions)
    n += restriction_count(r.filler);
  return n;
}

std::size_t depth(const SimpleConcept &c) {
  std::size_t d = 0;
  for (const auto &r : c.restrictions)
    d = std::max(d, 1 + depth(r.filler));
  return d;
}

void collect_signature(const SimpleConcept &c, ConceptSignature &out) {
  for (const auto &a : c.atoms)
    out.concepts.insert(a.value);
  for (const auto &k : c.constraints)
    out.properties.insert(k.prop.value);
  for (const auto &r : c.restrictions) {
    out.roles.insert(r.role.value);
    collect_signature(r.filler, out);
  }
}

ConceptSignature signature_of(const FullConcept &c) {
  ConceptSignature s;
  for (const auto &d : c.disjuncts())
    collect_signature(d, s);
  return s;
}

KnowledgeBase::KnowledgeBase(std::vector<Axiom> axioms) {
  for (auto &a : axioms)
    axioms_.insert(std::move(a));
}

void KnowledgeBase::add(Axiom a) { axioms_.insert(std::move(a)); }

KbSignature KnowledgeBase::signature() const {
  KbSignature s;
  for (const auto &ax : axioms_) {
    std::visit(
        [&](const auto &a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Inclusion>) {
            s.concepts.insert(a.sub.value);
            s.concepts.insert(a.sup.value);
          } else if constexpr (std::is_same_v<T, Disjoint>) {
            s.concepts.insert(a.a.value);
            s.concepts.insert(a.b.value);
          } else if constexpr (std::is_same_v<T, Functional>) {
            s.functional.insert(a.symbol);
            if (a.kind == SymbolKind::Role)
              s.roles.insert(a.symbol);
            else if (a.kind == SymbolKind::Property)
              s.properties.insert(a.symbol);
          } else {
            s.roles.insert(a.role.value);
            s.concepts.insert(a.cls.value);
          }
        },
        ax);
  }
  for (const auto &r : s.roles)
    if (s.properties.count(r))
      throw SignatureError("'" + r + "' is declared both as a role and as a concrete property");
  return s;
}

void check_namespaces(const KbSignature &kb, const ConceptSignature &c) {
  for (const auto &r : c.roles) {
    if (c.properties.count(r))
      throw SignatureError("'" + r + "' is used both as a role and as a concrete property");
    if (kb.properties.count(r))
      throw SignatureError("'" + r + "' is a concrete property in the knowledge base but used as a role");
  }
  for (const auto &f : c.properties)
    if (kb.roles.count(f))
      throw SignatureError("'" + f + "' is a role in the knowledge base but used as a concrete property");
}

} // namespace plr
