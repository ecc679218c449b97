#pragma once

#include "plr/closure.hpp"
#include "plr/model.hpp"

#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <string>
#include <variant>
#include <vector>

namespace plr {

// lhs1 ⊓ ... ⊓ lhsN ⊑ rhs, where an empty rhs means bottom.
struct OracleQuery {
  std::set<std::string> lhs;
  std::optional<std::string> rhs;
};

struct OracleSignature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
};

class OracleBackend {
public:
  virtual ~OracleBackend() = default;
  virtual bool decide(const OracleQuery &q) const = 0;
  virtual bool concurrent_safe() const { return true; }
  virtual const OracleSignature &signature() const = 0;
};

struct OntSub {
  ConceptName sub;
  ConceptName sup;
  friend auto operator<=>(const OntSub &, const OntSub &) = default;
};

struct OntConjSub {
  std::vector<ConceptName> lhs;
  ConceptName sup;
  friend auto operator<=>(const OntConjSub &, const OntConjSub &) = default;
};

struct OntSubEx {
  ConceptName sub;
  RoleName role;
  ConceptName filler;
  friend auto operator<=>(const OntSubEx &, const OntSubEx &) = default;
};

struct OntExSub {
  RoleName role;
  ConceptName filler;
  ConceptName sup;
  friend auto operator<=>(const OntExSub &, const OntExSub &) = default;
};

struct OntDisj {
  ConceptName a;
  ConceptName b;
  friend auto operator<=>(const OntDisj &, const OntDisj &) = default;
};

struct OntDef {
  ConceptName name;
  std::vector<ConceptName> conj;
  friend auto operator<=>(const OntDef &, const OntDef &) = default;
};

using OntAxiom = std::variant<OntSub, OntConjSub, OntSubEx, OntExSub, OntDisj, OntDef>;

class ExternalOntology {
public:
  ExternalOntology() = default;
  explicit ExternalOntology(std::vector<OntAxiom> axioms);

  void add(OntAxiom a);
  void merge(const ExternalOntology &o);
  const std::set<OntAxiom> &axioms() const { return axioms_; }
  bool empty() const { return axioms_.empty(); }
  std::size_t size() const { return axioms_.size(); }
  OracleSignature signature() const;

  friend bool operator==(const ExternalOntology &a, const ExternalOntology &b) {
    return a.axioms_ == b.axioms_;
  }

private:
  std::set<OntAxiom> axioms_;
};

std::string describe(const OntAxiom &a);

// Completion-rule backend for the supported fragment.
class SaturatedOracle : public OracleBackend {
public:
  bool decide(const OracleQuery &q) const override;
  const OracleSignature &signature() const override { return sig_; }

  // Named subsumers of a (including a); all known names if a is unsatisfiable.
  std::vector<std::string> subsumers(const std::string &a) const;
  bool unsatisfiable(const std::string &a) const;

  friend std::shared_ptr<SaturatedOracle> saturate(const ExternalOntology &o);

private:
  struct ConjRule {
    std::vector<int> lhs;
    int sup; // -1 for bottom
  };

  int id(const std::string &a) const;
  // Closes a set of name ids under the conjunction rules; returns true if
  // the set is inconsistent.
  bool close(std::vector<char> &in) const;

  OracleSignature sig_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::vector<int>> subs_; // sorted
  std::vector<char> bot_;
  std::vector<ConjRule> conj_;
};

std::shared_ptr<SaturatedOracle> saturate(const ExternalOntology &o);

// Answers queries from a plain knowledge base: lhs ⊑ A iff some lhs name is a
// subclass of A; lhs ⊑ bottom iff two (not necessarily distinct) lhs names
// are disjoint.
class KbOracle : public OracleBackend {
public:
  explicit KbOracle(const KnowledgeBase &kb);
  bool decide(const OracleQuery &q) const override;
  const OracleSignature &signature() const override { return sig_; }

private:
  ClosureIndex idx_;
  OracleSignature sig_;
};

} // namespace plr
