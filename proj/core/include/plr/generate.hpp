#pragma once

#include "plr/intervals.hpp"
#include "plr/io.hpp"
#include "plr/model.hpp"
#include "plr/oracle.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace plr {

// mt19937_64 with hand-written bounded draws: the std distributions are not
// reproducible across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  std::uint64_t below(std::uint64_t n);
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi); // inclusive
  double unit();
  bool chance(double p) { return unit() < p; }

  template <class T> const T &pick(const std::vector<T> &v) { return v[below(v.size())]; }

  template <class T> void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 gen_;
};

struct OntologyProfile {
  std::string name = "custom";
  std::size_t classes = 100;
  std::size_t roles = 10;
  std::size_t concreteProps = 10;
  std::size_t funcCount = 10;
  std::size_t rangeCount = 5;
  std::size_t disjTarget = 3;
  double inclusionFactor = 2.0;
  double adjacentShare = 0.9; // remaining inclusions skip at least one layer
  std::uint64_t seed = 0;

  static OntologyProfile preset(const std::string &name, std::uint64_t seed = 0);
};

struct GeneratedOntology {
  KnowledgeBase kb;
  std::vector<std::vector<std::string>> layers;
  std::vector<std::string> classes;
  std::vector<std::string> roles;
  std::vector<std::string> properties;
};

GeneratedOntology gen_ontology_detailed(const OntologyProfile &p);
KnowledgeBase gen_ontology(const OntologyProfile &p);

struct PolicyProfile {
  std::string name = "custom";
  std::size_t minSimplePerFull = 1;
  std::size_t maxSimplePerFull = 10;
  std::size_t maxTopLevelIntersections = 10;
  std::size_t maxDepth = 4;
  std::size_t maxIntervalsPerSimple = 0; // 0: no cap
  std::uint64_t endpointLo = 0;
  std::uint64_t endpointHi = 365;
  std::uint64_t seed = 0;

  static PolicyProfile preset(const std::string &name, std::uint64_t seed = 0);
};

struct CorpusQuery {
  std::string id;
  std::string lhs;
  std::string rhs;
  std::optional<bool> expected;
};

struct Corpus {
  std::string profile;
  std::string policyProfile;
  std::uint64_t seed = 0;
  KnowledgeBase kb;
  std::optional<ExternalOntology> ontology;
  std::map<std::string, FullConcept> policies;
  std::vector<std::string> business;
  std::vector<std::string> consents;
  std::vector<CorpusQuery> queries;
  EndpointProfile declared; // endpoints announced up front for pre-normalization
  std::map<std::string, std::string> params;

  const FullConcept &policy(const std::string &id) const;
};

struct PolicyStats {
  double avgSimplePerFull = 0;
  double avgDepth = 0;
  double avgIntervalsPerSimple = 0;
  double avgConjunctsPerSimple = 0;
};

PolicyStats policy_stats(const std::vector<FullConcept> &policies);

SimpleConcept random_simple_policy(Rng &rng, const GeneratedOntology &vocab, const PolicyProfile &p);
FullConcept random_full_policy(Rng &rng, const GeneratedOntology &vocab, const PolicyProfile &p);

// `count` policies, `businessShare` of them business policies built from
// consistent simple policies; each business policy is paired with consents
// so that roughly half the queries are expected to hold.
Corpus gen_policies(const GeneratedOntology &vocab, const PolicyProfile &p, std::size_t count,
                    double businessShare = 0.3, std::size_t queriesPerBusiness = 10);

// Business policies whose normalized interval parameter is exactly k, for
// k = 1..maxNi, `perBucket` of each, paired with random consents.
Corpus gen_ni_family(const GeneratedOntology &vocab, const PolicyProfile &p, std::size_t maxNi,
                     std::size_t perBucket, std::size_t consentsPerBusiness);

struct PilotProfile {
  std::string name = "pxs";
  std::size_t businessPolicies = 120;
  std::size_t consentsPerBusiness = 100;
  double businessMeanSimple = 2.71;
  double consentMeanSimple = 3.77;
  std::size_t baseSimplePolicies = 6;
  std::size_t inclusions = 186;
  std::size_t disjoint = 11;
  std::uint64_t seed = 0;

  static PilotProfile preset(const std::string &name, std::uint64_t seed = 0);
};

struct PilotVocabulary {
  KnowledgeBase kb;
  std::map<std::string, std::vector<std::string>> categories; // root -> classes below it, root first
  std::vector<std::uint64_t> durations;                      // endpoints fixed by law
};

PilotVocabulary pilot_vocabulary(const PilotProfile &p);
FullConcept pilot_base_policy(Rng &rng, const PilotVocabulary &v, std::size_t simplePolicies, bool business);

// Consents obtained from random subsets of the base policy's simple
// policies, with vocabulary terms replaced by random sub- or superclasses.
std::vector<FullConcept> gen_pilot_like(const FullConcept &basePolicy, const KnowledgeBase &kb, std::size_t count,
                                        std::uint64_t seed, double meanSimple = 3.77);

Corpus gen_pilot_corpus(const PilotProfile &p);

struct Literal {
  int var; // 1-based
  bool positive;
};
using Clause = std::array<Literal, 3>;

struct Sat3Instance {
  FullConcept c;
  FullConcept d;
  KnowledgeBase kb; // func(pk) for every variable
};

// c ⊑ d is valid iff the clause set is unsatisfiable.
Sat3Instance sat3_encode(const std::vector<Clause> &clauses);
std::vector<Clause> random_3cnf(Rng &rng, int vars, int clauses);
bool truth_table_satisfiable(const std::vector<Clause> &clauses);

struct SmallProfile {
  std::size_t names = 6;
  std::size_t roles = 2;
  std::size_t props = 2;
  std::size_t endpointPool = 6;
  std::uint64_t endpointMax = 20;
  std::size_t maxNesting = 3;
  std::size_t maxDisjuncts = 4;
  std::size_t maxConstraints = 2;
  std::size_t maxRestrictions = 8;
};

struct SmallInstance {
  KnowledgeBase kb;
  FullConcept c;
  FullConcept d;
};

// Random instance within brute-force reach; d is partly derived from c so
// that both answers occur.
SmallInstance gen_small_instance(Rng &rng, const SmallProfile &p = {});

struct PlsoInstance {
  KnowledgeBase k;
  ExternalOntology o;
  std::vector<FullConcept> business;
  std::vector<FullConcept> consents;
  std::vector<std::pair<std::size_t, std::size_t>> queries;
};

// K, an ontology in the supported fragment sharing only concept names with
// K, and business/consent policies over K's roles and properties.
PlsoInstance gen_plso_instance(Rng &rng, const SmallProfile &p = {});

} // namespace plr
