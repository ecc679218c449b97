#pragma once

#include "plr/model.hpp"
#include "plr/normalize.hpp"
#include "plr/oracle.hpp"

#include <set>
#include <string>
#include <vector>

namespace plr {

struct ShiftedAxioms {
  KnowledgeBase kMinus;   // range and functionality axioms only
  ExternalOntology oPlus; // o plus the inclusions and disjointness axioms of k
};

// Throws SignatureError if k and o share anything but concept names.
void check_shared_signature(const KnowledgeBase &k, const ExternalOntology &o);

ShiftedAxioms shift_axioms(const KnowledgeBase &k, const ExternalOntology &o);

// Plain knowledge base that replaces the oracle: the range/functionality part
// of k, every named subsumption entailed by o plus k's shifted axioms, and a
// disj(A,B) for every inconsistent pair of satisfiable names (disj(A,A) for
// an unsatisfiable name).
KnowledgeBase compile(const KnowledgeBase &k, const ExternalOntology &o);

struct SingleAtomResult {
  std::vector<FullConcept> policies;
  ExternalOntology definitions;
};

// Replaces every conjunction of two or more concept names, at any depth, by
// a fresh name defined as that conjunction. Fresh names avoid every name in
// the policies and in `reserved`.
SingleAtomResult single_atom_transform(const std::vector<FullConcept> &bp,
                                       const std::set<std::string> &reserved = {});

// Rewrites ∃R.(A1 ⊓ ... ⊓ An) for R in `shared` into a fresh name X with
// X ≡ ∃R.B (B ≡ A1 ⊓ ... ⊓ An when n > 1). Fillers with constraints or
// restrictions are outside the oracle fragment and rejected.
SingleAtomResult eliminate_shared_roles(const std::vector<FullConcept> &policies,
                                        const std::set<std::string> &shared,
                                        const std::set<std::string> &reserved = {});

struct CompiledPolicies {
  KnowledgeBase kb;                  // compile(k, o ∪ definitions)
  std::vector<FullConcept> policies; // oracle-mode normalized, single-atom form
  ExternalOntology definitions;
};

// Prepares business policies for a plain engine in place of the oracle:
// normalizes them against k and o, rewrites conjunctions of names into
// defined names and compiles k and o together with those definitions.
CompiledPolicies compile_with_policies(const KnowledgeBase &k, const ExternalOntology &o,
                                       const std::vector<FullConcept> &business,
                                       Rule5Policy rule5 = Rule5Policy::Gated);

} // namespace plr
