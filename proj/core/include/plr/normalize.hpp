#pragma once

#include "plr/closure.hpp"
#include "plr/model.hpp"
#include "plr/oracle.hpp"

namespace plr {

// How the oracle-mode merge of intervals on one property is gated. The
// oracle-mode rule table applies it to every property; that is only sound for
// functional ones, so Gated is the default and Ungated reproduces the table
// literally.
enum class Rule5Policy { Gated, Ungated };

class NormalizationMode {
public:
  static NormalizationMode plain(const ClosureIndex &idx);
  static NormalizationMode ibq(const ClosureIndex &kMinus, const OracleBackend &oracle,
                               Rule5Policy rule5 = Rule5Policy::Gated);

  bool is_ibq() const { return oracle_ != nullptr; }
  const ClosureIndex &index() const { return *idx_; }
  const OracleBackend *oracle() const { return oracle_; }
  Rule5Policy rule5() const { return rule5_; }

private:
  NormalizationMode(const ClosureIndex *idx, const OracleBackend *oracle, Rule5Policy r5)
      : idx_(idx), oracle_(oracle), rule5_(r5) {}

  const ClosureIndex *idx_;
  const OracleBackend *oracle_;
  Rule5Policy rule5_;
};

SimpleConcept normalize_simple(const NormalizationMode &mode, const SimpleConcept &c);
FullConcept normalize_full(const NormalizationMode &mode, const FullConcept &c);
bool is_satisfiable(const NormalizationMode &mode, const FullConcept &c);

// Throws PreconditionError if c uses a role or property that also occurs in
// the oracle's signature.
void check_oracle_signature(const OracleSignature &o, const ConceptSignature &c);

} // namespace plr
