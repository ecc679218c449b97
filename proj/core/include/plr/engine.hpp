#pragma once

#include "plr/closure.hpp"
#include "plr/intervals.hpp"
#include "plr/model.hpp"
#include "plr/normalize.hpp"
#include "plr/oracle.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace plr {

struct EngineOptions {
  bool useCaches = false;
  bool normalizeRhs = false;
  bool preNormalized = false; // requires useCaches
  Splitter splitter = Splitter::Naive;
  Rule5Policy rule5 = Rule5Policy::Gated;
  std::chrono::nanoseconds timeout{0}; // zero disables the limit
  std::size_t maxSplitPieces = 0;      // zero disables; exceeding it counts as a timeout

  // plain, c, 2n, c2n, pre, pre2n
  static EngineOptions preset(std::string_view name, Splitter s = Splitter::Naive);
  std::string name() const;
};

const std::vector<std::string> &optimization_variants();

struct EngineStats {
  std::size_t queries = 0;
  std::size_t normHits = 0;
  std::size_t normMisses = 0;
  std::size_t splitHits = 0;
  std::size_t splitMisses = 0;
  std::size_t preHits = 0;
  std::size_t preMisses = 0; // pre-split unusable because of undeclared endpoints
  std::size_t elementaryChecks = 0;

  double cache_hit_rate() const;
};

// Not thread-safe: with caches enabled confine one engine per worker.
class Engine {
public:
  explicit Engine(KnowledgeBase kb, EngineOptions opts = {});
  // Oracle mode: k's inclusions and disjointness axioms are shifted into o,
  // which is then saturated.
  Engine(const KnowledgeBase &k, const ExternalOntology &o, EngineOptions opts = {});
  // Oracle mode with a caller-supplied backend; kMinus may only contain
  // range and functionality axioms.
  Engine(KnowledgeBase kMinus, std::shared_ptr<const OracleBackend> oracle, EngineOptions opts = {});

  Engine(const Engine &) = delete;
  Engine &operator=(const Engine &) = delete;

  bool oracle_mode() const { return oracle_ != nullptr; }
  const EngineOptions &options() const { return opts_; }
  const EngineStats &stats() const { return stats_; }
  const KnowledgeBase &kb() const { return kb_; }
  const ClosureIndex &index() const { return idx_; }
  const OracleBackend *oracle() const { return oracle_.get(); }
  NormalizationMode mode() const;

  void clear_caches();

  // Both drivers: plain or oracle depending on construction.
  bool subsumes(const FullConcept &c, const FullConcept &d);
  FullConcept normalized(const FullConcept &c);

  void prenormalize(const std::vector<FullConcept> &business, const EndpointProfile &declared);

private:
  struct SplitKey {
    SimpleConcept lhs;
    EndpointProfile profile;
    bool operator==(const SplitKey &o) const { return lhs == o.lhs && profile == o.profile; }
  };
  struct SplitKeyHash {
    std::size_t operator()(const SplitKey &k) const;
  };

  FullConcept normalize_lookup(const FullConcept &c);
  const std::vector<SimpleConcept> *cached_split(const SimpleConcept &ci, const EndpointProfile &relevant,
                                                const std::function<void()> &tick);
  void check_signature(const FullConcept &c) const;

  KnowledgeBase kb_;
  KbSignature kbSig_;
  ClosureIndex idx_;
  std::shared_ptr<const OracleBackend> oracle_;
  EngineOptions opts_;
  EngineStats stats_;

  std::unordered_map<FullConcept, FullConcept, ConceptHash> normCache_;
  std::unordered_map<SplitKey, std::vector<SimpleConcept>, SplitKeyHash> splitCache_;
  std::unordered_map<SimpleConcept, std::vector<SimpleConcept>, ConceptHash> preCache_;
  EndpointProfile declared_;
};

// K ⊨ c ⊑ d on a plain engine.
bool plr(Engine &engine, const FullConcept &c, const FullConcept &d);
// K ∪ O ⊨ c ⊑ d on an oracle engine. Queries sharing roles or properties
// with the ontology are rejected.
bool plr_oracle(Engine &engine, const FullConcept &c, const FullConcept &d);

void prenormalize(Engine &engine, const std::vector<FullConcept> &business, const EndpointProfile &declared);
// Endpoints given without a role are declared as both lower and upper.
void prenormalize(Engine &engine, const std::vector<FullConcept> &business,
                  const std::vector<std::pair<std::string, std::uint64_t>> &endpoints);
// Declares every endpoint occurring in the given consent policies.
void prenormalize(Engine &engine, const std::vector<FullConcept> &business,
                  const std::vector<FullConcept> &consents);

// Largest post-normalization interval count over the disjuncts of c.
std::size_t interval_parameter(const FullConcept &normalizedC);

} // namespace plr
