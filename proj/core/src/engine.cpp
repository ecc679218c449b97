#include "plr/engine.hpp"

#include "plr/ibq.hpp"
#include "plr/sts.hpp"

#include <algorithm>
#include <optional>

namespace plr {

EngineOptions EngineOptions::preset(std::string_view name, Splitter s) {
  EngineOptions o;
  o.splitter = s;
  if (name == "plain") {
  } else if (name == "c") {
    o.useCaches = true;
  } else if (name == "2n") {
    o.normalizeRhs = true;
  } else if (name == "c2n") {
    o.useCaches = true;
    o.normalizeRhs = true;
  } else if (name == "pre") {
    o.useCaches = true;
    o.preNormalized = true;
  } else if (name == "pre2n") {
    o.useCaches = true;
    o.preNormalized = true;
    o.normalizeRhs = true;
  } else {
    throw PreconditionError("unknown optimization variant '" + std::string(name) + "'");
  }
  return o;
}

std::string EngineOptions::name() const {
  std::string n;
  if (preNormalized)
    n = "pre";
  else if (useCaches)
    n = "c";
  if (normalizeRhs)
    n += "2n";
  return n.empty() ? "plain" : n;
}

const std::vector<std::string> &optimization_variants() {
  static const std::vector<std::string> v{"plain", "c", "2n", "c2n", "pre", "pre2n"};
  return v;
}

double EngineStats::cache_hit_rate() const {
  std::size_t hits = normHits + splitHits + preHits;
  std::size_t total = hits + normMisses + splitMisses;
  return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

namespace {

void validate(const EngineOptions &o) {
  if (o.preNormalized && !o.useCaches)
    throw PreconditionError("pre-normalization requires caches");
}

std::size_t profile_hash(const EndpointProfile &p) {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 0x100000001b3ULL; };
  for (const auto &[prop, m] : p) {
    mix(std::hash<std::string>{}(prop));
    for (const auto &[v, r] : m) {
      mix(std::hash<std::uint64_t>{}(v));
      mix(r);
    }
  }
  return h;
}

} // namespace

std::size_t Engine::SplitKeyHash::operator()(const SplitKey &k) const {
  return hash_value(k.lhs) * 31 + profile_hash(k.profile);
}

Engine::Engine(KnowledgeBase kb, EngineOptions opts)
    : kb_(std::move(kb)), kbSig_(kb_.signature()), idx_(build_closure(kb_)), opts_(opts) {
  validate(opts_);
}

Engine::Engine(const KnowledgeBase &k, const ExternalOntology &o, EngineOptions opts) : opts_(opts) {
  validate(opts_);
  auto shifted = shift_axioms(k, o);
  kb_ = std::move(shifted.kMinus);
  kbSig_ = kb_.signature();
  idx_ = build_closure(kb_);
  oracle_ = saturate(shifted.oPlus);
}

Engine::Engine(KnowledgeBase kMinus, std::shared_ptr<const OracleBackend> oracle, EngineOptions opts)
    : kb_(std::move(kMinus)), kbSig_(kb_.signature()), idx_(build_closure(kb_)), oracle_(std::move(oracle)),
      opts_(opts) {
  validate(opts_);
  if (!oracle_)
    throw PreconditionError("oracle engine without a backend");
  for (const auto &ax : kb_.axioms())
    if (std::holds_alternative<Inclusion>(ax) || std::holds_alternative<Disjoint>(ax))
      throw PreconditionError("inclusions and disjointness axioms belong to the oracle");
  for (const auto &r : kbSig_.roles)
    if (oracle_->signature().roles.count(r) || oracle_->signature().concepts.count(r))
      throw SignatureError("role '" + r + "' is shared with the oracle");
}

NormalizationMode Engine::mode() const {
  if (oracle_)
    return NormalizationMode::ibq(idx_, *oracle_, opts_.rule5);
  return NormalizationMode::plain(idx_);
}

void Engine::clear_caches() {
  normCache_.clear();
  splitCache_.clear();
  preCache_.clear();
  declared_.clear();
  stats_ = {};
}

void Engine::check_signature(const FullConcept &c) const {
  auto sig = signature_of(c);
  check_namespaces(kbSig_, sig);
  if (oracle_)
    check_oracle_signature(oracle_->signature(), sig);
}

FullConcept Engine::normalize_lookup(const FullConcept &c) {
  if (!opts_.useCaches)
    return normalize_full(mode(), c);
  if (auto it = normCache_.find(c); it != normCache_.end()) {
    ++stats_.normHits;
    return it->second;
  }
  ++stats_.normMisses;
  auto n = normalize_full(mode(), c);
  normCache_.emplace(c, n);
  return n;
}

FullConcept Engine::normalized(const FullConcept &c) {
  check_signature(c);
  return normalize_lookup(c);
}

const std::vector<SimpleConcept> *Engine::cached_split(const SimpleConcept &ci, const EndpointProfile &relevant,
                                                       const std::function<void()> &tick) {
  if (opts_.preNormalized) {
    auto it = preCache_.find(ci);
    if (it != preCache_.end() && profile_covers(declared_, relevant, opts_.splitter)) {
      ++stats_.preHits;
      return &it->second;
    }
    ++stats_.preMisses;
  }
  SplitKey key{ci, relevant};
  if (auto it = splitCache_.find(key); it != splitCache_.end()) {
    ++stats_.splitHits;
    return &it->second;
  }
  ++stats_.splitMisses;
  SplitPlan plan = SplitPlan::build(relevant, opts_.splitter);
  plan.onPiece = tick;
  auto parts = split_simple(ci, plan);
  return &splitCache_.emplace(std::move(key), std::move(parts)).first->second;
}

bool Engine::subsumes(const FullConcept &c, const FullConcept &d) {
  check_signature(c);
  check_signature(d);
  ++stats_.queries;

  using Clock = std::chrono::steady_clock;
  std::optional<Clock::time_point> deadline;
  if (opts_.timeout.count() > 0)
    deadline = Clock::now() + opts_.timeout;
  std::size_t ticks = 0;
  std::function<void()> tick = [&] {
    if (deadline && (++ticks & 0xff) == 0 && Clock::now() > *deadline)
      throw TimeoutError("subsumption check exceeded its time limit");
  };

  FullConcept cn = normalize_lookup(c);
  std::vector<SimpleConcept> rhs;
  if (opts_.normalizeRhs) {
    FullConcept dn = normalize_lookup(d);
    for (const auto &x : dn.disjuncts())
      if (!x.bottom)
        rhs.push_back(x);
    if (rhs.empty())
      rhs.push_back(SimpleConcept::make_bottom());
  } else {
    rhs = d.disjuncts();
  }
  EndpointProfile profile;
  for (const auto &x : rhs)
    add_endpoints(x, profile);

  std::optional<OracleMemo> memo;
  if (oracle_)
    memo.emplace(*oracle_);
  auto covered = [&](const SimpleConcept &piece) {
    for (const auto &dj : rhs) {
      ++stats_.elementaryChecks;
      tick();
      if (oracle_ ? sts_oracle(*memo, piece, dj) : sts(idx_, piece, dj))
        return true;
    }
    return false;
  };

  // split(C, D) is computed in full before the first elementary check.
  std::size_t produced = 0;
  std::function<void()> onPiece = [&] {
    if (opts_.maxSplitPieces != 0 && ++produced > opts_.maxSplitPieces)
      throw TimeoutError("split exceeded its piece budget");
    tick();
  };
  std::vector<std::vector<SimpleConcept>> owned;
  owned.reserve(cn.size());
  std::vector<const std::vector<SimpleConcept> *> splits;
  for (const auto &ci : cn.disjuncts()) {
    if (ci.bottom)
      continue;
    EndpointProfile relevant = relevant_profile(ci, profile);
    if (opts_.useCaches) {
      splits.push_back(cached_split(ci, relevant, onPiece));
    } else {
      SplitPlan plan = SplitPlan::build(relevant, opts_.splitter);
      plan.onPiece = onPiece;
      owned.push_back(split_simple(ci, plan));
      splits.push_back(&owned.back());
    }
  }
  for (const auto *pieces : splits)
    for (const auto &piece : *pieces)
      if (!covered(piece))
        return false;
  return true;
}

void Engine::prenormalize(const std::vector<FullConcept> &business, const EndpointProfile &declared) {
  if (!opts_.preNormalized)
    throw PreconditionError("engine was not configured for pre-normalization");
  for (const auto &[prop, m] : declared)
    for (const auto &[v, role] : m)
      declared_[prop][v] |= role;
  SplitPlan plan = SplitPlan::build(declared_, opts_.splitter);
  for (const auto &bp : business) {
    check_signature(bp);
    auto n = normalize_full(mode(), bp);
    normCache_.insert_or_assign(bp, n);
    for (const auto &ci : n.disjuncts())
      if (!ci.bottom)
        preCache_.insert_or_assign(ci, split_simple(ci, plan));
  }
}

bool plr(Engine &engine, const FullConcept &c, const FullConcept &d) {
  if (engine.oracle_mode())
    throw PreconditionError("plr needs an engine without an oracle");
  return engine.subsumes(c, d);
}

bool plr_oracle(Engine &engine, const FullConcept &c, const FullConcept &d) {
  if (!engine.oracle_mode())
    throw PreconditionError("plr_oracle needs an engine with an oracle");
  return engine.subsumes(c, d);
}

void prenormalize(Engine &engine, const std::vector<FullConcept> &business, const EndpointProfile &declared) {
  engine.prenormalize(business, declared);
}

void prenormalize(Engine &engine, const std::vector<FullConcept> &business,
                  const std::vector<std::pair<std::string, std::uint64_t>> &endpoints) {
  EndpointProfile p;
  for (const auto &[f, v] : endpoints)
    p[f][v] |= kBoth;
  engine.prenormalize(business, p);
}

void prenormalize(Engine &engine, const std::vector<FullConcept> &business,
                  const std::vector<FullConcept> &consents) {
  EndpointProfile p;
  for (const auto &c : consents)
    for (const auto &d : c.disjuncts())
      add_endpoints(d, p);
  engine.prenormalize(business, p);
}

std::size_t interval_parameter(const FullConcept &normalizedC) {
  std::size_t n = 0;
  for (const auto &d : normalizedC.disjuncts())
    if (!d.bottom)
      n = std::max(n, interval_count(d));
  return n;
}

} // namespace plr
