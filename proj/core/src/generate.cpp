#include "plr/generate.hpp"

#include "plr/closure.hpp"
#include "plr/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace plr {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0)
    throw PreconditionError("Rng::below(0)");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t x = gen_();
    if (x >= threshold)
      return x % n;
  }
}

std::uint64_t Rng::between(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi)
    std::swap(lo, hi);
  if (lo == 0 && hi == std::numeric_limits<std::uint64_t>::max())
    return gen_();
  return lo + below(hi - lo + 1);
}

double Rng::unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

namespace {

std::size_t bernoulli_sum(Rng &rng, std::size_t trials, double p) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < trials; ++i)
    n += rng.chance(p) ? 1 : 0;
  return n;
}

// 1 + Binomial(max-1, p) with mean `mean`, clamped to [1, max].
std::size_t subset_size(Rng &rng, std::size_t max, double mean) {
  if (max <= 1)
    return 1;
  double p = std::clamp((mean - 1.0) / static_cast<double>(max - 1), 0.0, 1.0);
  return 1 + bernoulli_sum(rng, max - 1, p);
}

std::vector<std::size_t> pick_subset(Rng &rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);
  idx.resize(std::min(k, n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::string padded(const std::string &prefix, std::size_t i, int width) {
  std::string s = std::to_string(i);
  if (static_cast<int>(s.size()) < width)
    s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return prefix + s;
}

// Applies f to every concept node (the top node and all fillers).
template <class F> void for_each_node(SimpleConcept &c, F &&f) {
  f(c);
  for (auto &r : c.restrictions)
    for_each_node(r.filler, f);
}

std::size_t node_count(const SimpleConcept &c) {
  std::size_t n = 1;
  for (const auto &r : c.restrictions)
    n += node_count(r.filler);
  return n;
}

SimpleConcept &node_at(SimpleConcept &c, std::size_t &k) {
  if (k == 0)
    return c;
  --k;
  for (auto &r : c.restrictions) {
    std::size_t n = node_count(r.filler);
    if (k < n)
      return node_at(r.filler, k);
    k -= n;
  }
  return c;
}

Interval random_interval(Rng &rng, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t a = rng.between(lo, hi), b = rng.between(lo, hi);
  if (a > b)
    std::swap(a, b);
  return {a, b};
}

std::map<std::string, std::vector<std::string>> down_sets(const ClosureIndex &idx) {
  std::map<std::string, std::vector<std::string>> down;
  for (const auto &a : idx.names())
    for (const auto &b : idx.up(a))
      down[b].push_back(a);
  return down;
}

} // namespace

// ---------------------------------------------------------------- ontologies

OntologyProfile OntologyProfile::preset(const std::string &name, std::uint64_t seed) {
  OntologyProfile p;
  p.name = name;
  p.seed = seed;
  if (name == "O1") {
    p.classes = 100, p.roles = 10, p.concreteProps = 10, p.funcCount = 10, p.rangeCount = 5, p.disjTarget = 3;
  } else if (name == "O2") {
    p.classes = 1000, p.roles = 50, p.concreteProps = 25, p.funcCount = 37, p.rangeCount = 25, p.disjTarget = 31;
  } else if (name == "O3") {
    p.classes = 10000, p.roles = 100, p.concreteProps = 50, p.funcCount = 75, p.rangeCount = 50, p.disjTarget = 298;
  } else {
    throw PreconditionError("unknown ontology profile: " + name);
  }
  return p;
}

GeneratedOntology gen_ontology_detailed(const OntologyProfile &p) {
  Rng rng(p.seed);
  GeneratedOntology g;
  const std::size_t n = p.classes;
  for (std::size_t i = 0; i < n; ++i)
    g.classes.push_back("C" + std::to_string(i));
  for (std::size_t i = 0; i < p.roles; ++i)
    g.roles.push_back("r" + std::to_string(i));
  for (std::size_t i = 0; i < p.concreteProps; ++i)
    g.properties.push_back("f" + std::to_string(i));

  std::size_t layerCount = 1;
  if (n > 1)
    layerCount = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::log2(static_cast<double>(n)))));
  layerCount = std::max<std::size_t>(1, std::min(layerCount, n));
  g.layers.resize(n == 0 ? 0 : layerCount);
  std::vector<std::size_t> layerOf(n);
  for (std::size_t i = 0; i < n; ++i) {
    layerOf[i] = i < layerCount ? i : rng.below(layerCount);
    g.layers[layerOf[i]].push_back(g.classes[i]);
  }
  std::vector<std::vector<std::size_t>> members(g.layers.size());
  for (std::size_t i = 0; i < n; ++i)
    members[layerOf[i]].push_back(i);

  // Disjointness first, between classes of one layer; inclusions are then
  // only accepted if they leave every class consistent.
  std::vector<std::size_t> wideLayers;
  for (std::size_t l = 0; l < members.size(); ++l)
    if (members[l].size() >= 2)
      wideLayers.push_back(l);
  std::set<std::pair<std::size_t, std::size_t>> disj;
  for (std::size_t attempts = 0; !wideLayers.empty() && disj.size() < p.disjTarget && attempts < 50 * p.disjTarget + 50;
       ++attempts) {
    const auto &m = members[wideLayers[rng.below(wideLayers.size())]];
    std::size_t a = m[rng.below(m.size())], b = m[rng.below(m.size())];
    if (a == b)
      continue;
    disj.insert({std::min(a, b), std::max(a, b)});
  }
  for (const auto &[a, b] : disj)
    g.kb.add(Disjoint{g.classes[a], g.classes[b]});

  // Reflexive ancestor and descendant bitsets, maintained per inclusion.
  const std::size_t words = (n + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  std::vector<Bits> anc(n, Bits(words, 0)), desc(n, Bits(words, 0));
  for (std::size_t c = 0; c < n; ++c) {
    anc[c][c / 64] |= 1ull << (c % 64);
    desc[c][c / 64] |= 1ull << (c % 64);
  }
  auto has = [](const Bits &b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; };
  auto members_of = [&](const Bits &b) {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words; ++w)
      for (std::uint64_t x = b[w]; x; x &= x - 1)
        out.push_back(w * 64 + static_cast<std::size_t>(__builtin_ctzll(x)));
    return out;
  };
  auto consistent_with = [&](std::size_t child, std::size_t parent) {
    const Bits &up = anc[parent];
    for (std::size_t d : members_of(desc[child]))
      for (const auto &[a, b] : disj)
        if ((has(anc[d], a) || has(up, a)) && (has(anc[d], b) || has(up, b)))
          return false;
    return true;
  };

  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto parent_layer = [&](std::size_t layer) {
    if (layer >= 2 && !rng.chance(p.adjacentShare))
      return static_cast<std::size_t>(rng.below(layer - 1));
    return layer - 1;
  };
  auto add_edge = [&](std::size_t child) {
    std::size_t pl = parent_layer(layerOf[child]);
    std::size_t parent = members[pl][rng.below(members[pl].size())];
    if (edges.count({child, parent}) || !consistent_with(child, parent))
      return false;
    edges.insert({child, parent});
    auto below = members_of(desc[child]);
    auto above = members_of(anc[parent]);
    for (std::size_t d : below)
      for (std::size_t w = 0; w < words; ++w)
        anc[d][w] |= anc[parent][w];
    for (std::size_t u : above)
      for (std::size_t w = 0; w < words; ++w)
        desc[u][w] |= desc[child][w];
    return true;
  };
  std::vector<std::size_t> lower;
  for (std::size_t i = 0; i < n; ++i)
    if (layerOf[i] > 0)
      lower.push_back(i);
  const std::size_t target = static_cast<std::size_t>(std::lround(p.inclusionFactor * static_cast<double>(n)));
  for (std::size_t c : lower)
    for (int tries = 0; tries < 8 && edges.size() < target; ++tries)
      if (add_edge(c))
        break;
  for (std::size_t attempts = 0; !lower.empty() && edges.size() < target && attempts < 20 * target; ++attempts)
    add_edge(lower[rng.below(lower.size())]);
  for (const auto &[c, par] : edges)
    g.kb.add(Inclusion{g.classes[c], g.classes[par]});

  std::vector<std::pair<std::string, SymbolKind>> symbols;
  for (const auto &r : g.roles)
    symbols.push_back({r, SymbolKind::Role});
  for (const auto &f : g.properties)
    symbols.push_back({f, SymbolKind::Property});
  rng.shuffle(symbols);
  for (std::size_t i = 0; i < std::min(p.funcCount, symbols.size()); ++i)
    g.kb.add(Functional{symbols[i].first, symbols[i].second});

  if (n > 0 && !g.roles.empty()) {
    std::vector<std::string> roles = g.roles;
    rng.shuffle(roles);
    for (std::size_t i = 0; i < p.rangeCount; ++i)
      g.kb.add(Range{roles[i % roles.size()], g.classes[rng.below(n)]});
  }
  return g;
}

KnowledgeBase gen_ontology(const OntologyProfile &p) { return gen_ontology_detailed(p).kb; }

// ------------------------------------------------------------------ policies

PolicyProfile PolicyProfile::preset(const std::string &name, std::uint64_t seed) {
  PolicyProfile p;
  p.name = name;
  p.seed = seed;
  if (name == "P1") {
    p.minSimplePerFull = 4, p.maxSimplePerFull = 10, p.maxTopLevelIntersections = 10, p.maxDepth = 4;
  } else if (name == "P2") {
    p.minSimplePerFull = 1, p.maxSimplePerFull = 100, p.maxTopLevelIntersections = 20, p.maxDepth = 9;
  } else {
    throw PreconditionError("unknown policy profile: " + name);
  }
  return p;
}

const FullConcept &Corpus::policy(const std::string &id) const {
  auto it = policies.find(id);
  if (it == policies.end())
    throw PreconditionError("corpus has no policy " + id);
  return it->second;
}

namespace {

std::size_t conjunct_count(const SimpleConcept &c) {
  std::size_t n = c.atoms.size() + c.constraints.size() + c.restrictions.size();
  for (const auto &r : c.restrictions)
    n += conjunct_count(r.filler);
  return n;
}

class PolicyBuilder {
public:
  PolicyBuilder(Rng &rng, const GeneratedOntology &v, const PolicyProfile &p) : rng_(rng), v_(v), p_(p) {}

  SimpleConcept simple() {
    std::size_t target = p_.maxDepth == 0 ? 0 : rng_.between(1, p_.maxDepth);
    budget_ = p_.maxIntervalsPerSimple == 0 ? std::numeric_limits<std::size_t>::max() : p_.maxIntervalsPerSimple;
    if (v_.roles.empty())
      target = 0;
    SimpleConcept c = node(0, target, target);
    c.canonicalize();
    return c;
  }

private:
  SimpleConcept node(std::size_t level, std::size_t mustReach, std::size_t maxLevel) {
    SimpleConcept c;
    std::size_t cap = std::max<std::size_t>(1, p_.maxTopLevelIntersections >> (2 * level));
    std::size_t k = rng_.between(1, cap);
    if (mustReach > 0) {
      c.some(v_.roles[rng_.below(v_.roles.size())], node(level + 1, mustReach - 1, maxLevel));
      --k;
    }
    for (std::size_t i = 0; i < k; ++i) {
      double r = rng_.unit();
      if (r < 0.35 || (r < 0.7 && (budget_ == 0 || v_.properties.empty())) ||
          (r >= 0.7 && level >= maxLevel)) {
        if (!v_.classes.empty())
          c.atom(v_.classes[rng_.below(v_.classes.size())]);
      } else if (r < 0.7) {
        Interval iv = random_interval(rng_, p_.endpointLo, p_.endpointHi);
        c.interval(v_.properties[rng_.below(v_.properties.size())], iv.lo, iv.hi);
        --budget_;
      } else {
        c.some(v_.roles[rng_.below(v_.roles.size())], node(level + 1, 0, maxLevel));
      }
    }
    return c;
  }

  Rng &rng_;
  const GeneratedOntology &v_;
  const PolicyProfile &p_;
  std::size_t budget_ = 0;
};

// Replaces names by random superclasses, widens intervals and drops some
// conjuncts: the result is entailed by c.
SimpleConcept generalize(Rng &rng, const ClosureIndex &idx, const SimpleConcept &c, const PolicyProfile &p) {
  SimpleConcept g;
  for (const auto &a : c.atoms) {
    if (rng.chance(0.15))
      continue;
    auto up = idx.up(a.value);
    g.atom(up.empty() || rng.chance(0.5) ? a.value : up[rng.below(up.size())]);
  }
  for (const auto &k : c.constraints) {
    if (rng.chance(0.15))
      continue;
    std::uint64_t lo = k.iv.lo, hi = k.iv.hi;
    if (rng.chance(0.5)) {
      lo -= std::min(lo, rng.below(31));
      hi = std::max(hi, std::min<std::uint64_t>(hi + rng.below(31), std::max(hi, p.endpointHi)));
    }
    g.interval(k.prop.value, lo, hi);
  }
  for (const auto &r : c.restrictions) {
    if (rng.chance(0.15))
      continue;
    g.some(r.role.value, generalize(rng, idx, r.filler, p));
  }
  return g;
}

std::size_t normalized_ni(const NormalizationMode &mode, const SimpleConcept &c) {
  SimpleConcept n = normalize_simple(mode, c);
  return n.bottom ? 0 : interval_count(n);
}

void add_random_interval(Rng &rng, SimpleConcept &c, const GeneratedOntology &v, const PolicyProfile &p) {
  std::size_t k = rng.below(node_count(c));
  Interval iv = random_interval(rng, p.endpointLo, p.endpointHi);
  node_at(c, k).interval(v.properties[rng.below(v.properties.size())], iv.lo, iv.hi);
  c.canonicalize();
}

} // namespace

SimpleConcept random_simple_policy(Rng &rng, const GeneratedOntology &vocab, const PolicyProfile &p) {
  return PolicyBuilder(rng, vocab, p).simple();
}

FullConcept random_full_policy(Rng &rng, const GeneratedOntology &vocab, const PolicyProfile &p) {
  std::size_t n = rng.between(std::max<std::size_t>(1, p.minSimplePerFull), std::max<std::size_t>(1, p.maxSimplePerFull));
  std::vector<SimpleConcept> ds;
  for (std::size_t i = 0; i < n; ++i)
    ds.push_back(random_simple_policy(rng, vocab, p));
  return FullConcept(std::move(ds));
}

PolicyStats policy_stats(const std::vector<FullConcept> &policies) {
  PolicyStats s;
  std::size_t simple = 0;
  for (const auto &f : policies)
    for (const auto &c : f.disjuncts()) {
      ++simple;
      s.avgDepth += static_cast<double>(depth(c));
      s.avgIntervalsPerSimple += static_cast<double>(interval_count(c));
      s.avgConjunctsPerSimple += static_cast<double>(conjunct_count(c));
    }
  if (!policies.empty())
    s.avgSimplePerFull = static_cast<double>(simple) / static_cast<double>(policies.size());
  if (simple > 0) {
    s.avgDepth /= static_cast<double>(simple);
    s.avgIntervalsPerSimple /= static_cast<double>(simple);
    s.avgConjunctsPerSimple /= static_cast<double>(simple);
  }
  return s;
}

Corpus gen_policies(const GeneratedOntology &vocab, const PolicyProfile &p, std::size_t count, double businessShare,
                    std::size_t queriesPerBusiness) {
  Rng rng(p.seed ^ 0x5bd1e995u);
  Corpus corpus;
  corpus.policyProfile = p.name;
  corpus.seed = p.seed;
  corpus.kb = vocab.kb;
  if (count == 0)
    return corpus;

  ClosureIndex idx = build_closure(vocab.kb);
  auto mode = NormalizationMode::plain(idx);
  std::size_t nb = static_cast<std::size_t>(std::lround(businessShare * static_cast<double>(count)));
  nb = std::min(nb, count);
  std::size_t nc = count - nb;

  std::vector<FullConcept> business;
  for (std::size_t i = 0; i < nb; ++i) {
    std::size_t want = rng.between(std::max<std::size_t>(1, p.minSimplePerFull), std::max<std::size_t>(1, p.maxSimplePerFull));
    std::vector<SimpleConcept> ds;
    for (std::size_t attempts = 0; ds.size() < want && attempts < 50 * want; ++attempts) {
      SimpleConcept s = random_simple_policy(rng, vocab, p);
      if (!normalize_simple(mode, s).bottom)
        ds.push_back(std::move(s));
    }
    if (!ds.empty())
      business.emplace_back(std::move(ds));
  }

  // Half the consents generalize a business policy (entailed by it), the
  // other half are drawn at random.
  std::vector<FullConcept> consents;
  std::vector<std::vector<std::size_t>> covering(business.size());
  std::size_t gens = business.empty() ? 0 : nc / 2;
  for (std::size_t i = 0; i < gens; ++i) {
    std::size_t b = i % business.size();
    std::vector<SimpleConcept> ds;
    for (const auto &s : business[b].disjuncts())
      ds.push_back(generalize(rng, idx, s, p));
    covering[b].push_back(consents.size());
    consents.emplace_back(std::move(ds));
  }
  while (consents.size() < nc)
    consents.push_back(random_full_policy(rng, vocab, p));

  for (std::size_t i = 0; i < business.size(); ++i) {
    std::string id = padded("b", i, 4);
    corpus.policies.emplace(id, business[i]);
    corpus.business.push_back(id);
  }
  for (std::size_t i = 0; i < consents.size(); ++i) {
    std::string id = padded("c", i, 4);
    corpus.policies.emplace(id, consents[i]);
    corpus.consents.push_back(id);
    add_endpoints(consents[i], corpus.declared);
  }

  std::size_t q = 0;
  for (std::size_t b = 0; b < business.size(); ++b) {
    std::size_t per = queriesPerBusiness != 0 ? queriesPerBusiness : 2 * std::max<std::size_t>(1, covering[b].size());
    std::set<std::size_t> used;
    for (std::size_t c : covering[b]) {
      if (used.size() >= (per + 1) / 2)
        break;
      used.insert(c);
      corpus.queries.push_back({padded("q", q++, 6), corpus.business[b], corpus.consents[c], true});
    }
    std::vector<std::size_t> others;
    for (std::size_t c = gens; c < consents.size(); ++c)
      others.push_back(c);
    rng.shuffle(others);
    for (std::size_t c : others) {
      if (used.size() >= per)
        break;
      used.insert(c);
      corpus.queries.push_back({padded("q", q++, 6), corpus.business[b], corpus.consents[c], std::nullopt});
    }
  }
  return corpus;
}

Corpus gen_ni_family(const GeneratedOntology &vocab, const PolicyProfile &p, std::size_t maxNi, std::size_t perBucket,
                     std::size_t consentsPerBusiness) {
  Rng rng(p.seed ^ 0x27d4eb2fu);
  Corpus corpus;
  corpus.policyProfile = p.name;
  corpus.seed = p.seed;
  corpus.kb = vocab.kb;
  corpus.params["stratified_ni"] = std::to_string(maxNi);
  if (vocab.properties.empty())
    throw PreconditionError("interval family needs concrete properties");

  ClosureIndex idx = build_closure(vocab.kb);
  auto mode = NormalizationMode::plain(idx);

  std::vector<std::string> businessIds;
  for (std::size_t k = 1; k <= maxNi; ++k) {
    PolicyProfile capped = p;
    capped.maxIntervalsPerSimple = k;
    for (std::size_t i = 0; i < perBucket; ++i) {
      std::size_t want = rng.between(std::max<std::size_t>(1, p.minSimplePerFull), std::max<std::size_t>(1, p.maxSimplePerFull));
      std::vector<SimpleConcept> ds;
      bool reached = false;
      for (std::size_t attempts = 0; ds.size() < want && attempts < 100 * want; ++attempts) {
        SimpleConcept s = random_simple_policy(rng, vocab, capped);
        std::size_t ni = normalized_ni(mode, s);
        if (!reached) {
          // The first disjunct is grown until it carries exactly k intervals.
          for (std::size_t grow = 0; ni < k && grow < 4 * k; ++grow) {
            if (normalize_simple(mode, s).bottom)
              break;
            add_random_interval(rng, s, vocab, p);
            ni = normalized_ni(mode, s);
          }
        }
        if (normalize_simple(mode, s).bottom || ni > k || (!reached && ni != k))
          continue;
        reached = reached || ni == k;
        ds.push_back(std::move(s));
      }
      if (!reached)
        continue;
      std::string id = "b" + std::to_string(k) + "_" + padded("", i, 3);
      corpus.policies.emplace(id, FullConcept(std::move(ds)));
      corpus.business.push_back(id);
    }
  }

  // Half of each business policy's consents generalize it, so that the
  // answers are balanced; the rest come from a shared random pool.
  std::size_t gensPer = consentsPerBusiness / 2;
  std::size_t randomPer = consentsPerBusiness - gensPer;
  std::size_t pool = std::max<std::size_t>(randomPer, 1) * 2;
  std::size_t nextConsent = 0;
  auto add_consent = [&](FullConcept c) {
    std::string id = padded("c", nextConsent++, 4);
    add_endpoints(c, corpus.declared);
    corpus.policies.emplace(id, std::move(c));
    corpus.consents.push_back(id);
    return id;
  };
  std::vector<std::string> randomIds;
  for (std::size_t i = 0; i < pool; ++i)
    randomIds.push_back(add_consent(random_full_policy(rng, vocab, p)));
  std::size_t q = 0;
  for (const auto &b : corpus.business) {
    for (std::size_t g = 0; g < gensPer; ++g) {
      std::vector<SimpleConcept> ds;
      for (const auto &s : corpus.policies.at(b).disjuncts())
        ds.push_back(generalize(rng, idx, s, p));
      auto id = add_consent(FullConcept(std::move(ds)));
      corpus.queries.push_back({padded("q", q++, 6), b, id, true});
    }
    for (std::size_t c : pick_subset(rng, randomIds.size(), randomPer))
      corpus.queries.push_back({padded("q", q++, 6), b, randomIds[c], std::nullopt});
  }
  return corpus;
}

// --------------------------------------------------------------------- pilot

PilotProfile PilotProfile::preset(const std::string &name, std::uint64_t seed) {
  PilotProfile p;
  p.name = name;
  p.seed = seed;
  if (name == "pxs") {
    p.businessPolicies = 120, p.consentsPerBusiness = 100;
    p.businessMeanSimple = 2.71, p.consentMeanSimple = 3.77;
    p.inclusions = 186, p.disjoint = 11;
  } else if (name == "tr") {
    p.businessPolicies = 100, p.consentsPerBusiness = 100;
    p.businessMeanSimple = 2.39, p.consentMeanSimple = 3.42;
    p.baseSimplePolicies = 5;
    p.inclusions = 150, p.disjoint = 9;
  } else {
    throw PreconditionError("unknown pilot profile: " + name);
  }
  return p;
}

namespace {

const std::vector<std::pair<std::string, std::string>> &pilot_categories() {
  static const std::vector<std::pair<std::string, std::string>> cats = {
      {"AnyPurpose", "Purpose"},   {"AnyData", "Data"},         {"AnyProcessing", "Processing"},
      {"AnyRecipient", "Recipient"}, {"AnyLocation", "Location"}, {"AnyDuty", "Duty"},
      {"AnyLegalBasis", "LegalBasis"}};
  return cats;
}

const std::string &pick_below(Rng &rng, const PilotVocabulary &v, const std::string &root) {
  const auto &cls = v.categories.at(root);
  // Skip the root itself so that both sub- and superclasses usually exist.
  return cls.size() > 1 ? cls[1 + rng.below(cls.size() - 1)] : cls[0];
}

Interval random_duration(Rng &rng, const std::vector<std::uint64_t> &d) {
  std::size_t a = rng.below(d.size() - 1);
  std::size_t b = a + 1 + rng.below(d.size() - 1 - a);
  return {d[a], d[b]};
}

// Moves each endpoint to a random law-given value, keeping lo <= hi.
Interval perturb_duration(Rng &rng, const Interval &iv, const std::vector<std::uint64_t> &d, bool narrowOnly) {
  std::vector<std::uint64_t> los, his;
  for (auto x : d) {
    if (x <= iv.hi && (!narrowOnly || x >= iv.lo))
      los.push_back(x);
    if (x >= iv.lo && (!narrowOnly || x <= iv.hi))
      his.push_back(x);
  }
  Interval out = iv;
  if (!los.empty())
    out.lo = los[rng.below(los.size())];
  std::vector<std::uint64_t> ok;
  for (auto x : his)
    if (x >= out.lo)
      ok.push_back(x);
  if (!ok.empty())
    out.hi = ok[rng.below(ok.size())];
  return out;
}

SimpleConcept perturb_terms(Rng &rng, const SimpleConcept &c, const ClosureIndex &idx,
                            const std::map<std::string, std::vector<std::string>> &down, double pAtom, bool subOnly,
                            const std::vector<std::uint64_t> &durations, double pDuration, bool narrowOnly) {
  SimpleConcept out;
  for (const auto &a : c.atoms) {
    if (!rng.chance(pAtom)) {
      out.atom(a.value);
      continue;
    }
    std::vector<std::string> options;
    if (auto it = down.find(a.value); it != down.end())
      options = it->second;
    if (!subOnly)
      for (auto &u : idx.up(a.value))
        options.push_back(u);
    out.atom(options.empty() ? a.value : options[rng.below(options.size())]);
  }
  for (const auto &k : c.constraints) {
    Interval iv = k.iv;
    if (!durations.empty() && rng.chance(pDuration))
      iv = perturb_duration(rng, iv, durations, narrowOnly);
    out.interval(k.prop.value, iv.lo, iv.hi);
  }
  for (const auto &r : c.restrictions)
    out.some(r.role.value,
             perturb_terms(rng, r.filler, idx, down, pAtom, subOnly, durations, pDuration, narrowOnly));
  return out;
}

std::vector<std::uint64_t> endpoint_values(const FullConcept &c) {
  std::set<std::uint64_t> vals;
  EndpointProfile prof;
  add_endpoints(c, prof);
  for (const auto &[prop, m] : prof)
    for (const auto &[v, role] : m)
      vals.insert(v);
  return {vals.begin(), vals.end()};
}

} // namespace

PilotVocabulary pilot_vocabulary(const PilotProfile &p) {
  Rng rng(p.seed ^ 0x85ebca6bu);
  PilotVocabulary v;
  const auto &cats = pilot_categories();
  std::size_t per = p.inclusions / cats.size(), extra = p.inclusions % cats.size();
  for (std::size_t ci = 0; ci < cats.size(); ++ci) {
    const auto &[root, stem] = cats[ci];
    std::size_t n = per + (ci < extra ? 1 : 0);
    // Three levels below the root: a height-4 hierarchy.
    std::size_t l1 = std::max<std::size_t>(std::min<std::size_t>(n, 2), (n + 4) / 9);
    std::size_t l2 = std::min(n - l1, (n * 3 + 4) / 9);
    std::size_t l3 = n - l1 - l2;
    std::vector<std::string> &all = v.categories[root];
    all.push_back(root);
    std::vector<std::string> prev = {root};
    std::size_t sizes[3] = {l1, l2, l3};
    for (int level = 0; level < 3; ++level) {
      std::vector<std::string> cur;
      for (std::size_t i = 0; i < sizes[level]; ++i) {
        std::string name = stem + "_" + std::to_string(level + 1) + "_" + std::to_string(i);
        v.kb.add(Inclusion{name, prev[rng.below(prev.size())]});
        cur.push_back(name);
        all.push_back(name);
      }
      if (!cur.empty())
        prev = cur;
    }
  }
  v.categories["AnyStorage"] = {"AnyStorage"};

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cats.size(); ++i)
    for (std::size_t j = i + 1; j < cats.size(); ++j)
      if (!(i == 0 && j == 1))
        pairs.push_back({i, j});
  rng.shuffle(pairs);
  v.kb.add(Disjoint{"AnyData", "AnyPurpose"});
  for (std::size_t i = 0; i + 1 < p.disjoint && i < pairs.size(); ++i)
    v.kb.add(Disjoint{cats[pairs[i].first].first, cats[pairs[i].second].first});

  const std::pair<const char *, const char *> ranges[] = {
      {"has_purpose", "AnyPurpose"},     {"has_data", "AnyData"},         {"has_processing", "AnyProcessing"},
      {"has_recipient", "AnyRecipient"}, {"has_location", "AnyLocation"}, {"has_duty", "AnyDuty"},
      {"has_legal_basis", "AnyLegalBasis"}, {"has_storage", "AnyStorage"}, {"has_controller", "AnyRecipient"},
      {"has_source", "AnyRecipient"}};
  for (const auto &[r, c] : ranges)
    v.kb.add(Range{r, c});
  for (const char *r : {"has_purpose", "has_data", "has_processing", "has_recipient", "has_storage", "has_location",
                        "has_legal_basis"})
    v.kb.add(Functional{r, SymbolKind::Role});
  v.kb.add(Functional{"has_duration", SymbolKind::Property});
  v.durations = {0, 30, 90, 180, 365, 730, 1095, 1825, 3650};
  return v;
}

FullConcept pilot_base_policy(Rng &rng, const PilotVocabulary &v, std::size_t simplePolicies, bool business) {
  std::vector<SimpleConcept> ds;
  for (std::size_t i = 0; i < std::max<std::size_t>(1, simplePolicies); ++i) {
    SimpleConcept s;
    s.some("has_purpose", SimpleConcept{}.atom(pick_below(rng, v, "AnyPurpose")));
    s.some("has_data", SimpleConcept{}.atom(pick_below(rng, v, "AnyData")));
    s.some("has_processing", SimpleConcept{}.atom(pick_below(rng, v, "AnyProcessing")));
    s.some("has_recipient", SimpleConcept{}.atom(pick_below(rng, v, "AnyRecipient")));
    Interval d = random_duration(rng, v.durations);
    SimpleConcept storage;
    storage.some("has_location", SimpleConcept{}.atom(pick_below(rng, v, "AnyLocation")));
    storage.interval("has_duration", d.lo, d.hi);
    s.some("has_storage", storage);
    if (business) {
      s.some("has_legal_basis", SimpleConcept{}.atom(pick_below(rng, v, "AnyLegalBasis")));
      s.some("has_duty", SimpleConcept{}.atom(pick_below(rng, v, "AnyDuty")));
      s.some("has_duty", SimpleConcept{}.atom(pick_below(rng, v, "AnyDuty")));
    }
    ds.push_back(std::move(s));
  }
  return FullConcept(std::move(ds));
}

std::vector<FullConcept> gen_pilot_like(const FullConcept &basePolicy, const KnowledgeBase &kb, std::size_t count,
                                        std::uint64_t seed, double meanSimple) {
  if (basePolicy.size() == 0)
    throw PreconditionError("base policy is empty");
  Rng rng(seed);
  ClosureIndex idx = build_closure(kb);
  auto down = down_sets(idx);
  auto durations = endpoint_values(basePolicy);
  std::vector<FullConcept> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto chosen = pick_subset(rng, basePolicy.size(), subset_size(rng, basePolicy.size(), meanSimple));
    std::vector<SimpleConcept> ds;
    for (std::size_t k : chosen)
      ds.push_back(perturb_terms(rng, basePolicy[k], idx, down, 0.2, false, durations, 0.2, false));
    out.emplace_back(std::move(ds));
  }
  return out;
}

Corpus gen_pilot_corpus(const PilotProfile &p) {
  Rng rng(p.seed);
  PilotVocabulary v = pilot_vocabulary(p);
  ClosureIndex idx = build_closure(v.kb);
  auto down = down_sets(idx);

  Corpus corpus;
  corpus.profile = p.name;
  corpus.seed = p.seed;
  corpus.kb = v.kb;
  for (auto d : v.durations)
    corpus.declared["has_duration"][d] = kBoth;

  FullConcept base = pilot_base_policy(rng, v, p.baseSimplePolicies, false);
  std::size_t q = 0;
  for (std::size_t b = 0; b < p.businessPolicies; ++b) {
    auto chosen = pick_subset(rng, base.size(), subset_size(rng, base.size(), p.businessMeanSimple));
    std::vector<SimpleConcept> ds;
    for (std::size_t k : chosen) {
      // Business processes are specializations of the pilot policy that
      // also state a legal basis and their duties.
      SimpleConcept s = perturb_terms(rng, base[k], idx, down, 0.3, true, v.durations, 0.3, true);
      s.some("has_legal_basis", SimpleConcept{}.atom(pick_below(rng, v, "AnyLegalBasis")));
      s.some("has_duty", SimpleConcept{}.atom(pick_below(rng, v, "AnyDuty")));
      ds.push_back(std::move(s));
    }
    std::string bid = padded("b", b, 4);
    corpus.policies.emplace(bid, FullConcept(std::move(ds)));
    corpus.business.push_back(bid);

    auto consents = gen_pilot_like(base, v.kb, p.consentsPerBusiness, rng.next(), p.consentMeanSimple);
    for (std::size_t c = 0; c < consents.size(); ++c) {
      std::string cid = "c" + padded("", b, 4) + "_" + padded("", c, 3);
      corpus.policies.emplace(cid, std::move(consents[c]));
      corpus.consents.push_back(cid);
      corpus.queries.push_back({padded("q", q++, 6), bid, cid, std::nullopt});
    }
  }
  return corpus;
}

// ---------------------------------------------------------------------- 3SAT

Sat3Instance sat3_encode(const std::vector<Clause> &clauses) {
  if (clauses.empty())
    throw PreconditionError("3SAT encoding needs at least one clause");
  int m = 0;
  for (const auto &cl : clauses)
    for (const auto &l : cl) {
      if (l.var < 1)
        throw PreconditionError("malformed clause: variable index must be >= 1");
      m = std::max(m, l.var);
    }
  auto prop = [](int k) { return "p" + std::to_string(k); };
  SimpleConcept c;
  KnowledgeBase kb;
  for (int k = 1; k <= m; ++k) {
    c.interval(prop(k), 0, 1);
    kb.add(Functional{prop(k), SymbolKind::Property});
  }
  std::vector<SimpleConcept> ds;
  for (const auto &cl : clauses) {
    SimpleConcept s;
    for (const auto &l : cl) {
      std::uint64_t v = l.positive ? 0 : 1;
      s.interval(prop(l.var), v, v);
    }
    ds.push_back(std::move(s));
  }
  return {FullConcept(c), FullConcept(std::move(ds)), std::move(kb)};
}

std::vector<Clause> random_3cnf(Rng &rng, int vars, int clauses) {
  std::vector<Clause> out;
  for (int i = 0; i < clauses; ++i) {
    Clause cl;
    for (auto &l : cl)
      l = {static_cast<int>(rng.between(1, static_cast<std::uint64_t>(vars))), rng.chance(0.5)};
    out.push_back(cl);
  }
  return out;
}

bool truth_table_satisfiable(const std::vector<Clause> &clauses) {
  int m = 0;
  for (const auto &cl : clauses)
    for (const auto &l : cl)
      m = std::max(m, l.var);
  if (m > 30)
    throw PreconditionError("too many variables for a truth table");
  for (std::uint64_t a = 0; a < (1ull << m); ++a) {
    bool all = true;
    for (const auto &cl : clauses) {
      bool sat = false;
      for (const auto &l : cl)
        sat = sat || (((a >> (l.var - 1)) & 1) == (l.positive ? 1u : 0u));
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all)
      return true;
  }
  return false;
}

// ----------------------------------------------------------- small instances

namespace {

struct SmallVocab {
  std::vector<std::string> names;
  std::vector<std::string> roles;
  std::vector<std::string> props;
  std::vector<std::uint64_t> pool;
};

SmallVocab small_vocab(Rng &rng, const SmallProfile &p, const std::string &prefix = "A") {
  SmallVocab v;
  for (std::size_t i = 0; i < p.names; ++i)
    v.names.push_back(prefix + std::to_string(i));
  for (std::size_t i = 0; i < p.roles; ++i)
    v.roles.push_back("r" + std::to_string(i));
  for (std::size_t i = 0; i < p.props; ++i)
    v.props.push_back("f" + std::to_string(i));
  std::set<std::uint64_t> pool;
  while (pool.size() < std::min<std::uint64_t>(p.endpointPool, p.endpointMax + 1))
    pool.insert(rng.between(0, p.endpointMax));
  v.pool.assign(pool.begin(), pool.end());
  return v;
}

void small_kb_axioms(Rng &rng, const SmallVocab &v, KnowledgeBase &kb, bool withInclusions) {
  if (withInclusions && v.names.size() >= 2) {
    std::size_t inc = rng.below(v.names.size() + 1);
    for (std::size_t i = 0; i < inc; ++i) {
      const auto &a = rng.pick(v.names), &b = rng.pick(v.names);
      if (a != b)
        kb.add(Inclusion{a, b});
    }
    std::size_t dj = rng.below(3);
    for (std::size_t i = 0; i < dj; ++i) {
      const auto &a = rng.pick(v.names), &b = rng.pick(v.names);
      if (a != b)
        kb.add(Disjoint{a, b});
    }
  }
  for (const auto &r : v.roles)
    if (rng.chance(0.5))
      kb.add(Functional{r, SymbolKind::Role});
  for (const auto &f : v.props)
    if (rng.chance(0.5))
      kb.add(Functional{f, SymbolKind::Property});
  if (!v.roles.empty() && !v.names.empty() && rng.chance(0.5))
    kb.add(Range{rng.pick(v.roles), rng.pick(v.names)});
}

class SmallBuilder {
public:
  SmallBuilder(Rng &rng, const SmallVocab &v, const SmallProfile &p) : rng_(rng), v_(v), p_(p) {}

  SimpleConcept simple() {
    constraints_ = p_.maxConstraints;
    restrictions_ = p_.maxRestrictions;
    SimpleConcept c = node(p_.maxNesting);
    c.canonicalize();
    return c;
  }

  Interval interval() {
    std::uint64_t a = rng_.pick(v_.pool), b = rng_.pick(v_.pool);
    if (a > b && !rng_.chance(0.05))
      std::swap(a, b);
    return {a, b};
  }

  // Local edits of a disjunct: some generalize, some specialize.
  SimpleConcept mutate(const SimpleConcept &c, std::size_t depthLeft) {
    SimpleConcept out;
    for (const auto &a : c.atoms) {
      double r = rng_.unit();
      if (r < 0.2)
        continue;
      out.atom(r < 0.35 ? rng_.pick(v_.names) : a.value);
    }
    for (const auto &k : c.constraints) {
      double r = rng_.unit();
      if (r < 0.2)
        continue;
      Interval iv = k.iv;
      if (r < 0.5) {
        iv.lo = std::min(iv.lo, rng_.pick(v_.pool));
        iv.hi = std::max(iv.hi, rng_.pick(v_.pool));
      } else if (r < 0.65) {
        iv = interval();
      }
      out.interval(k.prop.value, iv.lo, iv.hi);
    }
    for (const auto &r : c.restrictions) {
      if (rng_.chance(0.15))
        continue;
      out.some(rng_.chance(0.1) ? rng_.pick(v_.roles) : r.role.value, mutate(r.filler, depthLeft ? depthLeft - 1 : 0));
    }
    if (rng_.chance(0.15) && !v_.names.empty())
      out.atom(rng_.pick(v_.names));
    return out;
  }

private:
  SimpleConcept node(std::size_t depthLeft) {
    SimpleConcept c;
    std::size_t atoms = rng_.below(3);
    for (std::size_t i = 0; i < atoms && !v_.names.empty(); ++i)
      c.atom(rng_.pick(v_.names));
    std::size_t cons = std::min<std::size_t>(constraints_, rng_.below(2) + (rng_.chance(0.3) ? 1 : 0));
    for (std::size_t i = 0; i < cons && !v_.props.empty(); ++i) {
      Interval iv = interval();
      c.interval(rng_.pick(v_.props), iv.lo, iv.hi);
      --constraints_;
    }
    if (depthLeft > 0 && !v_.roles.empty()) {
      std::size_t rs = std::min<std::size_t>(restrictions_, rng_.below(3));
      for (std::size_t i = 0; i < rs; ++i) {
        --restrictions_;
        c.some(rng_.pick(v_.roles), node(depthLeft - 1));
      }
    }
    return c;
  }

  Rng &rng_;
  const SmallVocab &v_;
  const SmallProfile &p_;
  std::size_t constraints_ = 0;
  std::size_t restrictions_ = 0;
};

FullConcept small_full(Rng &rng, SmallBuilder &b, const SmallProfile &p, std::size_t maxDisjuncts) {
  std::size_t n = rng.between(1, std::max<std::size_t>(1, std::min(maxDisjuncts, p.maxDisjuncts)));
  std::vector<SimpleConcept> ds;
  for (std::size_t i = 0; i < n; ++i)
    ds.push_back(b.simple());
  return FullConcept(std::move(ds));
}

FullConcept small_rhs(Rng &rng, SmallBuilder &b, const SmallProfile &p, const FullConcept &c) {
  std::size_t n = rng.between(1, std::max<std::size_t>(1, p.maxDisjuncts));
  std::vector<SimpleConcept> ds;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.chance(0.6)) {
      SimpleConcept m = b.mutate(c[rng.below(c.size())], p.maxNesting);
      m.canonicalize();
      ds.push_back(std::move(m));
    } else {
      ds.push_back(b.simple());
    }
  }
  return FullConcept(std::move(ds));
}

} // namespace

SmallInstance gen_small_instance(Rng &rng, const SmallProfile &p) {
  SmallVocab v = small_vocab(rng, p);
  SmallBuilder b(rng, v, p);
  KnowledgeBase kb;
  small_kb_axioms(rng, v, kb, true);
  FullConcept c = small_full(rng, b, p, 3);
  FullConcept d = small_rhs(rng, b, p, c);
  return {std::move(kb), std::move(c), std::move(d)};
}

PlsoInstance gen_plso_instance(Rng &rng, const SmallProfile &p) {
  SmallProfile q = p;
  q.names = std::max<std::size_t>(2, p.names / 2);
  SmallVocab v = small_vocab(rng, q);
  // Oracle-only names and roles; policies may use the names but not the roles.
  std::vector<std::string> onlyO;
  for (std::size_t i = 0; i < q.names; ++i)
    onlyO.push_back("B" + std::to_string(i));
  std::vector<std::string> oRoles = {"s0", "s1"};

  PlsoInstance inst;
  small_kb_axioms(rng, v, inst.k, true);

  std::vector<std::string> all = v.names;
  all.insert(all.end(), onlyO.begin(), onlyO.end());
  std::size_t axioms = rng.between(1, 8);
  for (std::size_t i = 0; i < axioms; ++i) {
    const auto &a = rng.pick(all), &b = rng.pick(all), &c = rng.pick(all);
    switch (rng.below(6)) {
    case 0:
      if (a != b)
        inst.o.add(OntSub{a, b});
      break;
    case 1:
      if (a != b)
        inst.o.add(OntConjSub{{a, b}, c});
      break;
    case 2:
      inst.o.add(OntSubEx{a, rng.pick(oRoles), b});
      break;
    case 3:
      inst.o.add(OntExSub{rng.pick(oRoles), a, b});
      break;
    case 4:
      if (a != b && rng.chance(0.5))
        inst.o.add(OntDisj{a, b});
      break;
    default:
      if (a != b && a != c && b != c)
        inst.o.add(OntDef{c, {a, b}});
      break;
    }
  }

  SmallVocab pv = v;
  pv.names = all;
  SmallBuilder b(rng, pv, p);
  std::size_t nb = rng.between(1, 3), nc = rng.between(1, 3);
  for (std::size_t i = 0; i < nb; ++i)
    inst.business.push_back(small_full(rng, b, p, 3));
  for (std::size_t i = 0; i < nc; ++i)
    inst.consents.push_back(small_rhs(rng, b, p, inst.business[rng.below(nb)]));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      inst.queries.push_back({i, j});
  return inst;
}

} // namespace plr
