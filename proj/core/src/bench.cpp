#include "plr/bench.hpp"

#include "plr/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace plr {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string splitter_name(Splitter s) { return s == Splitter::Naive ? "naive" : "refined"; }

Splitter parse_splitter(std::string_view name) {
  if (name == "naive")
    return Splitter::Naive;
  if (name == "refined")
    return Splitter::Refined;
  throw PreconditionError("unknown splitter '" + std::string(name) + "'");
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const char *role_name(std::uint8_t r) {
  switch (r) {
  case kLower:
    return "lower";
  case kUpper:
    return "upper";
  default:
    return "both";
  }
}

std::uint8_t parse_role(const std::string &s) {
  if (s == "lower")
    return kLower;
  if (s == "upper")
    return kUpper;
  if (s == "both")
    return kBoth;
  throw Error("endpoints.tsv: unknown endpoint role '" + s + "'");
}

std::vector<std::string> split_tabs(const std::string &line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos)
      return out;
    start = tab + 1;
  }
}

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!line.empty())
      out.push_back(line);
  }
  return out;
}

} // namespace

void write_corpus(const Corpus &corpus, const std::string &dir) {
  fs::create_directories(fs::path(dir) / "policies");
  std::map<std::string, std::string> files;
  files["kb.plr"] = serialize_kb(corpus.kb);
  if (corpus.ontology)
    files["ontology.plr"] = serialize_ontology(*corpus.ontology);
  for (const auto &[id, policy] : corpus.policies)
    files["policies/" + id + ".pol"] = serialize_policy(PolicyDocument{policy, id, ""});

  std::string q = "query_id\tlhs\trhs\texpected\n";
  for (const auto &query : corpus.queries) {
    q += query.id + "\t" + query.lhs + "\t" + query.rhs + "\t";
    if (query.expected)
      q += *query.expected ? "true" : "false";
    q += "\n";
  }
  files["queries.tsv"] = q;

  if (!corpus.declared.empty()) {
    std::string e = "property\tvalue\trole\n";
    for (const auto &[prop, m] : corpus.declared)
      for (const auto &[v, role] : m)
        e += prop + "\t" + std::to_string(v) + "\t" + role_name(role) + "\n";
    files["endpoints.tsv"] = e;
  }

  json meta;
  meta["format"] = std::string(kFormatHeader);
  meta["profile"] = corpus.profile;
  meta["policy_profile"] = corpus.policyProfile;
  meta["seed"] = corpus.seed;
  meta["params"] = corpus.params;
  meta["business"] = corpus.business;
  meta["consents"] = corpus.consents;
  json sums = json::object();
  for (const auto &[name, content] : files) {
    write_file((fs::path(dir) / name).string(), content);
    sums[name] = hex(fnv1a64(content));
  }
  meta["checksums"] = sums;
  write_file((fs::path(dir) / "meta.json").string(), meta.dump(2) + "\n");
}

Corpus read_corpus(const std::string &dir) {
  json meta;
  try {
    meta = json::parse(read_file((fs::path(dir) / "meta.json").string()));
  } catch (const json::exception &e) {
    throw Error("corpus meta.json: " + std::string(e.what()));
  }
  if (meta.value("format", "") != kFormatHeader)
    throw Error("corpus meta.json: unsupported format");

  std::map<std::string, std::string> files;
  for (const auto &[name, sum] : meta.at("checksums").items()) {
    std::string content = read_file((fs::path(dir) / name).string());
    if (hex(fnv1a64(content)) != sum.get<std::string>())
      throw Error("corpus checksum mismatch: " + name);
    files[name] = std::move(content);
  }
  auto need = [&](const std::string &name) -> const std::string & {
    auto it = files.find(name);
    if (it == files.end())
      throw Error("corpus is missing " + name);
    return it->second;
  };

  Corpus c;
  c.profile = meta.value("profile", "");
  c.policyProfile = meta.value("policy_profile", "");
  c.seed = meta.value("seed", std::uint64_t{0});
  if (meta.contains("params"))
    c.params = meta["params"].get<std::map<std::string, std::string>>();
  if (meta.contains("business"))
    c.business = meta["business"].get<std::vector<std::string>>();
  if (meta.contains("consents"))
    c.consents = meta["consents"].get<std::vector<std::string>>();
  c.kb = parse_kb(need("kb.plr"));
  if (files.count("ontology.plr"))
    c.ontology = parse_ontology(files["ontology.plr"]);
  for (const auto &[name, content] : files) {
    if (name.rfind("policies/", 0) != 0)
      continue;
    auto doc = parse_policy_document(content);
    std::string id = doc.id.empty() ? fs::path(name).stem().string() : doc.id;
    c.policies.emplace(id, std::move(doc.policy));
  }

  auto qlines = lines_of(need("queries.tsv"));
  for (std::size_t i = 1; i < qlines.size(); ++i) {
    auto f = split_tabs(qlines[i]);
    if (f.size() < 3)
      throw Error("queries.tsv:" + std::to_string(i + 1) + ": expected at least 3 columns");
    CorpusQuery q{f[0], f[1], f[2], std::nullopt};
    if (f.size() > 3 && !f[3].empty())
      q.expected = f[3] == "true";
    if (!c.policies.count(q.lhs) || !c.policies.count(q.rhs))
      throw Error("queries.tsv:" + std::to_string(i + 1) + ": unknown policy id");
    c.queries.push_back(std::move(q));
  }
  if (files.count("endpoints.tsv")) {
    auto elines = lines_of(files["endpoints.tsv"]);
    for (std::size_t i = 1; i < elines.size(); ++i) {
      auto f = split_tabs(elines[i]);
      if (f.size() != 3)
        throw Error("endpoints.tsv:" + std::to_string(i + 1) + ": expected 3 columns");
      c.declared[f[0]][std::stoull(f[1])] |= parse_role(f[2]);
    }
  }
  return c;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double median(std::vector<double> v) {
  if (v.empty())
    return 0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1)
    return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2;
}

double percentile(std::vector<double> v, double p) {
  if (v.empty())
    return 0;
  std::sort(v.begin(), v.end());
  std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

std::size_t worker_count(std::size_t requested) {
  if (requested > 0)
    return requested;
  if (const char *env = std::getenv("PLR_THREADS")) {
    try {
      long n = std::stol(env);
      if (n > 0)
        return static_cast<std::size_t>(n);
    } catch (const std::exception &) {
    }
  }
  return 1;
}

std::unique_ptr<Engine> make_engine(const Corpus &c, const EngineOptions &o) {
  if (c.ontology)
    return std::make_unique<Engine>(c.kb, *c.ontology, o);
  return std::make_unique<Engine>(c.kb, o);
}

struct Measurement {
  std::vector<double> ns;
  std::string answer;
  double hitRate = 0;
};

// Runs queries [begin, end) of `idx` through one variant, `repeat` rounds
// with a fresh engine per round.
void run_slice(const Corpus &corpus, const std::vector<std::size_t> &idx, std::size_t begin, std::size_t end,
               const EngineOptions &eo, const BenchOptions &bo, const EndpointProfile &declared,
               std::vector<Measurement> &out) {
  using Clock = std::chrono::steady_clock;
  std::vector<FullConcept> business;
  std::set<std::string> seen;
  for (std::size_t i = begin; i < end; ++i) {
    const auto &q = corpus.queries[idx[i]];
    if (seen.insert(q.lhs).second)
      business.push_back(corpus.policy(q.lhs));
  }
  auto fresh = [&] {
    auto e = make_engine(corpus, eo);
    if (eo.preNormalized)
      e->prenormalize(business, declared);
    return e;
  };

  if (bo.warmup > 0) {
    auto e = fresh();
    for (std::size_t i = begin; i < std::min(end, begin + bo.warmup); ++i) {
      const auto &q = corpus.queries[idx[i]];
      try {
        e->subsumes(corpus.policy(q.lhs), corpus.policy(q.rhs));
      } catch (const TimeoutError &) {
      }
    }
  }

  for (std::size_t round = 0; round < std::max<std::size_t>(1, bo.repeat); ++round) {
    auto e = fresh();
    for (std::size_t i = begin; i < end; ++i) {
      const auto &q = corpus.queries[idx[i]];
      const auto &lhs = corpus.policy(q.lhs);
      const auto &rhs = corpus.policy(q.rhs);
      EngineStats before = e->stats();
      auto t0 = Clock::now();
      std::string answer;
      try {
        answer = e->subsumes(lhs, rhs) ? "true" : "false";
      } catch (const TimeoutError &) {
        answer = "timeout";
      }
      auto t1 = Clock::now();
      auto &m = out[i];
      m.ns.push_back(answer == "timeout" ? kInf
                                         : static_cast<double>(
                                               std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
      if (m.answer.empty() || m.answer == "timeout")
        m.answer = answer;
      const EngineStats &after = e->stats();
      std::size_t hits = (after.normHits - before.normHits) + (after.splitHits - before.splitHits) +
                         (after.preHits - before.preHits);
      std::size_t misses = (after.normMisses - before.normMisses) + (after.splitMisses - before.splitMisses);
      m.hitRate = hits + misses == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(hits + misses);
    }
  }
}

} // namespace

BenchReport run_bench(const Corpus &corpus, const BenchOptions &opts) {
  BenchReport report;
  std::vector<std::size_t> idx(corpus.queries.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = i;
  if (opts.limit > 0 && idx.size() > opts.limit)
    idx.resize(opts.limit);

  EndpointProfile declared = corpus.declared;
  if (declared.empty())
    for (const auto &q : corpus.queries)
      add_endpoints(corpus.policy(q.rhs), declared);

  // Interval parameter of each lhs, measured after normalization.
  std::map<std::string, std::size_t> ni;
  {
    auto e = make_engine(corpus, EngineOptions{});
    for (std::size_t i : idx) {
      const auto &id = corpus.queries[i].lhs;
      if (!ni.count(id))
        ni[id] = interval_parameter(e->normalized(corpus.policy(id)));
    }
  }

  const std::size_t workers = std::max<std::size_t>(1, std::min(worker_count(opts.threads), idx.size()));
  std::map<std::size_t, std::string> firstAnswer;
  std::set<std::size_t> disagree;
  for (const auto &variant : opts.variants) {
    EngineOptions eo = EngineOptions::preset(variant, opts.splitter);
    eo.timeout = opts.timeout;
    eo.maxSplitPieces = opts.maxSplitPieces;
    std::vector<Measurement> out(idx.size());
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (idx.size() + workers - 1) / std::max<std::size_t>(1, workers);
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t b = w * chunk, e = std::min(idx.size(), b + chunk);
      if (b >= e)
        break;
      pool.emplace_back([&, b, e, w] {
        try {
          run_slice(corpus, idx, b, e, eo, opts, declared, out);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto &t : pool)
      t.join();
    for (auto &err : errors)
      if (err)
        std::rethrow_exception(err);

    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto &q = corpus.queries[idx[i]];
      BenchRow row;
      row.queryId = q.id;
      row.ni = ni[q.lhs];
      double med = median(out[i].ns);
      row.timedOut = std::isinf(med);
      row.answer = row.timedOut ? "timeout" : out[i].answer;
      row.nsMedian = row.timedOut ? static_cast<std::uint64_t>(opts.timeout.count()) : static_cast<std::uint64_t>(med);
      row.optSet = variant;
      row.splitter = splitter_name(opts.splitter);
      row.cacheHitRate = out[i].hitRate;
      if (row.answer != "timeout") {
        auto [it, inserted] = firstAnswer.emplace(i, row.answer);
        if (!inserted && it->second != row.answer)
          disagree.insert(i);
      }
      report.rows.push_back(std::move(row));
    }
  }
  report.disagreements = disagree.size();
  return report;
}

std::string BenchReport::csv() const {
  std::string out = "query_id,n_i,answer,ns_median,opt_set,splitter,cache_hit_rate\n";
  char rate[32];
  for (const auto &r : rows) {
    std::snprintf(rate, sizeof rate, "%.4f", r.cacheHitRate);
    out += r.queryId + "," + std::to_string(r.ni) + "," + r.answer + "," + std::to_string(r.nsMedian) + "," +
           r.optSet + "," + r.splitter + "," + rate + "\n";
  }
  return out;
}

std::vector<GroupSummary> BenchReport::summary() const {
  std::map<std::pair<std::string, std::size_t>, std::vector<const BenchRow *>> groups;
  std::vector<std::string> order;
  for (const auto &r : rows) {
    if (std::find(order.begin(), order.end(), r.optSet) == order.end())
      order.push_back(r.optSet);
    groups[{r.optSet, r.ni}].push_back(&r);
  }
  std::vector<GroupSummary> out;
  for (const auto &opt : order)
    for (const auto &[key, members] : groups) {
      if (key.first != opt)
        continue;
      GroupSummary g;
      g.optSet = opt;
      g.ni = key.second;
      g.count = members.size();
      std::vector<double> ns;
      double sum = 0;
      std::size_t finite = 0;
      for (const auto *r : members) {
        if (r->timedOut) {
          ++g.timeouts;
          ns.push_back(kInf);
        } else {
          ns.push_back(static_cast<double>(r->nsMedian));
          sum += static_cast<double>(r->nsMedian);
          ++finite;
        }
      }
      g.medianNs = median(ns);
      g.p90Ns = percentile(ns, 0.9);
      g.meanFiniteNs = finite ? sum / static_cast<double>(finite) : 0;
      out.push_back(g);
    }
  return out;
}

std::string BenchReport::summary_text() const {
  std::string out = "opt_set n_i count timeouts median_ns p90_ns mean_finite_ns\n";
  char buf[256];
  for (const auto &g : summary()) {
    std::snprintf(buf, sizeof buf, "%s %zu %zu %zu %.0f %.0f %.0f\n", g.optSet.c_str(), g.ni, g.count, g.timeouts,
                  g.medianNs, g.p90Ns, g.meanFiniteNs);
    out += buf;
  }
  if (disagreements > 0)
    out += "answer disagreements across variants: " + std::to_string(disagreements) + "\n";
  return out;
}

} // namespace plr
