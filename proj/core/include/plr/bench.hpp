#pragma once

#include "plr/engine.hpp"
#include "plr/generate.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace plr {

std::uint64_t fnv1a64(std::string_view data);

// Layout: meta.json, kb.plr, [ontology.plr], policies/<id>.pol, queries.tsv,
// [endpoints.tsv]. meta.json carries profile, seed and per-file checksums.
void write_corpus(const Corpus &corpus, const std::string &dir);
// Throws Error if a file is missing or its checksum does not match.
Corpus read_corpus(const std::string &dir);

struct BenchOptions {
  std::vector<std::string> variants{"plain"};
  Splitter splitter = Splitter::Naive;
  std::size_t repeat = 3;
  std::chrono::nanoseconds timeout = std::chrono::seconds(10);
  std::size_t maxSplitPieces = 100000; // per query; exceeding it counts as a timeout, 0 disables
  std::size_t threads = 0; // 0: PLR_THREADS, else 1
  std::size_t warmup = 50; // untimed queries per worker before measuring
  std::size_t limit = 0;   // first n queries only; 0 = all
};

struct BenchRow {
  std::string queryId;
  std::size_t ni = 0;
  std::string answer; // true, false or timeout
  std::uint64_t nsMedian = 0;
  bool timedOut = false; // median over rounds is a timeout; nsMedian holds the ceiling
  std::string optSet;
  std::string splitter;
  double cacheHitRate = 0;
};

struct GroupSummary {
  std::string optSet;
  std::size_t ni = 0;
  std::size_t count = 0;
  std::size_t timeouts = 0;
  double medianNs = 0; // +inf when at least half the group timed out
  double p90Ns = 0;
  double meanFiniteNs = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t disagreements = 0; // queries whose answers differ across variants

  std::string csv() const;
  std::vector<GroupSummary> summary() const;
  std::string summary_text() const;
};

BenchReport run_bench(const Corpus &corpus, const BenchOptions &opts);

std::string splitter_name(Splitter s);
Splitter parse_splitter(std::string_view name);

} // namespace plr
