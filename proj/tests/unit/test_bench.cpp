#include "support.hpp"

#include "plr/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace plr;
using namespace plr::test;

namespace {

namespace fs = std::filesystem;

Corpus small_corpus() {
  auto v = gen_ontology_detailed(OntologyProfile::preset("O1", 111));
  return gen_policies(v, PolicyProfile::preset("P1", 111), 120, 0.3, 10);
}

Corpus pilot_corpus() { return gen_pilot_corpus(PilotProfile::preset("pxs", 3)); }

fs::path scratch(const std::string &name) {
  auto dir = fs::temp_directory_path() / ("plr_bench_" + name);
  fs::remove_all(dir);
  return dir;
}

BenchOptions quick(std::vector<std::string> variants) {
  BenchOptions o;
  o.variants = std::move(variants);
  o.repeat = 1;
  o.warmup = 0;
  o.threads = 1;
  o.timeout = std::chrono::seconds(1);
  return o;
}

std::size_t line_count(const std::string &s) {
  std::size_t n = 0;
  for (char c : s)
    n += c == '\n';
  return n;
}

} // namespace

TEST(Bench, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Bench, CorpusRoundTripsThroughDirectory) {
  auto corpus = small_corpus();
  auto dir = scratch("roundtrip");
  write_corpus(corpus, dir.string());
  auto back = read_corpus(dir.string());
  EXPECT_EQ(back.kb, corpus.kb);
  EXPECT_EQ(back.seed, corpus.seed);
  EXPECT_EQ(back.business, corpus.business);
  EXPECT_EQ(back.queries.size(), corpus.queries.size());
  for (std::size_t i = 0; i < corpus.queries.size(); ++i) {
    EXPECT_EQ(back.queries[i].id, corpus.queries[i].id);
    EXPECT_EQ(back.queries[i].lhs, corpus.queries[i].lhs);
    EXPECT_EQ(back.queries[i].rhs, corpus.queries[i].rhs);
    EXPECT_EQ(back.queries[i].expected, corpus.queries[i].expected);
  }
  for (const auto &[id, c] : corpus.policies)
    EXPECT_EQ(back.policy(id), c) << id;
  fs::remove_all(dir);
}

TEST(Bench, TamperedCorpusIsRefused) {
  auto dir = scratch("tamper");
  write_corpus(small_corpus(), dir.string());
  {
    std::ofstream f(dir / "kb.plr", std::ios::app);
    f << "sub Extra Thing\n";
  }
  EXPECT_THROW(read_corpus(dir.string()), Error);
  fs::remove_all(dir);
}

TEST(Bench, MissingCorpusFileIsRefused) {
  auto dir = scratch("missing");
  write_corpus(small_corpus(), dir.string());
  fs::remove(dir / "queries.tsv");
  EXPECT_THROW(read_corpus(dir.string()), Error);
  fs::remove_all(dir);
}

TEST(Bench, OneRowPerQueryAndVariant) {
  auto corpus = pilot_corpus();
  ASSERT_GE(corpus.queries.size(), 100u);
  auto o = quick({"plain", "c"});
  o.limit = 100;
  auto report = run_bench(corpus, o);
  EXPECT_EQ(report.rows.size(), 200u);
  EXPECT_EQ(report.disagreements, 0u);
  auto csv = report.csv();
  EXPECT_EQ(line_count(csv), 201u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "query_id,n_i,answer,ns_median,opt_set,splitter,cache_hit_rate");
}

TEST(Bench, AnswersMatchPrecomputedExpectations) {
  auto corpus = small_corpus();
  auto o = quick({"c2n"});
  o.limit = 40;
  auto report = run_bench(corpus, o);
  std::map<std::string, std::optional<bool>> expected;
  for (const auto &q : corpus.queries)
    expected[q.id] = q.expected;
  std::size_t known = 0;
  for (const auto &r : report.rows)
    if (auto e = expected.at(r.queryId); e && !r.timedOut) {
      ++known;
      EXPECT_EQ(r.answer, *e ? "true" : "false") << r.queryId;
    }
  EXPECT_GT(known, 0u);
}

TEST(Bench, SingleRepeatRecordsTheOnlyMeasurement) {
  auto corpus = pilot_corpus();
  auto o = quick({"plain"});
  o.limit = 10;
  auto report = run_bench(corpus, o);
  ASSERT_EQ(report.rows.size(), 10u);
  for (const auto &r : report.rows) {
    EXPECT_GT(r.nsMedian, 0u);
    EXPECT_FALSE(r.timedOut);
    EXPECT_EQ(r.optSet, "plain");
    EXPECT_EQ(r.splitter, "naive");
  }
}

TEST(Bench, CachedVariantsReportHitRate) {
  auto pxs = pilot_corpus();
  auto o = quick({"pre"});
  o.limit = 300;
  auto report = run_bench(pxs, o);
  double maxRate = 0;
  for (const auto &r : report.rows)
    maxRate = std::max(maxRate, r.cacheHitRate);
  EXPECT_GT(maxRate, 0.0);
  EXPECT_NE(report.csv().find("pre"), std::string::npos);
}

TEST(Bench, TimeoutsAreRecordedNotThrown) {
  auto corpus = small_corpus();
  auto o = quick({"plain"});
  o.limit = 20;
  o.timeout = std::chrono::nanoseconds(1);
  auto report = run_bench(corpus, o);
  ASSERT_EQ(report.rows.size(), 20u);
  std::size_t timeouts = 0;
  for (const auto &r : report.rows)
    timeouts += r.timedOut && r.answer == "timeout";
  EXPECT_GT(timeouts, 0u);
}

TEST(Bench, SummaryGroupsByIntervalParameter) {
  auto corpus = pilot_corpus();
  auto o = quick({"plain", "2n"});
  o.limit = 200;
  auto report = run_bench(corpus, o);
  std::size_t counted = 0;
  for (const auto &g : report.summary()) {
    counted += g.count;
    EXPECT_TRUE(g.optSet == "plain" || g.optSet == "2n");
    EXPECT_LE(g.timeouts, g.count);
    if (g.timeouts * 2 < g.count) {
      EXPECT_TRUE(std::isfinite(g.medianNs));
      EXPECT_LE(g.medianNs, g.p90Ns);
    }
  }
  EXPECT_EQ(counted, report.rows.size());
  EXPECT_FALSE(report.summary_text().empty());
}

TEST(Bench, SplitterNamesRoundTrip) {
  EXPECT_EQ(parse_splitter(splitter_name(Splitter::Naive)), Splitter::Naive);
  EXPECT_EQ(parse_splitter(splitter_name(Splitter::Refined)), Splitter::Refined);
  EXPECT_THROW(parse_splitter("fancy"), Error);
}
