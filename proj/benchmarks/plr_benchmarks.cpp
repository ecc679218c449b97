#include "plr/closure.hpp"
#include "plr/engine.hpp"
#include "plr/generate.hpp"
#include "plr/intervals.hpp"
#include "plr/io.hpp"
#include "plr/normalize.hpp"
#include "plr/sts.hpp"

#include <benchmark/benchmark.h>

using namespace plr;

namespace {

std::string fixture(const std::string &name) { return std::string(PLR_FIXTURE_DIR) + "/" + name; }
KnowledgeBase befit_kb() { return parse_kb(read_file(fixture("befit.kb"))); }
FullConcept policy(const std::string &name) { return parse_policy(read_file(fixture(name))); }

void BM_NormalizeBusiness(benchmark::State &state) {
  auto idx = build_closure(befit_kb());
  auto mode = NormalizationMode::plain(idx);
  auto c = policy("befit_business.pol");
  for (auto _ : state)
    benchmark::DoNotOptimize(normalize_full(mode, c));
}
BENCHMARK(BM_NormalizeBusiness);

// n_i grows with the argument: the lhs carries that many disjoint intervals on f.
void BM_SplitNaive(benchmark::State &state) {
  std::string lhs = "f in [0,1000] & A", rhs;
  for (int i = 0; i < state.range(0); ++i)
    rhs += (i ? " | " : "") + std::string("f in [") + std::to_string(i * 10 + 3) + "," + std::to_string(i * 10 + 7) + "]";
  auto c = parse_policy(lhs), d = parse_policy(rhs);
  for (auto _ : state)
    benchmark::DoNotOptimize(split_naive(c, d));
}
BENCHMARK(BM_SplitNaive)->RangeMultiplier(4)->Range(1, 64);

void BM_SplitRefined(benchmark::State &state) {
  std::string lhs = "f in [0,1000] & A", rhs;
  for (int i = 0; i < state.range(0); ++i)
    rhs += (i ? " | " : "") + std::string("f in [") + std::to_string(i * 10 + 3) + "," + std::to_string(i * 10 + 7) + "]";
  auto c = parse_policy(lhs), d = parse_policy(rhs);
  for (auto _ : state)
    benchmark::DoNotOptimize(split_refined(c, d));
}
BENCHMARK(BM_SplitRefined)->RangeMultiplier(4)->Range(1, 64);

void BM_StsHeartRate(benchmark::State &state) {
  auto kb = befit_kb();
  auto idx = build_closure(kb);
  auto mode = NormalizationMode::plain(idx);
  auto lhs = normalize_full(mode, policy("heart_rate_avg.pol"))[0];
  auto rhs = normalize_full(mode, policy("befit_consent_first.pol"))[0];
  for (auto _ : state)
    benchmark::DoNotOptimize(sts(idx, lhs, rhs));
}
BENCHMARK(BM_StsHeartRate);

void BM_PlrBefit(benchmark::State &state) {
  auto kb = befit_kb();
  auto business = policy("befit_business.pol"), rights = policy("gdpr_rights.pol");
  const char *variants[] = {"plain", "c", "2n", "c2n"};
  Engine e(kb, EngineOptions::preset(variants[state.range(0)]));
  state.SetLabel(variants[state.range(0)]);
  for (auto _ : state)
    benchmark::DoNotOptimize(plr::plr(e, business, rights));
}
BENCHMARK(BM_PlrBefit)->DenseRange(0, 3);

void BM_PlrThreeSat(benchmark::State &state) {
  Rng rng(77);
  auto inst = sat3_encode(random_3cnf(rng, static_cast<int>(state.range(0)), static_cast<int>(4 * state.range(0))));
  for (auto _ : state) {
    Engine e(inst.kb);
    benchmark::DoNotOptimize(plr::plr(e, inst.c, inst.d));
  }
}
BENCHMARK(BM_PlrThreeSat)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
