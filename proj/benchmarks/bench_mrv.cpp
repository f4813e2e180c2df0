#include <benchmark/benchmark.h>

#include "mrv/chain/verifier.hpp"
#include "mrv/corpus/corpus.hpp"
#include "mrv/corpus/pagerank.hpp"
#include "mrv/coupling/checker.hpp"
#include "mrv/ffl/eval.hpp"
#include "mrv/il/interp.hpp"
#include "mrv/il/parser.hpp"
#include "mrv/rewrite/rules.hpp"
#include "mrv/translate.hpp"

using namespace mrv;

namespace {

il::TypedProgram corpusProgram(const std::string& id) {
  corpus::setCorpusRoot(MRV_CORPUS_DIR);
  auto entry = corpus::getProgram(id);
  auto parsed = il::parseProgram(entry.value().source, id);
  auto typed = il::typecheckProgram(parsed.value());
  return std::move(typed.value());
}

std::vector<Value> pagerankInput(int n, int iterations) {
  std::vector<std::vector<int>> links;
  for (int p = 0; p < n; ++p) links.push_back({(p + 1) % n, (p + 2) % n});
  return corpus::pagerankArgs(corpus::PageRankInput{links, BigRat(17, 20), iterations});
}

void ParsePageRank(benchmark::State& state) {
  corpus::setCorpusRoot(MRV_CORPUS_DIR);
  std::string source = corpus::getProgram("pagerank/listing-1").value().source;
  for (auto _ : state) {
    auto p = il::parseProgram(source, "bench");
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(ParsePageRank);

void TranslatePageRank(benchmark::State& state) {
  il::TypedProgram tp = corpusProgram("pagerank/listing-1");
  for (auto _ : state) {
    auto t = translate(tp);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(TranslatePageRank);

void InterpretPageRank(benchmark::State& state) {
  il::TypedProgram tp = corpusProgram("pagerank/listing-1");
  std::vector<Value> args = pagerankInput(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    EvalOutcome out = il::interpretProgram(tp, args, 10000000);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(InterpretPageRank)->Arg(4)->Arg(8)->Arg(16);

void EvalTranslatedPageRank(benchmark::State& state) {
  il::TypedProgram tp = corpusProgram("pagerank/listing-1");
  std::vector<il::TypePtr> sig;
  for (const auto& p : tp.params()) sig.push_back(p.type);
  ffl::TermPtr applied =
      applyToArgs(translate(tp), pagerankInput(static_cast<int>(state.range(0)), 3), sig);
  for (auto _ : state) {
    EvalOutcome out = ffl::eval(applied, 10000000);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(EvalTranslatedPageRank)->Arg(4)->Arg(8);

void JustifyMapIntroduce(benchmark::State& state) {
  ffl::TermPtr src = translate(corpusProgram("pagerank/listing-1"));
  ffl::TermPtr tgt = translate(corpusProgram("pagerank/listing-2"));
  for (auto _ : state) {
    auto r = rewrite::justifyStep("map-introduce", src, tgt);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(JustifyMapIntroduce);

void CouplingTrialSumArrays(benchmark::State& state) {
  il::TypedProgram s1 = corpusProgram("sumarrays/plain");
  il::TypedProgram s2 = corpusProgram("sumarrays/zipped");
  auto inv = coupling::parsePredicate("sum_1 = sum_2 && zipped_2 = zip(xs_1, ys_1)", s1, s2);
  coupling::CouplingConfig cfg;
  cfg.trials = 1;
  for (auto _ : state) {
    auto report = coupling::checkCoupling(s1, s2, inv.value(), cfg);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(CouplingTrialSumArrays);

}  // namespace

BENCHMARK_MAIN();
