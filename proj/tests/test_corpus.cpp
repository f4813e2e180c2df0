#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "mrv/chain/gen.hpp"
#include "mrv/chain/verifier.hpp"
#include "mrv/corpus/pagerank.hpp"
#include "mrv/ffl/eval.hpp"
#include "mrv/translate.hpp"

using namespace mrv;
using corpus::PageRankInput;
using testutil::corpusProgram;

TEST_CASE("corpus lookup by id") {
  testutil::useRepoCorpus();
  auto l1 = corpus::getProgram("pagerank/listing-1");
  REQUIRE(l1.ok());
  CHECK(l1.value().source.rfind("fn pageRank(links : [[Int]]", 0) == 0);

  auto l9 = corpus::getProgram("pagerank/listing-9");
  REQUIRE(l9.ok());
  CHECK(l9.value().source.find("reduceByKey((x : Rat) (y : Rat) => x + y, 0, contribs)") !=
        std::string::npos);

  CHECK(!corpus::getProgram("pagerank/listing-0").ok());
}

TEST_CASE("corpus hygiene: every entry parses and type-checks") {
  testutil::useRepoCorpus();
  for (const auto& id : corpus::listPrograms()) {
    CAPTURE(id);
    CHECK_NOTHROW(corpusProgram(id));
  }
}

TEST_CASE("both chain manifests load; unknown chains do not") {
  testutil::useRepoCorpus();
  auto pr = corpus::getChain("pagerank");
  REQUIRE(pr.ok());
  CHECK(pr.value().programs.size() == 9);
  CHECK(pr.value().steps.size() == 8);

  auto sa = corpus::getChain("sumarrays");
  REQUIRE(sa.ok());
  CHECK(sa.value().steps.size() == 1);
  CHECK(sa.value().steps[0].kind == chain::StepSpec::Kind::Coupling);

  CHECK(!corpus::getChain("wordcount").ok());
}

TEST_CASE("reference ranks: hand-checked cases") {
  // symmetric 2-cycle at one iteration: exactly [1/2, 1/2]
  std::vector<BigRat> r1 = corpus::pagerankReference({{{1}, {0}}, BigRat(1, 2), 1});
  REQUIRE(r1.size() == 2);
  CHECK(r1[0] == BigRat(1, 2));
  CHECK(r1[1] == BigRat(1, 2));

  // zero iterations: everything at 1/n
  std::vector<BigRat> r0 = corpus::pagerankReference({{{1, 2}, {0}, {0, 1}}, BigRat(2, 3), 0});
  for (const auto& r : r0) CHECK(r == BigRat(1, 3));

  // single self-loop page: rank 1 is a fixed point at every dampening
  std::vector<BigRat> rs = corpus::pagerankReference({{{0}}, BigRat(3, 4), 5});
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == BigRat(1));
}

TEST_CASE("invalid inputs are rejected by the reference") {
  CHECK(!PageRankInput{{}, BigRat(1, 2), 1}.valid());            // no pages
  CHECK(!PageRankInput{{{0}, {}}, BigRat(1, 2), 1}.valid());     // dangling page
  CHECK(!PageRankInput{{{2}, {0}}, BigRat(1, 2), 1}.valid());    // index out of range
  CHECK(!PageRankInput{{{0}}, BigRat(3, 2), 1}.valid());         // dampening outside (0,1)
  CHECK_THROWS(corpus::pagerankReference({{}, BigRat(1, 2), 1}));
}

TEST_CASE("rank distribution: every page's rank is fully scattered") {
  testutil::useRepoCorpus();
  chain::GenConfig cfg;
  std::vector<il::TypePtr> sig = {il::tArray(il::tArray(il::tInt())), il::tRat(), il::tInt()};
  for (int trial = 0; trial < 200; ++trial) {
    auto args = chain::genArgs(sig, chain::trialSeed(91, trial), cfg, trial);
    REQUIRE(args.ok());
    PageRankInput in = corpus::pagerankInputFromArgs(args.value());
    REQUIRE(in.valid());
    // iterate a few rounds and check sum(delta) == sum(previous ranks)
    std::vector<BigRat> ranks(in.links.size(),
                              BigRat(1) / BigRat((long long)in.links.size()));
    for (int k = 0; k < 3; ++k) {
      std::vector<BigRat> delta = corpus::pagerankDelta(in.links, ranks);
      BigRat sumDelta(0), sumPrev(0);
      for (const auto& d : delta) sumDelta += d;
      for (const auto& r : ranks) sumPrev += r;
      CHECK(sumDelta == sumPrev);
      BigRat base = (BigRat(1) - in.dampening) / BigRat((long long)in.links.size());
      for (size_t p = 0; p < ranks.size(); ++p) ranks[p] = in.dampening * delta[p] + base;
    }
  }
}

TEST_CASE("triple agreement: reference = interpreter = translated evaluation") {
  testutil::useRepoCorpus();
  il::TypedProgram l1 = corpusProgram("pagerank/listing-1");
  ffl::TermPtr translated = translate(l1);
  std::vector<il::TypePtr> sig;
  for (const auto& p : l1.params()) sig.push_back(p.type);

  chain::GenConfig cfg;
  cfg.maxGraph = 5;
  for (int trial = 0; trial < 80; ++trial) {
    auto args = chain::genArgs(sig, chain::trialSeed(17, trial), cfg, trial);
    REQUIRE(args.ok());
    PageRankInput in = corpus::pagerankInputFromArgs(args.value());
    std::vector<BigRat> expected = corpus::pagerankReference(in);

    EvalOutcome viaInterp = il::interpretProgram(l1, args.value(), 1000000);
    REQUIRE(viaInterp.isValue());
    EvalOutcome viaFfl = ffl::eval(applyToArgs(translated, args.value(), sig), 1000000);
    REQUIRE(viaFfl.isValue());

    std::vector<Value> expectedVals;
    for (const auto& r : expected) expectedVals.push_back(Value(r));
    Value expectedValue = Value::array(std::move(expectedVals));
    CHECK(viaInterp.value == expectedValue);
    CHECK(viaFfl.value == expectedValue);
  }
}
