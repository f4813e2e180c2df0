#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "mrv/chain/gen.hpp"
#include "mrv/corpus/pagerank.hpp"

using namespace mrv;
using testutil::corpusProgram;
using testutil::intArray;
using testutil::intv;
using testutil::mustParse;
using testutil::mustTypecheck;
using testutil::ratv;

TEST_CASE("identity function parses to a single return") {
  il::Program p = mustParse("fn id(x: Int) -> Int { return x; }");
  CHECK(p.name == "id");
  REQUIRE(p.body.size() == 1);
  CHECK(p.body[0]->kind == il::StmtKind::Return);
  CHECK(p.body[0]->e0->kind == il::ExprKind::Var);
}

TEST_CASE("the original pagerank listing has the documented shape") {
  testutil::useRepoCorpus();
  auto entry = corpus::getProgram("pagerank/listing-1");
  REQUIRE(entry.ok());
  il::Program p = mustParse(entry.value().source);
  // one while loop containing two top-level for blocks, one of them nested
  REQUIRE(p.body.size() == 4);
  const auto& loop = p.body[2];
  REQUIRE(loop->kind == il::StmtKind::While);
  int forCount = 0, nestedFor = 0;
  for (const auto& s : loop->body) {
    if (s->kind == il::StmtKind::For) {
      ++forCount;
      for (const auto& inner : s->body)
        if (inner->kind == il::StmtKind::For) ++nestedFor;
    }
  }
  CHECK(forCount == 2);
  CHECK(nestedFor == 1);
}

TEST_CASE("malformed input yields a positioned parse error") {
  auto r = il::parseProgram("fn f() -> Int { var x := ; return x; }", "bad.il");
  REQUIRE(!r.ok());
  CHECK(r.error().span.line == 1);
  CHECK(r.error().span.col > 0);
  CHECK(!r.error().expected.empty());
  CHECK(r.error().render("bad.il").find("bad.il:1:") == 0);
}

TEST_CASE("parse/pretty round-trip is stable on the whole corpus") {
  testutil::useRepoCorpus();
  for (const auto& id : corpus::listPrograms()) {
    CAPTURE(id);
    auto entry = corpus::getProgram(id);
    REQUIRE(entry.ok());
    il::Program once = mustParse(entry.value().source);
    il::Program twice = mustParse(il::prettyPrint(once));
    CHECK(il::programEqual(once, twice));
  }
}

TEST_CASE("SumArrays typechecks with return type [Int]") {
  il::TypedProgram tp = corpusProgram("sumarrays/plain");
  CHECK(il::typeEqual(tp.returnType(), il::tArray(il::tInt())));
}

TEST_CASE("Bool where Int expected is a type error") {
  auto p = mustParse("fn f(b: Bool) -> Int { return b + 1; }");
  auto r = il::typecheckProgram(p);
  REQUIRE(!r.ok());
  CHECK(!r.error().empty());
}

TEST_CASE("every type error is reported, not just the first") {
  auto p = mustParse("fn f(b: Bool) -> Int { var x := b + 1; var y := b && 2; return x; }");
  auto r = il::typecheckProgram(p);
  REQUIRE(!r.ok());
  CHECK(r.error().size() >= 2);
}

TEST_CASE("the reduceByKey call in the final listing types as [Int * Rat]") {
  il::TypedProgram tp = corpusProgram("pagerank/listing-9");
  il::TypePtr t = tp.localType("rankUpdates");
  REQUIRE(t != nullptr);
  CHECK(il::typeEqual(t, il::tArray(il::tPair(il::tInt(), il::tRat()))));
}

TEST_CASE("assigning a loop iteration variable is rejected statically") {
  auto p = mustParse(
      "fn f(xs: [Int]) -> Int { var s := 0; for (x : xs) { x := 1; s := s + x; } return s; }");
  auto r = il::typecheckProgram(p);
  REQUIRE(!r.ok());
  bool found = false;
  for (const auto& e : r.error())
    if (e.message.find("iteration variable") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("parameters are read-only") {
  auto p = mustParse("fn f(x: Int) -> Int { x := 1; return x; }");
  CHECK(!il::typecheckProgram(p).ok());
}

TEST_CASE("SumArrays([1,2],[10,20]) = [11,22]") {
  // By hand: sum starts [0,0]; i=0 writes 1+10; i=1 writes 2+20.
  il::TypedProgram tp = corpusProgram("sumarrays/plain");
  EvalOutcome out = il::interpretProgram(tp, {intArray({1, 2}), intArray({10, 20})}, 100000);
  REQUIRE(out.isValue());
  CHECK(out.value == intArray({11, 22}));
}

TEST_CASE("pageRank on the symmetric 2-cycle, one iteration, exact halves") {
  // By hand with exact rationals: rank_0 = [1/2, 1/2]; each page passes its
  // whole rank across; rank_1 = 1/2 * 1/2 + (1/2)/2 = 1/2 on both pages.
  il::TypedProgram tp = corpusProgram("pagerank/listing-1");
  std::vector<Value> args = corpus::pagerankArgs(
      corpus::PageRankInput{{{1}, {0}}, BigRat(1, 2), 1});
  EvalOutcome out = il::interpretProgram(tp, args, 100000);
  REQUIRE(out.isValue());
  CHECK(out.value == Value::array({ratv(1, 2), ratv(1, 2)}));
}

TEST_CASE("a while(true) loop exhausts the budget") {
  il::TypedProgram tp =
      mustTypecheck("fn f(x: Int) -> Int { var y := x; while (true) { y := y; } return y; }");
  EvalOutcome out = il::interpretProgram(tp, {intv(0)}, 1000);
  CHECK(out.isDiverged());
}

TEST_CASE("out-of-bounds reads and zero divisions carry spans") {
  il::TypedProgram oob = mustTypecheck("fn f(xs: [Int]) -> Int { return xs[3]; }");
  EvalOutcome a = il::interpretProgram(oob, {intArray({1})}, 1000);
  REQUIRE(a.isError());
  CHECK(a.error == RunErrorKind::IndexOutOfBounds);
  CHECK(a.span.line == 1);

  il::TypedProgram div = mustTypecheck("fn f(x: Int) -> Int { return 1 / x; }");
  EvalOutcome b = il::interpretProgram(div, {intv(0)}, 1000);
  REQUIRE(b.isError());
  CHECK(b.error == RunErrorKind::DivisionByZero);
}

TEST_CASE("typing soundness at desk scale: no type-shaped failure on generated inputs") {
  testutil::useRepoCorpus();
  chain::GenConfig cfg;
  cfg.maxGraph = 4;
  for (const auto& id : corpus::listPrograms()) {
    CAPTURE(id);
    il::TypedProgram tp = corpusProgram(id);
    std::vector<il::TypePtr> sig;
    for (const auto& p : tp.params()) sig.push_back(p.type);
    for (int trial = 0; trial < 100; ++trial) {
      auto args = chain::genArgs(sig, chain::trialSeed(7, trial), cfg, trial);
      REQUIRE(args.ok());
      // Must come back as a contracted outcome; anything thrown is a bug.
      EvalOutcome out = il::interpretProgram(tp, args.value(), 1000000);
      CHECK((out.isValue() || out.isDiverged() || out.isError()));
    }
  }
}
