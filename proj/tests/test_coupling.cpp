#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "mrv/coupling/checker.hpp"

using namespace mrv;
using coupling::CouplingConfig;
using coupling::CouplingReport;
using coupling::FailKind;
using testutil::corpusProgram;
using testutil::intArray;
using testutil::intv;
using testutil::mustTypecheck;

namespace {

coupling::Predicate mustPredicate(const std::string& text, const il::TypedProgram& p1,
                                  const il::TypedProgram& p2) {
  auto r = coupling::parsePredicate(text, p1, p2);
  if (!r.ok()) throw std::runtime_error("predicate: " + r.error().message);
  return std::move(r.value());
}

}  // namespace

TEST_CASE("build_product splits prelude, loop and postlude") {
  il::TypedProgram p2 = corpusProgram("pagerank/listing-2");
  il::TypedProgram p3 = corpusProgram("pagerank/listing-3");
  auto prod = coupling::buildProduct(p2, p3);
  REQUIRE(prod.ok());
  CHECK(prod.value().side1.prelude.size() == 2);  // iter, ranks
  CHECK(prod.value().side1.loop->kind == il::StmtKind::While);
  CHECK(prod.value().side1.postlude.size() == 1);  // return

  il::TypedProgram s1 = corpusProgram("sumarrays/plain");
  il::TypedProgram s2 = corpusProgram("sumarrays/zipped");
  auto prod2 = coupling::buildProduct(s1, s2);
  REQUIRE(prod2.ok());
  CHECK(prod2.value().side1.loop->kind == il::StmtKind::For);
  CHECK(prod2.value().side2.prelude.size() == 2);  // sum, zipped
}

TEST_CASE("straight-line programs are rejected by the product construction") {
  il::TypedProgram straight = mustTypecheck("fn f(x: Int) -> Int { return x + 1; }");
  il::TypedProgram looped =
      mustTypecheck("fn g(x: Int) -> Int { var s := 0; while (s < x) { s := s + 1; } return s; }");
  auto r = coupling::buildProduct(looped, straight);
  REQUIRE(!r.ok());
  CHECK(r.error().message.find("no top-level loop") != std::string::npos);

  il::TypedProgram twoLoops = mustTypecheck(
      "fn h(x: Int) -> Int { var s := 0; while (s < x) { s := s + 1; } "
      "while (x < s) { s := s - 1; } return s; }");
  CHECK(!coupling::buildProduct(twoLoops, looped).ok());
}

TEST_CASE("evaluate_predicate over concrete machine states") {
  il::TypedProgram p = mustTypecheck("fn f(x: Int, links: [[Int]]) -> Int { return x; }");
  il::Machine m1(p, {intv(4), Value::array({intArray({1}), intArray({})})}, 1000);
  il::Machine m2(p, {intv(4), Value::array({intArray({1}), intArray({})})}, 1000);

  auto same = mustPredicate("x_1 = x_2", p, p);
  auto r1 = coupling::evaluatePredicate(same, m1, m2);
  REQUIRE(r1.ok());
  CHECK(r1.value());

  m2.set("x", intv(5));
  auto r2 = coupling::evaluatePredicate(same, m1, m2);
  REQUIRE(r2.ok());
  CHECK(!r2.value());

  // a dangling page falsifies the quantified out-degree claim
  auto deg = mustPredicate("forall i in indices(links_1): 0 < length(links_1[i])", p, p);
  auto r3 = coupling::evaluatePredicate(deg, m1, m2);
  REQUIRE(r3.ok());
  CHECK(!r3.value());

  // unbound variables are evaluation errors, not crashes
  il::TypedProgram withLocal =
      mustTypecheck("fn g(x: Int) -> Int { var y := x; return y; }");
  auto local = mustPredicate("y_1 = y_2", withLocal, withLocal);
  il::Machine n1(withLocal, {intv(1)}, 1000);
  il::Machine n2(withLocal, {intv(1)}, 1000);
  auto r4 = coupling::evaluatePredicate(local, n1, n2);
  CHECK(!r4.ok());
}

TEST_CASE("predicates must resolve, be boolean, and stay lambda-free") {
  il::TypedProgram p = corpusProgram("sumarrays/plain");
  CHECK(!coupling::parsePredicate("nope_1 = nope_2", p, p).ok());
  CHECK(!coupling::parsePredicate("xs_1", p, p).ok());           // not Bool
  CHECK(!coupling::parsePredicate("sum_1 = sum_3", p, p).ok());  // bad suffix
  CHECK(!coupling::parsePredicate("length(map((x : Int) => x, xs_1)) = 0", p, p).ok());
}

TEST_CASE("the zipped SumArrays coupling validates empirically") {
  il::TypedProgram s1 = corpusProgram("sumarrays/plain");
  il::TypedProgram s2 = corpusProgram("sumarrays/zipped");
  auto inv = mustPredicate("sum_1 = sum_2 && zipped_2 = zip(xs_1, ys_1)", s1, s2);
  CouplingConfig cfg;
  cfg.trials = 80;
  CouplingReport report = coupling::checkCoupling(s1, s2, inv, cfg);
  CHECK(report.pass);
  CHECK(report.trials == 80);
  CHECK(report.totalIterations > 0);
  CHECK(report.render().find("empirically validated") == 0);
}

TEST_CASE("the flipped zip invariant fails after an iteration with a replayable seed") {
  il::TypedProgram s1 = corpusProgram("sumarrays/plain");
  il::TypedProgram s2 = corpusProgram("sumarrays/zipped");
  auto flipped = mustPredicate("sum_1 = sum_2 && zipped_2 = zip(ys_1, xs_1)", s1, s2);
  CouplingConfig cfg;
  cfg.trials = 200;
  CouplingReport report = coupling::checkCoupling(s1, s2, flipped, cfg);
  REQUIRE(!report.pass);
  CHECK(report.kind == FailKind::InvariantBrokenAfterIteration);
  CHECK(report.failTrial >= 0);

  // replaying the failing trial reproduces the identical verdict
  CouplingReport again = coupling::replayCouplingTrial(s1, s2, flipped, cfg, report.failTrial);
  REQUIRE(!again.pass);
  CHECK(again.kind == report.kind);
  CHECK(again.failSeed == report.failSeed);
  CHECK(again.failIteration == report.failIteration);
  CHECK(again.detail == report.detail);
}

TEST_CASE("pagerank steps 2->3 and 4->5 validate with the paper-point invariants") {
  il::TypedProgram p2 = corpusProgram("pagerank/listing-2");
  il::TypedProgram p3 = corpusProgram("pagerank/listing-3");
  auto inv23 = mustPredicate("newRanks_1 = newRanks_2 && outRanks_2 = zip(links_1, ranks_1)",
                             p2, p3);
  CouplingConfig cfg;
  cfg.trials = 40;
  cfg.maxGraph = 5;
  cfg.atBoundary1 = 2;
  cfg.atBoundary2 = 3;
  CouplingReport r23 = coupling::checkCoupling(p2, p3, inv23, cfg);
  CHECK(r23.pass);

  il::TypedProgram p4 = corpusProgram("pagerank/listing-4");
  il::TypedProgram p5 = corpusProgram("pagerank/listing-5");
  auto inv45 = mustPredicate(
      "newRanks_1 = newRanks_2 && (forall i in indices(outRanks_1): forall j in "
      "indices(fst outRanks_1[i]): fst(linksAndContrib_2[i][j]) = (fst outRanks_1[i])[j] && "
      "snd(linksAndContrib_2[i][j]) = snd(outRanks_1[i]) / length(fst outRanks_1[i]))",
      p4, p5);
  CouplingConfig cfg45 = cfg;
  cfg45.atBoundary1 = 3;
  cfg45.atBoundary2 = 4;
  CouplingReport r45 = coupling::checkCoupling(p4, p5, inv45, cfg45);
  CHECK(r45.pass);
}

TEST_CASE("the mid-body invariants do not hold at full body end") {
  // checked at the default point (after ranks is reassigned), the zip relation
  // is stale, so the checker must fail - evidence that the annotation point
  // is load-bearing
  il::TypedProgram p2 = corpusProgram("pagerank/listing-2");
  il::TypedProgram p3 = corpusProgram("pagerank/listing-3");
  auto inv = mustPredicate("newRanks_1 = newRanks_2 && outRanks_2 = zip(links_1, ranks_1)",
                           p2, p3);
  CouplingConfig cfg;
  cfg.trials = 60;
  CouplingReport report = coupling::checkCoupling(p2, p3, inv, cfg);
  CHECK(!report.pass);
  CHECK(report.kind == FailKind::InvariantBrokenAfterIteration);
}

TEST_CASE("invariant checking at loop entry") {
  il::TypedProgram a =
      mustTypecheck("fn f(n: Int) -> Int { var x := 0; while (x < n) { x := x + 1; } return x; }");
  auto inv = mustPredicate("x_1 = 1", a, a);
  CouplingConfig cfg;
  cfg.trials = 10;
  cfg.checkEntry = true;
  CouplingReport report = coupling::checkCoupling(a, a, inv, cfg);
  REQUIRE(!report.pass);
  CHECK(report.kind == FailKind::InvariantBrokenAtEntry);

  // the SumArrays invariant holds already at entry
  il::TypedProgram s1 = corpusProgram("sumarrays/plain");
  il::TypedProgram s2 = corpusProgram("sumarrays/zipped");
  auto good = mustPredicate("sum_1 = sum_2 && zipped_2 = zip(xs_1, ys_1)", s1, s2);
  CouplingConfig cfg2;
  cfg2.trials = 60;
  cfg2.checkEntry = true;
  CHECK(coupling::checkCoupling(s1, s2, good, cfg2).pass);
}

TEST_CASE("guard disagreement is detected") {
  il::TypedProgram a =
      mustTypecheck("fn f(n: Int) -> Int { var x := 0; while (x < n) { x := x + 1; } return x; }");
  il::TypedProgram b = mustTypecheck(
      "fn g(n: Int) -> Int { var x := 0; while (x < n + 1) { x := x + 1; } return x; }");
  auto inv = mustPredicate("x_1 = x_2", a, b);
  CouplingConfig cfg;
  cfg.trials = 100;
  CouplingReport report = coupling::checkCoupling(a, b, inv, cfg);
  REQUIRE(!report.pass);
  CHECK(report.kind == FailKind::GuardDisagreement);
}

TEST_CASE("budget exhaustion reports side divergence, never a crash") {
  il::TypedProgram spin = mustTypecheck(
      "fn f(n: Int) -> Int { var x := 0; while (x < n) { x := x; } return x; }");
  auto inv = mustPredicate("x_1 = x_2", spin, spin);
  CouplingConfig cfg;
  cfg.trials = 50;
  cfg.budget = 300;
  CouplingReport report = coupling::checkCoupling(spin, spin, inv, cfg);
  REQUIRE(!report.pass);
  CHECK(report.kind == FailKind::SideDivergence);
  CHECK(report.detail.find("budget") != std::string::npos);
}

TEST_CASE("differing outputs after agreeing loops are an output mismatch") {
  il::TypedProgram a = mustTypecheck(
      "fn f(n: Int) -> Int { var x := 0; while (x < n) { x := x + 1; } return x; }");
  il::TypedProgram b = mustTypecheck(
      "fn g(n: Int) -> Int { var x := 0; while (x < n) { x := x + 1; } return x + 1; }");
  auto inv = mustPredicate("x_1 = x_2", a, b);
  CouplingConfig cfg;
  cfg.trials = 30;
  CouplingReport report = coupling::checkCoupling(a, b, inv, cfg);
  REQUIRE(!report.pass);
  CHECK(report.kind == FailKind::OutputMismatch);
}
