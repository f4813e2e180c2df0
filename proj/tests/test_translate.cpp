#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "mrv/chain/gen.hpp"
#include "mrv/corpus/pagerank.hpp"
#include "mrv/ffl/check.hpp"
#include "mrv/ffl/eval.hpp"
#include "mrv/ffl/subst.hpp"
#include "mrv/translate.hpp"

using namespace mrv;
using testutil::corpusProgram;
using testutil::intArray;
using testutil::intv;
using testutil::mustTypecheck;

namespace {

bool containsKind(const ffl::TermPtr& t, ffl::TermKind k) {
  if (t->kind == k) return true;
  for (const auto& kid : t->kids)
    if (containsKind(kid, k)) return true;
  return false;
}

void collect(const ffl::TermPtr& t, ffl::TermKind k, std::vector<ffl::TermPtr>& out) {
  if (t->kind == k) out.push_back(t);
  for (const auto& kid : t->kids) collect(kid, k, out);
}

std::vector<il::TypePtr> signatureOf(const il::TypedProgram& p) {
  std::vector<il::TypePtr> sig;
  for (const auto& param : p.params()) sig.push_back(param.type);
  return sig;
}

}  // namespace

TEST_CASE("translated SumArrays evaluates like the interpreter") {
  il::TypedProgram tp = corpusProgram("sumarrays/plain");
  auto check = translationOracleCheck(tp, {intArray({1, 2}), intArray({10, 20})}, 100000);
  CHECK(check.agree);
  REQUIRE(check.fflOutcome.isValue());
  CHECK(check.fflOutcome.value == intArray({11, 22}));
}

TEST_CASE("an index-range copy loop becomes the documented fold shape") {
  il::TypedProgram tp = mustTypecheck(
      "fn g(xs: [Int]) -> [Int] {"
      "  var ys := replicate(length(xs), 0);"
      "  for (i : range(0, length(xs))) { ys[i] := 2 * xs[i]; }"
      "  return ys;"
      "}");
  ffl::TermPtr t = translate(tp);
  std::vector<ffl::TermPtr> folds;
  collect(t, ffl::TermKind::Fold, folds);
  REQUIRE(folds.size() == 1);
  const ffl::TermPtr& fold = folds[0];
  // fold(\acc. \i. acc[i := 2 * xs[i]], replicate(length(xs), 0), range(0, length(xs)))
  REQUIRE(fold->kids[0]->kind == ffl::TermKind::Lam);
  REQUIRE(fold->kids[0]->kids[0]->kind == ffl::TermKind::Lam);
  const ffl::TermPtr& body = fold->kids[0]->kids[0]->kids[0];
  CHECK(body->kind == ffl::TermKind::Update);
  CHECK(body->kids[0]->var == 1);  // the accumulator
  CHECK(body->kids[1]->var == 0);  // the index
  CHECK(fold->kids[1]->kind == ffl::TermKind::Replicate);
  CHECK(fold->kids[2]->kind == ffl::TermKind::Range);
}

TEST_CASE("a while loop becomes iter with the guard-if-inr-inl shape") {
  il::TypedProgram tp = corpusProgram("pagerank/listing-1");
  ffl::TermPtr t = translate(tp);
  std::vector<ffl::TermPtr> iters;
  collect(t, ffl::TermKind::Iter, iters);
  REQUIRE(iters.size() == 1);
  const ffl::TermPtr& step = iters[0]->kids[0];
  REQUIRE(step->kind == ffl::TermKind::Lam);
  const ffl::TermPtr& cond = step->kids[0];
  REQUIRE(cond->kind == ffl::TermKind::If);
  CHECK(cond->kids[1]->kind == ffl::TermKind::Inr);
  CHECK(cond->kids[2]->kind == ffl::TermKind::Inl);
  // the else branch returns the state unchanged
  CHECK(cond->kids[2]->kids[0]->var == 0);
}

TEST_CASE("translated terms are closed and well-typed over the parameters") {
  testutil::useRepoCorpus();
  for (const auto& id : corpus::listPrograms()) {
    CAPTURE(id);
    il::TypedProgram tp = corpusProgram(id);
    ffl::TermPtr t = translate(tp);
    CHECK(ffl::maxFreeVar(t) == -1);
    auto ty = ffl::typecheckTerm(t);
    REQUIRE(ty.ok());
    // curried arrow over the parameter types to the return type
    ffl::TypePtr cur = ty.value();
    for (const auto& p : tp.params()) {
      REQUIRE(cur->kind == ffl::TypeKind::Arrow);
      CHECK(ffl::typeEqual(cur->a, translateType(p.type)));
      cur = cur->b;
    }
    CHECK(ffl::typeEqual(cur, translateType(tp.returnType())));
  }
}

TEST_CASE("translation is deterministic and composes over statement splits") {
  testutil::useRepoCorpus();
  for (const auto& id : corpus::listPrograms()) {
    CAPTURE(id);
    il::TypedProgram tp = corpusProgram(id);
    ffl::TermPtr whole = translate(tp);
    CHECK(ffl::alphaEqual(whole, translate(tp)));
    for (size_t k = 0; k <= tp.program.body.size(); ++k) {
      CAPTURE(k);
      CHECK(ffl::alphaEqual(whole, translateSplit(tp, k)));
    }
  }
}

TEST_CASE("oracle agreement on every corpus program over generated inputs") {
  testutil::useRepoCorpus();
  chain::GenConfig cfg;
  cfg.maxGraph = 5;
  for (const auto& id : corpus::listPrograms()) {
    CAPTURE(id);
    il::TypedProgram tp = corpusProgram(id);
    auto sig = signatureOf(tp);
    for (int trial = 0; trial < 120; ++trial) {
      auto args = chain::genArgs(sig, chain::trialSeed(400 + trial, trial), cfg, trial);
      REQUIRE(args.ok());
      auto check = translationOracleCheck(tp, args.value(), 1000000);
      if (!check.agree) {
        CAPTURE(trial);
        CAPTURE(check.ilOutcome.render());
        CAPTURE(check.fflOutcome.render());
      }
      REQUIRE(check.agree);
    }
  }
}

TEST_CASE("empty arrays agree between both sides") {
  il::TypedProgram tp = corpusProgram("sumarrays/plain");
  auto check = translationOracleCheck(tp, {intArray({}), intArray({})}, 100000);
  CHECK(check.agree);
  REQUIRE(check.fflOutcome.isValue());
  CHECK(check.fflOutcome.value == intArray({}));
}

TEST_CASE("an endless while diverges on both sides") {
  il::TypedProgram tp =
      mustTypecheck("fn spin(x: Int) -> Int { while (true) { } return x; }");
  auto check = translationOracleCheck(tp, {intv(1)}, 5000);
  CHECK(check.agree);
  CHECK(check.ilOutcome.isDiverged());
  CHECK(check.fflOutcome.isDiverged());
}

TEST_CASE("an unused erroring initializer still errors after translation") {
  il::TypedProgram tp =
      mustTypecheck("fn f(xs: [Int]) -> Int { var y := xs[7]; return 0; }");
  auto check = translationOracleCheck(tp, {intArray({1})}, 5000);
  CHECK(check.agree);
  CHECK(check.ilOutcome.isError());
  CHECK(check.fflOutcome.isError());
}

TEST_CASE("runtime errors keep their kind across translation") {
  il::TypedProgram oob = mustTypecheck("fn f(xs: [Int]) -> Int { return xs[3]; }");
  auto c1 = translationOracleCheck(oob, {intArray({1})}, 10000);
  CHECK(c1.agree);
  CHECK(c1.fflOutcome.isError());
  CHECK(c1.fflOutcome.error == RunErrorKind::IndexOutOfBounds);

  il::TypedProgram div = mustTypecheck("fn g(x: Int) -> Int { return 1 / x; }");
  auto c2 = translationOracleCheck(div, {intv(0)}, 10000);
  CHECK(c2.agree);
  CHECK(c2.fflOutcome.error == RunErrorKind::DivisionByZero);
}

TEST_CASE("the translated pagerank matches the 2-cycle by hand") {
  il::TypedProgram tp = corpusProgram("pagerank/listing-1");
  std::vector<Value> args =
      corpus::pagerankArgs(corpus::PageRankInput{{{1}, {0}}, BigRat(1, 2), 1});
  auto sig = signatureOf(tp);
  EvalOutcome out = ffl::eval(applyToArgs(translate(tp), args, sig), 1000000);
  REQUIRE(out.isValue());
  CHECK(out.value == Value::array({testutil::ratv(1, 2), testutil::ratv(1, 2)}));
}
