#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "mrv/ffl/check.hpp"
#include "mrv/ffl/eval.hpp"
#include "mrv/ffl/subst.hpp"

using namespace mrv;
using namespace mrv::ffl;

namespace {

TermPtr intLit(long long v) { return mkIntLit(BigInt(v)); }
TermPtr ratLit(long long n, long long d) { return mkRatLit(BigRat(n, d)); }

TermPtr intArrayLit(std::initializer_list<long long> xs) {
  std::vector<TermPtr> elems;
  for (long long x : xs) elems.push_back(intLit(x));
  return mkArrayLit(tInt(), std::move(elems));
}

Value evalOk(const TermPtr& t, long long budget = 1000000) {
  EvalOutcome out = eval(t, budget);
  REQUIRE(out.isValue());
  return out.value;
}

bool valueHasFflType(const Value& v, const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Int: return v.isInt();
    case TypeKind::Rat: return v.isRat();
    case TypeKind::Bool: return v.isBool();
    case TypeKind::Unit: return v.isUnit();
    case TypeKind::Array: {
      if (!v.isArray()) return false;
      for (const auto& x : v.asArray())
        if (!valueHasFflType(x, t->a)) return false;
      return true;
    }
    case TypeKind::Prod:
      return v.isPair() && valueHasFflType(v.asPair().first, t->a) &&
             valueHasFflType(v.asPair().second, t->b);
    case TypeKind::Sum:
      return v.isTag() && valueHasFflType(*v.asTag().payload, v.asTag().isLeft ? t->a : t->b);
    case TypeKind::Arrow:
      return v.isClosure();
  }
  return false;
}

// Small random generator of well-typed terms (well-typed by construction;
// evaluation may still hit runtime errors, which is fine for the property).
struct TermGen {
  std::mt19937_64 rng;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  long long small() { return pick(17) - 8; }

  TypePtr randomType(int depth) {
    switch (pick(depth > 1 ? 3 : 5)) {
      case 0: return tInt();
      case 1: return tRat();
      case 2: return tBool();
      case 3: return tArray(randomType(depth + 1));
      default: return tProd(randomType(depth + 1), randomType(depth + 1));
    }
  }

  TermPtr gen(const TypePtr& t, int depth) {
    bool leaf = depth > 3 || pick(3) == 0;
    switch (t->kind) {
      case TypeKind::Int: {
        if (leaf) return intLit(small());
        switch (pick(4)) {
          case 0: return mkBin(BinOp::Add, gen(tInt(), depth + 1), gen(tInt(), depth + 1));
          case 1: return mkBin(BinOp::Mul, gen(tInt(), depth + 1), gen(tInt(), depth + 1));
          case 2: return mkLength(gen(tArray(tInt()), depth + 1));
          default:
            return mkIf(gen(tBool(), depth + 1), gen(tInt(), depth + 1), gen(tInt(), depth + 1));
        }
      }
      case TypeKind::Rat: {
        if (leaf) return ratLit(small(), 1 + pick(8));
        switch (pick(3)) {
          case 0: return mkBin(BinOp::Add, gen(tRat(), depth + 1), gen(tRat(), depth + 1));
          case 1: return mkUn(UnOp::IntToRat, gen(tInt(), depth + 1));
          default:
            return mkFold(mkLam("a", tRat(), mkLam("v", tRat(),
                                                   mkBin(BinOp::Add, mkVar(1), mkVar(0)))),
                          gen(tRat(), depth + 1), gen(tArray(tRat()), depth + 1));
        }
      }
      case TypeKind::Bool: {
        if (leaf) return mkBoolLit(pick(2) == 0);
        switch (pick(3)) {
          case 0: return mkBin(BinOp::Lt, gen(tInt(), depth + 1), gen(tInt(), depth + 1));
          case 1: return mkBin(BinOp::Eq, gen(tInt(), depth + 1), gen(tInt(), depth + 1));
          default: return mkUn(UnOp::Not, gen(tBool(), depth + 1));
        }
      }
      case TypeKind::Unit:
        return mkUnitLit();
      case TypeKind::Array: {
        if (leaf || depth > 2) {
          int n = pick(4);
          std::vector<TermPtr> elems;
          for (int i = 0; i < n; ++i) elems.push_back(gen(t->a, depth + 1));
          return mkArrayLit(t->a, std::move(elems));
        }
        switch (pick(4)) {
          case 0: return mkReplicate(intLit(pick(4)), gen(t->a, depth + 1));
          case 1: {
            // map(\x. body, xs) with the binder sometimes used
            TermPtr body = pick(2) == 0 ? mkVar(0) : shift(gen(t->a, depth + 2), 1);
            return mkMap(mkLam("x", t->a, body), gen(tArray(t->a), depth + 1));
          }
          case 2:
            if (t->a->kind == TypeKind::Int) return mkRange(intLit(-pick(3)), intLit(pick(5)));
            return mkConcat(mkArrayLit(tArray(t->a), {gen(t, depth + 1), gen(t, depth + 1)}));
          default:
            return mkIf(gen(tBool(), depth + 1), gen(t, depth + 1), gen(t, depth + 1));
        }
      }
      case TypeKind::Prod:
        return mkPair(gen(t->a, depth + 1), gen(t->b, depth + 1));
      case TypeKind::Sum:
        if (pick(2) == 0) return mkInl(gen(t->a, depth + 1), t->b);
        return mkInr(gen(t->b, depth + 1), t->a);
      case TypeKind::Arrow:
        return mkLam("x", t->a, shift(gen(t->b, depth + 1), 1));
    }
    return mkUnitLit();
  }
};

}  // namespace

TEST_CASE("typecheck: identity lambda, rational fold, group misuse") {
  TermPtr id = mkLam("x", tInt(), mkVar(0));
  auto t1 = typecheckTerm(id);
  REQUIRE(t1.ok());
  CHECK(typeEqual(t1.value(), tArrow(tInt(), tInt())));

  TermPtr foldT = mkFold(
      mkLam("a", tRat(), mkLam("v", tRat(), mkBin(BinOp::Add, mkVar(1), mkVar(0)))),
      ratLit(0, 1), mkArrayLit(tRat(), {ratLit(1, 2), ratLit(1, 2)}));
  auto t2 = typecheckTerm(foldT);
  REQUIRE(t2.ok());
  CHECK(typeEqual(t2.value(), tRat()));
  CHECK(evalOk(foldT) == Value(BigRat(1)));

  TermPtr bad = mkGroup(intArrayLit({1, 2}));
  CHECK(!typecheckTerm(bad).ok());
}

TEST_CASE("typecheck reports a node path") {
  // fst of a non-pair nested under a lambda body
  TermPtr bad = mkLam("x", tInt(), mkFst(mkVar(0)));
  auto r = typecheckTerm(bad);
  REQUIRE(!r.ok());
  CHECK(r.error().path == std::vector<int>{0});
}

TEST_CASE("eval: range, zip, fold, iter divergence, group ordering") {
  CHECK(evalOk(mkRange(intLit(0), intLit(3))) == testutil::intArray({0, 1, 2}));

  Value zipped = evalOk(mkZip(intArrayLit({1, 2}),
                              mkArrayLit(tBool(), {mkBoolLit(true), mkBoolLit(false)})));
  CHECK(zipped == Value::array({Value::pair(testutil::intv(1), Value(true)),
                                Value::pair(testutil::intv(2), Value(false))}));

  // unrolled by hand: ((0+1)+2)+3 = 6
  TermPtr sum = mkFold(
      mkLam("a", tInt(), mkLam("v", tInt(), mkBin(BinOp::Add, mkVar(1), mkVar(0)))), intLit(0),
      intArrayLit({1, 2, 3}));
  CHECK(evalOk(sum) == testutil::intv(6));

  TermPtr spin = mkIter(mkLam("s", tUnit(), mkInr(mkVar(0), tUnit())), mkUnitLit());
  EvalOutcome d = eval(spin, 10000);
  CHECK(d.isDiverged());

  // first-occurrence key order, values in encounter order
  TermPtr kvs = mkArrayLit(tProd(tInt(), tInt()),
                           {mkPair(intLit(1), intLit(10)), mkPair(intLit(2), intLit(20)),
                            mkPair(intLit(1), intLit(30))});
  Value grouped = evalOk(mkGroup(kvs));
  CHECK(grouped == Value::array({Value::pair(testutil::intv(1), testutil::intArray({10, 30})),
                                 Value::pair(testutil::intv(2), testutil::intArray({20}))}));
}

TEST_CASE("alpha equivalence ignores names, not structure") {
  TermPtr a = mkLam("x", tInt(), mkVar(0, "x"));
  TermPtr b = mkLam("y", tInt(), mkVar(0, "y"));
  CHECK(alphaEqual(a, b));

  TermPtr k1 = mkLam("x", tInt(), mkLam("y", tInt(), mkVar(1)));
  TermPtr k2 = mkLam("a", tInt(), mkLam("b", tInt(), mkVar(0)));
  CHECK(!alphaEqual(k1, k2));

  // same shape, different parameter type
  TermPtr c = mkLam("x", tRat(), mkVar(0));
  CHECK(!alphaEqual(a, c));
}

TEST_CASE("expand_synonyms matches the defining expressions") {
  TermPtr f = mkLam("x", tInt(), mkReplicate(intLit(2), mkVar(0)));
  TermPtr xss = intArrayLit({1, 2});
  TermPtr fm = mkFlatMap(f, xss);
  CHECK(alphaEqual(expandSynonyms(fm), mkConcat(mkMap(f, xss))));

  TermPtr comb = mkLam("a", tInt(), mkLam("b", tInt(), mkBin(BinOp::Add, mkVar(1), mkVar(0))));
  TermPtr kvs = mkArrayLit(tProd(tInt(), tInt()),
                           {mkPair(intLit(1), intLit(10)), mkPair(intLit(1), intLit(5))});
  TermPtr rbk = mkReduceByKey(comb, intLit(0), kvs);
  TermPtr expanded = expandSynonyms(rbk);
  TermPtr expected = mkMap(
      mkLam("kv", tProd(tInt(), tArray(tInt())),
            mkPair(mkFst(mkVar(0)), mkFold(shift(comb, 1), intLit(0), mkSnd(mkVar(0))))),
      mkGroup(kvs));
  CHECK(alphaEqual(expanded, expected));

  // synonym-free terms come back unchanged
  TermPtr plain = mkMap(f, xss);
  CHECK(alphaEqual(expandSynonyms(plain), plain));

  // the expansion preserves types and values
  auto t0 = typecheckTerm(rbk);
  auto t1 = typecheckTerm(expanded);
  REQUIRE(t0.ok());
  REQUIRE(t1.ok());
  CHECK(typeEqual(t0.value(), t1.value()));
  CHECK(evalOk(rbk) == evalOk(expanded));
}

TEST_CASE("substitution: spec cases") {
  CHECK(alphaEqual(substitute(mkVar(0), 0, intLit(42)), intLit(42)));

  // under a binder the substitute shifts
  TermPtr t = mkLam("x", tInt(), mkVar(1));
  TermPtr c = mkVar(3, "c");
  TermPtr r = substitute(t, 0, c);
  CHECK(alphaEqual(r, mkLam("x", tInt(), mkVar(4))));

  // substituting a variable for itself is the identity
  TermGen g{std::mt19937_64(11)};
  for (int i = 0; i < 50; ++i) {
    TermPtr body = g.gen(tInt(), 1);
    TermPtr withFree = mkBin(BinOp::Add, body, mkVar(2, "free"));
    CHECK(alphaEqual(substitute(withFree, 2, mkVar(2)), withFree));
  }
}

TEST_CASE("property: type preservation on generated terms") {
  TermGen g{std::mt19937_64(1234)};
  int evaluated = 0;
  for (int i = 0; i < 1000; ++i) {
    TypePtr ty = g.randomType(0);
    TermPtr t = g.gen(ty, 0);
    auto tc = typecheckTerm(t);
    REQUIRE(tc.ok());
    REQUIRE(typeEqual(tc.value(), ty));
    EvalOutcome out = eval(t, 200000);
    if (out.isValue()) {
      ++evaluated;
      CHECK(valueHasFflType(out.value, ty));
    }
  }
  CHECK(evaluated > 500);  // most generated terms reduce to values
}

TEST_CASE("property: evaluation is deterministic") {
  TermGen g{std::mt19937_64(99)};
  for (int i = 0; i < 200; ++i) {
    TermPtr t = g.gen(g.randomType(0), 0);
    EvalOutcome a = eval(t, 100000);
    EvalOutcome b = eval(t, 100000);
    CHECK(a.agrees(b));
    if (a.isValue()) CHECK(a.value == b.value);
  }
}

TEST_CASE("property: synonym coherence, eval(t) = eval(expand(t))") {
  std::mt19937_64 rng(7);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (int i = 0; i < 150; ++i) {
    // flatMap(\xs. map(\x. x*c1 + c2, xs), xss)
    long long c1 = pick(7) - 3, c2 = pick(9) - 4;
    std::vector<TermPtr> outer;
    int m = pick(4);
    for (int k = 0; k < m; ++k) {
      std::vector<TermPtr> inner;
      int n = pick(4);
      for (int j = 0; j < n; ++j) inner.push_back(intLit(pick(17) - 8));
      outer.push_back(mkArrayLit(tInt(), std::move(inner)));
    }
    TermPtr xss = mkArrayLit(tArray(tInt()), std::move(outer));
    TermPtr f = mkLam(
        "xs", tArray(tInt()),
        mkMap(mkLam("x", tInt(),
                    mkBin(BinOp::Add, mkBin(BinOp::Mul, mkVar(0), intLit(c1)), intLit(c2))),
              mkVar(0)));
    TermPtr fm = mkFlatMap(f, xss);
    EvalOutcome a = eval(fm, 100000);
    EvalOutcome b = eval(expandSynonyms(fm), 100000);
    REQUIRE(a.isValue());
    REQUIRE(b.isValue());
    CHECK(a.value == b.value);

    // reduceByKey(+, init, kvs)
    std::vector<TermPtr> kvs;
    int n = pick(6);
    for (int j = 0; j < n; ++j) kvs.push_back(mkPair(intLit(pick(3)), intLit(pick(17) - 8)));
    TermPtr arr = mkArrayLit(tProd(tInt(), tInt()), std::move(kvs));
    TermPtr comb =
        mkLam("a", tInt(), mkLam("b", tInt(), mkBin(BinOp::Add, mkVar(1), mkVar(0))));
    TermPtr rbk = mkReduceByKey(comb, intLit(pick(5)), arr);
    EvalOutcome c = eval(rbk, 100000);
    EvalOutcome d = eval(expandSynonyms(rbk), 100000);
    REQUIRE(c.isValue());
    REQUIRE(d.isValue());
    CHECK(c.value == d.value);
  }
}

TEST_CASE("property: group round-trip is the deterministic key-stable reordering") {
  std::mt19937_64 rng(21);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (int i = 0; i < 100; ++i) {
    int n = pick(9);
    std::vector<std::pair<long long, long long>> pairs;
    std::vector<TermPtr> kvTerms;
    for (int j = 0; j < n; ++j) {
      long long k = pick(4), v = pick(17) - 8;
      pairs.push_back({k, v});
      kvTerms.push_back(mkPair(intLit(k), intLit(v)));
    }
    TermPtr xs = mkArrayLit(tProd(tInt(), tInt()), std::move(kvTerms));
    // concat(map(\kv. map(\v. (fst kv, v), snd kv), group(xs)))
    TermPtr inner = mkMap(mkLam("v", tInt(), mkPair(mkFst(mkVar(1, "kv")), mkVar(0, "v"))),
                          mkSnd(mkVar(0, "kv")));
    TermPtr roundTrip =
        mkConcat(mkMap(mkLam("kv", tProd(tInt(), tArray(tInt())), inner), mkGroup(xs)));
    Value got = evalOk(roundTrip);

    // independent oracle of the expected stable reordering
    std::vector<long long> keyOrder;
    std::vector<Value> expected;
    for (const auto& [k, v] : pairs) {
      bool seen = false;
      for (long long ko : keyOrder) seen = seen || ko == k;
      if (!seen) keyOrder.push_back(k);
    }
    for (long long k : keyOrder)
      for (const auto& [pk, pv] : pairs)
        if (pk == k) expected.push_back(Value::pair(testutil::intv(pk), testutil::intv(pv)));
    CHECK(got == Value::array(std::move(expected)));
  }
}

TEST_CASE("property: fold agrees with an explicit accumulator loop") {
  std::mt19937_64 rng(31);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (int i = 0; i < 100; ++i) {
    long long c = pick(7) - 3;
    TermPtr f = mkLam("a", tInt(),
                      mkLam("v", tInt(),
                            mkBin(BinOp::Add, mkVar(1), mkBin(BinOp::Mul, mkVar(0), intLit(c)))));
    int n = pick(7);
    std::vector<TermPtr> elems;
    std::vector<long long> xs;
    for (int j = 0; j < n; ++j) {
      xs.push_back(pick(17) - 8);
      elems.push_back(intLit(xs.back()));
    }
    long long a0 = pick(9) - 4;
    TermPtr foldTerm = mkFold(f, intLit(a0), mkArrayLit(tInt(), std::move(elems)));

    // oracle: a := a0; for each x: a := f(a, x) - driven through closure
    // application, independent of eval's Fold case
    Value fv = evalOk(f);
    Value acc = testutil::intv(a0);
    for (long long x : xs) {
      EvalOutcome partial = applyFunctionValue(fv, acc, 10000);
      REQUIRE(partial.isValue());
      EvalOutcome full = applyFunctionValue(partial.value, testutil::intv(x), 10000);
      REQUIRE(full.isValue());
      acc = full.value;
    }
    CHECK(evalOk(foldTerm) == acc);
  }
}

TEST_CASE("iter carries the loop state into inl") {
  // countdown: start at 5, stop at 0, final state observable
  TermPtr step = mkLam(
      "s", tInt(),
      mkIf(mkBin(BinOp::Lt, intLit(0), mkVar(0)),
           mkInr(mkBin(BinOp::Sub, mkVar(0), intLit(1)), tInt()), mkInl(mkVar(0), tInt())));
  CHECK(evalOk(mkIter(step, intLit(5))) == testutil::intv(0));
}
