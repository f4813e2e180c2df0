#include <functional>
#include <optional>

#include "mrv/ffl/check.hpp"
#include "mrv/ffl/subst.hpp"
#include "mrv/rewrite/rules.hpp"

namespace mrv::rewrite {

using ffl::TermKind;
using ffl::TermPtr;
using ffl::TypePtr;

namespace {

bool isVar(const TermPtr& t, int idx) { return t->kind == TermKind::Var && t->var == idx; }
bool isIntZero(const TermPtr& t) { return t->kind == TermKind::IntLit && t->intVal == 0; }

// One candidate instantiation found at a position.
struct MatchOut {
  TermPtr rewritten;  // replacement subterm at the position
  std::vector<std::pair<std::string, std::string>> instantiation;
  std::vector<Obligation> obligations;
};

// Collects subterms A such that Index(A, Var(target)) occurs in `t`, where A
// does not reference any binder at or below the local depth (so it can be
// unshifted to t's base depth).
void collectIndexCandidates(const TermPtr& t, int target, int depth, std::vector<TermPtr>& out) {
  if (t->kind == TermKind::Index && isVar(t->kids[1], target + depth)) {
    const TermPtr& arr = t->kids[0];
    bool mentionsLocal = false;
    for (int i = 0; i < depth + 2; ++i) {
      // The candidate must not mention the local binders introduced inside t
      // nor the two pattern binders (acc and the index).
      if (ffl::mentionsVar(arr, i)) {
        mentionsLocal = true;
        break;
      }
    }
    if (!mentionsLocal) {
      TermPtr cand = ffl::shift(arr, -depth);
      bool dup = false;
      for (const auto& c : out) dup = dup || ffl::alphaEqual(c, cand);
      if (!dup) out.push_back(cand);
    }
  }
  for (size_t i = 0; i < t->kids.size(); ++i)
    collectIndexCandidates(t->kids[i], target, depth + ffl::binderArity(*t, i), out);
}

// Marker index for freshly abstracted element reads; negative, so it never
// collides with a real de Bruijn index and passes through shift untouched.
constexpr int kElemMarker = -1000;

// Replaces every occurrence of Index(xs, Var(target)) in t by the marker.
// `xs` is given at t's base depth.
TermPtr markIndexReads(const TermPtr& t, int target, const TermPtr& xs, int depth = 0) {
  if (t->kind == TermKind::Index && isVar(t->kids[1], target + depth) &&
      ffl::alphaEqual(t->kids[0], ffl::shift(xs, depth))) {
    return ffl::mkVar(kElemMarker, "x");
  }
  if (t->kids.empty()) return t;
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  for (size_t i = 0; i < t->kids.size(); ++i)
    kids.push_back(markIndexReads(t->kids[i], target, xs, depth + ffl::binderArity(*t, i)));
  return ffl::withKids(t, std::move(kids));
}

// Rewrites markers into the element binder at the given relative index.
TermPtr resolveMarkers(const TermPtr& t, int target, int depth = 0) {
  if (t->kind == TermKind::Var && t->var == kElemMarker)
    return ffl::mkVar(target + depth, t->name);
  if (t->kids.empty()) return t;
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  for (size_t i = 0; i < t->kids.size(); ++i)
    kids.push_back(resolveMarkers(t->kids[i], target, depth + ffl::binderArity(*t, i)));
  return ffl::withKids(t, std::move(kids));
}

TypePtr typeAt(const TermPtr& t, const std::vector<TypePtr>& ctx) {
  auto r = ffl::typecheckTerm(t, ctx);
  return r.ok() ? r.value() : nullptr;
}

std::string render(const TermPtr& t) { return ffl::renderTerm(t); }

Obligation lengthEqual(const TermPtr& a, const TermPtr& b, const std::vector<TypePtr>& ctx,
                       const std::string& what) {
  return Obligation{ffl::mkBin(ffl::BinOp::Eq, ffl::mkLength(a), ffl::mkLength(b)), ctx,
                    "length(" + render(a) + ") = length(" + render(b) + ")  [" + what + "]"};
}

// ---------------------------------------------------------------------------
// map-introduce:
//   fold(\acc. \i. acc[i := f(xs[i])], ys, range(0, length(zs)))  ~>  map(f, xs)
// ---------------------------------------------------------------------------
void matchMapIntroduce(const TermPtr& t, const std::vector<TypePtr>& ctx,
                       std::vector<MatchOut>& out) {
  if (t->kind != TermKind::Fold) return;
  const TermPtr& f = t->kids[0];
  const TermPtr& ys = t->kids[1];
  const TermPtr& rangeArg = t->kids[2];
  if (f->kind != TermKind::Lam || f->kids[0]->kind != TermKind::Lam) return;
  const TermPtr& body = f->kids[0]->kids[0];
  if (rangeArg->kind != TermKind::Range || !isIntZero(rangeArg->kids[0]) ||
      rangeArg->kids[1]->kind != TermKind::Length)
    return;
  TermPtr zs = rangeArg->kids[1]->kids[0];
  // body must be acc[i := E]
  if (body->kind != TermKind::Update || !isVar(body->kids[0], 1) || !isVar(body->kids[1], 0))
    return;
  const TermPtr& e = body->kids[2];

  std::vector<TermPtr> candidates;
  collectIndexCandidates(e, 0, 0, candidates);
  for (const auto& candAtBody : candidates) {
    // candAtBody lives under the two pattern binders; it mentions neither.
    TermPtr e1 = markIndexReads(e, 0, candAtBody);
    if (ffl::mentionsVar(e1, 0)) continue;  // the index is used beyond xs[i]
    if (ffl::mentionsVar(e1, 1)) continue;  // f must not read the accumulator
    TermPtr xs = ffl::shift(candAtBody, -2);
    // drop the unused acc binder slot, then bind markers to the new element
    TermPtr fBody = resolveMarkers(ffl::shift(e1, -1, 1), 0);
    TypePtr xsType = typeAt(xs, ctx);
    if (!xsType || xsType->kind != ffl::TypeKind::Array) continue;
    TermPtr lam = ffl::mkLam(f->kids[0]->name, xsType->a, fBody);

    MatchOut m;
    m.rewritten = ffl::mkMap(lam, xs);
    m.instantiation = {{"f", render(lam)}, {"xs", render(xs)}, {"ys", render(ys)},
                       {"zs", render(zs)}};
    m.obligations.push_back(lengthEqual(xs, ys, ctx, "read and written arrays"));
    if (!ffl::alphaEqual(xs, zs))
      m.obligations.push_back(lengthEqual(zs, xs, ctx, "range bound and read array"));
    out.push_back(std::move(m));
  }
}

// ---------------------------------------------------------------------------
// range-remove:
//   fold(\acc. \i. B[xs[i]], acc0, range(0, length(zs)))
//     ~>  fold(\acc. \x. B[x], acc0, xs)
// ---------------------------------------------------------------------------
void matchRangeRemove(const TermPtr& t, const std::vector<TypePtr>& ctx,
                      std::vector<MatchOut>& out) {
  if (t->kind != TermKind::Fold) return;
  const TermPtr& f = t->kids[0];
  const TermPtr& acc0 = t->kids[1];
  const TermPtr& rangeArg = t->kids[2];
  if (f->kind != TermKind::Lam || f->kids[0]->kind != TermKind::Lam) return;
  if (rangeArg->kind != TermKind::Range || !isIntZero(rangeArg->kids[0]) ||
      rangeArg->kids[1]->kind != TermKind::Length)
    return;
  TermPtr zs = rangeArg->kids[1]->kids[0];
  const TermPtr& body = f->kids[0]->kids[0];

  std::vector<TermPtr> candidates;
  collectIndexCandidates(body, 0, 0, candidates);
  if (!ffl::mentionsVar(body, 0)) candidates.push_back(ffl::shift(zs, 2));
  for (const auto& candAtBody : candidates) {
    TermPtr marked = markIndexReads(body, 0, candAtBody);
    if (ffl::mentionsVar(marked, 0)) continue;  // an index use that is not xs[i]
    // The element binder takes the index variable's slot.
    TermPtr newBody = resolveMarkers(marked, 0);
    TermPtr xs = ffl::shift(candAtBody, -2);
    TypePtr xsType = typeAt(xs, ctx);
    if (!xsType || xsType->kind != ffl::TypeKind::Array) continue;
    TermPtr lam = ffl::mkLam(f->name, f->ann, ffl::mkLam("x", xsType->a, newBody));

    MatchOut m;
    m.rewritten = ffl::mkFold(lam, acc0, xs);
    m.instantiation = {{"xs", render(xs)}, {"acc0", render(acc0)}, {"zs", render(zs)}};
    if (!ffl::alphaEqual(xs, zs))
      m.obligations.push_back(lengthEqual(zs, xs, ctx, "range bound and element array"));
    out.push_back(std::move(m));
  }
}

// ---------------------------------------------------------------------------
// concat-intro:
//   fold(\acc. \xs. fold(\a. \x. B, acc, xs), acc0, xss)
//     ~>  fold(\acc. \x. B, acc0, concat(xss))
// ---------------------------------------------------------------------------
void matchConcatIntro(const TermPtr& t, const std::vector<TypePtr>& ctx,
                      std::vector<MatchOut>& out) {
  (void)ctx;
  if (t->kind != TermKind::Fold) return;
  const TermPtr& outerF = t->kids[0];
  const TermPtr& acc0 = t->kids[1];
  const TermPtr& xss = t->kids[2];
  if (outerF->kind != TermKind::Lam || outerF->kids[0]->kind != TermKind::Lam) return;
  const TermPtr& outerBody = outerF->kids[0]->kids[0];  // under [acc=1, xs=0]
  if (outerBody->kind != TermKind::Fold) return;
  const TermPtr& innerF = outerBody->kids[0];
  if (!isVar(outerBody->kids[1], 1)) return;  // inner init must be the outer accumulator
  if (!isVar(outerBody->kids[2], 0)) return;  // inner array must be the outer element
  if (innerF->kind != TermKind::Lam || innerF->kids[0]->kind != TermKind::Lam) return;
  const TermPtr& b = innerF->kids[0]->kids[0];  // under [acc=3, xs=2, a=1, x=0]
  if (ffl::mentionsVar(b, 2)) return;  // the outer element may only be the inner array
  if (ffl::mentionsVar(b, 3)) return;  // no stale reads of the outer accumulator
  TermPtr newBody = ffl::shift(b, -2, 2);
  TermPtr lam = ffl::mkLam(innerF->name, innerF->ann,
                           ffl::mkLam(innerF->kids[0]->name, innerF->kids[0]->ann, newBody));

  MatchOut m;
  m.rewritten = ffl::mkFold(lam, acc0, ffl::mkConcat(xss));
  m.instantiation = {{"f", render(lam)}, {"acc0", render(acc0)}, {"xss", render(xss)}};
  out.push_back(std::move(m));
}

// ---------------------------------------------------------------------------
// group-intro:
//   fold(\acc. \p. acc[fst p := f(acc[fst p], snd p)], acc0, xs)
//     ~>  fold(\acc. \p. acc[fst p := snd p], acc0,
//              map(\kv. (fst kv, fold(\old. \v. f(old, v), seed(kv), snd kv)), group(xs)))
//   where seed(kv) = c when acc0 = replicate(n, c), else acc0[fst kv].
//   f may also read the key (footnoted variant): remaining `fst p` occurrences
//   become `fst kv`.
// ---------------------------------------------------------------------------
struct GroupAbstraction {
  bool ok = true;
  TermPtr result;
};

// Rebuilds E under binders [kv=2, old=1, v=0] given E under [acc=1, p=0].
TermPtr abstractGroupBody(const TermPtr& t, int depth, bool& ok) {
  if (!ok) return t;
  // acc[fst p] -> old
  if (t->kind == TermKind::Index && isVar(t->kids[0], 1 + depth) &&
      t->kids[1]->kind == TermKind::Fst && isVar(t->kids[1]->kids[0], 0 + depth)) {
    return ffl::mkVar(1 + depth, "old");
  }
  // snd p -> v
  if (t->kind == TermKind::Snd && isVar(t->kids[0], 0 + depth)) return ffl::mkVar(0 + depth, "v");
  // fst p -> fst kv
  if (t->kind == TermKind::Fst && isVar(t->kids[0], 0 + depth))
    return ffl::mkFst(ffl::mkVar(2 + depth, "kv"));
  if (t->kind == TermKind::Var) {
    if (t->var == depth || t->var == depth + 1) {  // bare p or acc
      ok = false;
      return t;
    }
    if (t->var > depth + 1) return ffl::mkVar(t->var + 1, t->name);  // two binders became three
    return t;
  }
  if (t->kids.empty()) return t;
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  for (size_t i = 0; i < t->kids.size(); ++i)
    kids.push_back(abstractGroupBody(t->kids[i], depth + ffl::binderArity(*t, i), ok));
  return ok ? ffl::withKids(t, std::move(kids)) : t;
}

void matchGroupIntro(const TermPtr& t, const std::vector<TypePtr>& ctx,
                     std::vector<MatchOut>& out) {
  if (t->kind != TermKind::Fold) return;
  const TermPtr& f = t->kids[0];
  const TermPtr& acc0 = t->kids[1];
  const TermPtr& xs = t->kids[2];
  if (f->kind != TermKind::Lam || f->kids[0]->kind != TermKind::Lam) return;
  const TermPtr& body = f->kids[0]->kids[0];  // under [acc=1, p=0]
  // body must be acc[fst p := E]
  if (body->kind != TermKind::Update || !isVar(body->kids[0], 1)) return;
  if (body->kids[1]->kind != TermKind::Fst || !isVar(body->kids[1]->kids[0], 0)) return;
  const TermPtr& e = body->kids[2];

  bool ok = true;
  TermPtr foldBody = abstractGroupBody(e, 0, ok);
  if (!ok) return;

  TypePtr xsType = typeAt(xs, ctx);
  TypePtr accType = typeAt(acc0, ctx);
  if (!xsType || xsType->kind != ffl::TypeKind::Array ||
      xsType->a->kind != ffl::TypeKind::Prod)
    return;
  if (!accType || accType->kind != ffl::TypeKind::Array) return;
  TypePtr keyT = xsType->a->a;
  TypePtr valT = xsType->a->b;
  TypePtr elemT = accType->a;
  if (keyT->kind != ffl::TypeKind::Int) return;  // keys index the accumulator

  // Seed of the per-key fold, under the kv binder.
  TermPtr seed;
  if (acc0->kind == TermKind::Replicate) {
    seed = ffl::shift(acc0->kids[1], 1);
  } else {
    seed = ffl::mkIndex(ffl::shift(acc0, 1), ffl::mkFst(ffl::mkVar(0, "kv")));
  }
  TermPtr innerFold =
      ffl::mkFold(ffl::mkLam("old", elemT, ffl::mkLam("v", valT, foldBody)), seed,
                  ffl::mkSnd(ffl::mkVar(0, "kv")));
  TermPtr mapLam = ffl::mkLam("kv", ffl::tProd(keyT, ffl::tArray(valT)),
                              ffl::mkPair(ffl::mkFst(ffl::mkVar(0, "kv")), innerFold));
  TermPtr updates = ffl::mkMap(mapLam, ffl::mkGroup(xs));
  TermPtr writeBack = ffl::mkLam(
      f->name, accType,
      ffl::mkLam("p", ffl::tProd(keyT, elemT),
                 ffl::mkUpdate(ffl::mkVar(1, f->name), ffl::mkFst(ffl::mkVar(0, "p")),
                               ffl::mkSnd(ffl::mkVar(0, "p")))));

  MatchOut m;
  m.rewritten = ffl::mkFold(writeBack, acc0, updates);
  m.instantiation = {{"f", render(ffl::mkLam("old", elemT, ffl::mkLam("v", valT, foldBody)))},
                     {"acc0", render(acc0)},
                     {"xs", render(xs)}};
  // Every key must be a valid index of the initial accumulator.
  TermPtr keyOk = ffl::mkBin(
      ffl::BinOp::And,
      ffl::mkBin(ffl::BinOp::Le, ffl::mkIntLit(0), ffl::mkFst(ffl::mkVar(0, "kv"))),
      ffl::mkBin(ffl::BinOp::Lt, ffl::mkFst(ffl::mkVar(0, "kv")),
                 ffl::mkLength(ffl::shift(acc0, 2))));
  TermPtr allKeysOk = ffl::mkFold(
      ffl::mkLam("ok", ffl::tBool(),
                 ffl::mkLam("kv", ffl::tProd(keyT, ffl::tArray(valT)),
                            ffl::mkBin(ffl::BinOp::And, ffl::mkVar(1, "ok"), keyOk))),
      ffl::mkBoolLit(true), ffl::mkGroup(xs));
  m.obligations.push_back(
      Obligation{allKeysOk, ctx, "every key in group(" + render(xs) + ") indexes acc0"});
  out.push_back(std::move(m));
}

// ---------------------------------------------------------------------------
// flatmap-fuse: concat(map(f, xss)) ~> flatMap(f, xss)
// ---------------------------------------------------------------------------
void matchFlatmapFuse(const TermPtr& t, const std::vector<TypePtr>& ctx,
                      std::vector<MatchOut>& out) {
  (void)ctx;
  if (t->kind != TermKind::Concat || t->kids[0]->kind != TermKind::Map) return;
  const TermPtr& f = t->kids[0]->kids[0];
  const TermPtr& xss = t->kids[0]->kids[1];
  MatchOut m;
  m.rewritten = ffl::mkFlatMap(f, xss);
  m.instantiation = {{"f", render(f)}, {"xss", render(xss)}};
  out.push_back(std::move(m));
}

// ---------------------------------------------------------------------------
// reducebykey-fold: map(\kv. (fst kv, fold(f, i, snd kv)), group(xs))
//   ~> reduceByKey(f, i, xs)
// ---------------------------------------------------------------------------
void matchReduceByKeyFold(const TermPtr& t, const std::vector<TypePtr>& ctx,
                          std::vector<MatchOut>& out) {
  (void)ctx;
  if (t->kind != TermKind::Map || t->kids[1]->kind != TermKind::Group) return;
  const TermPtr& lam = t->kids[0];
  if (lam->kind != TermKind::Lam || lam->kids[0]->kind != TermKind::Pair) return;
  const TermPtr& pair = lam->kids[0];
  if (pair->kids[0]->kind != TermKind::Fst || !isVar(pair->kids[0]->kids[0], 0)) return;
  if (pair->kids[1]->kind != TermKind::Fold) return;
  const TermPtr& fold = pair->kids[1];
  if (fold->kids[2]->kind != TermKind::Snd || !isVar(fold->kids[2]->kids[0], 0)) return;
  if (ffl::mentionsVar(fold->kids[0], 0) || ffl::mentionsVar(fold->kids[1], 0)) return;
  TermPtr f = ffl::shift(fold->kids[0], -1);
  TermPtr init = ffl::shift(fold->kids[1], -1);
  MatchOut m;
  m.rewritten = ffl::mkReduceByKey(f, init, t->kids[1]->kids[0]);
  m.instantiation = {{"f", render(f)}, {"i", render(init)},
                     {"xs", render(t->kids[1]->kids[0])}};
  out.push_back(std::move(m));
}

using MatchFn = void (*)(const TermPtr&, const std::vector<TypePtr>&, std::vector<MatchOut>&);

MatchFn matcherFor(const std::string& rule) {
  if (rule == "map-introduce") return &matchMapIntroduce;
  if (rule == "range-remove") return &matchRangeRemove;
  if (rule == "concat-intro") return &matchConcatIntro;
  if (rule == "group-intro") return &matchGroupIntro;
  if (rule == "flatmap-fuse") return &matchFlatmapFuse;
  if (rule == "reducebykey-fold") return &matchReduceByKeyFold;
  return nullptr;
}

struct Search {
  const TermPtr& src;
  const TermPtr& tgt;
  MatchFn matcher;
  std::string ruleName;

  std::optional<Justification> best;
  std::vector<std::vector<int>> alternates;
  long long positions = 0;
  std::string firstDiffDetail;
  bool anyPatternMatch = false;

  // ctx: innermost-first binder types along the path.
  void visit(const TermPtr& node, std::vector<int>& path, std::vector<TypePtr>& ctx) {
    ++positions;
    std::vector<MatchOut> matches;
    matcher(node, ctx, matches);
    for (auto& m : matches) {
      anyPatternMatch = true;
      TermPtr whole = ffl::replaceAt(src, path, m.rewritten);
      if (ffl::alphaEqual(whole, tgt)) {
        if (!best) {
          Justification j;
          j.rule = ruleName;
          j.path = path;
          j.instantiation = std::move(m.instantiation);
          j.rewrittenSub = m.rewritten;
          j.rewrittenWhole = whole;
          j.obligations = std::move(m.obligations);
          best = std::move(j);
        } else {
          alternates.push_back(path);
        }
        break;  // one instantiation per position is enough
      }
      if (firstDiffDetail.empty()) firstDiffDetail = ffl::diffTerms(whole, tgt);
    }
    for (size_t i = 0; i < node->kids.size(); ++i) {
      int arity = ffl::binderArity(*node, i);
      if (arity > 0) {
        TypePtr bound;
        if (node->kind == TermKind::Lam) {
          bound = node->ann;
        } else {
          // Case branch: the scrutinee's sum type names the binder type.
          auto st = ffl::typecheckTerm(node->kids[0], ctx);
          if (st.ok() && st.value()->kind == ffl::TypeKind::Sum)
            bound = i == 1 ? st.value()->a : st.value()->b;
        }
        ctx.insert(ctx.begin(), bound);
      }
      path.push_back(static_cast<int>(i));
      visit(node->kids[i], path, ctx);
      path.pop_back();
      if (arity > 0) ctx.erase(ctx.begin());
    }
  }
};

}  // namespace

Result<Justification, Mismatch> justifyStep(const std::string& rule, const TermPtr& src,
                                            const TermPtr& tgt) {
  MatchFn matcher = matcherFor(rule);
  if (!matcher) return Mismatch{Mismatch::Reason::UnknownRule, "unknown rule '" + rule + "'", 0};
  Search search{src, tgt, matcher, rule, {}, {}, 0, "", false};
  std::vector<int> path;
  std::vector<TypePtr> ctx;
  search.visit(src, path, ctx);
  if (search.best) {
    search.best->alternatePaths = std::move(search.alternates);
    search.best->positionsSearched = search.positions;
    return std::move(*search.best);
  }
  if (search.anyPatternMatch) {
    return Mismatch{Mismatch::Reason::RewriteDiffers,
                    "the rule matched but no rewrite reproduces the target; first difference " +
                        search.firstDiffDetail,
                    search.positions};
  }
  return Mismatch{Mismatch::Reason::NoPositionMatched,
                  "no subterm position matches the rule's pattern", search.positions};
}

}  // namespace mrv::rewrite
