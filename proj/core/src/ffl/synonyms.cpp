#include <stdexcept>

#include "mrv/ffl/check.hpp"
#include "mrv/ffl/subst.hpp"

namespace mrv::ffl {

namespace {

TermPtr expand(const TermPtr& t, std::vector<TypePtr>& ctx) {
  // Children first, so nested synonyms disappear too.
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  bool changed = false;
  for (size_t i = 0; i < t->kids.size(); ++i) {
    int extra = binderArity(*t, i);
    if (extra > 0) {
      TypePtr bound = t->kind == TermKind::Lam ? t->ann : nullptr;
      if (t->kind == TermKind::Case) {
        // Need the scrutinee's sum type to type the branch binders.
        auto st = typecheckTerm(t->kids[0], {ctx.rbegin(), ctx.rend()});
        if (!st.ok()) throw std::logic_error("expandSynonyms: ill-typed case scrutinee");
        bound = i == 1 ? st.value()->a : st.value()->b;
      }
      ctx.push_back(bound);
      kids.push_back(expand(t->kids[i], ctx));
      ctx.pop_back();
    } else {
      kids.push_back(expand(t->kids[i], ctx));
    }
    changed = changed || kids.back() != t->kids[i];
  }
  TermPtr out = changed ? withKids(t, std::move(kids)) : t;

  if (out->kind == TermKind::FlatMap) {
    // flatMap(f, xss) = concat(map(f, xss))
    return mkConcat(mkMap(out->kids[0], out->kids[1]));
  }
  if (out->kind == TermKind::ReduceByKey) {
    // reduceByKey(f, i, xs) = map(\kv. (fst kv, fold(f, i, snd kv)), group(xs))
    auto xsType = typecheckTerm(out->kids[2], {ctx.rbegin(), ctx.rend()});
    if (!xsType.ok() || xsType.value()->kind != TypeKind::Array ||
        xsType.value()->a->kind != TypeKind::Prod)
      throw std::logic_error("expandSynonyms: ill-typed reduceByKey argument");
    TypePtr keyT = xsType.value()->a->a;
    TypePtr valT = xsType.value()->a->b;
    TermPtr f1 = shift(out->kids[0], 1);
    TermPtr i1 = shift(out->kids[1], 1);
    TermPtr kv = mkVar(0, "kv");
    TermPtr lam = mkLam("kv", tProd(keyT, tArray(valT)),
                        mkPair(mkFst(kv), mkFold(f1, i1, mkSnd(kv))));
    return mkMap(lam, mkGroup(out->kids[2]));
  }
  return out;
}

}  // namespace

TermPtr expandSynonyms(const TermPtr& t, const std::vector<TypePtr>& context) {
  std::vector<TypePtr> ctx(context.rbegin(), context.rend());
  return expand(t, ctx);
}

}  // namespace mrv::ffl
