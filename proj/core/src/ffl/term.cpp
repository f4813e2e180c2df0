#include "mrv/ffl/term.hpp"

#include <stdexcept>

namespace mrv::ffl {

namespace {
std::shared_ptr<Term> blank(TermKind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}
}  // namespace

int binderArity(const Term& t, size_t childIdx) {
  if (t.kind == TermKind::Lam && childIdx == 0) return 1;
  if (t.kind == TermKind::Case && (childIdx == 1 || childIdx == 2)) return 1;
  return 0;
}

TermPtr mkVar(int index, std::string name) {
  auto t = blank(TermKind::Var);
  t->var = index;
  t->name = std::move(name);
  return t;
}
TermPtr mkLam(std::string name, TypePtr paramType, TermPtr body) {
  auto t = blank(TermKind::Lam);
  t->name = std::move(name);
  t->ann = std::move(paramType);
  t->kids = {std::move(body)};
  return t;
}
TermPtr mkApp(TermPtr f, TermPtr a) {
  auto t = blank(TermKind::App);
  t->kids = {std::move(f), std::move(a)};
  return t;
}
TermPtr mkIntLit(BigInt v) {
  auto t = blank(TermKind::IntLit);
  t->intVal = std::move(v);
  return t;
}
TermPtr mkRatLit(BigRat v) {
  auto t = blank(TermKind::RatLit);
  t->ratVal = std::move(v);
  return t;
}
TermPtr mkBoolLit(bool v) {
  auto t = blank(TermKind::BoolLit);
  t->boolVal = v;
  return t;
}
TermPtr mkUnitLit() { return blank(TermKind::UnitLit); }
TermPtr mkArrayLit(TypePtr elemType, std::vector<TermPtr> elems) {
  auto t = blank(TermKind::ArrayLit);
  t->ann = std::move(elemType);
  t->kids = std::move(elems);
  return t;
}
TermPtr mkPair(TermPtr a, TermPtr b) {
  auto t = blank(TermKind::Pair);
  t->kids = {std::move(a), std::move(b)};
  return t;
}
TermPtr mkFst(TermPtr p) {
  auto t = blank(TermKind::Fst);
  t->kids = {std::move(p)};
  return t;
}
TermPtr mkSnd(TermPtr p) {
  auto t = blank(TermKind::Snd);
  t->kids = {std::move(p)};
  return t;
}
TermPtr mkInl(TermPtr v, TypePtr rightType) {
  auto t = blank(TermKind::Inl);
  t->ann = std::move(rightType);
  t->kids = {std::move(v)};
  return t;
}
TermPtr mkInr(TermPtr v, TypePtr leftType) {
  auto t = blank(TermKind::Inr);
  t->ann = std::move(leftType);
  t->kids = {std::move(v)};
  return t;
}
TermPtr mkCase(TermPtr scrut, std::string ln, TermPtr leftBody, std::string rn,
               TermPtr rightBody) {
  auto t = blank(TermKind::Case);
  t->name = std::move(ln);
  t->name2 = std::move(rn);
  t->kids = {std::move(scrut), std::move(leftBody), std::move(rightBody)};
  return t;
}
TermPtr mkIf(TermPtr c, TermPtr th, TermPtr el) {
  auto t = blank(TermKind::If);
  t->kids = {std::move(c), std::move(th), std::move(el)};
  return t;
}
TermPtr mkIndex(TermPtr arr, TermPtr idx, Span s) {
  auto t = blank(TermKind::Index);
  t->span = s;
  t->kids = {std::move(arr), std::move(idx)};
  return t;
}
TermPtr mkUpdate(TermPtr arr, TermPtr idx, TermPtr v, Span s) {
  auto t = blank(TermKind::Update);
  t->span = s;
  t->kids = {std::move(arr), std::move(idx), std::move(v)};
  return t;
}
TermPtr mkLength(TermPtr arr) {
  auto t = blank(TermKind::Length);
  t->kids = {std::move(arr)};
  return t;
}
TermPtr mkReplicate(TermPtr n, TermPtr v) {
  auto t = blank(TermKind::Replicate);
  t->kids = {std::move(n), std::move(v)};
  return t;
}
TermPtr mkRange(TermPtr a, TermPtr b) {
  auto t = blank(TermKind::Range);
  t->kids = {std::move(a), std::move(b)};
  return t;
}
TermPtr mkZip(TermPtr a, TermPtr b) {
  auto t = blank(TermKind::Zip);
  t->kids = {std::move(a), std::move(b)};
  return t;
}
TermPtr mkMap(TermPtr f, TermPtr arr) {
  auto t = blank(TermKind::Map);
  t->kids = {std::move(f), std::move(arr)};
  return t;
}
TermPtr mkConcat(TermPtr arrs) {
  auto t = blank(TermKind::Concat);
  t->kids = {std::move(arrs)};
  return t;
}
TermPtr mkGroup(TermPtr kvs) {
  auto t = blank(TermKind::Group);
  t->kids = {std::move(kvs)};
  return t;
}
TermPtr mkFold(TermPtr f, TermPtr init, TermPtr arr) {
  auto t = blank(TermKind::Fold);
  t->kids = {std::move(f), std::move(init), std::move(arr)};
  return t;
}
TermPtr mkIter(TermPtr step, TermPtr init) {
  auto t = blank(TermKind::Iter);
  t->kids = {std::move(step), std::move(init)};
  return t;
}
TermPtr mkFlatMap(TermPtr f, TermPtr arrs) {
  auto t = blank(TermKind::FlatMap);
  t->kids = {std::move(f), std::move(arrs)};
  return t;
}
TermPtr mkReduceByKey(TermPtr f, TermPtr init, TermPtr kvs) {
  auto t = blank(TermKind::ReduceByKey);
  t->kids = {std::move(f), std::move(init), std::move(kvs)};
  return t;
}
TermPtr mkBin(BinOp op, TermPtr a, TermPtr b, Span s) {
  auto t = blank(TermKind::Bin);
  t->bop = op;
  t->span = s;
  t->kids = {std::move(a), std::move(b)};
  return t;
}
TermPtr mkUn(UnOp op, TermPtr a, Span s) {
  auto t = blank(TermKind::Un);
  t->uop = op;
  t->span = s;
  t->kids = {std::move(a)};
  return t;
}
TermPtr mkSeq(TermPtr effect, TermPtr result) {
  auto t = blank(TermKind::Seq);
  t->kids = {std::move(effect), std::move(result)};
  return t;
}
TermPtr mkProbe(int id, TermPtr inner) {
  auto t = blank(TermKind::Probe);
  t->probeId = id;
  t->kids = {std::move(inner)};
  return t;
}

TermPtr withKids(const TermPtr& t, std::vector<TermPtr> kids) {
  auto n = std::make_shared<Term>(*t);
  n->kids = std::move(kids);
  return n;
}

TermPtr subtermAt(const TermPtr& t, const std::vector<int>& path) {
  TermPtr cur = t;
  for (int step : path) {
    if (step < 0 || static_cast<size_t>(step) >= cur->kids.size())
      throw std::out_of_range("subtermAt: invalid path");
    cur = cur->kids[step];
  }
  return cur;
}

TermPtr replaceAt(const TermPtr& t, const std::vector<int>& path, TermPtr replacement) {
  if (path.empty()) return replacement;
  std::vector<TermPtr> kids = t->kids;
  int step = path[0];
  if (step < 0 || static_cast<size_t>(step) >= kids.size())
    throw std::out_of_range("replaceAt: invalid path");
  std::vector<int> rest(path.begin() + 1, path.end());
  kids[step] = replaceAt(kids[step], rest, std::move(replacement));
  return withKids(t, std::move(kids));
}

const char* binOpName(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Eq: return "=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

}  // namespace mrv::ffl
