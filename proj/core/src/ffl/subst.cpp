#include "mrv/ffl/subst.hpp"

#include <functional>
#include <stdexcept>

namespace mrv::ffl {

namespace {

TermPtr mapVars(const TermPtr& t, int depth,
                const std::function<TermPtr(const TermPtr&, int)>& onVar) {
  if (t->kind == TermKind::Var) return onVar(t, depth);
  if (t->kids.empty()) return t;
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  bool changed = false;
  for (size_t i = 0; i < t->kids.size(); ++i) {
    int extra = binderArity(*t, i);
    TermPtr k = mapVars(t->kids[i], depth + extra, onVar);
    changed = changed || k != t->kids[i];
    kids.push_back(std::move(k));
  }
  if (!changed) return t;
  return withKids(t, std::move(kids));
}

}  // namespace

TermPtr shift(const TermPtr& t, int by, int cutoff) {
  if (by == 0) return t;
  return mapVars(t, cutoff, [by](const TermPtr& v, int depth) -> TermPtr {
    if (v->var < depth) return v;
    int idx = v->var + by;
    if (idx < depth) throw std::logic_error("shift: variable crossed the cutoff");
    return mkVar(idx, v->name);
  });
}

TermPtr substitute(const TermPtr& t, int index, const TermPtr& s) {
  // Plain replacement: other free variables keep their indices, so
  // substituting a variable for itself is the identity.
  return mapVars(t, 0, [index, &s](const TermPtr& v, int depth) -> TermPtr {
    int target = index + depth;
    if (v->var == target) return shift(s, depth);
    return v;
  });
}

bool mentionsVar(const TermPtr& t, int index) {
  if (t->kind == TermKind::Var) return t->var == index;
  for (size_t i = 0; i < t->kids.size(); ++i) {
    if (mentionsVar(t->kids[i], index + binderArity(*t, i))) return true;
  }
  return false;
}

namespace {
int maxFreeVarAt(const TermPtr& t, int depth) {
  if (t->kind == TermKind::Var) return t->var >= depth ? t->var - depth : -1;
  int best = -1;
  for (size_t i = 0; i < t->kids.size(); ++i) {
    best = std::max(best, maxFreeVarAt(t->kids[i], depth + binderArity(*t, i)));
  }
  return best;
}
}  // namespace

int maxFreeVar(const TermPtr& t) { return maxFreeVarAt(t, 0); }

namespace {

bool alphaEq(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TermKind::Var:
      if (a.var != b.var) return false;
      break;
    case TermKind::IntLit:
      if (a.intVal != b.intVal) return false;
      break;
    case TermKind::RatLit:
      if (a.ratVal != b.ratVal) return false;
      break;
    case TermKind::BoolLit:
      if (a.boolVal != b.boolVal) return false;
      break;
    case TermKind::Bin:
      if (a.bop != b.bop) return false;
      break;
    case TermKind::Un:
      if (a.uop != b.uop) return false;
      break;
    default:
      break;
  }
  // Type annotations are semantic (Lam parameter types, Inl/Inr complements,
  // ArrayLit element types); display names and spans are not.
  if ((a.ann == nullptr) != (b.ann == nullptr)) return false;
  if (a.ann && !typeEqual(a.ann, b.ann)) return false;
  if (a.kids.size() != b.kids.size()) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!alphaEq(*a.kids[i], *b.kids[i])) return false;
  return true;
}

void firstDiff(const TermPtr& a, const TermPtr& b, std::vector<int>& path, bool& found,
               std::string& out);

}  // namespace

bool alphaEqual(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return alphaEq(*a, *b);
}

namespace {

std::string shortRender(const TermPtr& t);

void firstDiff(const TermPtr& a, const TermPtr& b, std::vector<int>& path, bool& found,
               std::string& out) {
  if (found) return;
  bool headEqual = a->kind == b->kind && a->kids.size() == b->kids.size();
  if (headEqual) {
    switch (a->kind) {
      case TermKind::Var: headEqual = a->var == b->var; break;
      case TermKind::IntLit: headEqual = a->intVal == b->intVal; break;
      case TermKind::RatLit: headEqual = a->ratVal == b->ratVal; break;
      case TermKind::BoolLit: headEqual = a->boolVal == b->boolVal; break;
      case TermKind::Bin: headEqual = a->bop == b->bop; break;
      case TermKind::Un: headEqual = a->uop == b->uop; break;
      default: break;
    }
    if (headEqual && ((a->ann == nullptr) != (b->ann == nullptr) ||
                      (a->ann && !typeEqual(a->ann, b->ann))))
      headEqual = false;
  }
  if (!headEqual) {
    found = true;
    std::string where;
    for (int p : path) where += "." + std::to_string(p);
    out = "at path " + (where.empty() ? "<root>" : where) + ": " + shortRender(a) + "  vs  " +
          shortRender(b);
    return;
  }
  for (size_t i = 0; i < a->kids.size() && !found; ++i) {
    path.push_back(static_cast<int>(i));
    firstDiff(a->kids[i], b->kids[i], path, found, out);
    path.pop_back();
  }
}

std::string shortRender(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return "var#" + std::to_string(t->var) + (t->name.empty() ? "" : "(" + t->name + ")");
    case TermKind::Lam: return "\\" + (t->name.empty() ? std::string("_") : t->name) + ":" + showType(t->ann) + ". ...";
    case TermKind::IntLit: return t->intVal.str();
    case TermKind::RatLit: return numerator(t->ratVal).str() + "/" + denominator(t->ratVal).str();
    case TermKind::BoolLit: return t->boolVal ? "true" : "false";
    case TermKind::Bin: return std::string("(_ ") + binOpName(t->bop) + " _)";
    default: break;
  }
  static const char* names[] = {
      "var", "lam", "app", "int", "rat", "bool", "unit", "arraylit", "pair", "fst", "snd",
      "inl", "inr", "case", "if", "index", "update", "length", "replicate", "range",
      "zip", "map", "concat", "group", "fold", "iter", "flatMap", "reduceByKey",
      "bin", "un", "seq", "probe"};
  return names[static_cast<int>(t->kind)];
}

}  // namespace

std::string diffTerms(const TermPtr& a, const TermPtr& b) {
  std::vector<int> path;
  bool found = false;
  std::string out;
  firstDiff(a, b, path, found, out);
  return found ? out : "";
}

}  // namespace mrv::ffl
