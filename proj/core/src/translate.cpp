#include "mrv/translate.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "mrv/ffl/eval.hpp"
#include "mrv/ffl/subst.hpp"
#include "mrv/il/interp.hpp"

namespace mrv {

using ffl::TermPtr;

ffl::TypePtr translateType(const il::TypePtr& t) {
  switch (t->kind) {
    case il::TypeKind::Int: return ffl::tInt();
    case il::TypeKind::Rat: return ffl::tRat();
    case il::TypeKind::Bool: return ffl::tBool();
    case il::TypeKind::Array: return ffl::tArray(translateType(t->args[0]));
    case il::TypeKind::Pair: return ffl::tProd(translateType(t->args[0]), translateType(t->args[1]));
    case il::TypeKind::Sum: return ffl::tSum(translateType(t->args[0]), translateType(t->args[1]));
    case il::TypeKind::Fun: {
      ffl::TypePtr r = translateType(t->args.back());
      for (size_t i = t->args.size() - 1; i-- > 0;) r = ffl::tArrow(translateType(t->args[i]), r);
      return r;
    }
  }
  throw std::logic_error("translateType: bad type");
}

namespace {

// Terms with no possible runtime effect (no error, no divergence, no budget
// growth proportional to data) need not be forced when dead.
bool mayHaveEffects(const TermPtr& t) {
  switch (t->kind) {
    case ffl::TermKind::Var:
    case ffl::TermKind::IntLit:
    case ffl::TermKind::RatLit:
    case ffl::TermKind::BoolLit:
    case ffl::TermKind::UnitLit:
      return false;
    case ffl::TermKind::Lam:
      return false;  // a value until applied; IL cannot store lambdas
    case ffl::TermKind::Pair:
    case ffl::TermKind::Fst:
    case ffl::TermKind::Snd:
    case ffl::TermKind::Inl:
    case ffl::TermKind::Inr:
    case ffl::TermKind::ArrayLit:
    case ffl::TermKind::Length:
    case ffl::TermKind::Un:
      break;
    case ffl::TermKind::Bin:
      if (t->bop == ffl::BinOp::Div) return true;
      break;
    default:
      return true;
  }
  for (const auto& k : t->kids)
    if (mayHaveEffects(k)) return true;
  return false;
}

struct Binding {
  TermPtr term;  // defining term, valid at the owning scope's depth
  std::shared_ptr<bool> used;
};

// One creation-ordered entry per effectful definition in a scope; unused ones
// are forced with seq so IL's eager semantics is preserved.
struct Anchor {
  TermPtr term;
  std::shared_ptr<bool> used;
};

struct Scope {
  std::map<std::string, Binding> vars;  // params, locals, loop binders, lambda params
  std::vector<Anchor> anchors;

  Scope shifted(int by) const {
    Scope s;
    for (const auto& [name, b] : vars) s.vars[name] = Binding{ffl::shift(b.term, by), b.used};
    // anchors stay with the outer scope
    return s;
  }
};

class Translator {
 public:
  explicit Translator(const il::TypedProgram& p) : p_(p) {}

  TermPtr run(size_t splitAt) {
    Scope scope;
    const auto& params = p_.params();
    for (size_t i = 0; i < params.size(); ++i) {
      int index = static_cast<int>(params.size() - 1 - i);
      scope.vars[params[i].name] =
          Binding{ffl::mkVar(index, params[i].name), std::make_shared<bool>(true)};
    }
    const auto& body = p_.program.body;
    splitAt = std::min(splitAt, body.size());
    TermPtr ret;
    // Sequencing is plain left-to-right threading, so translating in two runs
    // is the composition of the statement translations.
    for (size_t i = 0; i < splitAt; ++i) ret = stmt(body[i], scope);
    for (size_t i = splitAt; i < body.size(); ++i) ret = stmt(body[i], scope);
    if (!ret) throw std::logic_error("translate: program has no return statement");
    return lambdaWrap(forceUnused(scope, ret));
  }

 private:
  const il::TypedProgram& p_;

  TermPtr lambdaWrap(TermPtr body) {
    const auto& params = p_.params();
    for (size_t i = params.size(); i-- > 0;)
      body = ffl::mkLam(params[i].name, translateType(params[i].type), std::move(body));
    return body;
  }

  static TermPtr forceUnused(const Scope& scope, TermPtr result) {
    for (auto it = scope.anchors.rbegin(); it != scope.anchors.rend(); ++it) {
      if (!*it->used) result = ffl::mkSeq(it->term, std::move(result));
    }
    return result;
  }

  void bind(Scope& scope, const std::string& name, TermPtr term) {
    auto used = std::make_shared<bool>(false);
    if (mayHaveEffects(term)) scope.anchors.push_back(Anchor{term, used});
    scope.vars[name] = Binding{std::move(term), std::move(used)};
  }
  void bindPure(Scope& scope, const std::string& name, TermPtr term) {
    scope.vars[name] = Binding{std::move(term), std::make_shared<bool>(true)};
  }

  TermPtr lookup(Scope& scope, const std::string& name) {
    auto it = scope.vars.find(name);
    if (it == scope.vars.end())
      throw std::logic_error("translate: unbound variable '" + name + "'");
    *it->second.used = true;
    return it->second.term;
  }

  // The locals (declared outside `body`) assigned anywhere inside it, in
  // declaration-layout order.
  std::vector<std::string> assignedLocals(const std::vector<il::StmtPtr>& body,
                                          const Scope& scope) {
    std::set<std::string> declaredInside;
    std::set<std::string> hit;
    collectAssigned(body, declaredInside, hit);
    std::vector<std::string> ordered;
    for (const auto& [name, type] : p_.localsLayout) {
      (void)type;
      if (hit.count(name) && scope.vars.count(name)) ordered.push_back(name);
    }
    return ordered;
  }

  static void collectAssigned(const std::vector<il::StmtPtr>& stmts,
                              std::set<std::string>& declared, std::set<std::string>& out) {
    for (const auto& s : stmts) {
      switch (s->kind) {
        case il::StmtKind::VarDecl:
          declared.insert(s->name);
          break;
        case il::StmtKind::Assign:
        case il::StmtKind::ArrayAssign:
          if (!declared.count(s->name)) out.insert(s->name);
          break;
        case il::StmtKind::For:
        case il::StmtKind::While:
          collectAssigned(s->body, declared, out);
          break;
        case il::StmtKind::Return:
          break;
      }
    }
  }

  // Right-nested state tuples.
  static TermPtr tupleOf(const std::vector<TermPtr>& parts) {
    if (parts.empty()) return ffl::mkUnitLit();
    TermPtr t = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) t = ffl::mkPair(parts[i], t);
    return t;
  }
  static ffl::TypePtr tupleType(const std::vector<ffl::TypePtr>& parts) {
    if (parts.empty()) return ffl::tUnit();
    ffl::TypePtr t = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) t = ffl::tProd(parts[i], t);
    return t;
  }
  static TermPtr projection(TermPtr tuple, size_t i, size_t n) {
    if (n == 1) return tuple;
    for (size_t k = 0; k < i; ++k) tuple = ffl::mkSnd(std::move(tuple));
    if (i + 1 < n) tuple = ffl::mkFst(std::move(tuple));
    return tuple;
  }

  ffl::TypePtr localFflType(const std::string& name) {
    il::TypePtr t = p_.localType(name);
    if (!t) throw std::logic_error("translate: no layout type for '" + name + "'");
    return translateType(t);
  }

  // Returns the translated return value once the Return statement is reached.
  TermPtr stmt(const il::StmtPtr& s, Scope& scope) {
    switch (s->kind) {
      case il::StmtKind::VarDecl:
      case il::StmtKind::Assign:
        bind(scope, s->name, expr(s->e0, scope));
        return nullptr;
      case il::StmtKind::ArrayAssign: {
        TermPtr arr = lookup(scope, s->name);
        TermPtr idx = expr(s->e1, scope);
        TermPtr val = expr(s->e0, scope);
        bind(scope, s->name, ffl::mkUpdate(arr, idx, val, s->span));
        return nullptr;
      }
      case il::StmtKind::For:
        translateFor(s, scope);
        return nullptr;
      case il::StmtKind::While:
        translateWhile(s, scope);
        return nullptr;
      case il::StmtKind::Return:
        return expr(s->e0, scope);
    }
    return nullptr;
  }

  void translateFor(const il::StmtPtr& s, Scope& scope) {
    TermPtr arr = expr(s->e0, scope);
    ffl::TypePtr elemType = translateType(s->e0->type->args[0]);
    std::vector<std::string> state = assignedLocals(s->body, scope);

    std::vector<TermPtr> initParts;
    std::vector<ffl::TypePtr> stateTypes;
    for (const auto& name : state) {
      initParts.push_back(lookup(scope, name));
      stateTypes.push_back(localFflType(name));
    }
    TermPtr init = tupleOf(initParts);
    ffl::TypePtr stateType = tupleType(stateTypes);

    Scope inner = scope.shifted(2);  // acc, then the element binder
    for (size_t i = 0; i < state.size(); ++i)
      bindPure(inner, state[i], projection(ffl::mkVar(1, "acc"), i, state.size()));
    bindPure(inner, s->name, ffl::mkVar(0, s->name));

    for (const auto& st : s->body)
      if (stmt(st, inner)) throw std::logic_error("translate: return inside a loop");

    std::vector<TermPtr> outParts;
    for (const auto& name : state) outParts.push_back(lookup(inner, name));
    TermPtr bodyState = forceUnused(inner, tupleOf(outParts));

    TermPtr f = ffl::mkLam("acc", stateType, ffl::mkLam(s->name, elemType, bodyState));
    TermPtr fold = ffl::mkFold(f, init, arr);
    rebindLoopResult(scope, state, fold);
  }

  void translateWhile(const il::StmtPtr& s, Scope& scope) {
    std::vector<std::string> state = assignedLocals(s->body, scope);

    std::vector<TermPtr> initParts;
    std::vector<ffl::TypePtr> stateTypes;
    for (const auto& name : state) {
      initParts.push_back(lookup(scope, name));
      stateTypes.push_back(localFflType(name));
    }
    TermPtr init = tupleOf(initParts);
    ffl::TypePtr stateType = tupleType(stateTypes);

    Scope inner = scope.shifted(1);  // the state binder
    for (size_t i = 0; i < state.size(); ++i)
      bindPure(inner, state[i], projection(ffl::mkVar(0, "st"), i, state.size()));

    TermPtr guard = expr(s->e0, inner);

    for (const auto& st : s->body)
      if (stmt(st, inner)) throw std::logic_error("translate: return inside a loop");

    std::vector<TermPtr> outParts;
    for (const auto& name : state) outParts.push_back(lookup(inner, name));
    TermPtr bodyState = forceUnused(inner, tupleOf(outParts));

    TermPtr step = ffl::mkLam(
        "st", stateType,
        ffl::mkIf(guard, ffl::mkInr(bodyState, stateType), ffl::mkInl(ffl::mkVar(0, "st"), stateType)));
    TermPtr iter = ffl::mkIter(step, init);
    rebindLoopResult(scope, state, iter);
  }

  void rebindLoopResult(Scope& scope, const std::vector<std::string>& state, TermPtr loopTerm) {
    auto used = std::make_shared<bool>(false);
    scope.anchors.push_back(Anchor{loopTerm, used});
    for (size_t i = 0; i < state.size(); ++i)
      scope.vars[state[i]] = Binding{projection(loopTerm, i, state.size()), used};
  }

  TermPtr expr(const il::ExprPtr& e, Scope& scope) {
    switch (e->kind) {
      case il::ExprKind::Var:
        return lookup(scope, e->name);
      case il::ExprKind::IntLit:
        return ffl::mkIntLit(e->intVal);
      case il::ExprKind::RatLit:
        return ffl::mkRatLit(e->ratVal);
      case il::ExprKind::BoolLit:
        return ffl::mkBoolLit(e->boolVal);
      case il::ExprKind::Binary: {
        TermPtr a = expr(e->kids[0], scope);
        TermPtr b = expr(e->kids[1], scope);
        return ffl::mkBin(static_cast<ffl::BinOp>(e->bop), a, b, e->span);
      }
      case il::ExprKind::Unary: {
        TermPtr a = expr(e->kids[0], scope);
        switch (e->uop) {
          case il::UnOp::Neg: return ffl::mkUn(ffl::UnOp::Neg, a, e->span);
          case il::UnOp::Not: return ffl::mkUn(ffl::UnOp::Not, a, e->span);
          case il::UnOp::Fst: return ffl::mkFst(a);
          case il::UnOp::Snd: return ffl::mkSnd(a);
        }
        break;
      }
      case il::ExprKind::Index:
        return ffl::mkIndex(expr(e->kids[0], scope), expr(e->kids[1], scope), e->span);
      case il::ExprKind::PairCtor:
        return ffl::mkPair(expr(e->kids[0], scope), expr(e->kids[1], scope));
      case il::ExprKind::IntToRat:
        return ffl::mkUn(ffl::UnOp::IntToRat, expr(e->kids[0], scope), e->span);
      case il::ExprKind::Lambda:
        throw std::logic_error("translate: lambda outside a builtin argument");
      case il::ExprKind::Call:
        return call(e, scope);
    }
    throw std::logic_error("translate: bad expression");
  }

  TermPtr call(const il::ExprPtr& e, Scope& scope) {
    switch (e->builtin) {
      case il::Builtin::Length:
        return ffl::mkLength(expr(e->kids[0], scope));
      case il::Builtin::Replicate:
        return ffl::mkReplicate(expr(e->kids[0], scope), expr(e->kids[1], scope));
      case il::Builtin::Range:
        return ffl::mkRange(expr(e->kids[0], scope), expr(e->kids[1], scope));
      case il::Builtin::Zip:
        return ffl::mkZip(expr(e->kids[0], scope), expr(e->kids[1], scope));
      case il::Builtin::Concat:
        return ffl::mkConcat(expr(e->kids[0], scope));
      case il::Builtin::Group:
        return ffl::mkGroup(expr(e->kids[0], scope));
      case il::Builtin::Map:
      case il::Builtin::FlatMap: {
        ffl::TypePtr elemT = translateType(e->kids[1]->type->args[0]);
        TermPtr f = unaryLambda(e->kids[0], elemT, scope);
        TermPtr arr = expr(e->kids[1], scope);
        return e->builtin == il::Builtin::Map ? ffl::mkMap(f, arr) : ffl::mkFlatMap(f, arr);
      }
      case il::Builtin::Fold:
      case il::Builtin::ReduceByKey: {
        const il::ExprPtr& lam = e->kids[0];
        TermPtr f = curriedLambda(lam, scope);
        TermPtr init = expr(e->kids[1], scope);
        TermPtr arr = expr(e->kids[2], scope);
        return e->builtin == il::Builtin::Fold ? ffl::mkFold(f, init, arr)
                                               : ffl::mkReduceByKey(f, init, arr);
      }
    }
    throw std::logic_error("translate: bad builtin");
  }

  TermPtr unaryLambda(const il::ExprPtr& lam, const ffl::TypePtr& domType, Scope& scope) {
    Scope inner = scope.shifted(1);
    std::string display;
    if (lam->params.size() == 1) {
      display = lam->params[0].name;
      bindPure(inner, lam->params[0].name, ffl::mkVar(0, display));
    } else {
      // Two-parameter lambda over a pair element: destructured projections.
      display = lam->params[0].name + "_" + lam->params[1].name;
      bindPure(inner, lam->params[0].name, ffl::mkFst(ffl::mkVar(0, display)));
      bindPure(inner, lam->params[1].name, ffl::mkSnd(ffl::mkVar(0, display)));
    }
    return ffl::mkLam(display, domType, expr(lam->kids[0], inner));
  }

  TermPtr curriedLambda(const il::ExprPtr& lam, Scope& scope) {
    Scope inner = scope.shifted(2);
    bindPure(inner, lam->params[0].name, ffl::mkVar(1, lam->params[0].name));
    bindPure(inner, lam->params[1].name, ffl::mkVar(0, lam->params[1].name));
    TermPtr body = expr(lam->kids[0], inner);
    return ffl::mkLam(lam->params[0].name, translateType(lam->params[0].type),
                      ffl::mkLam(lam->params[1].name, translateType(lam->params[1].type), body));
  }
};

}  // namespace

ffl::TermPtr translate(const il::TypedProgram& p) { return Translator(p).run(p.program.body.size()); }

ffl::TermPtr translateSplit(const il::TypedProgram& p, size_t splitAt) {
  return Translator(p).run(splitAt);
}

ffl::TermPtr valueToTerm(const Value& v, const ffl::TypePtr& type) {
  if (v.isInt()) return ffl::mkIntLit(v.asInt());
  if (v.isRat()) return ffl::mkRatLit(v.asRat());
  if (v.isBool()) return ffl::mkBoolLit(v.asBool());
  if (v.isUnit()) return ffl::mkUnitLit();
  if (v.isArray()) {
    std::vector<ffl::TermPtr> elems;
    elems.reserve(v.asArray().size());
    for (const auto& x : v.asArray()) elems.push_back(valueToTerm(x, type->a));
    return ffl::mkArrayLit(type->a, std::move(elems));
  }
  if (v.isPair())
    return ffl::mkPair(valueToTerm(v.asPair().first, type->a),
                       valueToTerm(v.asPair().second, type->b));
  if (v.isTag()) {
    if (v.asTag().isLeft) return ffl::mkInl(valueToTerm(*v.asTag().payload, type->a), type->b);
    return ffl::mkInr(valueToTerm(*v.asTag().payload, type->b), type->a);
  }
  throw std::invalid_argument("valueToTerm: closures cannot be embedded");
}

ffl::TermPtr applyToArgs(const ffl::TermPtr& fn, const std::vector<Value>& args,
                         const std::vector<il::TypePtr>& paramTypes) {
  ffl::TermPtr t = fn;
  for (size_t i = 0; i < args.size(); ++i)
    t = ffl::mkApp(t, valueToTerm(args[i], translateType(paramTypes[i])));
  return t;
}

OracleCheck translationOracleCheck(const il::TypedProgram& p, const std::vector<Value>& args,
                                   long long budget) {
  EvalOutcome ilOut = il::interpretProgram(p, args, budget);
  std::vector<il::TypePtr> paramTypes;
  for (const auto& param : p.params()) paramTypes.push_back(param.type);
  ffl::TermPtr applied = applyToArgs(translate(p), args, paramTypes);
  EvalOutcome fflOut = ffl::eval(applied, budget);
  return OracleCheck{ilOut.agrees(fflOut), ilOut, fflOut};
}

}  // namespace mrv
