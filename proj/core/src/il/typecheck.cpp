#include "mrv/il/typecheck.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>

namespace mrv::il {

namespace {

struct Binding {
  TypePtr type;
  enum class Kind { Param, Local, LoopVar, LambdaParam } kind;
};

class Checker {
 public:
  std::vector<TypeError> errors;
  std::vector<std::pair<std::string, TypePtr>> layout;

  explicit Checker(const Program& p) : program_(p) {}

  std::optional<Program> run() {
    Program out = program_;
    out.body.clear();

    std::set<std::string> paramNames;
    for (const auto& p : program_.params) {
      if (!paramNames.insert(p.name).second)
        report(p.span, "duplicate parameter name '" + p.name + "'");
      if (!firstOrder(p.type))
        report(p.span, "parameter '" + p.name + "' must have a first-order type");
      scopes_.back()[p.name] = Binding{p.type, Binding::Kind::Param};
    }
    if (!firstOrder(program_.returnType))
      report(program_.span, "the return type must be first-order");

    if (program_.body.empty() || program_.body.back()->kind != StmtKind::Return) {
      report(program_.span, "the function body must end with a return statement");
    }
    for (size_t i = 0; i < program_.body.size(); ++i) {
      bool isLast = i + 1 == program_.body.size();
      out.body.push_back(checkStmt(program_.body[i], isLast));
    }
    if (!errors.empty()) return std::nullopt;
    return out;
  }

 private:
  const Program& program_;
  std::vector<std::map<std::string, Binding>> scopes_{1};
  // Locals and loop binders are unique across the whole function so every use
  // resolves to exactly one declaration; lambda params may shadow.
  std::set<std::string> allNames_;

  void report(Span s, std::string msg) { errors.push_back(TypeError{s, std::move(msg)}); }

  const Binding* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }
  bool declaredAnywhere(const std::string& name) const { return lookup(name) != nullptr; }

  ExprPtr poison(Span s) {
    auto e = mkIntLit(0, s);
    auto m = std::const_pointer_cast<Expr>(e);
    m->type = tInt();
    return e;
  }

  static ExprPtr withType(ExprPtr e, TypePtr t) {
    auto m = std::const_pointer_cast<Expr>(e);
    m->type = std::move(t);
    return e;
  }

  // Applies the implicit Int -> Rat promotion when `expected` asks for it.
  ExprPtr coerce(ExprPtr e, const TypePtr& expected) {
    if (!expected || typeEqual(e->type, expected)) return e;
    if (e->type->kind == TypeKind::Int && expected->kind == TypeKind::Rat) {
      if (e->kind == ExprKind::IntLit) {
        // Integer literals in rational positions become rational literals.
        auto lit = mkRatLit(BigRat(e->intVal), e->span);
        return withType(lit, tRat());
      }
      return mkIntToRat(e);
    }
    report(e->span, "expected " + showType(expected) + ", found " + showType(e->type));
    return e;
  }

  bool isNumeric(const TypePtr& t) {
    return t->kind == TypeKind::Int || t->kind == TypeKind::Rat;
  }

  // ---- expressions --------------------------------------------------------

  ExprPtr checkExpr(const ExprPtr& e, const TypePtr& expected) {
    switch (e->kind) {
      case ExprKind::Var: {
        const Binding* b = lookup(e->name);
        if (!b) {
          report(e->span, "unknown variable '" + e->name + "'");
          return poison(e->span);
        }
        return coerce(withType(mkVar(e->name, e->span), b->type), expected);
      }
      case ExprKind::IntLit: {
        if (expected && expected->kind == TypeKind::Rat)
          return withType(mkRatLit(BigRat(e->intVal), e->span), tRat());
        return coerce(withType(mkIntLit(e->intVal, e->span), tInt()), expected);
      }
      case ExprKind::RatLit:
        return coerce(withType(mkRatLit(e->ratVal, e->span), tRat()), expected);
      case ExprKind::BoolLit:
        return coerce(withType(mkBoolLit(e->boolVal, e->span), tBool()), expected);
      case ExprKind::Binary:
        return checkBinary(e, expected);
      case ExprKind::Unary:
        return checkUnary(e, expected);
      case ExprKind::Index: {
        ExprPtr arr = checkExpr(e->kids[0], nullptr);
        ExprPtr idx = checkExpr(e->kids[1], tInt());
        if (arr->type->kind != TypeKind::Array) {
          report(e->span, "indexing requires an array, found " + showType(arr->type));
          return poison(e->span);
        }
        return coerce(withType(mkIndex(arr, idx, e->span), arr->type->args[0]), expected);
      }
      case ExprKind::PairCtor: {
        TypePtr expA, expB;
        if (expected && expected->kind == TypeKind::Pair) {
          expA = expected->args[0];
          expB = expected->args[1];
        }
        ExprPtr a = checkExpr(e->kids[0], expA);
        ExprPtr b = checkExpr(e->kids[1], expB);
        return coerce(withType(mkPairCtor(a, b, e->span), tPair(a->type, b->type)), expected);
      }
      case ExprKind::Lambda:
        report(e->span, "lambdas may only appear as function arguments of map, flatMap, fold "
                        "or reduceByKey");
        return poison(e->span);
      case ExprKind::Call:
        return checkCall(e, expected);
      case ExprKind::IntToRat: {
        ExprPtr inner = checkExpr(e->kids[0], tInt());
        return coerce(mkIntToRat(inner), expected);
      }
    }
    return poison(e->span);
  }

  ExprPtr checkBinary(const ExprPtr& e, const TypePtr& expected) {
    BinOp op = e->bop;
    bool arith = op == BinOp::Add || op == BinOp::Sub || op == BinOp::Mul || op == BinOp::Div;
    bool cmp = op == BinOp::Lt || op == BinOp::Le;
    bool boolean = op == BinOp::And || op == BinOp::Or;

    if (boolean) {
      ExprPtr a = checkExpr(e->kids[0], tBool());
      ExprPtr b = checkExpr(e->kids[1], tBool());
      return coerce(withType(mkBinary(op, a, b, e->span), tBool()), expected);
    }
    if (arith && expected && isNumeric(expected)) {
      ExprPtr a = checkExpr(e->kids[0], expected);
      ExprPtr b = checkExpr(e->kids[1], expected);
      return withType(mkBinary(op, a, b, e->span), expected);
    }
    // Infer both sides, then promote across Int/Rat mixes.
    ExprPtr a = checkExpr(e->kids[0], nullptr);
    ExprPtr b = checkExpr(e->kids[1], nullptr);
    if (op == BinOp::Eq) {
      if (isNumeric(a->type) && isNumeric(b->type) && !typeEqual(a->type, b->type)) {
        a = coerce(a, tRat());
        b = coerce(b, tRat());
      }
      if (!typeEqual(a->type, b->type)) {
        report(e->span, "'=' requires both sides to have the same type, found " +
                            showType(a->type) + " and " + showType(b->type));
      } else if (!firstOrder(a->type)) {
        report(e->span, "'=' is only defined for first-order values");
      }
      return coerce(withType(mkBinary(op, a, b, e->span), tBool()), expected);
    }
    if (!isNumeric(a->type) || !isNumeric(b->type)) {
      report(e->span, std::string("operator '") + binOpName(op) + "' requires numeric operands, found " +
                          showType(a->type) + " and " + showType(b->type));
      return poison(e->span);
    }
    TypePtr joined = (a->type->kind == TypeKind::Rat || b->type->kind == TypeKind::Rat) ? tRat() : tInt();
    a = coerce(a, joined);
    b = coerce(b, joined);
    TypePtr resType = cmp ? tBool() : joined;
    return coerce(withType(mkBinary(op, a, b, e->span), resType), expected);
  }

  ExprPtr checkUnary(const ExprPtr& e, const TypePtr& expected) {
    switch (e->uop) {
      case UnOp::Neg: {
        TypePtr inner = (expected && isNumeric(expected)) ? expected : nullptr;
        ExprPtr a = checkExpr(e->kids[0], inner);
        if (!isNumeric(a->type)) {
          report(e->span, "unary '-' requires a numeric operand");
          return poison(e->span);
        }
        return coerce(withType(mkUnary(UnOp::Neg, a, e->span), a->type), expected);
      }
      case UnOp::Not: {
        ExprPtr a = checkExpr(e->kids[0], tBool());
        return coerce(withType(mkUnary(UnOp::Not, a, e->span), tBool()), expected);
      }
      case UnOp::Fst:
      case UnOp::Snd: {
        ExprPtr a = checkExpr(e->kids[0], nullptr);
        if (a->type->kind != TypeKind::Pair) {
          report(e->span, std::string(e->uop == UnOp::Fst ? "fst" : "snd") +
                              " requires a pair, found " + showType(a->type));
          return poison(e->span);
        }
        TypePtr t = e->uop == UnOp::Fst ? a->type->args[0] : a->type->args[1];
        return coerce(withType(mkUnary(e->uop, a, e->span), t), expected);
      }
    }
    return poison(e->span);
  }

  // Checks a lambda argument. `domain` is the (known) type of the value the
  // function is applied to; a two-parameter lambda over a pair domain is
  // accepted in unary positions and destructured by the translator.
  struct CheckedLambda {
    ExprPtr expr;        // typed lambda
    TypePtr result;      // body type
  };
  std::optional<CheckedLambda> checkUnaryFun(const ExprPtr& e, const TypePtr& domain,
                                             const TypePtr& expectedResult) {
    if (e->kind != ExprKind::Lambda) {
      report(e->span, "expected a lambda expression");
      return std::nullopt;
    }
    const auto& ps = e->params;
    if (ps.size() != 1 && ps.size() != 2) {
      report(e->span, "this position takes a one-argument function");
      return std::nullopt;
    }
    if (ps.size() == 1) {
      if (domain && !typeEqual(ps[0].type, domain)) {
        report(ps[0].span, "lambda parameter has type " + showType(ps[0].type) +
                               " but the element type is " + showType(domain));
        return std::nullopt;
      }
    } else {
      if (domain && (domain->kind != TypeKind::Pair || !typeEqual(ps[0].type, domain->args[0]) ||
                     !typeEqual(ps[1].type, domain->args[1]))) {
        report(e->span, "two-parameter lambda requires the element type to be the matching pair, "
                        "found " + showType(domain));
        return std::nullopt;
      }
    }
    pushLambdaScope(ps);
    ExprPtr body = checkExpr(e->kids[0], expectedResult);
    popScope();
    std::vector<TypePtr> domains;
    for (const auto& p : ps) domains.push_back(p.type);
    ExprPtr lam = mkLambda(ps, body, e->span);
    return CheckedLambda{withType(lam, tFun(domains, body->type)), body->type};
  }

  // Curried two-argument function position (fold / reduceByKey).
  std::optional<CheckedLambda> checkBinaryFun(const ExprPtr& e, const TypePtr& dom1,
                                              const TypePtr& dom2, const TypePtr& expectedResult) {
    if (e->kind != ExprKind::Lambda || e->params.size() != 2) {
      report(e->span, "expected a two-parameter lambda");
      return std::nullopt;
    }
    const auto& ps = e->params;
    if (dom1 && !typeEqual(ps[0].type, dom1))
      report(ps[0].span, "lambda parameter has type " + showType(ps[0].type) + ", expected " +
                             showType(dom1));
    if (dom2 && !typeEqual(ps[1].type, dom2))
      report(ps[1].span, "lambda parameter has type " + showType(ps[1].type) + ", expected " +
                             showType(dom2));
    pushLambdaScope(ps);
    ExprPtr body = checkExpr(e->kids[0], expectedResult);
    popScope();
    ExprPtr lam = mkLambda(ps, body, e->span);
    return CheckedLambda{withType(lam, tFun({ps[0].type, ps[1].type}, body->type)), body->type};
  }

  void pushLambdaScope(const std::vector<Param>& ps) {
    scopes_.emplace_back();
    for (const auto& p : ps) {
      if (!firstOrder(p.type)) report(p.span, "lambda parameters must be first-order");
      scopes_.back()[p.name] = Binding{p.type, Binding::Kind::LambdaParam};
    }
  }
  void popScope() { scopes_.pop_back(); }

  ExprPtr checkCall(const ExprPtr& e, const TypePtr& expected) {
    Builtin b = e->builtin;
    auto arity = [&](size_t n) {
      if (e->kids.size() != n) {
        report(e->span, std::string(builtinName(b)) + " takes " + std::to_string(n) +
                            " argument(s), found " + std::to_string(e->kids.size()));
        return false;
      }
      return true;
    };
    switch (b) {
      case Builtin::Length: {
        if (!arity(1)) return poison(e->span);
        ExprPtr a = checkExpr(e->kids[0], nullptr);
        if (a->type->kind != TypeKind::Array) {
          report(e->span, "length requires an array, found " + showType(a->type));
          return poison(e->span);
        }
        return coerce(withType(mkCall(b, {a}, e->span), tInt()), expected);
      }
      case Builtin::Replicate: {
        if (!arity(2)) return poison(e->span);
        ExprPtr n = checkExpr(e->kids[0], tInt());
        TypePtr elemExp;
        if (expected && expected->kind == TypeKind::Array) elemExp = expected->args[0];
        ExprPtr v = checkExpr(e->kids[1], elemExp);
        return coerce(withType(mkCall(b, {n, v}, e->span), tArray(v->type)), expected);
      }
      case Builtin::Range: {
        if (!arity(2)) return poison(e->span);
        ExprPtr lo = checkExpr(e->kids[0], tInt());
        ExprPtr hi = checkExpr(e->kids[1], tInt());
        return coerce(withType(mkCall(b, {lo, hi}, e->span), tArray(tInt())), expected);
      }
      case Builtin::Zip: {
        if (!arity(2)) return poison(e->span);
        ExprPtr a = checkExpr(e->kids[0], nullptr);
        ExprPtr bb = checkExpr(e->kids[1], nullptr);
        if (a->type->kind != TypeKind::Array || bb->type->kind != TypeKind::Array) {
          report(e->span, "zip requires two arrays");
          return poison(e->span);
        }
        TypePtr t = tArray(tPair(a->type->args[0], bb->type->args[0]));
        return coerce(withType(mkCall(b, {a, bb}, e->span), t), expected);
      }
      case Builtin::Concat: {
        if (!arity(1)) return poison(e->span);
        ExprPtr a = checkExpr(e->kids[0], nullptr);
        if (a->type->kind != TypeKind::Array || a->type->args[0]->kind != TypeKind::Array) {
          report(e->span, "concat requires an array of arrays, found " + showType(a->type));
          return poison(e->span);
        }
        return coerce(withType(mkCall(b, {a}, e->span), a->type->args[0]), expected);
      }
      case Builtin::Group: {
        if (!arity(1)) return poison(e->span);
        ExprPtr a = checkExpr(e->kids[0], nullptr);
        if (a->type->kind != TypeKind::Array || a->type->args[0]->kind != TypeKind::Pair) {
          report(e->span, "group requires an array of key-value pairs, found " + showType(a->type));
          return poison(e->span);
        }
        TypePtr k = a->type->args[0]->args[0];
        TypePtr v = a->type->args[0]->args[1];
        return coerce(withType(mkCall(b, {a}, e->span), tArray(tPair(k, tArray(v)))), expected);
      }
      case Builtin::Map: {
        if (!arity(2)) return poison(e->span);
        ExprPtr arr = checkExpr(e->kids[1], nullptr);
        if (arr->type->kind != TypeKind::Array) {
          report(e->span, "map requires an array as the second argument");
          return poison(e->span);
        }
        auto f = checkUnaryFun(e->kids[0], arr->type->args[0], nullptr);
        if (!f) return poison(e->span);
        return coerce(withType(mkCall(b, {f->expr, arr}, e->span), tArray(f->result)), expected);
      }
      case Builtin::FlatMap: {
        if (!arity(2)) return poison(e->span);
        ExprPtr arr = checkExpr(e->kids[1], nullptr);
        if (arr->type->kind != TypeKind::Array) {
          report(e->span, "flatMap requires an array as the second argument");
          return poison(e->span);
        }
        auto f = checkUnaryFun(e->kids[0], arr->type->args[0], nullptr);
        if (!f) return poison(e->span);
        if (f->result->kind != TypeKind::Array) {
          report(e->kids[0]->span, "flatMap's function must return an array, found " +
                                       showType(f->result));
          return poison(e->span);
        }
        return coerce(withType(mkCall(b, {f->expr, arr}, e->span), f->result), expected);
      }
      case Builtin::Fold: {
        if (!arity(3)) return poison(e->span);
        // The lambda's annotations fix the accumulator and element types.
        const ExprPtr& lam = e->kids[0];
        if (lam->kind != ExprKind::Lambda || lam->params.size() != 2) {
          report(lam->span, "fold's first argument must be a two-parameter lambda");
          return poison(e->span);
        }
        TypePtr accT = lam->params[0].type;
        TypePtr elemT = lam->params[1].type;
        auto f = checkBinaryFun(lam, accT, elemT, accT);
        if (!f) return poison(e->span);
        ExprPtr init = checkExpr(e->kids[1], accT);
        ExprPtr arr = checkExpr(e->kids[2], tArray(elemT));
        return coerce(withType(mkCall(b, {f->expr, init, arr}, e->span), accT), expected);
      }
      case Builtin::ReduceByKey: {
        if (!arity(3)) return poison(e->span);
        const ExprPtr& lam = e->kids[0];
        if (lam->kind != ExprKind::Lambda || lam->params.size() != 2) {
          report(lam->span, "reduceByKey's first argument must be a two-parameter lambda");
          return poison(e->span);
        }
        TypePtr v1 = lam->params[0].type;
        TypePtr v2 = lam->params[1].type;
        if (!typeEqual(v1, v2)) {
          report(lam->span, "reduceByKey's combiner must take two values of the same type");
          return poison(e->span);
        }
        auto f = checkBinaryFun(lam, v1, v1, v1);
        if (!f) return poison(e->span);
        ExprPtr init = checkExpr(e->kids[1], v1);
        ExprPtr arr = checkExpr(e->kids[2], nullptr);
        if (arr->type->kind != TypeKind::Array || arr->type->args[0]->kind != TypeKind::Pair ||
            !typeEqual(arr->type->args[0]->args[1], v1)) {
          report(e->kids[2]->span,
                 "reduceByKey requires an array of key-value pairs whose values match the "
                 "combiner, found " + showType(arr->type));
          return poison(e->span);
        }
        return coerce(withType(mkCall(b, {f->expr, init, arr}, e->span), arr->type), expected);
      }
    }
    return poison(e->span);
  }

  // ---- statements -----------------------------------------------------------

  StmtPtr checkStmt(const StmtPtr& s, bool isLastOfFunction) {
    switch (s->kind) {
      case StmtKind::VarDecl: {
        ExprPtr init = checkExpr(s->e0, s->declType);
        if (declaredAnywhere(s->name) || allNames_.count(s->name)) {
          const Binding* b = lookup(s->name);
          report(s->span, b && b->kind == Binding::Kind::Param
                              ? "local '" + s->name + "' shadows a parameter"
                              : "'" + s->name + "' is already declared");
        } else {
          allNames_.insert(s->name);
          TypePtr t = s->declType ? s->declType : init->type;
          if (!firstOrder(t)) report(s->span, "locals must have first-order types");
          scopes_.back()[s->name] = Binding{t, Binding::Kind::Local};
          layout.emplace_back(s->name, t);
        }
        return mkVarDecl(s->name, s->declType, init, s->span);
      }
      case StmtKind::Assign: {
        const Binding* b = lookup(s->name);
        TypePtr expect;
        if (!b) {
          report(s->span, "assignment to undeclared variable '" + s->name + "'");
        } else if (b->kind == Binding::Kind::Param) {
          report(s->span, "parameters are read-only; cannot assign to '" + s->name + "'");
        } else if (b->kind == Binding::Kind::LoopVar) {
          report(s->span, "loop iteration variable '" + s->name + "' cannot be assigned");
        } else if (b->kind == Binding::Kind::LambdaParam) {
          report(s->span, "lambda parameter '" + s->name + "' cannot be assigned");
        } else {
          expect = b->type;
        }
        ExprPtr value = checkExpr(s->e0, expect);
        return mkAssign(s->name, value, s->span);
      }
      case StmtKind::ArrayAssign: {
        const Binding* b = lookup(s->name);
        TypePtr elemT;
        if (!b) {
          report(s->span, "assignment to undeclared variable '" + s->name + "'");
        } else if (b->kind != Binding::Kind::Local) {
          report(s->span, "only locals may be assigned; '" + s->name + "' is not one");
        } else if (b->type->kind != TypeKind::Array) {
          report(s->span, "'" + s->name + "' is not an array");
        } else {
          elemT = b->type->args[0];
        }
        ExprPtr idx = checkExpr(s->e1, tInt());
        ExprPtr value = checkExpr(s->e0, elemT);
        return mkArrayAssign(s->name, idx, value, s->span);
      }
      case StmtKind::For: {
        ExprPtr iterable = checkExpr(s->e0, nullptr);
        TypePtr elemT = tInt();
        if (iterable->type->kind != TypeKind::Array) {
          report(s->e0->span, "for loops iterate over arrays, found " + showType(iterable->type));
        } else {
          elemT = iterable->type->args[0];
        }
        // Sibling loops may reuse a binder name; shadowing a live binding or a
        // declared local is rejected.
        if (declaredAnywhere(s->name) || allNames_.count(s->name))
          report(s->span, "loop variable '" + s->name + "' shadows an existing binding");
        scopes_.emplace_back();
        scopes_.back()[s->name] = Binding{elemT, Binding::Kind::LoopVar};
        std::vector<StmtPtr> body;
        for (const auto& st : s->body) body.push_back(checkStmt(st, false));
        popScope();
        return mkFor(s->name, iterable, std::move(body), s->span);
      }
      case StmtKind::While: {
        ExprPtr guard = checkExpr(s->e0, tBool());
        scopes_.emplace_back();
        std::vector<StmtPtr> body;
        for (const auto& st : s->body) body.push_back(checkStmt(st, false));
        popScope();
        return mkWhile(guard, std::move(body), s->span);
      }
      case StmtKind::Return: {
        if (!isLastOfFunction)
          report(s->span, "return is only allowed as the last statement of the function");
        ExprPtr value = checkExpr(s->e0, program_.returnType);
        return mkReturn(value, s->span);
      }
    }
    return s;
  }
};

}  // namespace

TypePtr TypedProgram::localType(const std::string& name) const {
  for (const auto& [n, t] : localsLayout)
    if (n == name) return t;
  return nullptr;
}

Result<TypedProgram, std::vector<TypeError>> typecheckProgram(const Program& p) {
  Checker checker(p);
  auto typed = checker.run();
  if (!typed) return checker.errors;
  TypedProgram tp;
  tp.program = std::move(*typed);
  tp.localsLayout = std::move(checker.layout);
  return tp;
}

}  // namespace mrv::il
