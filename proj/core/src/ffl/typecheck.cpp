#include "mrv/ffl/check.hpp"

namespace mrv::ffl {

namespace {

struct CheckFail {
  TypeError error;
};

class Checker {
 public:
  explicit Checker(std::vector<TypePtr> ctx) : ctx_(std::move(ctx)) {}

  TypePtr check(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Var: {
        if (t->var < 0 || static_cast<size_t>(t->var) >= ctx_.size())
          fail(t, "unbound variable #" + std::to_string(t->var));
        return ctx_[ctx_.size() - 1 - t->var];
      }
      case TermKind::Lam: {
        if (!t->ann) fail(t, "lambda without a parameter type");
        ctx_.push_back(t->ann);
        TypePtr body = checkKid(t, 0);
        ctx_.pop_back();
        return tArrow(t->ann, body);
      }
      case TermKind::App: {
        TypePtr f = checkKid(t, 0);
        TypePtr a = checkKid(t, 1);
        if (f->kind != TypeKind::Arrow) fail(t, "application of a non-function");
        if (!typeEqual(f->a, a))
          fail(t, "argument type " + showType(a) + " does not match " + showType(f->a));
        return f->b;
      }
      case TermKind::IntLit: return tInt();
      case TermKind::RatLit: return tRat();
      case TermKind::BoolLit: return tBool();
      case TermKind::UnitLit: return tUnit();
      case TermKind::ArrayLit: {
        if (!t->ann) fail(t, "array literal without an element type");
        for (size_t i = 0; i < t->kids.size(); ++i) {
          TypePtr e = checkKid(t, i);
          if (!typeEqual(e, t->ann))
            fail(t, "array element " + std::to_string(i) + " has type " + showType(e) +
                        ", expected " + showType(t->ann));
        }
        return tArray(t->ann);
      }
      case TermKind::Pair:
        return tProd(checkKid(t, 0), checkKid(t, 1));
      case TermKind::Fst: {
        TypePtr p = checkKid(t, 0);
        if (p->kind != TypeKind::Prod) fail(t, "fst of a non-pair: " + showType(p));
        return p->a;
      }
      case TermKind::Snd: {
        TypePtr p = checkKid(t, 0);
        if (p->kind != TypeKind::Prod) fail(t, "snd of a non-pair: " + showType(p));
        return p->b;
      }
      case TermKind::Inl: {
        if (!t->ann) fail(t, "inl without the right-hand type");
        return tSum(checkKid(t, 0), t->ann);
      }
      case TermKind::Inr: {
        if (!t->ann) fail(t, "inr without the left-hand type");
        return tSum(t->ann, checkKid(t, 0));
      }
      case TermKind::Case: {
        TypePtr s = checkKid(t, 0);
        if (s->kind != TypeKind::Sum) fail(t, "case scrutinee is not a sum: " + showType(s));
        ctx_.push_back(s->a);
        TypePtr l = checkKid(t, 1);
        ctx_.pop_back();
        ctx_.push_back(s->b);
        TypePtr r = checkKid(t, 2);
        ctx_.pop_back();
        if (!typeEqual(l, r)) fail(t, "case branches disagree: " + showType(l) + " vs " + showType(r));
        return l;
      }
      case TermKind::If: {
        TypePtr c = checkKid(t, 0);
        if (c->kind != TypeKind::Bool) fail(t, "if condition must be Bool");
        TypePtr a = checkKid(t, 1);
        TypePtr b = checkKid(t, 2);
        if (!typeEqual(a, b)) fail(t, "if branches disagree: " + showType(a) + " vs " + showType(b));
        return a;
      }
      case TermKind::Index: {
        TypePtr arr = arrayKid(t, 0);
        intKid(t, 1);
        return arr->a;
      }
      case TermKind::Update: {
        TypePtr arr = arrayKid(t, 0);
        intKid(t, 1);
        TypePtr v = checkKid(t, 2);
        if (!typeEqual(v, arr->a))
          fail(t, "update value type " + showType(v) + " does not match element type " +
                      showType(arr->a));
        return arr;
      }
      case TermKind::Length: {
        arrayKid(t, 0);
        return tInt();
      }
      case TermKind::Replicate: {
        intKid(t, 0);
        return tArray(checkKid(t, 1));
      }
      case TermKind::Range: {
        intKid(t, 0);
        intKid(t, 1);
        return tArray(tInt());
      }
      case TermKind::Zip: {
        TypePtr a = arrayKid(t, 0);
        TypePtr b = arrayKid(t, 1);
        return tArray(tProd(a->a, b->a));
      }
      case TermKind::Map: {
        TypePtr f = checkKid(t, 0);
        TypePtr arr = arrayKid(t, 1);
        if (f->kind != TypeKind::Arrow || !typeEqual(f->a, arr->a))
          fail(t, "map function " + showType(f) + " does not fit element type " + showType(arr->a));
        return tArray(f->b);
      }
      case TermKind::Concat: {
        TypePtr arr = arrayKid(t, 0);
        if (arr->a->kind != TypeKind::Array) fail(t, "concat needs an array of arrays");
        return arr->a;
      }
      case TermKind::Group: {
        TypePtr arr = arrayKid(t, 0);
        if (arr->a->kind != TypeKind::Prod)
          fail(t, "group needs an array of key-value pairs, found " + showType(arr));
        if (!firstOrder(arr->a->a)) fail(t, "group keys must be first-order");
        return tArray(tProd(arr->a->a, tArray(arr->a->b)));
      }
      case TermKind::Fold: {
        TypePtr f = checkKid(t, 0);
        TypePtr init = checkKid(t, 1);
        TypePtr arr = arrayKid(t, 2);
        if (f->kind != TypeKind::Arrow || f->b->kind != TypeKind::Arrow)
          fail(t, "fold function must be curried over two arguments");
        if (!typeEqual(f->a, init) || !typeEqual(f->b->a, arr->a) || !typeEqual(f->b->b, init))
          fail(t, "fold function " + showType(f) + " does not fit init " + showType(init) +
                      " and elements " + showType(arr->a));
        return init;
      }
      case TermKind::Iter: {
        TypePtr step = checkKid(t, 0);
        TypePtr init = checkKid(t, 1);
        if (step->kind != TypeKind::Arrow || step->b->kind != TypeKind::Sum ||
            !typeEqual(step->a, init) || !typeEqual(step->b->a, init) ||
            !typeEqual(step->b->b, init))
          fail(t, "iter step must have type S -> S + S matching the initial state " +
                      showType(init) + ", found " + showType(step));
        return init;
      }
      case TermKind::FlatMap: {
        TypePtr f = checkKid(t, 0);
        TypePtr arr = arrayKid(t, 1);
        if (f->kind != TypeKind::Arrow || !typeEqual(f->a, arr->a) ||
            f->b->kind != TypeKind::Array)
          fail(t, "flatMap function " + showType(f) + " does not fit element type " +
                      showType(arr->a));
        return f->b;
      }
      case TermKind::ReduceByKey: {
        TypePtr f = checkKid(t, 0);
        TypePtr init = checkKid(t, 1);
        TypePtr arr = arrayKid(t, 2);
        if (arr->a->kind != TypeKind::Prod)
          fail(t, "reduceByKey needs an array of key-value pairs");
        TypePtr v = arr->a->b;
        if (f->kind != TypeKind::Arrow || f->b->kind != TypeKind::Arrow || !typeEqual(f->a, v) ||
            !typeEqual(f->b->a, v) || !typeEqual(f->b->b, v) || !typeEqual(init, v))
          fail(t, "reduceByKey combiner " + showType(f) + " does not fit value type " + showType(v));
        return arr;
      }
      case TermKind::Bin: {
        TypePtr a = checkKid(t, 0);
        TypePtr b = checkKid(t, 1);
        switch (t->bop) {
          case BinOp::Add:
          case BinOp::Sub:
          case BinOp::Mul:
          case BinOp::Div:
            if (!typeEqual(a, b) || (a->kind != TypeKind::Int && a->kind != TypeKind::Rat))
              fail(t, "arithmetic needs two Ints or two Rats");
            return a;
          case BinOp::Lt:
          case BinOp::Le:
            if (!typeEqual(a, b) || (a->kind != TypeKind::Int && a->kind != TypeKind::Rat))
              fail(t, "comparison needs two Ints or two Rats");
            return tBool();
          case BinOp::Eq:
            if (!typeEqual(a, b) || !firstOrder(a)) fail(t, "equality needs equal first-order types");
            return tBool();
          case BinOp::And:
          case BinOp::Or:
            if (a->kind != TypeKind::Bool || b->kind != TypeKind::Bool)
              fail(t, "boolean connectives need Bool operands");
            return tBool();
        }
        fail(t, "bad binary operator");
      }
      case TermKind::Un: {
        TypePtr a = checkKid(t, 0);
        switch (t->uop) {
          case UnOp::Neg:
            if (a->kind != TypeKind::Int && a->kind != TypeKind::Rat)
              fail(t, "negation needs Int or Rat");
            return a;
          case UnOp::Not:
            if (a->kind != TypeKind::Bool) fail(t, "'!' needs Bool");
            return tBool();
          case UnOp::IntToRat:
            if (a->kind != TypeKind::Int) fail(t, "int-to-rat needs Int");
            return tRat();
        }
        fail(t, "bad unary operator");
      }
      case TermKind::Seq: {
        checkKid(t, 0);
        return checkKid(t, 1);
      }
      case TermKind::Probe:
        return checkKid(t, 0);
    }
    fail(t, "unknown node");
  }

 private:
  std::vector<TypePtr> ctx_;
  std::vector<int> path_;

  TypePtr checkKid(const TermPtr& t, int i) {
    path_.push_back(i);
    TypePtr r = check(t->kids[i]);
    path_.pop_back();
    return r;
  }
  TypePtr arrayKid(const TermPtr& t, int i) {
    TypePtr a = checkKid(t, i);
    if (a->kind != TypeKind::Array)
      fail(t, "child " + std::to_string(i) + " must be an array, found " + showType(a));
    return a;
  }
  void intKid(const TermPtr& t, int i) {
    TypePtr a = checkKid(t, i);
    if (a->kind != TypeKind::Int)
      fail(t, "child " + std::to_string(i) + " must be Int, found " + showType(a));
  }
  [[noreturn]] void fail(const TermPtr&, std::string msg) {
    throw CheckFail{TypeError{path_, std::move(msg)}};
  }
};

}  // namespace

std::string TypeError::render() const {
  std::string where;
  for (int p : path) where += "." + std::to_string(p);
  return (where.empty() ? std::string("<root>") : where) + ": " + message;
}

Result<TypePtr, TypeError> typecheckTerm(const TermPtr& t, const std::vector<TypePtr>& context) {
  // `context` is innermost-first; the checker stores outermost-first.
  std::vector<TypePtr> ctx(context.rbegin(), context.rend());
  try {
    Checker c(std::move(ctx));
    return c.check(t);
  } catch (CheckFail& f) {
    return f.error;
  }
}

}  // namespace mrv::ffl
