#include "mrv/il/interp.hpp"

#include <sstream>
#include <stdexcept>

namespace mrv::il {

namespace {

// Internal control-flow interrupts.
struct Interrupt {
  EvalOutcome outcome;
};

[[noreturn]] void throwError(RunErrorKind k, Span s) {
  throw Interrupt{EvalOutcome::runError(k, s)};
}
[[noreturn]] void throwDiverged(long long steps) {
  throw Interrupt{EvalOutcome::diverged(steps)};
}

void charge(long long& budget, long long amount, long long budget0) {
  budget -= amount;
  if (budget < 0) throwDiverged(budget0);
}

size_t checkedIndex(const BigInt& idx, size_t size, Span span) {
  if (idx < 0 || idx >= BigInt(size)) throwError(RunErrorKind::IndexOutOfBounds, span);
  return static_cast<size_t>(idx.convert_to<unsigned long long>());
}

Value builtinOverValues(Builtin b, const std::vector<Value>& args, Span /*span*/, long long& budget,
                        long long budget0) {
  switch (b) {
    case Builtin::Length:
      return Value(BigInt(args[0].asArray().size()));
    case Builtin::Replicate: {
      const BigInt& n = args[0].asInt();
      std::vector<Value> out;
      if (n > 0) {
        if (n > budget) throwDiverged(budget0);
        charge(budget, n.convert_to<long long>(), budget0);
        out.assign(static_cast<size_t>(n.convert_to<unsigned long long>()), args[1]);
      }
      return Value::array(std::move(out));
    }
    case Builtin::Range: {
      BigInt a = args[0].asInt();
      const BigInt& bEnd = args[1].asInt();
      std::vector<Value> out;
      if (bEnd > a) {
        if (bEnd - a > budget) throwDiverged(budget0);
        charge(budget, (bEnd - a).convert_to<long long>(), budget0);
        for (BigInt i = a; i < bEnd; ++i) out.push_back(Value(i));
      }
      return Value::array(std::move(out));
    }
    case Builtin::Zip: {
      const auto& xs = args[0].asArray();
      const auto& ys = args[1].asArray();
      size_t n = std::min(xs.size(), ys.size());
      charge(budget, static_cast<long long>(n), budget0);
      std::vector<Value> out;
      out.reserve(n);
      for (size_t i = 0; i < n; ++i) out.push_back(Value::pair(xs[i], ys[i]));
      return Value::array(std::move(out));
    }
    case Builtin::Concat: {
      const auto& xss = args[0].asArray();
      std::vector<Value> out;
      for (const auto& xs : xss) {
        charge(budget, static_cast<long long>(xs.asArray().size()), budget0);
        for (const auto& x : xs.asArray()) out.push_back(x);
      }
      return Value::array(std::move(out));
    }
    case Builtin::Group: {
      // Keys in order of first occurrence; values per key in input order.
      const auto& kvs = args[0].asArray();
      std::vector<std::pair<Value, std::vector<Value>>> groups;
      for (const auto& kv : kvs) {
        charge(budget, 1, budget0);
        const auto& p = kv.asPair();
        bool found = false;
        for (auto& g : groups) {
          if (g.first == p.first) {
            g.second.push_back(p.second);
            found = true;
            break;
          }
        }
        if (!found) groups.push_back({p.first, {p.second}});
      }
      std::vector<Value> out;
      out.reserve(groups.size());
      for (auto& g : groups)
        out.push_back(Value::pair(g.first, Value::array(std::move(g.second))));
      return Value::array(std::move(out));
    }
    default:
      throw std::logic_error("builtinOverValues: not a lambda-free builtin");
  }
}

Value binOverValues(BinOp op, const Value& a, const Value& b, Span span) {
  switch (op) {
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::Mul: {
      if (a.isInt() && b.isInt()) {
        const BigInt& x = a.asInt();
        const BigInt& y = b.asInt();
        if (op == BinOp::Add) return Value(BigInt(x + y));
        if (op == BinOp::Sub) return Value(BigInt(x - y));
        return Value(BigInt(x * y));
      }
      const BigRat& x = a.asRat();
      const BigRat& y = b.asRat();
      if (op == BinOp::Add) return Value(BigRat(x + y));
      if (op == BinOp::Sub) return Value(BigRat(x - y));
      return Value(BigRat(x * y));
    }
    case BinOp::Div: {
      if (a.isInt() && b.isInt()) {
        if (b.asInt() == 0) throwError(RunErrorKind::DivisionByZero, span);
        return Value(BigInt(a.asInt() / b.asInt()));
      }
      if (b.asRat() == 0) throwError(RunErrorKind::DivisionByZero, span);
      return Value(BigRat(a.asRat() / b.asRat()));
    }
    case BinOp::Lt:
    case BinOp::Le: {
      bool r;
      if (a.isInt() && b.isInt())
        r = op == BinOp::Lt ? a.asInt() < b.asInt() : a.asInt() <= b.asInt();
      else
        r = op == BinOp::Lt ? a.asRat() < b.asRat() : a.asRat() <= b.asRat();
      return Value(r);
    }
    case BinOp::Eq:
      return Value(a == b);
    case BinOp::And:
      return Value(a.asBool() && b.asBool());
    case BinOp::Or:
      return Value(a.asBool() || b.asBool());
  }
  throw std::logic_error("binOverValues: bad op");
}

Value unOverValues(UnOp op, const Value& a, Span /*span*/) {
  switch (op) {
    case UnOp::Neg:
      if (a.isInt()) return Value(BigInt(-a.asInt()));
      return Value(BigRat(-a.asRat()));
    case UnOp::Not:
      return Value(!a.asBool());
    case UnOp::Fst:
      return a.asPair().first;
    case UnOp::Snd:
      return a.asPair().second;
  }
  throw std::logic_error("unOverValues: bad op");
}

}  // namespace

Machine::Machine(const TypedProgram& p, const std::vector<Value>& args, long long budget)
    : budget_(budget), budget0_(budget) {
  if (args.size() != p.params().size())
    throw std::invalid_argument("argument count does not match the program's parameters");
  for (size_t i = 0; i < args.size(); ++i) env_[p.params()[i].name] = args[i];
}

bool Machine::chargeIteration() {
  --budget_;
  return budget_ >= 0;
}

Value Machine::applyLambda(const ExprPtr& lam, const std::vector<Value>& args) {
  // Lambdas are applied at their builtin call site; parameters temporarily
  // shadow whatever is in the flat environment.
  std::vector<std::pair<std::string, std::optional<Value>>> saved;
  saved.reserve(args.size());
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& n = lam->params[i].name;
    auto it = env_.find(n);
    saved.push_back({n, it == env_.end() ? std::nullopt : std::make_optional(it->second)});
    env_[n] = args[i];
  }
  Value result = evalExpr(lam->kids[0]);
  for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
    if (it->second)
      env_[it->first] = std::move(*it->second);
    else
      env_.erase(it->first);
  }
  return result;
}

Value Machine::evalCall(const ExprPtr& e) {
  Builtin b = e->builtin;
  switch (b) {
    case Builtin::Length:
    case Builtin::Replicate:
    case Builtin::Range:
    case Builtin::Zip:
    case Builtin::Concat:
    case Builtin::Group: {
      std::vector<Value> args;
      args.reserve(e->kids.size());
      for (const auto& k : e->kids) args.push_back(evalExpr(k));
      return builtinOverValues(b, args, e->span, budget_, budget0_);
    }
    case Builtin::Map:
    case Builtin::FlatMap: {
      const ExprPtr& f = e->kids[0];
      Value arr = evalExpr(e->kids[1]);
      std::vector<Value> out;
      for (const auto& x : arr.asArray()) {
        charge(budget_, 1, budget0_);
        std::vector<Value> callArgs;
        if (f->params.size() == 2) {
          callArgs = {x.asPair().first, x.asPair().second};
        } else {
          callArgs = {x};
        }
        Value y = applyLambda(f, callArgs);
        if (b == Builtin::Map) {
          out.push_back(std::move(y));
        } else {
          for (const auto& v : y.asArray()) out.push_back(v);
        }
      }
      return Value::array(std::move(out));
    }
    case Builtin::Fold: {
      const ExprPtr& f = e->kids[0];
      Value acc = evalExpr(e->kids[1]);
      Value arr = evalExpr(e->kids[2]);
      for (const auto& x : arr.asArray()) {
        charge(budget_, 1, budget0_);
        acc = applyLambda(f, {acc, x});
      }
      return acc;
    }
    case Builtin::ReduceByKey: {
      const ExprPtr& f = e->kids[0];
      Value init = evalExpr(e->kids[1]);
      Value arr = evalExpr(e->kids[2]);
      Value grouped = builtinOverValues(Builtin::Group, {arr}, e->span, budget_, budget0_);
      std::vector<Value> out;
      for (const auto& kv : grouped.asArray()) {
        const auto& p = kv.asPair();
        Value acc = init;
        for (const auto& v : p.second.asArray()) {
          charge(budget_, 1, budget0_);
          acc = applyLambda(f, {acc, v});
        }
        out.push_back(Value::pair(p.first, std::move(acc)));
      }
      return Value::array(std::move(out));
    }
  }
  throw std::logic_error("evalCall: bad builtin");
}

Value Machine::evalExpr(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var: {
      auto it = env_.find(e->name);
      if (it == env_.end()) throw std::logic_error("unbound variable '" + e->name + "'");
      return it->second;
    }
    case ExprKind::IntLit:
      return Value(e->intVal);
    case ExprKind::RatLit:
      return Value(e->ratVal);
    case ExprKind::BoolLit:
      return Value(e->boolVal);
    case ExprKind::Binary: {
      Value a = evalExpr(e->kids[0]);
      Value b = evalExpr(e->kids[1]);
      return binOverValues(e->bop, a, b, e->span);
    }
    case ExprKind::Unary:
      return unOverValues(e->uop, evalExpr(e->kids[0]), e->span);
    case ExprKind::Index: {
      Value arr = evalExpr(e->kids[0]);
      Value idx = evalExpr(e->kids[1]);
      size_t i = checkedIndex(idx.asInt(), arr.asArray().size(), e->span);
      return arr.asArray()[i];
    }
    case ExprKind::PairCtor:
      return Value::pair(evalExpr(e->kids[0]), evalExpr(e->kids[1]));
    case ExprKind::Lambda:
      throw std::logic_error("lambda evaluated outside a builtin call");
    case ExprKind::Call:
      return evalCall(e);
    case ExprKind::IntToRat:
      return Value(BigRat(evalExpr(e->kids[0]).asInt()));
  }
  throw std::logic_error("evalExpr: bad node");
}

void Machine::execStmt(const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::VarDecl:
    case StmtKind::Assign:
      env_[s->name] = evalExpr(s->e0);
      return;
    case StmtKind::ArrayAssign: {
      Value idx = evalExpr(s->e1);
      Value val = evalExpr(s->e0);
      const Value& cur = env_.at(s->name);
      size_t i = checkedIndex(idx.asInt(), cur.asArray().size(), s->span);
      std::vector<Value> copy = cur.asArray();
      copy[i] = std::move(val);
      env_[s->name] = Value::array(std::move(copy));
      return;
    }
    case StmtKind::For: {
      Value arr = evalExpr(s->e0);
      for (const auto& x : arr.asArray()) {
        charge(budget_, 1, budget0_);
        env_[s->name] = x;
        for (const auto& st : s->body) execStmt(st);
      }
      return;
    }
    case StmtKind::While: {
      while (true) {
        Value guard = evalExpr(s->e0);
        if (!guard.isBool()) throwError(RunErrorKind::GuardNotBool, s->e0->span);
        if (!guard.asBool()) break;
        charge(budget_, 1, budget0_);
        for (const auto& st : s->body) execStmt(st);
      }
      return;
    }
    case StmtKind::Return:
      returned_ = evalExpr(s->e0);
      return;
  }
}

std::optional<EvalOutcome> Machine::run(const std::vector<StmtPtr>& stmts, size_t from, size_t to) {
  to = std::min(to, stmts.size());
  try {
    for (size_t i = from; i < to; ++i) {
      execStmt(stmts[i]);
      if (returned_) return EvalOutcome::ofValue(*returned_);
    }
  } catch (Interrupt& intr) {
    return intr.outcome;
  }
  return std::nullopt;
}

Result<Value, EvalOutcome> Machine::eval(const ExprPtr& e) {
  try {
    return evalExpr(e);
  } catch (Interrupt& intr) {
    return intr.outcome;
  }
}

std::string Machine::renderEnv() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : env_) {
    if (!first) out << ", ";
    first = false;
    out << name << " = " << value.render();
  }
  return out.str();
}

EvalOutcome interpretProgram(const TypedProgram& p, const std::vector<Value>& args,
                             long long budget) {
  for (size_t i = 0; i < args.size() && i < p.params().size(); ++i) {
    if (!valueHasType(args[i], p.params()[i].type))
      throw std::invalid_argument("argument " + std::to_string(i) +
                                  " does not match the declared parameter type");
  }
  Machine m(p, args, budget);
  auto out = m.run(p.program.body);
  if (out) return *out;
  // A checked program always ends in return, so this is unreachable.
  throw std::logic_error("program body completed without returning");
}

Result<Value, EvalOutcome> applyValueBuiltin(Builtin b, const std::vector<Value>& args, Span span,
                                             long long& budget) {
  try {
    return builtinOverValues(b, args, span, budget, budget);
  } catch (Interrupt& intr) {
    return intr.outcome;
  }
}

Result<Value, EvalOutcome> applyValueBinOp(BinOp op, const Value& a, const Value& b, Span span) {
  try {
    return binOverValues(op, a, b, span);
  } catch (Interrupt& intr) {
    return intr.outcome;
  }
}

Result<Value, EvalOutcome> applyValueUnOp(UnOp op, const Value& a, Span span) {
  try {
    return unOverValues(op, a, span);
  } catch (Interrupt& intr) {
    return intr.outcome;
  }
}

bool valueHasType(const Value& v, const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Int: return v.isInt();
    case TypeKind::Rat: return v.isRat();
    case TypeKind::Bool: return v.isBool();
    case TypeKind::Array: {
      if (!v.isArray()) return false;
      for (const auto& x : v.asArray())
        if (!valueHasType(x, t->args[0])) return false;
      return true;
    }
    case TypeKind::Pair:
      return v.isPair() && valueHasType(v.asPair().first, t->args[0]) &&
             valueHasType(v.asPair().second, t->args[1]);
    case TypeKind::Sum:
      if (!v.isTag()) return false;
      return valueHasType(*v.asTag().payload, v.asTag().isLeft ? t->args[0] : t->args[1]);
    case TypeKind::Fun:
      return false;
  }
  return false;
}

}  // namespace mrv::il
