#include "mrv/ffl/eval.hpp"

#include <stdexcept>

namespace mrv::ffl {

namespace {

struct Interrupt {
  EvalOutcome outcome;
};

class Evaluator {
 public:
  Evaluator(long long budget, const ProbeHook& hook) : budget_(budget), budget0_(budget), hook_(hook) {}

  long long used() const { return budget0_ - budget_; }

  Value eval(const TermPtr& t, const EnvPtr& env) {
    switch (t->kind) {
      case TermKind::Var:
        return envAt(env, t->var);
      case TermKind::Lam:
        return Value(ClosureValue{env, t->kids[0], t->name});
      case TermKind::App: {
        Value f = eval(t->kids[0], env);
        Value a = eval(t->kids[1], env);
        return apply(f, a);
      }
      case TermKind::IntLit: return Value(t->intVal);
      case TermKind::RatLit: return Value(t->ratVal);
      case TermKind::BoolLit: return Value(t->boolVal);
      case TermKind::UnitLit: return Value(UnitValue{});
      case TermKind::ArrayLit: {
        std::vector<Value> out;
        out.reserve(t->kids.size());
        for (const auto& k : t->kids) out.push_back(eval(k, env));
        return Value::array(std::move(out));
      }
      case TermKind::Pair: {
        Value a = eval(t->kids[0], env);
        Value b = eval(t->kids[1], env);
        return Value::pair(std::move(a), std::move(b));
      }
      case TermKind::Fst:
        return eval(t->kids[0], env).asPair().first;
      case TermKind::Snd:
        return eval(t->kids[0], env).asPair().second;
      case TermKind::Inl:
        return Value::inl(eval(t->kids[0], env));
      case TermKind::Inr:
        return Value::inr(eval(t->kids[0], env));
      case TermKind::Case: {
        Value s = eval(t->kids[0], env);
        charge(1);
        const TagValue& tag = s.asTag();
        const TermPtr& body = tag.isLeft ? t->kids[1] : t->kids[2];
        return eval(body, envPush(env, *tag.payload));
      }
      case TermKind::If: {
        Value c = eval(t->kids[0], env);
        if (!c.isBool()) throw Interrupt{EvalOutcome::runError(RunErrorKind::GuardNotBool, t->span)};
        charge(1);
        return eval(c.asBool() ? t->kids[1] : t->kids[2], env);
      }
      case TermKind::Index: {
        Value arr = eval(t->kids[0], env);
        Value idx = eval(t->kids[1], env);
        charge(1);
        return arr.asArray()[checkedIndex(idx.asInt(), arr.asArray().size(), t->span)];
      }
      case TermKind::Update: {
        Value arr = eval(t->kids[0], env);
        Value idx = eval(t->kids[1], env);
        Value v = eval(t->kids[2], env);
        size_t i = checkedIndex(idx.asInt(), arr.asArray().size(), t->span);
        charge(1);
        std::vector<Value> copy = arr.asArray();
        copy[i] = std::move(v);
        return Value::array(std::move(copy));
      }
      case TermKind::Length:
        charge(1);
        return Value(BigInt(eval(t->kids[0], env).asArray().size()));
      case TermKind::Replicate: {
        Value n = eval(t->kids[0], env);
        Value v = eval(t->kids[1], env);
        std::vector<Value> out;
        if (n.asInt() > 0) {
          if (n.asInt() > budget_) throw Interrupt{EvalOutcome::diverged(used())};
          charge(n.asInt().convert_to<long long>());
          out.assign(static_cast<size_t>(n.asInt().convert_to<unsigned long long>()), v);
        }
        return Value::array(std::move(out));
      }
      case TermKind::Range: {
        Value a = eval(t->kids[0], env);
        Value b = eval(t->kids[1], env);
        std::vector<Value> out;
        if (b.asInt() > a.asInt()) {
          BigInt n = b.asInt() - a.asInt();
          if (n > budget_) throw Interrupt{EvalOutcome::diverged(used())};
          charge(n.convert_to<long long>());
          for (BigInt i = a.asInt(); i < b.asInt(); ++i) out.push_back(Value(i));
        }
        return Value::array(std::move(out));
      }
      case TermKind::Zip: {
        Value a = eval(t->kids[0], env);
        Value b = eval(t->kids[1], env);
        size_t n = std::min(a.asArray().size(), b.asArray().size());
        charge(static_cast<long long>(n));
        std::vector<Value> out;
        out.reserve(n);
        for (size_t i = 0; i < n; ++i) out.push_back(Value::pair(a.asArray()[i], b.asArray()[i]));
        return Value::array(std::move(out));
      }
      case TermKind::Map: {
        Value f = eval(t->kids[0], env);
        Value arr = eval(t->kids[1], env);
        std::vector<Value> out;
        out.reserve(arr.asArray().size());
        for (const auto& x : arr.asArray()) out.push_back(apply(f, x));
        return Value::array(std::move(out));
      }
      case TermKind::Concat: {
        Value arr = eval(t->kids[0], env);
        std::vector<Value> out;
        for (const auto& xs : arr.asArray()) {
          charge(static_cast<long long>(xs.asArray().size()));
          for (const auto& x : xs.asArray()) out.push_back(x);
        }
        return Value::array(std::move(out));
      }
      case TermKind::Group:
        return group(eval(t->kids[0], env));
      case TermKind::Fold: {
        Value f = eval(t->kids[0], env);
        Value acc = eval(t->kids[1], env);
        Value arr = eval(t->kids[2], env);
        // Left-to-right over the array.
        for (const auto& x : arr.asArray()) acc = apply(apply(f, acc), x);
        return acc;
      }
      case TermKind::Iter: {
        Value step = eval(t->kids[0], env);
        Value state = eval(t->kids[1], env);
        // Repeatedly apply while the step yields inr; inl carries the result.
        while (true) {
          Value r = apply(step, state);
          const TagValue& tag = r.asTag();
          if (tag.isLeft) return *tag.payload;
          state = *tag.payload;
        }
      }
      case TermKind::FlatMap: {
        Value f = eval(t->kids[0], env);
        Value arr = eval(t->kids[1], env);
        std::vector<Value> out;
        for (const auto& x : arr.asArray()) {
          Value ys = apply(f, x);
          charge(static_cast<long long>(ys.asArray().size()));
          for (const auto& y : ys.asArray()) out.push_back(y);
        }
        return Value::array(std::move(out));
      }
      case TermKind::ReduceByKey: {
        Value f = eval(t->kids[0], env);
        Value init = eval(t->kids[1], env);
        Value arr = eval(t->kids[2], env);
        Value grouped = group(arr);
        std::vector<Value> out;
        for (const auto& kv : grouped.asArray()) {
          Value acc = init;
          for (const auto& v : kv.asPair().second.asArray()) acc = apply(apply(f, acc), v);
          out.push_back(Value::pair(kv.asPair().first, std::move(acc)));
        }
        return Value::array(std::move(out));
      }
      case TermKind::Bin:
        return binOp(t, env);
      case TermKind::Un: {
        Value a = eval(t->kids[0], env);
        charge(1);
        switch (t->uop) {
          case UnOp::Neg:
            return a.isInt() ? Value(BigInt(-a.asInt())) : Value(BigRat(-a.asRat()));
          case UnOp::Not:
            return Value(!a.asBool());
          case UnOp::IntToRat:
            return Value(BigRat(a.asInt()));
        }
        throw std::logic_error("eval: bad unary op");
      }
      case TermKind::Seq: {
        eval(t->kids[0], env);
        return eval(t->kids[1], env);
      }
      case TermKind::Probe: {
        if (hook_) hook_(t->probeId, env);
        return eval(t->kids[0], env);
      }
    }
    throw std::logic_error("eval: bad node");
  }

  Value apply(const Value& f, const Value& a) {
    if (!f.isClosure()) throw std::logic_error("application of a non-closure value");
    charge(1);  // one beta step
    const ClosureValue& c = f.asClosure();
    return eval(c.body, envPush(c.env, a));
  }

 private:
  long long budget_;
  long long budget0_;
  ProbeHook hook_;

  void charge(long long n) {
    budget_ -= n;
    if (budget_ < 0) throw Interrupt{EvalOutcome::diverged(used())};
  }

  size_t checkedIndex(const BigInt& idx, size_t size, Span span) {
    if (idx < 0 || idx >= BigInt(size))
      throw Interrupt{EvalOutcome::runError(RunErrorKind::IndexOutOfBounds, span)};
    return static_cast<size_t>(idx.convert_to<unsigned long long>());
  }

  Value group(const Value& kvs) {
    std::vector<std::pair<Value, std::vector<Value>>> groups;
    for (const auto& kv : kvs.asArray()) {
      charge(1);
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
    for (auto& g : groups) out.push_back(Value::pair(g.first, Value::array(std::move(g.second))));
    return Value::array(std::move(out));
  }

  Value binOp(const TermPtr& t, const EnvPtr& env) {
    Value a = eval(t->kids[0], env);
    Value b = eval(t->kids[1], env);
    charge(1);
    switch (t->bop) {
      case BinOp::Add:
      case BinOp::Sub:
      case BinOp::Mul: {
        if (a.isInt()) {
          const BigInt& x = a.asInt();
          const BigInt& y = b.asInt();
          if (t->bop == BinOp::Add) return Value(BigInt(x + y));
          if (t->bop == BinOp::Sub) return Value(BigInt(x - y));
          return Value(BigInt(x * y));
        }
        const BigRat& x = a.asRat();
        const BigRat& y = b.asRat();
        if (t->bop == BinOp::Add) return Value(BigRat(x + y));
        if (t->bop == BinOp::Sub) return Value(BigRat(x - y));
        return Value(BigRat(x * y));
      }
      case BinOp::Div:
        if (a.isInt()) {
          if (b.asInt() == 0)
            throw Interrupt{EvalOutcome::runError(RunErrorKind::DivisionByZero, t->span)};
          return Value(BigInt(a.asInt() / b.asInt()));
        }
        if (b.asRat() == 0)
          throw Interrupt{EvalOutcome::runError(RunErrorKind::DivisionByZero, t->span)};
        return Value(BigRat(a.asRat() / b.asRat()));
      case BinOp::Lt:
        return Value(a.isInt() ? a.asInt() < b.asInt() : a.asRat() < b.asRat());
      case BinOp::Le:
        return Value(a.isInt() ? a.asInt() <= b.asInt() : a.asRat() <= b.asRat());
      case BinOp::Eq:
        return Value(a == b);
      case BinOp::And:
        return Value(a.asBool() && b.asBool());
      case BinOp::Or:
        return Value(a.asBool() || b.asBool());
    }
    throw std::logic_error("eval: bad binary op");
  }
};

}  // namespace

EvalOutcome evalUnder(const TermPtr& t, const EnvPtr& env, long long budget,
                      const ProbeHook& hook) {
  Evaluator ev(budget, hook);
  try {
    return EvalOutcome::ofValue(ev.eval(t, env));
  } catch (Interrupt& i) {
    return i.outcome;
  }
}

EvalOutcome eval(const TermPtr& t, long long budget, const ProbeHook& hook) {
  return evalUnder(t, nullptr, budget, hook);
}

EvalOutcome applyFunctionValue(const Value& f, const Value& arg, long long budget) {
  Evaluator ev(budget, nullptr);
  try {
    return EvalOutcome::ofValue(ev.apply(f, arg));
  } catch (Interrupt& i) {
    return i.outcome;
  }
}

}  // namespace mrv::ffl
