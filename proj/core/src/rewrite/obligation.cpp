#include <random>
#include <sstream>

#include "mrv/ffl/check.hpp"
#include "mrv/ffl/eval.hpp"
#include "mrv/rewrite/rules.hpp"

namespace mrv::rewrite {

namespace {

struct GenFail {
  std::string what;
};

Value genValue(const ffl::TypePtr& t, std::mt19937_64& rng, const ObligationConfig& cfg,
               int depth = 0) {
  auto intIn = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  switch (t->kind) {
    case ffl::TypeKind::Int:
      return Value(BigInt(intIn(-cfg.maxInt, cfg.maxInt)));
    case ffl::TypeKind::Rat: {
      int den = intIn(1, cfg.maxInt);
      return Value(BigRat(intIn(-cfg.maxInt, cfg.maxInt), den));
    }
    case ffl::TypeKind::Bool:
      return Value(intIn(0, 1) == 1);
    case ffl::TypeKind::Unit:
      return Value(UnitValue{});
    case ffl::TypeKind::Array: {
      int len = intIn(0, depth > 2 ? 2 : cfg.maxArrayLen);
      std::vector<Value> elems;
      elems.reserve(len);
      for (int i = 0; i < len; ++i) elems.push_back(genValue(t->a, rng, cfg, depth + 1));
      return Value::array(std::move(elems));
    }
    case ffl::TypeKind::Prod:
      return Value::pair(genValue(t->a, rng, cfg, depth + 1), genValue(t->b, rng, cfg, depth + 1));
    case ffl::TypeKind::Sum:
      if (intIn(0, 1) == 0) return Value::inl(genValue(t->a, rng, cfg, depth + 1));
      return Value::inr(genValue(t->b, rng, cfg, depth + 1));
    case ffl::TypeKind::Arrow:
      throw GenFail{"cannot generate a value of function type " + ffl::showType(t)};
  }
  throw GenFail{"cannot generate a value of type " + ffl::showType(t)};
}

std::string renderEnv(const std::vector<Value>& vals) {
  std::ostringstream out;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) out << ", ";
    out << "#" << i << " = " << vals[i].render();
  }
  return out.str();
}

}  // namespace

ObligationResult checkObligation(const Obligation& ob, const ObligationConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  for (const auto& t : ob.context) {
    if (!t)
      return ObligationResult{ObligationResult::Kind::GeneratorFailure, 0,
                              "missing type for a context binder"};
  }
  int trials = ob.context.empty() ? 1 : cfg.trials;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Value> vals;
    EnvPtr env;
    try {
      // context is innermost-first; the environment is pushed outermost-first.
      for (size_t i = ob.context.size(); i-- > 0;) {
        Value v = genValue(ob.context[i], rng, cfg);
        env = envPush(env, v);
        vals.insert(vals.begin(), v);
      }
    } catch (GenFail& g) {
      return ObligationResult{ObligationResult::Kind::GeneratorFailure, trial, g.what};
    }
    EvalOutcome out = ffl::evalUnder(ob.term, env, cfg.budget);
    if (out.isValue() && out.value.isBool() && out.value.asBool()) continue;
    std::string detail = "trial " + std::to_string(trial) + ": " +
                         (out.isValue() ? "evaluated to " + out.value.render()
                                        : out.render()) +
                         " with " + renderEnv(vals);
    return ObligationResult{ObligationResult::Kind::Counterexample, trial, detail};
  }
  return ObligationResult{ObligationResult::Kind::TestedPass, trials, ""};
}

ProbeCheck checkObligationsAtProbe(const ffl::TermPtr& appliedWithProbe, int probeId,
                                   const std::vector<Obligation>& obs, long long budget) {
  ProbeCheck result;
  ffl::ProbeHook hook = [&](int id, const EnvPtr& env) {
    if (id != probeId || !result.allHeld) return;
    for (const auto& ob : obs) {
      ++result.checksPerformed;
      EvalOutcome out = ffl::evalUnder(ob.term, env, budget);
      if (out.isValue() && out.value.isBool() && out.value.asBool()) continue;
      result.allHeld = false;
      result.counterexample =
          ob.description + ": " + (out.isValue() ? "evaluated to " + out.value.render() : out.render());
      return;
    }
  };
  // The program's own outcome is the caller's concern; obligations are judged
  // on the states evaluation actually reaches.
  ffl::eval(appliedWithProbe, budget, hook);
  return result;
}

}  // namespace mrv::rewrite
