#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrv/il/typecheck.hpp"
#include "mrv/value.hpp"

namespace mrv::il {

/// Reference interpreter for IL, used as the independent oracle against the
/// FFL translation. Call-by-value, left-to-right; loops consume budget per
/// iteration, bulk array builtins per element produced.
EvalOutcome interpretProgram(const TypedProgram& p, const std::vector<Value>& args,
                             long long budget);

/// Step-wise execution over a statement list; the coupling checker drives two
/// of these in lockstep and inspects their environments between statements.
class Machine {
 public:
  Machine(const TypedProgram& p, const std::vector<Value>& args, long long budget);

  // Runs stmts[from, to). Returns the interrupting outcome (Diverged, Error,
  // or Value when a return statement executed), or nullopt when the range
  // completed normally.
  std::optional<EvalOutcome> run(const std::vector<StmtPtr>& stmts, size_t from, size_t to);
  std::optional<EvalOutcome> run(const std::vector<StmtPtr>& stmts) {
    return run(stmts, 0, stmts.size());
  }

  // Evaluates an expression in the current environment.
  Result<Value, EvalOutcome> eval(const ExprPtr& e);

  bool has(const std::string& name) const { return env_.count(name) > 0; }
  const Value& get(const std::string& name) const { return env_.at(name); }
  void set(const std::string& name, Value v) { env_[name] = std::move(v); }
  const std::map<std::string, Value>& env() const { return env_; }

  long long budget() const { return budget_; }
  bool chargeIteration();  // one loop iteration; false when the budget is exhausted

  std::string renderEnv() const;

 private:
  friend EvalOutcome interpretProgram(const TypedProgram&, const std::vector<Value>&, long long);

  Value evalExpr(const ExprPtr& e);
  Value evalCall(const ExprPtr& e);
  Value applyLambda(const ExprPtr& lam, const std::vector<Value>& args);
  void execStmt(const StmtPtr& s);

  std::map<std::string, Value> env_;
  long long budget_;
  long long budget0_;
  std::optional<Value> returned_;
};

/// Lambda-free builtin application over plain values (length, zip, range,
/// replicate, concat, group). Shared with the coupling predicate evaluator.
Result<Value, EvalOutcome> applyValueBuiltin(Builtin b, const std::vector<Value>& args, Span span,
                                             long long& budget);
Result<Value, EvalOutcome> applyValueBinOp(BinOp op, const Value& a, const Value& b, Span span);
Result<Value, EvalOutcome> applyValueUnOp(UnOp op, const Value& a, Span span);

/// Checks that a value inhabits a (first-order) IL type.
bool valueHasType(const Value& v, const TypePtr& t);

}  // namespace mrv::il
