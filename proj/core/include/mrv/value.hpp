#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mrv/diag.hpp"
#include "mrv/number.hpp"

namespace mrv {

namespace ffl {
struct Term;
}
struct EnvNode;

class Value;
using ValueArray = std::shared_ptr<const std::vector<Value>>;
using ValuePair = std::shared_ptr<const std::pair<Value, Value>>;

struct UnitValue {
  bool operator==(const UnitValue&) const { return true; }
};

// inl/inr payloads of a sum value.
struct TagValue {
  bool isLeft;
  std::shared_ptr<const Value> payload;
};

// A functional value: captured environment + body term. Never equal to anything
// (programs checked here return first-order data only).
struct ClosureValue {
  std::shared_ptr<const EnvNode> env;
  std::shared_ptr<const ffl::Term> body;
  std::string display;
};

/// Evaluation result for both the IL interpreter and the FFL evaluator.
class Value {
 public:
  Value() : v_(UnitValue{}) {}
  explicit Value(BigInt i) : v_(std::move(i)) {}
  explicit Value(BigRat r) : v_(std::move(r)) {}
  explicit Value(bool b) : v_(b) {}
  explicit Value(UnitValue u) : v_(u) {}
  explicit Value(ValueArray a) : v_(std::move(a)) {}
  explicit Value(ValuePair p) : v_(std::move(p)) {}
  explicit Value(TagValue t) : v_(std::move(t)) {}
  explicit Value(ClosureValue c) : v_(std::move(c)) {}

  static Value fromInt(long long i) { return Value(BigInt(i)); }
  static Value array(std::vector<Value> elems) {
    return Value(std::make_shared<const std::vector<Value>>(std::move(elems)));
  }
  static Value pair(Value a, Value b) {
    return Value(std::make_shared<const std::pair<Value, Value>>(std::move(a), std::move(b)));
  }
  static Value inl(Value payload) {
    return Value(TagValue{true, std::make_shared<const Value>(std::move(payload))});
  }
  static Value inr(Value payload) {
    return Value(TagValue{false, std::make_shared<const Value>(std::move(payload))});
  }

  bool isInt() const { return std::holds_alternative<BigInt>(v_); }
  bool isRat() const { return std::holds_alternative<BigRat>(v_); }
  bool isBool() const { return std::holds_alternative<bool>(v_); }
  bool isUnit() const { return std::holds_alternative<UnitValue>(v_); }
  bool isArray() const { return std::holds_alternative<ValueArray>(v_); }
  bool isPair() const { return std::holds_alternative<ValuePair>(v_); }
  bool isTag() const { return std::holds_alternative<TagValue>(v_); }
  bool isClosure() const { return std::holds_alternative<ClosureValue>(v_); }

  const BigInt& asInt() const { return std::get<BigInt>(v_); }
  const BigRat& asRat() const { return std::get<BigRat>(v_); }
  bool asBool() const { return std::get<bool>(v_); }
  const std::vector<Value>& asArray() const { return *std::get<ValueArray>(v_); }
  const ValueArray& arrayPtr() const { return std::get<ValueArray>(v_); }
  const std::pair<Value, Value>& asPair() const { return *std::get<ValuePair>(v_); }
  const TagValue& asTag() const { return std::get<TagValue>(v_); }
  const ClosureValue& asClosure() const { return std::get<ClosureValue>(v_); }

  // Exact structural equality; closures compare by identity of the body term.
  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }

  std::string render() const;

 private:
  std::variant<BigInt, BigRat, bool, UnitValue, ValueArray, ValuePair, TagValue, ClosureValue> v_;
};

// De Bruijn environment: index 0 is the innermost binding.
struct EnvNode {
  Value val;
  std::shared_ptr<const EnvNode> prev;
};
using EnvPtr = std::shared_ptr<const EnvNode>;

inline EnvPtr envPush(EnvPtr prev, Value v) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(v), std::move(prev)});
}
const Value& envAt(const EnvPtr& env, int index);

enum class RunErrorKind { IndexOutOfBounds, DivisionByZero, GuardNotBool };
std::string renderRunError(RunErrorKind kind);

/// Outcome of running a program or term under a step budget.
struct EvalOutcome {
  enum class Kind { Value, Diverged, Error };

  Kind kind = Kind::Diverged;
  Value value;                // Kind::Value
  long long stepsUsed = 0;    // Kind::Diverged
  RunErrorKind error = RunErrorKind::IndexOutOfBounds;
  Span span;                  // best-effort source position for errors

  static EvalOutcome ofValue(Value v) {
    EvalOutcome o;
    o.kind = Kind::Value;
    o.value = std::move(v);
    return o;
  }
  static EvalOutcome diverged(long long steps) {
    EvalOutcome o;
    o.kind = Kind::Diverged;
    o.stepsUsed = steps;
    return o;
  }
  static EvalOutcome runError(RunErrorKind k, Span s) {
    EvalOutcome o;
    o.kind = Kind::Error;
    o.error = k;
    o.span = s;
    return o;
  }

  bool isValue() const { return kind == Kind::Value; }
  bool isDiverged() const { return kind == Kind::Diverged; }
  bool isError() const { return kind == Kind::Error; }

  // Agreement: equal values, matching error kinds (spans ignored), or both
  // diverged regardless of step counts.
  bool agrees(const EvalOutcome& o) const;

  std::string render() const;
};

struct Budget {
  long long remaining = 1000000;
};

}  // namespace mrv
