#include "mrv/value.hpp"

#include <sstream>

namespace mrv {

bool Value::operator==(const Value& o) const {
  if (v_.index() != o.v_.index()) return false;
  if (isInt()) return asInt() == o.asInt();
  if (isRat()) return asRat() == o.asRat();
  if (isBool()) return asBool() == o.asBool();
  if (isUnit()) return true;
  if (isArray()) {
    const auto& a = asArray();
    const auto& b = o.asArray();
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }
  if (isPair()) {
    return asPair().first == o.asPair().first && asPair().second == o.asPair().second;
  }
  if (isTag()) {
    return asTag().isLeft == o.asTag().isLeft && *asTag().payload == *o.asTag().payload;
  }
  // Closures: identity only.
  return asClosure().body.get() == o.asClosure().body.get();
}

std::string Value::render() const {
  std::ostringstream out;
  if (isInt()) {
    out << asInt();
  } else if (isRat()) {
    out << numerator(asRat());
    if (denominator(asRat()) != 1) out << "/" << denominator(asRat());
  } else if (isBool()) {
    out << (asBool() ? "true" : "false");
  } else if (isUnit()) {
    out << "unit";
  } else if (isArray()) {
    out << "[";
    bool first = true;
    for (const auto& v : asArray()) {
      if (!first) out << ", ";
      first = false;
      out << v.render();
    }
    out << "]";
  } else if (isPair()) {
    out << "(" << asPair().first.render() << ", " << asPair().second.render() << ")";
  } else if (isTag()) {
    out << (asTag().isLeft ? "inl " : "inr ") << asTag().payload->render();
  } else {
    out << "<fun " << asClosure().display << ">";
  }
  return out.str();
}

const Value& envAt(const EnvPtr& env, int index) {
  const EnvNode* n = env.get();
  while (index > 0 && n != nullptr) {
    n = n->prev.get();
    --index;
  }
  if (n == nullptr) throw std::out_of_range("environment index out of range");
  return n->val;
}

std::string renderRunError(RunErrorKind kind) {
  switch (kind) {
    case RunErrorKind::IndexOutOfBounds: return "index out of bounds";
    case RunErrorKind::DivisionByZero: return "division by zero";
    case RunErrorKind::GuardNotBool: return "guard did not evaluate to a boolean";
  }
  return "unknown error";
}

bool EvalOutcome::agrees(const EvalOutcome& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Value: return value == o.value;
    case Kind::Diverged: return true;
    case Kind::Error: return error == o.error;
  }
  return false;
}

std::string EvalOutcome::render() const {
  switch (kind) {
    case Kind::Value: return value.render();
    case Kind::Diverged: return "<diverged after " + std::to_string(stepsUsed) + " steps>";
    case Kind::Error: return "<runtime error: " + renderRunError(error) + ">";
  }
  return "<?>";
}

}  // namespace mrv
