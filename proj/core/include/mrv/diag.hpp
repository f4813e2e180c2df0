#pragma once

#include <string>
#include <variant>
#include <vector>

namespace mrv {

struct Span {
  int line = 0;  // 1-based; 0 = unknown
  int col = 0;
};

inline bool known(const Span& s) { return s.line > 0; }

// Renders "file:line:col: message" (drops the position when unknown).
std::string renderDiag(const std::string& file, const Span& span, const std::string& message);

// Minimal expected-style result: holds either a T or an E.
template <class T, class E>
class Result {
 public:
  Result(T v) : v_(std::move(v)) {}
  Result(E e) : v_(std::move(e)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  T& value() { return std::get<T>(v_); }
  const T& value() const { return std::get<T>(v_); }
  E& error() { return std::get<E>(v_); }
  const E& error() const { return std::get<E>(v_); }

 private:
  std::variant<T, E> v_;
};

}  // namespace mrv
