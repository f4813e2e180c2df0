#pragma once

#include <string>
#include <vector>

#include "mrv/diag.hpp"
#include "mrv/number.hpp"

namespace mrv::il {

enum class Tok {
  Ident, IntLit, RatLit,
  KwFn, KwVar, KwFor, KwWhile, KwReturn, KwTrue, KwFalse,
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Semicolon, Colon,
  Assign,   // :=
  Equals,   // =
  Arrow,    // ->
  FatArrow, // =>
  Plus, Minus, Star, Slash,
  Lt, Le, AndAnd, OrOr, Bang,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  BigInt intVal;
  BigRat ratVal;
  Span span;
};

struct LexError {
  Span span;
  std::string message;
};

// Tokenizes IL source. `//` line comments are skipped.
Result<std::vector<Token>, LexError> lex(const std::string& source);

const char* tokName(Tok t);

}  // namespace mrv::il
