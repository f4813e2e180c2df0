#include "mrv/il/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace mrv::il {

namespace {

const std::unordered_map<std::string, Tok> kKeywords = {
    {"fn", Tok::KwFn},       {"var", Tok::KwVar},   {"for", Tok::KwFor},
    {"while", Tok::KwWhile}, {"return", Tok::KwReturn},
    {"true", Tok::KwTrue},   {"false", Tok::KwFalse},
};

// Exact value of "<digits>.<digits>" as a rational.
BigRat decimalToRat(const std::string& whole, const std::string& frac) {
  BigInt num(whole.empty() ? "0" : whole);
  BigInt den = 1;
  for (char c : frac) {
    num *= 10;
    num += c - '0';
    den *= 10;
  }
  return BigRat(num, den);
}

}  // namespace

Result<std::vector<Token>, LexError> lex(const std::string& source) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  const size_t n = source.size();

  auto peek = [&](size_t k = 0) -> char { return i + k < n ? source[i + k] : '\0'; };
  auto advance = [&]() {
    if (source[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto push = [&](Tok t, std::string text, Span s) {
    Token tok;
    tok.kind = t;
    tok.text = std::move(text);
    tok.span = s;
    out.push_back(std::move(tok));
  };

  while (i < n) {
    char c = peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < n && peek() != '\n') advance();
      continue;
    }
    Span s{line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string whole;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        whole += peek();
        advance();
      }
      if (peek() == '.') {
        advance();
        std::string frac;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          frac += peek();
          advance();
        }
        Token tok;
        tok.kind = Tok::RatLit;
        tok.text = whole + "." + frac;
        tok.ratVal = decimalToRat(whole, frac);
        tok.span = s;
        out.push_back(std::move(tok));
      } else {
        Token tok;
        tok.kind = Tok::IntLit;
        tok.text = whole;
        tok.intVal = BigInt(whole);
        tok.span = s;
        out.push_back(std::move(tok));
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        id += peek();
        advance();
      }
      auto kw = kKeywords.find(id);
      push(kw != kKeywords.end() ? kw->second : Tok::Ident, id, s);
      continue;
    }
    switch (c) {
      case '(': advance(); push(Tok::LParen, "(", s); continue;
      case ')': advance(); push(Tok::RParen, ")", s); continue;
      case '{': advance(); push(Tok::LBrace, "{", s); continue;
      case '}': advance(); push(Tok::RBrace, "}", s); continue;
      case '[': advance(); push(Tok::LBracket, "[", s); continue;
      case ']': advance(); push(Tok::RBracket, "]", s); continue;
      case ',': advance(); push(Tok::Comma, ",", s); continue;
      case ';': advance(); push(Tok::Semicolon, ";", s); continue;
      case '+': advance(); push(Tok::Plus, "+", s); continue;
      case '*': advance(); push(Tok::Star, "*", s); continue;
      case '/': advance(); push(Tok::Slash, "/", s); continue;
      case '!': advance(); push(Tok::Bang, "!", s); continue;
      case ':':
        advance();
        if (peek() == '=') {
          advance();
          push(Tok::Assign, ":=", s);
        } else {
          push(Tok::Colon, ":", s);
        }
        continue;
      case '=':
        advance();
        if (peek() == '>') {
          advance();
          push(Tok::FatArrow, "=>", s);
        } else {
          push(Tok::Equals, "=", s);
        }
        continue;
      case '-':
        advance();
        if (peek() == '>') {
          advance();
          push(Tok::Arrow, "->", s);
        } else {
          push(Tok::Minus, "-", s);
        }
        continue;
      case '<':
        advance();
        if (peek() == '=') {
          advance();
          push(Tok::Le, "<=", s);
        } else {
          push(Tok::Lt, "<", s);
        }
        continue;
      case '&':
        if (peek(1) == '&') {
          advance();
          advance();
          push(Tok::AndAnd, "&&", s);
          continue;
        }
        return LexError{s, "stray '&'"};
      case '|':
        if (peek(1) == '|') {
          advance();
          advance();
          push(Tok::OrOr, "||", s);
          continue;
        }
        return LexError{s, "stray '|'"};
      default:
        return LexError{s, std::string("unsupported character '") + c + "'"};
    }
  }
  Token end;
  end.kind = Tok::End;
  end.span = Span{line, col};
  out.push_back(std::move(end));
  return out;
}

const char* tokName(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::IntLit: return "integer literal";
    case Tok::RatLit: return "rational literal";
    case Tok::KwFn: return "'fn'";
    case Tok::KwVar: return "'var'";
    case Tok::KwFor: return "'for'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semicolon: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::End: return "end of input";
  }
  return "?";
}

}  // namespace mrv::il
