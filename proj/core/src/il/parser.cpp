#include "mrv/il/parser.hpp"

#include <unordered_map>

#include "mrv/il/lexer.hpp"

namespace mrv::il {

namespace {

const std::unordered_map<std::string, Builtin> kBuiltins = {
    {"replicate", Builtin::Replicate},
    {"range", Builtin::Range},
    {"zip", Builtin::Zip},
    {"map", Builtin::Map},
    {"group", Builtin::Group},
    {"concat", Builtin::Concat},
    {"flatMap", Builtin::FlatMap},
    {"reduceByKey", Builtin::ReduceByKey},
    {"fold", Builtin::Fold},
    {"length", Builtin::Length},
};

struct ParseFail {};  // unwinds to parseProgram, which reports state.error

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParseError error;

  Program parseProgram() {
    Program p;
    p.span = peek().span;
    expect(Tok::KwFn);
    p.name = expect(Tok::Ident).text;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        Param param;
        Token id = expect(Tok::Ident);
        param.name = id.text;
        param.span = id.span;
        expect(Tok::Colon);
        param.type = parseType();
        p.params.push_back(std::move(param));
      } while (consume(Tok::Comma));
    }
    expect(Tok::RParen);
    expect(Tok::Arrow);
    p.returnType = parseType();
    p.body = parseBlock();
    if (!at(Tok::End)) fail("end of input after the function body");
    return p;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek(size_t k = 0) const {
    size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok t) const { return peek().kind == t; }
  bool consume(Tok t) {
    if (at(t)) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(Tok t) {
    if (!at(t)) fail(tokName(t));
    return toks_[pos_++];
  }
  [[noreturn]] void fail(const std::string& expected) {
    error.span = peek().span;
    error.expected = expected;
    error.message = "expected " + expected + ", found " + tokName(peek().kind) +
                    (peek().text.empty() ? "" : " '" + peek().text + "'");
    throw ParseFail{};
  }

  // --- types ---------------------------------------------------------------

  TypePtr parseType() {  // sums, right-assoc, loosest
    TypePtr left = parseTypeProd();
    if (consume(Tok::Plus)) return tSum(left, parseType());
    return left;
  }
  TypePtr parseTypeProd() {  // products, right-assoc, tighter than '+'
    TypePtr left = parseTypeAtom();
    if (consume(Tok::Star)) return tPair(left, parseTypeProd());
    return left;
  }
  TypePtr parseTypeAtom() {
    if (consume(Tok::LBracket)) {
      TypePtr elem = parseType();
      expect(Tok::RBracket);
      return tArray(elem);
    }
    if (consume(Tok::LParen)) {
      TypePtr t = parseType();
      expect(Tok::RParen);
      return t;
    }
    Token id = expect(Tok::Ident);
    if (id.text == "Int") return tInt();
    if (id.text == "Rat") return tRat();
    if (id.text == "Bool") return tBool();
    error.span = id.span;
    error.expected = "a type";
    error.message = "unknown type '" + id.text + "'";
    throw ParseFail{};
  }

  // --- statements ------------------------------------------------------------

  std::vector<StmtPtr> parseBlock() {
    expect(Tok::LBrace);
    std::vector<StmtPtr> stmts;
    while (!at(Tok::RBrace)) stmts.push_back(parseStmt());
    expect(Tok::RBrace);
    return stmts;
  }

  StmtPtr parseStmt() {
    Span s = peek().span;
    if (consume(Tok::KwVar)) {
      Token id = expect(Tok::Ident);
      TypePtr annot;
      if (consume(Tok::Colon)) annot = parseType();
      // Listing 9 writes '=' where the others write ':='; both accepted.
      if (!consume(Tok::Assign) && !consume(Tok::Equals)) fail("':='");
      ExprPtr init = parseExpr();
      expect(Tok::Semicolon);
      return mkVarDecl(id.text, annot, init, s);
    }
    if (consume(Tok::KwFor)) {
      expect(Tok::LParen);
      Token binder = expect(Tok::Ident);
      expect(Tok::Colon);
      ExprPtr iterable = parseExpr();
      expect(Tok::RParen);
      return mkFor(binder.text, iterable, parseBlock(), s);
    }
    if (consume(Tok::KwWhile)) {
      expect(Tok::LParen);
      ExprPtr guard = parseExpr();
      expect(Tok::RParen);
      return mkWhile(guard, parseBlock(), s);
    }
    if (consume(Tok::KwReturn)) {
      ExprPtr val = parseExpr();
      expect(Tok::Semicolon);
      return mkReturn(val, s);
    }
    Token id = expect(Tok::Ident);
    if (consume(Tok::LBracket)) {
      ExprPtr idx = parseExpr();
      expect(Tok::RBracket);
      expect(Tok::Assign);
      ExprPtr val = parseExpr();
      expect(Tok::Semicolon);
      return mkArrayAssign(id.text, idx, val, s);
    }
    expect(Tok::Assign);
    ExprPtr val = parseExpr();
    expect(Tok::Semicolon);
    return mkAssign(id.text, val, s);
  }

  // --- expressions -----------------------------------------------------------

  ExprPtr parseExpr() { return parseOr(); }

  ExprPtr parseOr() {
    ExprPtr left = parseAnd();
    while (at(Tok::OrOr)) {
      Span s = peek().span;
      ++pos_;
      left = mkBinary(BinOp::Or, left, parseAnd(), s);
    }
    return left;
  }
  ExprPtr parseAnd() {
    ExprPtr left = parseCmp();
    while (at(Tok::AndAnd)) {
      Span s = peek().span;
      ++pos_;
      left = mkBinary(BinOp::And, left, parseCmp(), s);
    }
    return left;
  }
  ExprPtr parseCmp() {  // non-associative
    ExprPtr left = parseAdd();
    if (at(Tok::Lt) || at(Tok::Le) || at(Tok::Equals)) {
      Token op = toks_[pos_++];
      BinOp b = op.kind == Tok::Lt ? BinOp::Lt : op.kind == Tok::Le ? BinOp::Le : BinOp::Eq;
      return mkBinary(b, left, parseAdd(), op.span);
    }
    return left;
  }
  ExprPtr parseAdd() {
    ExprPtr left = parseMul();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Token op = toks_[pos_++];
      left = mkBinary(op.kind == Tok::Plus ? BinOp::Add : BinOp::Sub, left, parseMul(), op.span);
    }
    return left;
  }
  ExprPtr parseMul() {
    ExprPtr left = parseUnary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      Token op = toks_[pos_++];
      left = mkBinary(op.kind == Tok::Star ? BinOp::Mul : BinOp::Div, left, parseUnary(), op.span);
    }
    return left;
  }
  ExprPtr parseUnary() {
    Span s = peek().span;
    if (consume(Tok::Minus)) return mkUnary(UnOp::Neg, parseUnary(), s);
    if (consume(Tok::Bang)) return mkUnary(UnOp::Not, parseUnary(), s);
    if (at(Tok::Ident) && peek().text == "fst") {
      ++pos_;
      return mkUnary(UnOp::Fst, parseUnary(), s);
    }
    if (at(Tok::Ident) && peek().text == "snd") {
      ++pos_;
      return mkUnary(UnOp::Snd, parseUnary(), s);
    }
    return parsePostfix();
  }
  ExprPtr parsePostfix() {
    ExprPtr e = parsePrimary();
    while (at(Tok::LBracket)) {
      Span s = peek().span;
      ++pos_;
      ExprPtr idx = parseExpr();
      expect(Tok::RBracket);
      e = mkIndex(e, idx, s);
    }
    return e;
  }

  bool atLambdaStart() const {
    // '(' IDENT ':'  starts a typed lambda parameter list.
    return at(Tok::LParen) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon;
  }

  ExprPtr parsePrimary() {
    Span s = peek().span;
    if (at(Tok::IntLit)) {
      Token t = toks_[pos_++];
      return mkIntLit(t.intVal, t.span);
    }
    if (at(Tok::RatLit)) {
      Token t = toks_[pos_++];
      return mkRatLit(t.ratVal, t.span);
    }
    if (consume(Tok::KwTrue)) return mkBoolLit(true, s);
    if (consume(Tok::KwFalse)) return mkBoolLit(false, s);
    if (atLambdaStart()) return parseLambda();
    if (consume(Tok::LParen)) {
      ExprPtr first = parseExpr();
      if (consume(Tok::Comma)) {
        ExprPtr second = parseExpr();
        expect(Tok::RParen);
        return mkPairCtor(first, second, s);
      }
      expect(Tok::RParen);
      return first;
    }
    if (at(Tok::Ident)) {
      Token id = toks_[pos_++];
      if (at(Tok::LParen)) {
        auto it = kBuiltins.find(id.text);
        if (it == kBuiltins.end()) {
          error.span = id.span;
          error.expected = "a built-in function";
          error.message = "unknown function '" + id.text + "'";
          throw ParseFail{};
        }
        ++pos_;  // '('
        std::vector<ExprPtr> args;
        if (!at(Tok::RParen)) {
          do {
            args.push_back(parseExpr());
          } while (consume(Tok::Comma));
        }
        expect(Tok::RParen);
        return mkCall(it->second, std::move(args), id.span);
      }
      return mkVar(id.text, id.span);
    }
    fail("an expression");
  }

  ExprPtr parseLambda() {
    Span s = peek().span;
    std::vector<Param> params;
    while (atLambdaStart()) {
      expect(Tok::LParen);
      Token id = expect(Tok::Ident);
      expect(Tok::Colon);
      Param p;
      p.name = id.text;
      p.span = id.span;
      p.type = parseType();
      params.push_back(std::move(p));
      expect(Tok::RParen);
    }
    expect(Tok::FatArrow);
    ExprPtr body = parseExpr();
    return mkLambda(std::move(params), body, s);
  }
};

}  // namespace

Result<Program, ParseError> parseProgram(const std::string& source, const std::string& sourceName) {
  auto toks = lex(source);
  if (!toks.ok()) {
    ParseError e;
    e.span = toks.error().span;
    e.message = toks.error().message;
    e.expected = "a token";
    return e;
  }
  Parser parser(std::move(toks.value()));
  try {
    Program p = parser.parseProgram();
    p.sourceName = sourceName;
    return p;
  } catch (ParseFail&) {
    return parser.error;
  }
}

}  // namespace mrv::il
