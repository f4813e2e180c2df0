#include "mrv/coupling/predicate.hpp"

#include <map>
#include <optional>

#include "mrv/il/lexer.hpp"

namespace mrv::coupling {

namespace {

using il::Tok;
using il::Token;

struct ParseFail {
  PredicateError error;
};

std::shared_ptr<PredExpr> blank(PredKind k, Span s) {
  auto e = std::make_shared<PredExpr>();
  e->kind = k;
  e->span = s;
  return e;
}

class PredParser {
 public:
  PredParser(std::vector<Token> toks, const il::TypedProgram& p1, const il::TypedProgram& p2)
      : toks_(std::move(toks)), p1_(p1), p2_(p2) {}

  PredExprPtr parseTop() {
    PredExprPtr e = parseExpr();
    if (!at(Tok::End)) fail(peek().span, "unexpected trailing input in the predicate");
    if (e->type->kind != il::TypeKind::Bool)
      fail(e->span, "the predicate must be Bool, found " + il::showType(e->type));
    return e;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  const il::TypedProgram& p1_;
  const il::TypedProgram& p2_;
  std::vector<std::string> binders_;

  const Token& peek(size_t k = 0) const {
    size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok t) const { return peek().kind == t; }
  bool atIdent(const char* text) const { return at(Tok::Ident) && peek().text == text; }
  bool consume(Tok t) {
    if (at(t)) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(Tok t, const char* what) {
    if (!at(t)) fail(peek().span, std::string("expected ") + what);
    return toks_[pos_++];
  }
  [[noreturn]] void fail(Span s, std::string msg) { throw ParseFail{PredicateError{s, std::move(msg)}}; }

  bool isNumeric(const il::TypePtr& t) const {
    return t->kind == il::TypeKind::Int || t->kind == il::TypeKind::Rat;
  }

  PredExprPtr coerceRat(PredExprPtr e) {
    if (e->type->kind == il::TypeKind::Rat) return e;
    if (e->type->kind != il::TypeKind::Int)
      fail(e->span, "expected a numeric operand, found " + il::showType(e->type));
    auto n = blank(PredKind::IntToRat, e->span);
    n->type = il::tRat();
    n->kids = {std::move(e)};
    return n;
  }

  il::TypePtr sideType(int side, const std::string& base, Span s) {
    const il::TypedProgram& p = side == 1 ? p1_ : p2_;
    for (const auto& param : p.params())
      if (param.name == base) return param.type;
    if (auto t = p.localType(base)) return t;
    fail(s, "variable '" + base + "_" + std::to_string(side) +
                "' does not name a parameter or local of program " + std::to_string(side));
  }

  // --- grammar (mirrors the IL expression grammar plus `forall`) ------------

  PredExprPtr parseExpr() {
    if (atIdent("forall")) return parseForall();
    return parseOr();
  }

  PredExprPtr parseForall() {
    Span s = peek().span;
    ++pos_;  // forall
    Token binder = expect(Tok::Ident, "a quantifier variable");
    if (!atIdent("in")) fail(peek().span, "expected 'in'");
    ++pos_;
    if (!atIdent("indices")) fail(peek().span, "expected 'indices'");
    ++pos_;
    expect(Tok::LParen, "'('");
    PredExprPtr range = parseExpr();
    if (range->type->kind != il::TypeKind::Array)
      fail(range->span, "indices(...) needs an array, found " + il::showType(range->type));
    expect(Tok::RParen, "')'");
    expect(Tok::Colon, "':'");
    binders_.push_back(binder.text);
    PredExprPtr body = parseExpr();
    binders_.pop_back();
    if (body->type->kind != il::TypeKind::Bool)
      fail(body->span, "the quantifier body must be Bool");
    auto e = blank(PredKind::Forall, s);
    e->name = binder.text;
    e->type = il::tBool();
    e->kids = {range, body};
    return e;
  }

  PredExprPtr boolBin(il::BinOp op, PredExprPtr a, PredExprPtr b, Span s) {
    if (a->type->kind != il::TypeKind::Bool || b->type->kind != il::TypeKind::Bool)
      fail(s, "boolean connectives need Bool operands");
    auto e = blank(PredKind::Bin, s);
    e->bop = op;
    e->type = il::tBool();
    e->kids = {std::move(a), std::move(b)};
    return e;
  }

  PredExprPtr parseOr() {
    PredExprPtr left = parseAnd();
    while (at(Tok::OrOr)) {
      Span s = peek().span;
      ++pos_;
      PredExprPtr right = atIdent("forall") ? parseForall() : parseAnd();
      left = boolBin(il::BinOp::Or, left, right, s);
    }
    return left;
  }
  PredExprPtr parseAnd() {
    PredExprPtr left = parseCmp();
    while (at(Tok::AndAnd)) {
      Span s = peek().span;
      ++pos_;
      PredExprPtr right = atIdent("forall") ? parseForall() : parseCmp();
      left = boolBin(il::BinOp::And, left, right, s);
    }
    return left;
  }
  PredExprPtr parseCmp() {
    PredExprPtr left = parseAdd();
    if (at(Tok::Lt) || at(Tok::Le) || at(Tok::Equals)) {
      Token op = toks_[pos_++];
      PredExprPtr right = parseAdd();
      il::BinOp b = op.kind == Tok::Lt ? il::BinOp::Lt
                    : op.kind == Tok::Le ? il::BinOp::Le
                                         : il::BinOp::Eq;
      if (b == il::BinOp::Eq) {
        if (isNumeric(left->type) && isNumeric(right->type) &&
            !il::typeEqual(left->type, right->type)) {
          left = coerceRat(std::move(left));
          right = coerceRat(std::move(right));
        }
        if (!il::typeEqual(left->type, right->type))
          fail(op.span, "'=' requires equal types, found " + il::showType(left->type) + " and " +
                            il::showType(right->type));
      } else {
        if (!isNumeric(left->type) || !isNumeric(right->type))
          fail(op.span, "comparison needs numeric operands");
        if (!il::typeEqual(left->type, right->type)) {
          left = coerceRat(std::move(left));
          right = coerceRat(std::move(right));
        }
      }
      auto e = blank(PredKind::Bin, op.span);
      e->bop = b;
      e->type = il::tBool();
      e->kids = {left, right};
      return e;
    }
    return left;
  }
  PredExprPtr arith(il::BinOp op, PredExprPtr a, PredExprPtr b, Span s) {
    if (!isNumeric(a->type) || !isNumeric(b->type))
      fail(s, "arithmetic needs numeric operands");
    if (!il::typeEqual(a->type, b->type)) {
      a = coerceRat(std::move(a));
      b = coerceRat(std::move(b));
    }
    auto e = blank(PredKind::Bin, s);
    e->bop = op;
    e->type = a->type;
    e->kids = {std::move(a), std::move(b)};
    return e;
  }
  PredExprPtr parseAdd() {
    PredExprPtr left = parseMul();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Token op = toks_[pos_++];
      left = arith(op.kind == Tok::Plus ? il::BinOp::Add : il::BinOp::Sub, left, parseMul(),
                   op.span);
    }
    return left;
  }
  PredExprPtr parseMul() {
    PredExprPtr left = parseUnary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      Token op = toks_[pos_++];
      left = arith(op.kind == Tok::Star ? il::BinOp::Mul : il::BinOp::Div, left, parseUnary(),
                   op.span);
    }
    return left;
  }
  PredExprPtr parseUnary() {
    Span s = peek().span;
    if (consume(Tok::Minus)) {
      PredExprPtr a = parseUnary();
      if (!isNumeric(a->type)) fail(s, "unary '-' needs a numeric operand");
      auto e = blank(PredKind::Un, s);
      e->uop = il::UnOp::Neg;
      e->type = a->type;
      e->kids = {a};
      return e;
    }
    if (consume(Tok::Bang)) {
      PredExprPtr a = parseUnary();
      if (a->type->kind != il::TypeKind::Bool) fail(s, "'!' needs Bool");
      auto e = blank(PredKind::Un, s);
      e->uop = il::UnOp::Not;
      e->type = il::tBool();
      e->kids = {a};
      return e;
    }
    if (atIdent("fst") || atIdent("snd")) {
      bool fst = peek().text == "fst";
      ++pos_;
      PredExprPtr a = parseUnary();
      if (a->type->kind != il::TypeKind::Pair)
        fail(s, std::string(fst ? "fst" : "snd") + " needs a pair, found " + il::showType(a->type));
      auto e = blank(PredKind::Un, s);
      e->uop = fst ? il::UnOp::Fst : il::UnOp::Snd;
      e->type = fst ? a->type->args[0] : a->type->args[1];
      e->kids = {a};
      return e;
    }
    return parsePostfix();
  }
  PredExprPtr parsePostfix() {
    PredExprPtr e = parsePrimary();
    while (at(Tok::LBracket)) {
      Span s = peek().span;
      ++pos_;
      PredExprPtr idx = parseExpr();
      if (idx->type->kind != il::TypeKind::Int) fail(idx->span, "index must be Int");
      expect(Tok::RBracket, "']'");
      if (e->type->kind != il::TypeKind::Array)
        fail(s, "indexing needs an array, found " + il::showType(e->type));
      auto n = blank(PredKind::Index, s);
      n->type = e->type->args[0];
      n->kids = {e, idx};
      e = n;
    }
    return e;
  }

  PredExprPtr parsePrimary() {
    Span s = peek().span;
    if (at(Tok::IntLit)) {
      Token t = toks_[pos_++];
      auto e = blank(PredKind::IntLit, t.span);
      e->intVal = t.intVal;
      e->type = il::tInt();
      return e;
    }
    if (at(Tok::RatLit)) {
      Token t = toks_[pos_++];
      auto e = blank(PredKind::RatLit, t.span);
      e->ratVal = t.ratVal;
      e->type = il::tRat();
      return e;
    }
    if (consume(Tok::KwTrue) || consume(Tok::KwFalse)) {
      auto e = blank(PredKind::BoolLit, s);
      e->boolVal = toks_[pos_ - 1].kind == Tok::KwTrue;
      e->type = il::tBool();
      return e;
    }
    if (consume(Tok::LParen)) {
      PredExprPtr first = parseExpr();
      if (consume(Tok::Comma)) {
        PredExprPtr second = parseExpr();
        expect(Tok::RParen, "')'");
        auto e = blank(PredKind::Pair, s);
        e->type = il::tPair(first->type, second->type);
        e->kids = {first, second};
        return e;
      }
      expect(Tok::RParen, "')'");
      return first;
    }
    if (at(Tok::Ident)) {
      Token id = toks_[pos_++];
      if (at(Tok::LParen)) return parseCall(id);
      return resolveVar(id);
    }
    fail(s, "expected an expression");
  }

  PredExprPtr parseCall(const Token& id) {
    static const std::map<std::string, il::Builtin> kAllowed = {
        {"length", il::Builtin::Length},   {"zip", il::Builtin::Zip},
        {"range", il::Builtin::Range},     {"replicate", il::Builtin::Replicate},
        {"concat", il::Builtin::Concat},   {"group", il::Builtin::Group},
    };
    auto it = kAllowed.find(id.text);
    if (it == kAllowed.end())
      fail(id.span, "'" + id.text + "' is not usable in predicates (lambda-free builtins only)");
    ++pos_;  // '('
    std::vector<PredExprPtr> args;
    if (!at(Tok::RParen)) {
      do {
        args.push_back(parseExpr());
      } while (consume(Tok::Comma));
    }
    expect(Tok::RParen, "')'");

    auto e = blank(PredKind::Call, id.span);
    e->builtin = it->second;
    e->kids = args;
    auto need = [&](size_t n) {
      if (args.size() != n)
        fail(id.span, id.text + " takes " + std::to_string(n) + " argument(s)");
    };
    switch (it->second) {
      case il::Builtin::Length:
        need(1);
        if (args[0]->type->kind != il::TypeKind::Array) fail(id.span, "length needs an array");
        e->type = il::tInt();
        break;
      case il::Builtin::Zip:
        need(2);
        if (args[0]->type->kind != il::TypeKind::Array ||
            args[1]->type->kind != il::TypeKind::Array)
          fail(id.span, "zip needs two arrays");
        e->type = il::tArray(il::tPair(args[0]->type->args[0], args[1]->type->args[0]));
        break;
      case il::Builtin::Range:
        need(2);
        if (args[0]->type->kind != il::TypeKind::Int || args[1]->type->kind != il::TypeKind::Int)
          fail(id.span, "range needs two Ints");
        e->type = il::tArray(il::tInt());
        break;
      case il::Builtin::Replicate:
        need(2);
        if (args[0]->type->kind != il::TypeKind::Int) fail(id.span, "replicate needs an Int count");
        e->type = il::tArray(args[1]->type);
        break;
      case il::Builtin::Concat:
        need(1);
        if (args[0]->type->kind != il::TypeKind::Array ||
            args[0]->type->args[0]->kind != il::TypeKind::Array)
          fail(id.span, "concat needs an array of arrays");
        e->type = args[0]->type->args[0];
        break;
      case il::Builtin::Group:
        need(1);
        if (args[0]->type->kind != il::TypeKind::Array ||
            args[0]->type->args[0]->kind != il::TypeKind::Pair)
          fail(id.span, "group needs an array of pairs");
        e->type = il::tArray(il::tPair(args[0]->type->args[0]->args[0],
                                       il::tArray(args[0]->type->args[0]->args[1])));
        break;
      default:
        fail(id.span, "unsupported builtin in predicates");
    }
    return e;
  }

  PredExprPtr resolveVar(const Token& id) {
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it) {
      if (*it == id.text) {
        auto e = blank(PredKind::BoundVar, id.span);
        e->name = id.text;
        e->type = il::tInt();
        return e;
      }
    }
    const std::string& n = id.text;
    if (n.size() > 2 && n[n.size() - 2] == '_' && (n.back() == '1' || n.back() == '2')) {
      int side = n.back() - '0';
      std::string base = n.substr(0, n.size() - 2);
      auto e = blank(PredKind::SideVar, id.span);
      e->side = side;
      e->name = base;
      e->type = sideType(side, base, id.span);
      return e;
    }
    fail(id.span, "variable '" + n + "' must carry a _1/_2 side suffix or be quantifier-bound");
  }
};

// --- evaluation --------------------------------------------------------------

struct EvalFail {
  PredicateError error;
};

class PredEval {
 public:
  PredEval(const il::Machine& s1, const il::Machine& s2) : s1_(s1), s2_(s2) {}

  Value eval(const PredExprPtr& e) {
    switch (e->kind) {
      case PredKind::SideVar: {
        const il::Machine& m = e->side == 1 ? s1_ : s2_;
        if (!m.has(e->name))
          throw EvalFail{PredicateError{e->span, "variable '" + e->name + "_" +
                                                     std::to_string(e->side) +
                                                     "' is not bound at this point"}};
        return m.get(e->name);
      }
      case PredKind::BoundVar: {
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
          if (it->first == e->name) return it->second;
        throw EvalFail{PredicateError{e->span, "unbound quantifier variable '" + e->name + "'"}};
      }
      case PredKind::IntLit: return Value(e->intVal);
      case PredKind::RatLit: return Value(e->ratVal);
      case PredKind::BoolLit: return Value(e->boolVal);
      case PredKind::IntToRat: return Value(BigRat(eval(e->kids[0]).asInt()));
      case PredKind::Bin: {
        Value a = eval(e->kids[0]);
        Value b = eval(e->kids[1]);
        auto r = il::applyValueBinOp(e->bop, a, b, e->span);
        if (!r.ok()) throw EvalFail{PredicateError{e->span, r.error().render()}};
        return r.value();
      }
      case PredKind::Un: {
        Value a = eval(e->kids[0]);
        auto r = il::applyValueUnOp(e->uop, a, e->span);
        if (!r.ok()) throw EvalFail{PredicateError{e->span, r.error().render()}};
        return r.value();
      }
      case PredKind::Index: {
        Value arr = eval(e->kids[0]);
        Value idx = eval(e->kids[1]);
        if (idx.asInt() < 0 || idx.asInt() >= BigInt(arr.asArray().size()))
          throw EvalFail{PredicateError{e->span, "index out of range inside the predicate"}};
        return arr.asArray()[static_cast<size_t>(idx.asInt().convert_to<unsigned long long>())];
      }
      case PredKind::Pair:
        return Value::pair(eval(e->kids[0]), eval(e->kids[1]));
      case PredKind::Call: {
        std::vector<Value> args;
        for (const auto& k : e->kids) args.push_back(eval(k));
        long long budget = 1000000;
        auto r = il::applyValueBuiltin(e->builtin, args, e->span, budget);
        if (!r.ok()) throw EvalFail{PredicateError{e->span, r.error().render()}};
        return r.value();
      }
      case PredKind::Forall: {
        Value arr = eval(e->kids[0]);
        size_t n = arr.asArray().size();
        for (size_t i = 0; i < n; ++i) {
          bound_.push_back({e->name, Value(BigInt(i))});
          Value b = eval(e->kids[1]);
          bound_.pop_back();
          if (!b.asBool()) return Value(false);
        }
        return Value(true);
      }
    }
    throw EvalFail{PredicateError{e->span, "bad predicate node"}};
  }

 private:
  const il::Machine& s1_;
  const il::Machine& s2_;
  std::vector<std::pair<std::string, Value>> bound_;
};

}  // namespace

Result<Predicate, PredicateError> parsePredicate(const std::string& text,
                                                 const il::TypedProgram& p1,
                                                 const il::TypedProgram& p2) {
  auto toks = il::lex(text);
  if (!toks.ok()) return PredicateError{toks.error().span, toks.error().message};
  try {
    PredParser parser(std::move(toks.value()), p1, p2);
    return Predicate{parser.parseTop(), text};
  } catch (ParseFail& f) {
    return f.error;
  }
}

Result<bool, PredicateError> evaluatePredicate(const Predicate& p, const il::Machine& side1,
                                               const il::Machine& side2) {
  try {
    PredEval ev(side1, side2);
    return ev.eval(p.expr).asBool();
  } catch (EvalFail& f) {
    return f.error;
  }
}

}  // namespace mrv::coupling
