#include <functional>
#include <sstream>

#include "mrv/il/ast.hpp"
#include "mrv/il/parser.hpp"

namespace mrv::il {

// ---------------------------------------------------------------------------
// AST factories
// ---------------------------------------------------------------------------

namespace {
TypePtr leaf(TypeKind k) {
  static TypePtr i = std::make_shared<Type>(Type{TypeKind::Int, {}});
  static TypePtr r = std::make_shared<Type>(Type{TypeKind::Rat, {}});
  static TypePtr b = std::make_shared<Type>(Type{TypeKind::Bool, {}});
  switch (k) {
    case TypeKind::Int: return i;
    case TypeKind::Rat: return r;
    default: return b;
  }
}
}  // namespace

TypePtr tInt() { return leaf(TypeKind::Int); }
TypePtr tRat() { return leaf(TypeKind::Rat); }
TypePtr tBool() { return leaf(TypeKind::Bool); }
TypePtr tArray(TypePtr elem) { return std::make_shared<Type>(Type{TypeKind::Array, {std::move(elem)}}); }
TypePtr tPair(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{TypeKind::Pair, {std::move(a), std::move(b)}});
}
TypePtr tSum(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{TypeKind::Sum, {std::move(a), std::move(b)}});
}
TypePtr tFun(std::vector<TypePtr> params, TypePtr result) {
  params.push_back(std::move(result));
  return std::make_shared<Type>(Type{TypeKind::Fun, std::move(params)});
}

bool typeEqual(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!typeEqual(a->args[i], b->args[i])) return false;
  return true;
}

bool firstOrder(const TypePtr& t) {
  if (!t) return false;
  if (t->kind == TypeKind::Fun) return false;
  for (const auto& a : t->args)
    if (!firstOrder(a)) return false;
  return true;
}

std::string showType(const TypePtr& t) {
  if (!t) return "?";
  switch (t->kind) {
    case TypeKind::Int: return "Int";
    case TypeKind::Rat: return "Rat";
    case TypeKind::Bool: return "Bool";
    case TypeKind::Array: return "[" + showType(t->args[0]) + "]";
    case TypeKind::Pair: {
      auto wrap = [](const TypePtr& x) {
        std::string s = showType(x);
        return (x->kind == TypeKind::Sum || x->kind == TypeKind::Pair) ? "(" + s + ")" : s;
      };
      // right-assoc: only the left side of '*' needs parens
      std::string l = wrap(t->args[0]);
      std::string r = showType(t->args[1]);
      if (t->args[1]->kind == TypeKind::Sum) r = "(" + r + ")";
      return l + " * " + r;
    }
    case TypeKind::Sum: {
      std::string l = showType(t->args[0]);
      if (t->args[0]->kind == TypeKind::Sum) l = "(" + l + ")";
      return l + " + " + showType(t->args[1]);
    }
    case TypeKind::Fun: {
      std::string s = "(";
      for (size_t i = 0; i + 1 < t->args.size(); ++i) {
        if (i) s += ", ";
        s += showType(t->args[i]);
      }
      s += ") -> " + showType(t->args.back());
      return s;
    }
  }
  return "?";
}

const char* builtinName(Builtin b) {
  switch (b) {
    case Builtin::Replicate: return "replicate";
    case Builtin::Range: return "range";
    case Builtin::Zip: return "zip";
    case Builtin::Map: return "map";
    case Builtin::Group: return "group";
    case Builtin::Concat: return "concat";
    case Builtin::FlatMap: return "flatMap";
    case Builtin::ReduceByKey: return "reduceByKey";
    case Builtin::Fold: return "fold";
    case Builtin::Length: return "length";
  }
  return "?";
}

const char* binOpName(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Eq: return "=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

namespace {
std::shared_ptr<Expr> blank(ExprKind k, Span s) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->span = s;
  return e;
}
}  // namespace

ExprPtr mkVar(std::string name, Span s) {
  auto e = blank(ExprKind::Var, s);
  e->name = std::move(name);
  return e;
}
ExprPtr mkIntLit(BigInt v, Span s) {
  auto e = blank(ExprKind::IntLit, s);
  e->intVal = std::move(v);
  return e;
}
ExprPtr mkRatLit(BigRat v, Span s) {
  auto e = blank(ExprKind::RatLit, s);
  e->ratVal = std::move(v);
  return e;
}
ExprPtr mkBoolLit(bool v, Span s) {
  auto e = blank(ExprKind::BoolLit, s);
  e->boolVal = v;
  return e;
}
ExprPtr mkBinary(BinOp op, ExprPtr a, ExprPtr b, Span s) {
  auto e = blank(ExprKind::Binary, s);
  e->bop = op;
  e->kids = {std::move(a), std::move(b)};
  return e;
}
ExprPtr mkUnary(UnOp op, ExprPtr a, Span s) {
  auto e = blank(ExprKind::Unary, s);
  e->uop = op;
  e->kids = {std::move(a)};
  return e;
}
ExprPtr mkIndex(ExprPtr arr, ExprPtr idx, Span s) {
  auto e = blank(ExprKind::Index, s);
  e->kids = {std::move(arr), std::move(idx)};
  return e;
}
ExprPtr mkPairCtor(ExprPtr a, ExprPtr b, Span s) {
  auto e = blank(ExprKind::PairCtor, s);
  e->kids = {std::move(a), std::move(b)};
  return e;
}
ExprPtr mkLambda(std::vector<Param> params, ExprPtr body, Span s) {
  auto e = blank(ExprKind::Lambda, s);
  e->params = std::move(params);
  e->kids = {std::move(body)};
  return e;
}
ExprPtr mkCall(Builtin b, std::vector<ExprPtr> args, Span s) {
  auto e = blank(ExprKind::Call, s);
  e->builtin = b;
  e->kids = std::move(args);
  return e;
}
ExprPtr mkIntToRat(ExprPtr inner) {
  auto e = blank(ExprKind::IntToRat, inner->span);
  e->type = tRat();
  e->kids = {std::move(inner)};
  return e;
}

StmtPtr mkVarDecl(std::string name, TypePtr annot, ExprPtr init, Span s) {
  auto st = std::make_shared<Stmt>();
  st->kind = StmtKind::VarDecl;
  st->span = s;
  st->name = std::move(name);
  st->declType = std::move(annot);
  st->e0 = std::move(init);
  return st;
}
StmtPtr mkAssign(std::string name, ExprPtr value, Span s) {
  auto st = std::make_shared<Stmt>();
  st->kind = StmtKind::Assign;
  st->span = s;
  st->name = std::move(name);
  st->e0 = std::move(value);
  return st;
}
StmtPtr mkArrayAssign(std::string name, ExprPtr index, ExprPtr value, Span s) {
  auto st = std::make_shared<Stmt>();
  st->kind = StmtKind::ArrayAssign;
  st->span = s;
  st->name = std::move(name);
  st->e1 = std::move(index);
  st->e0 = std::move(value);
  return st;
}
StmtPtr mkFor(std::string binder, ExprPtr iterable, std::vector<StmtPtr> body, Span s) {
  auto st = std::make_shared<Stmt>();
  st->kind = StmtKind::For;
  st->span = s;
  st->name = std::move(binder);
  st->e0 = std::move(iterable);
  st->body = std::move(body);
  return st;
}
StmtPtr mkWhile(ExprPtr guard, std::vector<StmtPtr> body, Span s) {
  auto st = std::make_shared<Stmt>();
  st->kind = StmtKind::While;
  st->span = s;
  st->e0 = std::move(guard);
  st->body = std::move(body);
  return st;
}
StmtPtr mkReturn(ExprPtr value, Span s) {
  auto st = std::make_shared<Stmt>();
  st->kind = StmtKind::Return;
  st->span = s;
  st->e0 = std::move(value);
  return st;
}

// ---------------------------------------------------------------------------
// Structural equality (span-insensitive)
// ---------------------------------------------------------------------------

bool exprEqual(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Var:
      if (a->name != b->name) return false;
      break;
    case ExprKind::IntLit:
      if (a->intVal != b->intVal) return false;
      break;
    case ExprKind::RatLit:
      if (a->ratVal != b->ratVal) return false;
      break;
    case ExprKind::BoolLit:
      if (a->boolVal != b->boolVal) return false;
      break;
    case ExprKind::Binary:
      if (a->bop != b->bop) return false;
      break;
    case ExprKind::Unary:
      if (a->uop != b->uop) return false;
      break;
    case ExprKind::Call:
      if (a->builtin != b->builtin) return false;
      break;
    case ExprKind::Lambda:
      if (a->params.size() != b->params.size()) return false;
      for (size_t i = 0; i < a->params.size(); ++i) {
        if (a->params[i].name != b->params[i].name) return false;
        if (!typeEqual(a->params[i].type, b->params[i].type)) return false;
      }
      break;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!exprEqual(a->kids[i], b->kids[i])) return false;
  return true;
}

bool stmtEqual(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  if ((a->declType == nullptr) != (b->declType == nullptr)) return false;
  if (a->declType && !typeEqual(a->declType, b->declType)) return false;
  if ((a->e0 == nullptr) != (b->e0 == nullptr)) return false;
  if (a->e0 && !exprEqual(a->e0, b->e0)) return false;
  if ((a->e1 == nullptr) != (b->e1 == nullptr)) return false;
  if (a->e1 && !exprEqual(a->e1, b->e1)) return false;
  if (a->body.size() != b->body.size()) return false;
  for (size_t i = 0; i < a->body.size(); ++i)
    if (!stmtEqual(a->body[i], b->body[i])) return false;
  return true;
}

bool programEqual(const Program& a, const Program& b) {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  for (size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name) return false;
    if (!typeEqual(a.params[i].type, b.params[i].type)) return false;
  }
  if (!typeEqual(a.returnType, b.returnType)) return false;
  if (a.body.size() != b.body.size()) return false;
  for (size_t i = 0; i < a.body.size(); ++i)
    if (!stmtEqual(a.body[i], b.body[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Pretty-printer
// ---------------------------------------------------------------------------

namespace {

// Precedence levels, loosest first.
enum Prec { POr = 0, PAnd, PCmp, PAdd, PMul, PUnary, PPostfix, PAtom };

void printExpr(std::ostringstream& out, const ExprPtr& e, int parentPrec);

void printParen(std::ostringstream& out, const ExprPtr& e, int myPrec, int parentPrec,
                const std::function<void()>& body) {
  (void)e;
  bool need = myPrec < parentPrec;
  if (need) out << "(";
  body();
  if (need) out << ")";
}

int binPrec(BinOp op) {
  switch (op) {
    case BinOp::Or: return POr;
    case BinOp::And: return PAnd;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Eq: return PCmp;
    case BinOp::Add:
    case BinOp::Sub: return PAdd;
    case BinOp::Mul:
    case BinOp::Div: return PMul;
  }
  return PAtom;
}

std::string ratLiteral(const BigRat& r) {
  // Prefer a decimal form when the denominator is a power of ten; otherwise
  // fall back to an exact division expression.
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) {
    std::ostringstream o;
    o << num << ".";
    return o.str();
  }
  BigInt d = den;
  int digits = 0;
  while (d % 10 == 0) {
    d /= 10;
    ++digits;
  }
  if (d == 1 && num >= 0) {
    std::ostringstream o;
    o << (num / den) << ".";
    BigInt frac = num % den;
    std::string fs = frac.str();
    while ((int)fs.size() < digits) fs = "0" + fs;
    o << fs;
    return o.str();
  }
  std::ostringstream o;
  o << "(" << num << ". / " << den << ".)";
  return o.str();
}

void printExpr(std::ostringstream& out, const ExprPtr& e, int parentPrec) {
  switch (e->kind) {
    case ExprKind::Var:
      out << e->name;
      return;
    case ExprKind::IntLit:
      out << e->intVal;
      return;
    case ExprKind::RatLit:
      out << ratLiteral(e->ratVal);
      return;
    case ExprKind::BoolLit:
      out << (e->boolVal ? "true" : "false");
      return;
    case ExprKind::Binary: {
      int p = binPrec(e->bop);
      printParen(out, e, p, parentPrec, [&] {
        printExpr(out, e->kids[0], p);
        out << " " << binOpName(e->bop) << " ";
        // left-assoc chains: the right operand binds one tighter
        printExpr(out, e->kids[1], p + 1);
      });
      return;
    }
    case ExprKind::Unary: {
      printParen(out, e, PUnary, parentPrec, [&] {
        switch (e->uop) {
          case UnOp::Neg: out << "-"; break;
          case UnOp::Not: out << "!"; break;
          case UnOp::Fst: out << "fst "; break;
          case UnOp::Snd: out << "snd "; break;
        }
        printExpr(out, e->kids[0], PUnary);
      });
      return;
    }
    case ExprKind::Index: {
      printParen(out, e, PPostfix, parentPrec, [&] {
        printExpr(out, e->kids[0], PPostfix);
        out << "[";
        printExpr(out, e->kids[1], POr);
        out << "]";
      });
      return;
    }
    case ExprKind::PairCtor:
      out << "(";
      printExpr(out, e->kids[0], POr);
      out << ", ";
      printExpr(out, e->kids[1], POr);
      out << ")";
      return;
    case ExprKind::Lambda: {
      printParen(out, e, POr, parentPrec, [&] {
        for (const auto& p : e->params) out << "(" << p.name << " : " << showType(p.type) << ") ";
        out << "=> ";
        printExpr(out, e->kids[0], POr);
      });
      return;
    }
    case ExprKind::Call: {
      out << builtinName(e->builtin) << "(";
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out << ", ";
        printExpr(out, e->kids[i], POr);
      }
      out << ")";
      return;
    }
    case ExprKind::IntToRat:
      // typechecker-internal node; print transparently
      printExpr(out, e->kids[0], parentPrec);
      return;
  }
}

void printStmt(std::ostringstream& out, const StmtPtr& s, int indent) {
  std::string pad(indent, ' ');
  out << pad;
  switch (s->kind) {
    case StmtKind::VarDecl:
      out << "var " << s->name;
      if (s->declType) out << " : " << showType(s->declType);
      out << " := ";
      printExpr(out, s->e0, POr);
      out << ";\n";
      return;
    case StmtKind::Assign:
      out << s->name << " := ";
      printExpr(out, s->e0, POr);
      out << ";\n";
      return;
    case StmtKind::ArrayAssign:
      out << s->name << "[";
      printExpr(out, s->e1, POr);
      out << "] := ";
      printExpr(out, s->e0, POr);
      out << ";\n";
      return;
    case StmtKind::For:
      out << "for (" << s->name << " : ";
      printExpr(out, s->e0, POr);
      out << ") {\n";
      for (const auto& st : s->body) printStmt(out, st, indent + 2);
      out << pad << "}\n";
      return;
    case StmtKind::While:
      out << "while (";
      printExpr(out, s->e0, POr);
      out << ") {\n";
      for (const auto& st : s->body) printStmt(out, st, indent + 2);
      out << pad << "}\n";
      return;
    case StmtKind::Return:
      out << "return ";
      printExpr(out, s->e0, POr);
      out << ";\n";
      return;
  }
}

}  // namespace

std::string prettyPrint(const ExprPtr& e) {
  std::ostringstream out;
  printExpr(out, e, POr);
  return out.str();
}

std::string prettyPrint(const Program& p) {
  std::ostringstream out;
  out << "fn " << p.name << "(";
  for (size_t i = 0; i < p.params.size(); ++i) {
    if (i) out << ", ";
    out << p.params[i].name << " : " << showType(p.params[i].type);
  }
  out << ") -> " << showType(p.returnType) << " {\n";
  for (const auto& s : p.body) printStmt(out, s, 2);
  out << "}\n";
  return out.str();
}

}  // namespace mrv::il
