#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mrv/diag.hpp"
#include "mrv/number.hpp"

namespace mrv::il {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class TypeKind { Int, Rat, Bool, Array, Pair, Sum, Fun };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  TypeKind kind;
  // Array: [elem]; Pair/Sum: [left, right]; Fun: [param..., result].
  std::vector<TypePtr> args;
};

TypePtr tInt();
TypePtr tRat();
TypePtr tBool();
TypePtr tArray(TypePtr elem);
TypePtr tPair(TypePtr a, TypePtr b);
TypePtr tSum(TypePtr a, TypePtr b);
TypePtr tFun(std::vector<TypePtr> params, TypePtr result);

bool typeEqual(const TypePtr& a, const TypePtr& b);
bool firstOrder(const TypePtr& t);  // no Fun anywhere inside
std::string showType(const TypePtr& t);

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class ExprKind {
  Var,
  IntLit,
  RatLit,
  BoolLit,
  Binary,
  Unary,
  Index,     // kids: array, index
  PairCtor,  // kids: left, right
  Lambda,    // params + kids[0] = body
  Call,      // builtin call, kids = arguments
  IntToRat,  // inserted by the typechecker; never produced by the parser
};

enum class BinOp { Add, Sub, Mul, Div, Lt, Le, Eq, And, Or };
enum class UnOp { Neg, Not, Fst, Snd };
enum class Builtin { Replicate, Range, Zip, Map, Group, Concat, FlatMap, ReduceByKey, Fold, Length };

const char* builtinName(Builtin b);
const char* binOpName(BinOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Param {
  std::string name;
  TypePtr type;
  Span span;
};

struct Expr {
  ExprKind kind;
  Span span;

  std::string name;  // Var
  BigInt intVal;
  BigRat ratVal;
  bool boolVal = false;
  BinOp bop = BinOp::Add;
  UnOp uop = UnOp::Neg;
  Builtin builtin = Builtin::Length;
  std::vector<Param> params;  // Lambda

  std::vector<ExprPtr> kids;

  // Filled by the typechecker on the typed copy of the AST.
  TypePtr type;
};

ExprPtr mkVar(std::string name, Span s);
ExprPtr mkIntLit(BigInt v, Span s);
ExprPtr mkRatLit(BigRat v, Span s);
ExprPtr mkBoolLit(bool v, Span s);
ExprPtr mkBinary(BinOp op, ExprPtr a, ExprPtr b, Span s);
ExprPtr mkUnary(UnOp op, ExprPtr a, Span s);
ExprPtr mkIndex(ExprPtr arr, ExprPtr idx, Span s);
ExprPtr mkPairCtor(ExprPtr a, ExprPtr b, Span s);
ExprPtr mkLambda(std::vector<Param> params, ExprPtr body, Span s);
ExprPtr mkCall(Builtin b, std::vector<ExprPtr> args, Span s);
ExprPtr mkIntToRat(ExprPtr inner);

// ---------------------------------------------------------------------------
// Statements and programs
// ---------------------------------------------------------------------------

enum class StmtKind { VarDecl, Assign, ArrayAssign, For, While, Return };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  StmtKind kind;
  Span span;

  std::string name;   // VarDecl/Assign/ArrayAssign target, For binder
  TypePtr declType;   // VarDecl annotation (may be null)
  ExprPtr e0;         // init / rhs / guard / iterable
  ExprPtr e1;         // ArrayAssign index
  std::vector<StmtPtr> body;  // For/While
};

StmtPtr mkVarDecl(std::string name, TypePtr annot, ExprPtr init, Span s);
StmtPtr mkAssign(std::string name, ExprPtr value, Span s);
StmtPtr mkArrayAssign(std::string name, ExprPtr index, ExprPtr value, Span s);
StmtPtr mkFor(std::string binder, ExprPtr iterable, std::vector<StmtPtr> body, Span s);
StmtPtr mkWhile(ExprPtr guard, std::vector<StmtPtr> body, Span s);
StmtPtr mkReturn(ExprPtr value, Span s);

struct Program {
  std::string name;
  std::vector<Param> params;
  TypePtr returnType;
  std::vector<StmtPtr> body;
  Span span;
  std::string sourceName;  // file name for diagnostics
};

// Structural equality, ignoring spans (used by the parse/pretty round-trip).
bool exprEqual(const ExprPtr& a, const ExprPtr& b);
bool stmtEqual(const StmtPtr& a, const StmtPtr& b);
bool programEqual(const Program& a, const Program& b);

}  // namespace mrv::il
