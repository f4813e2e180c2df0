#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mrv/diag.hpp"
#include "mrv/number.hpp"

namespace mrv::ffl {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class TypeKind { Int, Rat, Bool, Unit, Array, Prod, Sum, Arrow };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  TypeKind kind;
  TypePtr a, b;  // Array uses a; Prod/Sum/Arrow use a and b
};

TypePtr tInt();
TypePtr tRat();
TypePtr tBool();
TypePtr tUnit();
TypePtr tArray(TypePtr elem);
TypePtr tProd(TypePtr a, TypePtr b);
TypePtr tSum(TypePtr a, TypePtr b);
TypePtr tArrow(TypePtr a, TypePtr b);

bool typeEqual(const TypePtr& a, const TypePtr& b);
bool firstOrder(const TypePtr& t);
std::string showType(const TypePtr& t);

// ---------------------------------------------------------------------------
// Terms (nameless de Bruijn representation; display names kept for rendering)
// ---------------------------------------------------------------------------

enum class TermKind {
  Var,      // var = index
  Lam,      // ann = parameter type; kids[0] = body (one binder)
  App,      // kids = {fun, arg}
  IntLit, RatLit, BoolLit, UnitLit,
  ArrayLit, // ann = element type; kids = elements
  Pair, Fst, Snd,
  Inl, Inr, // ann = the *other* side of the sum
  Case,     // kids = {scrutinee, leftBody, rightBody}; each body has one binder
  If,       // kids = {cond, then, else}
  Index,    // kids = {array, index}
  Update,   // kids = {array, index, value}; functional update
  Length, Replicate, Range, Zip, Map, Concat, Group,
  Fold,     // kids = {f, init, array}; f is curried: acc -> elem -> acc
  Iter,     // kids = {step, init}; step : S -> S + S (inl = done with final state)
  FlatMap,     // synonym: concat(map(f, xss))
  ReduceByKey, // synonym: map(\kv. (fst kv, fold(f, i, snd kv)), group(xs))
  Bin,      // binary arithmetic / comparison / boolean op
  Un,       // unary op
  Seq,      // kids = {effect, result}: evaluate both, yield the second
  Probe,    // transparent marker used for in-context obligation checks
};

enum class BinOp { Add, Sub, Mul, Div, Lt, Le, Eq, And, Or };
enum class UnOp { Neg, Not, IntToRat };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  int var = -1;
  std::string name;   // display name of Var / Lam binder / Case left binder
  std::string name2;  // Case right binder
  BigInt intVal;
  BigRat ratVal;
  bool boolVal = false;
  BinOp bop = BinOp::Add;
  UnOp uop = UnOp::Neg;
  TypePtr ann;
  Span span;          // originating IL position, when translated
  int probeId = -1;
  std::vector<TermPtr> kids;
};

// Number of binders each child of `t` introduces.
int binderArity(const Term& t, size_t childIdx);

TermPtr mkVar(int index, std::string name = "");
TermPtr mkLam(std::string name, TypePtr paramType, TermPtr body);
TermPtr mkApp(TermPtr f, TermPtr a);
TermPtr mkIntLit(BigInt v);
TermPtr mkRatLit(BigRat v);
TermPtr mkBoolLit(bool v);
TermPtr mkUnitLit();
TermPtr mkArrayLit(TypePtr elemType, std::vector<TermPtr> elems);
TermPtr mkPair(TermPtr a, TermPtr b);
TermPtr mkFst(TermPtr p);
TermPtr mkSnd(TermPtr p);
TermPtr mkInl(TermPtr v, TypePtr rightType);
TermPtr mkInr(TermPtr v, TypePtr leftType);
TermPtr mkCase(TermPtr scrut, std::string ln, TermPtr leftBody, std::string rn, TermPtr rightBody);
TermPtr mkIf(TermPtr c, TermPtr t, TermPtr e);
TermPtr mkIndex(TermPtr arr, TermPtr idx, Span s = {});
TermPtr mkUpdate(TermPtr arr, TermPtr idx, TermPtr v, Span s = {});
TermPtr mkLength(TermPtr arr);
TermPtr mkReplicate(TermPtr n, TermPtr v);
TermPtr mkRange(TermPtr a, TermPtr b);
TermPtr mkZip(TermPtr a, TermPtr b);
TermPtr mkMap(TermPtr f, TermPtr arr);
TermPtr mkConcat(TermPtr arrs);
TermPtr mkGroup(TermPtr kvs);
TermPtr mkFold(TermPtr f, TermPtr init, TermPtr arr);
TermPtr mkIter(TermPtr step, TermPtr init);
TermPtr mkFlatMap(TermPtr f, TermPtr arrs);
TermPtr mkReduceByKey(TermPtr f, TermPtr init, TermPtr kvs);
TermPtr mkBin(BinOp op, TermPtr a, TermPtr b, Span s = {});
TermPtr mkUn(UnOp op, TermPtr a, Span s = {});
TermPtr mkSeq(TermPtr effect, TermPtr result);
TermPtr mkProbe(int id, TermPtr inner);

// Rebuilds `t` with new children (metadata preserved).
TermPtr withKids(const TermPtr& t, std::vector<TermPtr> kids);

// Subterm addressing by child-index paths.
TermPtr subtermAt(const TermPtr& t, const std::vector<int>& path);
TermPtr replaceAt(const TermPtr& t, const std::vector<int>& path, TermPtr replacement);

const char* binOpName(BinOp op);

}  // namespace mrv::ffl
