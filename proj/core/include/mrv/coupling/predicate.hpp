#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mrv/il/interp.hpp"
#include "mrv/il/typecheck.hpp"

namespace mrv::coupling {

// Coupling predicates are IL expressions over the paired program states:
// variables carry a _1/_2 suffix naming the side, and bounded quantification
// is written `forall i in indices(arrayExpr): body`. Lambda-taking builtins
// are not allowed inside predicates.
enum class PredKind {
  SideVar,   // side + base name
  BoundVar,  // quantifier binder
  IntLit, RatLit, BoolLit,
  Bin, Un, Index, Pair, Call,
  Forall,    // kids = {rangeArray, body}
  IntToRat,
};

struct PredExpr;
using PredExprPtr = std::shared_ptr<const PredExpr>;

struct PredExpr {
  PredKind kind;
  Span span;
  int side = 0;       // SideVar: 1 or 2
  std::string name;   // SideVar base / BoundVar / Forall binder
  BigInt intVal;
  BigRat ratVal;
  bool boolVal = false;
  il::BinOp bop = il::BinOp::Add;
  il::UnOp uop = il::UnOp::Neg;
  il::Builtin builtin = il::Builtin::Length;
  il::TypePtr type;
  std::vector<PredExprPtr> kids;
};

struct PredicateError {
  Span span;
  std::string message;
};

struct Predicate {
  PredExprPtr expr;  // typed, with promotions made explicit
  std::string text;
};

/// Parses and type-checks a predicate against the two programs' scopes
/// (parameters and declared locals per side).
Result<Predicate, PredicateError> parsePredicate(const std::string& text,
                                                 const il::TypedProgram& p1,
                                                 const il::TypedProgram& p2);

/// Evaluates the predicate over two concrete machine states. Quantifiers
/// enumerate the concrete index ranges; '=' is exact structural equality.
Result<bool, PredicateError> evaluatePredicate(const Predicate& p, const il::Machine& side1,
                                               const il::Machine& side2);

}  // namespace mrv::coupling
