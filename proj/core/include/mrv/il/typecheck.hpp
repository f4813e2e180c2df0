#pragma once

#include <string>
#include <vector>

#include "mrv/diag.hpp"
#include "mrv/il/ast.hpp"

namespace mrv::il {

struct TypeError {
  Span span;
  std::string message;

  std::string render(const std::string& file) const { return renderDiag(file, span, message); }
};

/// A checked program: a typed copy of the AST (every expression node carries its
/// type, Int-to-Rat promotions are explicit nodes) plus the declaration-ordered
/// layout of its locals.
struct TypedProgram {
  Program program;
  // All `var` declarations of the function in declaration order.
  std::vector<std::pair<std::string, TypePtr>> localsLayout;

  const std::vector<Param>& params() const { return program.params; }
  const TypePtr& returnType() const { return program.returnType; }
  TypePtr localType(const std::string& name) const;
};

/// Checks the whole program and reports every error found, not just the first.
Result<TypedProgram, std::vector<TypeError>> typecheckProgram(const Program& p);

}  // namespace mrv::il
