#pragma once

#include <string>

#include "mrv/diag.hpp"
#include "mrv/il/ast.hpp"

namespace mrv::il {

struct ParseError {
  Span span;
  std::string message;
  std::string expected;  // what the parser was looking for

  std::string render(const std::string& file) const { return renderDiag(file, span, message); }
};

/// Parses one IL function definition. The grammar is documented in the README.
Result<Program, ParseError> parseProgram(const std::string& source,
                                         const std::string& sourceName = "<input>");

/// Deterministic source renderer; parse(pretty(parse(s))) == parse(s).
std::string prettyPrint(const Program& p);
std::string prettyPrint(const ExprPtr& e);

}  // namespace mrv::il
