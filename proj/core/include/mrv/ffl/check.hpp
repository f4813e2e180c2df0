#pragma once

#include <string>
#include <vector>

#include "mrv/diag.hpp"
#include "mrv/ffl/term.hpp"

namespace mrv::ffl {

struct TypeError {
  std::vector<int> path;  // child indices from the root to the offending node
  std::string message;

  std::string render() const;
};

/// Returns the unique type of `t` under the given context (innermost binder
/// first), or the first failing node.
Result<TypePtr, TypeError> typecheckTerm(const TermPtr& t,
                                         const std::vector<TypePtr>& context = {});

/// Rewrites flatMap/reduceByKey into their defining core expressions.
/// Requires a well-typed term; the result is synonym-free and has the same type.
TermPtr expandSynonyms(const TermPtr& t, const std::vector<TypePtr>& context = {});

/// Deterministic textual rendering used in diagnostics and by `mrv translate`.
std::string renderTerm(const TermPtr& t);

}  // namespace mrv::ffl
