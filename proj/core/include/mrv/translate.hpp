#pragma once

#include "mrv/ffl/term.hpp"
#include "mrv/il/typecheck.hpp"
#include "mrv/value.hpp"

namespace mrv {

ffl::TypePtr translateType(const il::TypePtr& t);

/// Translates a checked program into a closed FFL term: a curried lambda over
/// the parameters whose body threads the mutated locals through fold (for
/// loops) and iter (while loops) state tuples. Reads of a local are replaced
/// by its current defining term.
ffl::TermPtr translate(const il::TypedProgram& p);

/// Same result, but the body is translated as two consecutive statement
/// ranges split at `splitAt`; used to check that sequencing composes.
ffl::TermPtr translateSplit(const il::TypedProgram& p, size_t splitAt);

/// FFL literal embedding of a first-order value.
ffl::TermPtr valueToTerm(const Value& v, const ffl::TypePtr& type);

/// Application of a translated program to argument values.
ffl::TermPtr applyToArgs(const ffl::TermPtr& fn, const std::vector<Value>& args,
                         const std::vector<il::TypePtr>& paramTypes);

struct OracleCheck {
  bool agree;
  EvalOutcome ilOutcome;
  EvalOutcome fflOutcome;
};

/// Cross-checks eval(translate(p) args) against the independent IL
/// interpreter. Diverged matches Diverged regardless of step counts.
OracleCheck translationOracleCheck(const il::TypedProgram& p, const std::vector<Value>& args,
                                   long long budget);

}  // namespace mrv
