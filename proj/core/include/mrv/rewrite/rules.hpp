#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrv/diag.hpp"
#include "mrv/ffl/term.hpp"
#include "mrv/value.hpp"

namespace mrv::rewrite {

struct RuleInfo {
  std::string name;
  bool definitional;     // true when the step is invisible after synonym expansion
  std::string summary;   // what the rule does and when it applies
  std::string lhs, rhs;  // schematic patterns, for `mrv rules`
};

/// The rule catalog: map-introduce, range-remove, concat-intro, group-intro,
/// flatmap-fuse, reducebykey-fold. Names are stable identifiers referenced
/// from chain manifests.
const std::vector<RuleInfo>& listRules();
const RuleInfo* findRule(const std::string& name);

/// A semantic side condition of a rule application: a boolean term over the
/// binder context at the match position (innermost-first types).
struct Obligation {
  ffl::TermPtr term;
  std::vector<ffl::TypePtr> context;
  std::string description;
};

struct Justification {
  std::string rule;
  std::vector<int> path;  // child indices from the root of src
  std::vector<std::pair<std::string, std::string>> instantiation;  // metavar -> rendering
  ffl::TermPtr rewrittenSub;    // the instantiated rhs placed at `path`
  ffl::TermPtr rewrittenWhole;  // src with the rewrite performed (alpha-equal to tgt)
  std::vector<Obligation> obligations;
  std::vector<std::vector<int>> alternatePaths;  // other positions that also reproduce tgt
  long long positionsSearched = 0;
};

struct Mismatch {
  enum class Reason { UnknownRule, NoPositionMatched, RewriteDiffers };
  Reason reason;
  std::string detail;
  long long positionsSearched = 0;
};

/// Searches all subterm positions of src (outermost-first, leftmost) for an
/// instantiation of the named rule that rewrites src into a term alpha-equal
/// to tgt. Both terms must be closed and well-typed with the same type.
Result<Justification, Mismatch> justifyStep(const std::string& rule, const ffl::TermPtr& src,
                                            const ffl::TermPtr& tgt);

struct ObligationConfig {
  int trials = 200;
  std::uint64_t seed = 42;
  int maxArrayLen = 6;
  int maxInt = 8;
  long long budget = 1000000;
};

struct ObligationResult {
  enum class Kind { TestedPass, Counterexample, GeneratorFailure };
  Kind kind;
  int trials = 0;
  std::string detail;  // counterexample environment or generator diagnostic
};

/// Discharges an obligation by bounded testing: free variables are generated
/// by type, the term is evaluated, and any false/error is a counterexample.
/// TestedPass records trial counts; it never claims a proof.
ObligationResult checkObligation(const Obligation& ob, const ObligationConfig& cfg);

/// In-context discharge: evaluates `wholeWithProbe` (a closed term already
/// applied to inputs by the caller, containing one Probe node) and tests every
/// obligation each time evaluation reaches the probe.
struct ProbeCheck {
  bool allHeld = true;
  long long checksPerformed = 0;
  std::string counterexample;
};
ProbeCheck checkObligationsAtProbe(const ffl::TermPtr& appliedWithProbe, int probeId,
                                   const std::vector<Obligation>& obs, long long budget);

}  // namespace mrv::rewrite
