#pragma once

#include <functional>

#include "mrv/ffl/term.hpp"
#include "mrv/value.hpp"

namespace mrv::ffl {

/// Fired each time evaluation reaches a Probe node. The environment is the
/// de Bruijn stack at that point (index 0 = innermost binder).
using ProbeHook = std::function<void(int probeId, const EnvPtr& env)>;

/// Big-step call-by-value evaluation under a step budget. Beta steps and
/// primitive applications consume budget (bulk array primitives per element).
EvalOutcome eval(const TermPtr& t, long long budget, const ProbeHook& hook = nullptr);

/// Evaluation under an existing environment (used by the obligation checker
/// when re-evaluating terms at a probe point).
EvalOutcome evalUnder(const TermPtr& t, const EnvPtr& env, long long budget,
                      const ProbeHook& hook = nullptr);

/// Applies a closure value to an argument; shared with test oracles.
EvalOutcome applyFunctionValue(const Value& f, const Value& arg, long long budget);

}  // namespace mrv::ffl
