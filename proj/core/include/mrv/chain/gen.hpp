#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrv/diag.hpp"
#include "mrv/il/ast.hpp"
#include "mrv/value.hpp"

namespace mrv::chain {

struct GenConfig {
  int trials = 200;
  std::uint64_t seed = 42;
  long long budget = 1000000;
  int maxArrayLen = 6;
  int maxInt = 8;
  int maxIter = 3;
  int maxGraph = 6;
};

/// Per-trial seed derived by counter; generation is a pure function of it.
std::uint64_t trialSeed(std::uint64_t seed, int trial);

/// Deterministic argument generation for a first-order parameter signature.
/// The constraint profile is inferred from the signature shape:
///   ([[Int]], Rat, Int) — adjacency list (every index in range, out-degree
///     >= 1, at least one page), exact rational dampening strictly inside
///     (0,1), iterations in [0, maxIter]; early trials cover the smallest
///     graphs (self-loop, 2-cycle) and zero iterations.
///   ([T], [T]) — equal-length arrays.
///   otherwise — unconstrained by type; empty arrays and singletons appear.
/// Function-typed parameters are not generable and yield an error.
Result<std::vector<Value>, std::string> genArgs(const std::vector<il::TypePtr>& sig,
                                                std::uint64_t trialSeedValue, const GenConfig& cfg,
                                                int trialIndex);

/// Random first-order value of the given type (the unconstrained profile).
Result<Value, std::string> genValueOfType(const il::TypePtr& t, std::uint64_t seedValue,
                                          const GenConfig& cfg);

}  // namespace mrv::chain
