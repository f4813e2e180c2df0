#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mrv/coupling/predicate.hpp"
#include "mrv/il/typecheck.hpp"

namespace mrv::coupling {

/// Shape of a program admissible for the product construction: straight-line
/// prelude, exactly one top-level loop (for loops are treated as index-guarded
/// whiles), straight-line postlude ending in return.
struct LoopShape {
  std::vector<il::StmtPtr> prelude;
  il::StmtPtr loop;
  std::vector<il::StmtPtr> postlude;
};

struct ProductLoop {
  const il::TypedProgram* p1 = nullptr;
  const il::TypedProgram* p2 = nullptr;
  LoopShape side1, side2;
};

struct StructureError {
  std::string message;
};

/// Splits both programs around their unique top-level loop. StructureError
/// when a side has zero or multiple top-level loops.
Result<ProductLoop, StructureError> buildProduct(const il::TypedProgram& p1,
                                                 const il::TypedProgram& p2);

struct CouplingConfig {
  int trials = 200;
  std::uint64_t seed = 42;
  long long budget = 1000000;
  int maxArrayLen = 6;
  int maxInt = 8;
  int maxIter = 3;
  int maxGraph = 6;
  bool checkEntry = false;  // also check the invariant before iteration 0
  // Statement boundary inside each loop body where the invariant is checked
  // (counting executed statements; -1 = end of the body).
  int atBoundary1 = -1;
  int atBoundary2 = -1;
};

enum class FailKind {
  InvariantBrokenAtEntry,
  InvariantBrokenAfterIteration,
  GuardDisagreement,
  OutputMismatch,
  SideDivergence,
};
const char* failKindName(FailKind k);

struct CouplingReport {
  bool pass = false;
  int trials = 0;
  long long totalIterations = 0;  // across all trials; per trial both sides agree
  // failure data
  FailKind kind = FailKind::OutputMismatch;
  std::uint64_t failSeed = 0;  // replayable trial seed
  int failTrial = -1;
  long long failIteration = -1;
  std::string detail;
  std::string state1, state2;

  std::string render() const;
};

/// Lockstep validation of a coupling invariant over generated inputs: both
/// preludes run, then both loops advance together under guard agreement, the
/// invariant is checked at the configured boundary of every iteration, and the
/// final return values must be exactly equal.
CouplingReport checkCoupling(const il::TypedProgram& p1, const il::TypedProgram& p2,
                             const Predicate& inv, const CouplingConfig& cfg);

/// Replays a single trial by its index (trial seeds derive from cfg.seed by
/// counter), reproducing a Fail exactly.
CouplingReport replayCouplingTrial(const il::TypedProgram& p1, const il::TypedProgram& p2,
                                   const Predicate& inv, const CouplingConfig& cfg,
                                   int trialIndex);

}  // namespace mrv::coupling
