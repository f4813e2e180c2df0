#pragma once

#include <string>
#include <vector>

#include "mrv/chain/manifest.hpp"

namespace mrv::chain {

struct DifferentialSummary {
  int trials = 0;
  int mismatches = 0;
  int bothDiverged = 0;  // trials where both endpoints exhausted the budget
  std::string firstWitness;
  std::uint64_t firstWitnessSeed = 0;
  int firstWitnessTrial = -1;
};

/// Runs both programs' FFL translations on identical generated inputs; exact
/// outcome agreement required (values equal, error kinds equal, or both
/// diverged).
DifferentialSummary differentialTest(const il::TypedProgram& p1, const il::TypedProgram& p2,
                                     const GenConfig& cfg);

struct StepReport {
  int index = 0;
  std::string from, to;
  StepSpec::Kind kind = StepSpec::Kind::Definitional;
  std::string rule;

  enum class Verdict { Justified, EmpiricallyValidated, Definitional, Failed };
  Verdict verdict = Verdict::Failed;
  std::string detail;
  std::vector<int> rewritePath;
  std::vector<std::string> obligationNotes;
  long long obligationChecks = 0;
  int couplingTrials = 0;
  long long couplingIterations = 0;
  double millis = 0;
};

const char* verdictName(StepReport::Verdict v);

struct VerificationReport {
  std::string manifestPath;
  std::vector<StepReport> steps;
  DifferentialSummary endpoint;
  double endpointMillis = 0;
  bool overallPass = false;
  double totalMillis = 0;

  std::string renderText(bool verbose) const;
  std::string renderJson() const;
};

/// Fig-style chain verification: every adjacent pair is justified by its
/// declared method (steps are independent; a failure does not stop later
/// steps), then the chain endpoints are differential-tested.
VerificationReport verifyChain(const ChainManifest& m);

}  // namespace mrv::chain
