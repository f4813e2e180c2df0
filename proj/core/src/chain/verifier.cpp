#include "mrv/chain/verifier.hpp"

#include <chrono>

#include "mrv/coupling/checker.hpp"
#include "mrv/ffl/check.hpp"
#include "mrv/ffl/subst.hpp"
#include "mrv/rewrite/rules.hpp"
#include "mrv/translate.hpp"

namespace mrv::chain {

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

coupling::CouplingConfig makeCouplingConfig(const ChainManifest& m, const StepSpec& step) {
  coupling::CouplingConfig cfg;
  cfg.trials = m.config.trials;
  cfg.seed = m.config.seed;
  cfg.budget = m.config.budget;
  cfg.maxArrayLen = m.config.maxArrayLen;
  cfg.maxInt = m.config.maxInt;
  cfg.maxIter = m.config.maxIter;
  cfg.maxGraph = m.config.maxGraph;
  cfg.checkEntry = m.checkEntry;
  cfg.atBoundary1 = step.atBoundary1;
  cfg.atBoundary2 = step.atBoundary2;
  return cfg;
}

// Discharges a rewrite's obligations on reachable states: the source term is
// probed at the match position and run on generated whole-program inputs; the
// obligations are evaluated in the live environment each time the position is
// reached.
struct InContextResult {
  bool pass = true;
  long long checks = 0;
  std::string detail;
};

InContextResult dischargeInContext(const ffl::TermPtr& src, const rewrite::Justification& j,
                                   const il::TypedProgram& program, const GenConfig& cfg) {
  InContextResult result;
  if (j.obligations.empty()) return result;

  const int probeId = 1;
  ffl::TermPtr probed =
      ffl::replaceAt(src, j.path, ffl::mkProbe(probeId, ffl::subtermAt(src, j.path)));
  std::vector<il::TypePtr> sig;
  for (const auto& p : program.params()) sig.push_back(p.type);

  for (int trial = 0; trial < cfg.trials && result.pass; ++trial) {
    std::uint64_t ts = trialSeed(cfg.seed, trial);
    auto args = genArgs(sig, ts, cfg, trial);
    if (!args.ok()) {
      result.pass = false;
      result.detail = "input generation failed: " + args.error();
      break;
    }
    ffl::TermPtr applied = applyToArgs(probed, args.value(), sig);
    rewrite::ProbeCheck check =
        rewrite::checkObligationsAtProbe(applied, probeId, j.obligations, cfg.budget);
    result.checks += check.checksPerformed;
    if (!check.allHeld) {
      result.pass = false;
      result.detail = "obligation failed on trial " + std::to_string(trial) + " (seed " +
                      std::to_string(ts) + "): " + check.counterexample;
    }
  }
  return result;
}

StepReport runStep(const ChainManifest& m, size_t i, const std::vector<ffl::TermPtr>& terms) {
  const StepSpec& step = m.steps[i];
  const ProgramEntry& from = m.programs[i];
  const ProgramEntry& to = m.programs[i + 1];

  StepReport report;
  report.index = static_cast<int>(i);
  report.from = from.path;
  report.to = to.path;
  report.kind = step.kind;
  report.rule = step.rule;

  auto t0 = Clock::now();
  switch (step.kind) {
    case StepSpec::Kind::Rewrite: {
      auto justified = rewrite::justifyStep(step.rule, terms[i], terms[i + 1]);
      if (!justified.ok()) {
        report.verdict = StepReport::Verdict::Failed;
        report.detail = justified.error().detail + " (" +
                        std::to_string(justified.error().positionsSearched) +
                        " positions searched)";
        break;
      }
      const rewrite::Justification& j = justified.value();
      report.rewritePath = j.path;
      InContextResult obs = dischargeInContext(terms[i], j, from.typed, m.config);
      report.obligationChecks = obs.checks;
      for (const auto& ob : j.obligations) report.obligationNotes.push_back(ob.description);
      if (!obs.pass) {
        report.verdict = StepReport::Verdict::Failed;
        report.detail = obs.detail;
        break;
      }
      report.verdict = StepReport::Verdict::Justified;
      std::string path;
      for (int p : j.path) path += (path.empty() ? "" : ".") + std::to_string(p);
      report.detail = "rule " + step.rule + " at position [" + path + "]";
      if (!j.obligations.empty())
        report.detail += ", " + std::to_string(j.obligations.size()) +
                         " obligation(s) tested in context (" + std::to_string(obs.checks) +
                         " checks)";
      if (!j.alternatePaths.empty())
        report.detail += ", " + std::to_string(j.alternatePaths.size()) + " alternate position(s)";
      break;
    }
    case StepSpec::Kind::Coupling: {
      coupling::CouplingConfig cfg = makeCouplingConfig(m, step);
      coupling::CouplingReport rep =
          coupling::checkCoupling(from.typed, to.typed, step.predicate, cfg);
      report.couplingTrials = rep.trials;
      report.couplingIterations = rep.totalIterations;
      if (rep.pass) {
        report.verdict = StepReport::Verdict::EmpiricallyValidated;
        report.detail = rep.render();
      } else {
        report.verdict = StepReport::Verdict::Failed;
        report.detail = rep.render();
      }
      break;
    }
    case StepSpec::Kind::Definitional: {
      ffl::TermPtr e1 = ffl::expandSynonyms(terms[i]);
      ffl::TermPtr e2 = ffl::expandSynonyms(terms[i + 1]);
      if (ffl::alphaEqual(e1, e2)) {
        report.verdict = StepReport::Verdict::Definitional;
        report.detail = "alpha-equal after synonym expansion";
      } else {
        report.verdict = StepReport::Verdict::Failed;
        report.detail = "terms differ after synonym expansion: " + ffl::diffTerms(e1, e2);
      }
      break;
    }
  }
  report.millis = msSince(t0);
  return report;
}

}  // namespace

const char* verdictName(StepReport::Verdict v) {
  switch (v) {
    case StepReport::Verdict::Justified: return "Justified";
    case StepReport::Verdict::EmpiricallyValidated: return "EmpiricallyValidated";
    case StepReport::Verdict::Definitional: return "Definitional";
    case StepReport::Verdict::Failed: return "Failed";
  }
  return "?";
}

VerificationReport verifyChain(const ChainManifest& m) {
  VerificationReport report;
  report.manifestPath = m.path;
  auto t0 = Clock::now();

  std::vector<ffl::TermPtr> terms;
  terms.reserve(m.programs.size());
  for (const auto& p : m.programs) terms.push_back(translate(p.typed));

  // Steps are independent of one another: a failure never blocks later steps.
  for (size_t i = 0; i < m.steps.size(); ++i) report.steps.push_back(runStep(m, i, terms));

  auto te = Clock::now();
  report.endpoint = differentialTest(m.programs.front().typed, m.programs.back().typed, m.config);
  report.endpointMillis = msSince(te);

  report.overallPass = report.endpoint.mismatches == 0;
  for (const auto& s : report.steps)
    if (s.verdict == StepReport::Verdict::Failed) report.overallPass = false;
  report.totalMillis = msSince(t0);
  return report;
}

}  // namespace mrv::chain
