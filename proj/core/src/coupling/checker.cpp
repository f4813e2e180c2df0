#include "mrv/coupling/checker.hpp"

#include <optional>

#include "mrv/chain/gen.hpp"

namespace mrv::coupling {

namespace {

// Advances one side's loop; for loops run as index-guarded whiles over a
// snapshot of the iterated array.
struct LoopDriver {
  il::Machine& m;
  const il::StmtPtr& loop;
  bool isFor;
  Value arr;
  size_t idx = 0;

  std::optional<EvalOutcome> enter() {
    if (isFor) {
      auto r = m.eval(loop->e0);
      if (!r.ok()) return r.error();
      arr = r.value();
    }
    return std::nullopt;
  }

  Result<bool, EvalOutcome> guard() {
    if (isFor) return idx < arr.asArray().size();
    auto r = m.eval(loop->e0);
    if (!r.ok()) return r.error();
    return r.value().asBool();
  }

  // Charges the iteration and binds the loop variable; false = budget gone.
  bool beginIteration() {
    if (!m.chargeIteration()) return false;
    if (isFor) m.set(loop->name, arr.asArray()[idx]);
    return true;
  }

  std::optional<EvalOutcome> runBody(size_t from, size_t to) { return m.run(loop->body, from, to); }
  size_t bodySize() const { return loop->body.size(); }
  void endIteration() {
    if (isFor) ++idx;
  }
};

struct TrialFail {
  FailKind kind;
  long long iteration = -1;
  std::string detail;
  std::string state1, state2;
};

std::string sideOutcome(int side, const EvalOutcome& o) {
  std::string what = o.isDiverged() ? "budget exhausted" : o.render();
  return "side " + std::to_string(side) + ": " + what;
}

class TrialRunner {
 public:
  TrialRunner(const ProductLoop& prod, const Predicate& inv, const CouplingConfig& cfg)
      : prod_(prod), inv_(inv), cfg_(cfg) {}

  // nullopt = trial passed; iterations_ accumulates lockstep rounds.
  std::optional<TrialFail> run(const std::vector<Value>& args) {
    il::Machine m1(*prod_.p1, args, cfg_.budget);
    il::Machine m2(*prod_.p2, args, cfg_.budget);

    if (auto o = m1.run(prod_.side1.prelude)) return divergence(1, *o, m1, m2);
    if (auto o = m2.run(prod_.side2.prelude)) return divergence(2, *o, m1, m2);

    LoopDriver d1{m1, prod_.side1.loop, prod_.side1.loop->kind == il::StmtKind::For, {}, 0};
    LoopDriver d2{m2, prod_.side2.loop, prod_.side2.loop->kind == il::StmtKind::For, {}, 0};
    if (auto o = d1.enter()) return divergence(1, *o, m1, m2);
    if (auto o = d2.enter()) return divergence(2, *o, m1, m2);

    if (cfg_.checkEntry) {
      auto held = evaluatePredicate(inv_, m1, m2);
      if (!held.ok())
        return fail(FailKind::InvariantBrokenAtEntry, -1, held.error().message, m1, m2);
      if (!held.value())
        return fail(FailKind::InvariantBrokenAtEntry, -1, "the invariant is false at loop entry",
                    m1, m2);
    }

    long long iteration = 0;
    while (true) {
      auto g1 = d1.guard();
      if (!g1.ok()) return divergence(1, g1.error(), m1, m2);
      auto g2 = d2.guard();
      if (!g2.ok()) return divergence(2, g2.error(), m1, m2);
      if (g1.value() != g2.value())
        return fail(FailKind::GuardDisagreement, iteration,
                    "guards disagree: side 1 = " + std::string(g1.value() ? "true" : "false") +
                        ", side 2 = " + std::string(g2.value() ? "true" : "false"),
                    m1, m2);
      if (!g1.value()) break;

      if (!d1.beginIteration())
        return fail(FailKind::SideDivergence, iteration, "side 1: budget exhausted", m1, m2);
      if (!d2.beginIteration())
        return fail(FailKind::SideDivergence, iteration, "side 2: budget exhausted", m1, m2);

      size_t b1 = cfg_.atBoundary1 < 0 ? d1.bodySize()
                                       : std::min<size_t>(cfg_.atBoundary1, d1.bodySize());
      size_t b2 = cfg_.atBoundary2 < 0 ? d2.bodySize()
                                       : std::min<size_t>(cfg_.atBoundary2, d2.bodySize());
      if (auto o = d1.runBody(0, b1)) return divergence(1, *o, m1, m2);
      if (auto o = d2.runBody(0, b2)) return divergence(2, *o, m1, m2);

      auto held = evaluatePredicate(inv_, m1, m2);
      if (!held.ok())
        return fail(FailKind::InvariantBrokenAfterIteration, iteration, held.error().message, m1,
                    m2);
      if (!held.value())
        return fail(FailKind::InvariantBrokenAfterIteration, iteration,
                    "the invariant is false at the annotation point", m1, m2);

      if (auto o = d1.runBody(b1, d1.bodySize())) return divergence(1, *o, m1, m2);
      if (auto o = d2.runBody(b2, d2.bodySize())) return divergence(2, *o, m1, m2);
      d1.endIteration();
      d2.endIteration();
      ++iteration;
    }
    iterations_ += iteration;

    auto o1 = m1.run(prod_.side1.postlude);
    auto o2 = m2.run(prod_.side2.postlude);
    if (!o1 || !o1->isValue()) {
      if (o1) return divergence(1, *o1, m1, m2);
      return fail(FailKind::SideDivergence, iteration, "side 1 did not return", m1, m2);
    }
    if (!o2 || !o2->isValue()) {
      if (o2) return divergence(2, *o2, m1, m2);
      return fail(FailKind::SideDivergence, iteration, "side 2 did not return", m1, m2);
    }
    if (!(o1->value == o2->value))
      return fail(FailKind::OutputMismatch, iteration,
                  "returned " + o1->value.render() + " vs " + o2->value.render(), m1, m2);
    return std::nullopt;
  }

  long long iterations() const { return iterations_; }

 private:
  const ProductLoop& prod_;
  const Predicate& inv_;
  const CouplingConfig& cfg_;
  long long iterations_ = 0;

  TrialFail divergence(int side, const EvalOutcome& o, const il::Machine& m1,
                       const il::Machine& m2) {
    return TrialFail{FailKind::SideDivergence, -1, sideOutcome(side, o), m1.renderEnv(),
                     m2.renderEnv()};
  }
  TrialFail fail(FailKind kind, long long iteration, std::string detail, const il::Machine& m1,
                 const il::Machine& m2) {
    return TrialFail{kind, iteration, std::move(detail), m1.renderEnv(), m2.renderEnv()};
  }
};

chain::GenConfig toGenConfig(const CouplingConfig& cfg) {
  chain::GenConfig g;
  g.trials = cfg.trials;
  g.seed = cfg.seed;
  g.budget = cfg.budget;
  g.maxArrayLen = cfg.maxArrayLen;
  g.maxInt = cfg.maxInt;
  g.maxIter = cfg.maxIter;
  g.maxGraph = cfg.maxGraph;
  return g;
}

std::vector<il::TypePtr> signatureOf(const il::TypedProgram& p) {
  std::vector<il::TypePtr> sig;
  for (const auto& param : p.params()) sig.push_back(param.type);
  return sig;
}

CouplingReport runTrials(const il::TypedProgram& p1, const il::TypedProgram& p2,
                         const Predicate& inv, const CouplingConfig& cfg, int fromTrial,
                         int toTrial, std::optional<std::uint64_t> fixedSeed) {
  CouplingReport report;
  auto prod = buildProduct(p1, p2);
  if (!prod.ok()) {
    report.pass = false;
    report.kind = FailKind::GuardDisagreement;
    report.detail = "not a product-compatible pair: " + prod.error().message;
    return report;
  }
  TrialRunner runner(prod.value(), inv, cfg);
  chain::GenConfig gcfg = toGenConfig(cfg);
  std::vector<il::TypePtr> sig = signatureOf(p1);

  for (int trial = fromTrial; trial < toTrial; ++trial) {
    std::uint64_t ts = fixedSeed ? *fixedSeed : chain::trialSeed(cfg.seed, trial);
    auto args = chain::genArgs(sig, ts, gcfg, trial);
    if (!args.ok()) {
      report.pass = false;
      report.kind = FailKind::SideDivergence;
      report.failTrial = trial;
      report.failSeed = ts;
      report.detail = "input generation failed: " + args.error();
      return report;
    }
    auto failed = runner.run(args.value());
    ++report.trials;
    if (failed) {
      report.pass = false;
      report.kind = failed->kind;
      report.failTrial = trial;
      report.failSeed = ts;
      report.failIteration = failed->iteration;
      report.detail = failed->detail;
      report.state1 = failed->state1;
      report.state2 = failed->state2;
      report.totalIterations = runner.iterations();
      return report;
    }
  }
  report.pass = true;
  report.totalIterations = runner.iterations();
  return report;
}

}  // namespace

CouplingReport checkCoupling(const il::TypedProgram& p1, const il::TypedProgram& p2,
                             const Predicate& inv, const CouplingConfig& cfg) {
  return runTrials(p1, p2, inv, cfg, 0, cfg.trials, std::nullopt);
}

CouplingReport replayCouplingTrial(const il::TypedProgram& p1, const il::TypedProgram& p2,
                                   const Predicate& inv, const CouplingConfig& cfg,
                                   int trialIndex) {
  // Trial seeds derive from cfg.seed by counter, so re-running the one trial
  // reproduces the identical inputs and verdict.
  return runTrials(p1, p2, inv, cfg, trialIndex, trialIndex + 1, std::nullopt);
}

}  // namespace mrv::coupling
