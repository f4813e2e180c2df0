#include <sstream>

#include "mrv/chain/verifier.hpp"
#include "mrv/ffl/eval.hpp"
#include "mrv/translate.hpp"

namespace mrv::chain {

DifferentialSummary differentialTest(const il::TypedProgram& p1, const il::TypedProgram& p2,
                                     const GenConfig& cfg) {
  DifferentialSummary out;
  ffl::TermPtr t1 = translate(p1);
  ffl::TermPtr t2 = translate(p2);
  std::vector<il::TypePtr> sig;
  for (const auto& p : p1.params()) sig.push_back(p.type);

  for (int trial = 0; trial < cfg.trials; ++trial) {
    std::uint64_t ts = trialSeed(cfg.seed, trial);
    auto args = genArgs(sig, ts, cfg, trial);
    if (!args.ok()) {
      ++out.mismatches;
      if (out.firstWitnessTrial < 0) {
        out.firstWitnessTrial = trial;
        out.firstWitnessSeed = ts;
        out.firstWitness = "input generation failed: " + args.error();
      }
      ++out.trials;
      continue;
    }
    EvalOutcome o1 = ffl::eval(applyToArgs(t1, args.value(), sig), cfg.budget);
    EvalOutcome o2 = ffl::eval(applyToArgs(t2, args.value(), sig), cfg.budget);
    ++out.trials;
    if (o1.isDiverged() && o2.isDiverged()) ++out.bothDiverged;
    if (!o1.agrees(o2)) {
      ++out.mismatches;
      if (out.firstWitnessTrial < 0) {
        out.firstWitnessTrial = trial;
        out.firstWitnessSeed = ts;
        std::ostringstream w;
        w << "args (";
        for (size_t i = 0; i < args.value().size(); ++i) {
          if (i) w << ", ";
          w << args.value()[i].render();
        }
        w << ") -> " << o1.render() << " vs " << o2.render();
        out.firstWitness = w.str();
      }
    }
  }
  return out;
}

}  // namespace mrv::chain
