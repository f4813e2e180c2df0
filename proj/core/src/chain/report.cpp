#include <sstream>

#include "json.hpp"
#include "mrv/chain/verifier.hpp"

namespace mrv::chain {

std::string VerificationReport::renderText(bool verbose) const {
  std::ostringstream out;
  out << "chain: " << manifestPath << "\n";
  for (const auto& s : steps) {
    out << "  step " << s.index + 1 << ": " << s.from << " -> " << s.to << "  ["
        << stepKindName(s.kind) << (s.rule.empty() ? "" : " " + s.rule) << "]  "
        << verdictName(s.verdict);
    if (!s.detail.empty()) out << "  " << s.detail;
    out << "  (" << static_cast<long long>(s.millis) << " ms)\n";
    if (verbose) {
      for (const auto& note : s.obligationNotes) out << "      obligation: " << note << "\n";
    }
  }
  out << "  endpoints: " << steps.front().from << " vs " << steps.back().to << "  "
      << endpoint.trials << " trials, " << endpoint.mismatches << " mismatches";
  if (endpoint.bothDiverged > 0) out << " (" << endpoint.bothDiverged << " trials diverged on both sides)";
  out << "  (" << static_cast<long long>(endpointMillis) << " ms)\n";
  if (endpoint.mismatches > 0)
    out << "    first mismatch: trial " << endpoint.firstWitnessTrial << " seed "
        << endpoint.firstWitnessSeed << ": " << endpoint.firstWitness << "\n";
  out << "overall: " << (overallPass ? "PASS" : "FAIL") << "  ("
      << static_cast<long long>(totalMillis) << " ms)\n";
  return out.str();
}

std::string VerificationReport::renderJson() const {
  nlohmann::json j;
  j["manifest"] = manifestPath;
  j["overall"] = overallPass ? "pass" : "fail";
  j["totalMs"] = totalMillis;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json js;
    js["index"] = s.index;
    js["from"] = s.from;
    js["to"] = s.to;
    js["kind"] = stepKindName(s.kind);
    if (!s.rule.empty()) js["rule"] = s.rule;
    js["verdict"] = verdictName(s.verdict);
    js["detail"] = s.detail;
    if (!s.rewritePath.empty()) js["path"] = s.rewritePath;
    if (!s.obligationNotes.empty()) js["obligations"] = s.obligationNotes;
    if (s.obligationChecks > 0) js["obligationChecks"] = s.obligationChecks;
    if (s.kind == StepSpec::Kind::Coupling) {
      js["trials"] = s.couplingTrials;
      js["lockstepIterations"] = s.couplingIterations;
    }
    js["ms"] = s.millis;
    j["steps"].push_back(std::move(js));
  }
  j["endpoint"] = {{"trials", endpoint.trials},
                   {"mismatches", endpoint.mismatches},
                   {"bothDiverged", endpoint.bothDiverged},
                   {"ms", endpointMillis}};
  if (endpoint.mismatches > 0) {
    j["endpoint"]["firstWitness"] = endpoint.firstWitness;
    j["endpoint"]["firstWitnessTrial"] = endpoint.firstWitnessTrial;
    j["endpoint"]["firstWitnessSeed"] = endpoint.firstWitnessSeed;
  }
  return j.dump(2);
}

}  // namespace mrv::chain
