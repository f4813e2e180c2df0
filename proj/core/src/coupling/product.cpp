#include "mrv/coupling/checker.hpp"

namespace mrv::coupling {

namespace {

Result<LoopShape, StructureError> splitBody(const il::TypedProgram& p, const char* which) {
  LoopShape shape;
  int loops = 0;
  for (const auto& s : p.program.body) {
    if (s->kind == il::StmtKind::For || s->kind == il::StmtKind::While) {
      ++loops;
      if (loops == 1) {
        shape.loop = s;
        continue;
      }
    }
    if (loops == 0)
      shape.prelude.push_back(s);
    else
      shape.postlude.push_back(s);
  }
  if (loops == 0)
    return StructureError{std::string(which) +
                          " has no top-level loop; such steps need a rewrite rule instead"};
  if (loops > 1)
    return StructureError{std::string(which) + " has " + std::to_string(loops) +
                          " top-level loops; the product construction needs exactly one"};
  return shape;
}

}  // namespace

Result<ProductLoop, StructureError> buildProduct(const il::TypedProgram& p1,
                                                 const il::TypedProgram& p2) {
  auto s1 = splitBody(p1, "program 1");
  if (!s1.ok()) return s1.error();
  auto s2 = splitBody(p2, "program 2");
  if (!s2.ok()) return s2.error();
  ProductLoop out;
  out.p1 = &p1;
  out.p2 = &p2;
  out.side1 = std::move(s1.value());
  out.side2 = std::move(s2.value());
  return out;
}

const char* failKindName(FailKind k) {
  switch (k) {
    case FailKind::InvariantBrokenAtEntry: return "InvariantBrokenAtEntry";
    case FailKind::InvariantBrokenAfterIteration: return "InvariantBrokenAfterIteration";
    case FailKind::GuardDisagreement: return "GuardDisagreement";
    case FailKind::OutputMismatch: return "OutputMismatch";
    case FailKind::SideDivergence: return "SideDivergence";
  }
  return "?";
}

std::string CouplingReport::render() const {
  if (pass)
    return "empirically validated (" + std::to_string(trials) + " trials, " +
           std::to_string(totalIterations) + " lockstep iterations)";
  std::string out = std::string("FAIL ") + failKindName(kind) + " at trial " +
                    std::to_string(failTrial) + " (seed " + std::to_string(failSeed) + ")";
  if (failIteration >= 0) out += ", iteration " + std::to_string(failIteration);
  if (!detail.empty()) out += ": " + detail;
  if (!state1.empty()) out += "\n  side 1: " + state1;
  if (!state2.empty()) out += "\n  side 2: " + state2;
  return out;
}

}  // namespace mrv::coupling
