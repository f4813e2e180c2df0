#pragma once

#include <string>
#include <vector>

#include "mrv/chain/gen.hpp"
#include "mrv/coupling/predicate.hpp"
#include "mrv/il/typecheck.hpp"

namespace mrv::chain {

struct StepSpec {
  enum class Kind { Rewrite, Coupling, Definitional };
  Kind kind = Kind::Definitional;
  std::string rule;           // Rewrite: name from the rule catalog
  std::string invariantText;  // Coupling: predicate source
  coupling::Predicate predicate;
  int atBoundary1 = -1;  // Coupling: statement boundary per side (-1 = body end)
  int atBoundary2 = -1;
};

const char* stepKindName(StepSpec::Kind k);

struct ProgramEntry {
  std::string path;      // as written in the manifest
  std::string resolved;  // path actually read
  std::string source;
  il::TypedProgram typed;
};

struct ChainManifest {
  std::string path;
  std::vector<ProgramEntry> programs;
  std::vector<StepSpec> steps;
  GenConfig config;
  bool checkEntry = false;
};

struct ManifestError {
  std::string field;  // e.g. "steps[2].rule"
  std::string message;

  std::string render() const { return field.empty() ? message : field + ": " + message; }
};

/// Loads and fully validates a chain manifest: every program file parses and
/// type-checks, signatures match across the chain, every rule name resolves,
/// every predicate parses against its pair of programs.
Result<ChainManifest, ManifestError> loadManifest(const std::string& path);

/// Same, over an in-memory JSON document (program paths resolve against
/// baseDir). Used by the corpus and by tests building mutated chains.
Result<ChainManifest, ManifestError> loadManifestText(const std::string& jsonText,
                                                      const std::string& baseDir,
                                                      const std::string& displayPath);

}  // namespace mrv::chain
