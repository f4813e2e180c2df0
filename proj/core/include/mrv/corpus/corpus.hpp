#pragma once

#include <string>
#include <vector>

#include "mrv/chain/manifest.hpp"

namespace mrv::corpus {

struct CorpusEntry {
  std::string id;          // e.g. "pagerank/listing-1"
  std::string path;        // file the source was read from
  std::string source;
  std::string provenance;  // short note on the entry's place in its chain
};

struct CorpusError {
  std::string message;
};

/// Root directory holding the .il sources and .chain.json manifests.
/// Resolution order: explicit setCorpusRoot, $MRV_CORPUS_DIR, "./corpus".
void setCorpusRoot(const std::string& dir);
std::string corpusRoot();

std::vector<std::string> listPrograms();

Result<CorpusEntry, CorpusError> getProgram(const std::string& id);

/// Loads a shipped chain by name ("pagerank" or "sumarrays").
Result<chain::ChainManifest, CorpusError> getChain(const std::string& name);

}  // namespace mrv::corpus
