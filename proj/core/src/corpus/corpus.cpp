#include "mrv/corpus/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mrv::corpus {

namespace {

std::string& rootStorage() {
  static std::string root;
  return root;
}

struct EntryInfo {
  const char* id;
  const char* file;
  const char* provenance;
};

// ids map 1:1 to files under the corpus root
const EntryInfo kEntries[] = {
    {"pagerank/listing-1", "pagerank/listing-1.il", "pagerank chain, program 1 of 9 (imperative original)"},
    {"pagerank/listing-2", "pagerank/listing-2.il", "pagerank chain, program 2 of 9 (after map-introduce)"},
    {"pagerank/listing-3", "pagerank/listing-3.il", "pagerank chain, program 3 of 9 (zip of links and ranks)"},
    {"pagerank/listing-4", "pagerank/listing-4.il", "pagerank chain, program 4 of 9 (after range-remove)"},
    {"pagerank/listing-5", "pagerank/listing-5.il", "pagerank chain, program 5 of 9 (contributions precomputed)"},
    {"pagerank/listing-6", "pagerank/listing-6.il", "pagerank chain, program 6 of 9 (after concat-intro)"},
    {"pagerank/listing-7", "pagerank/listing-7.il", "pagerank chain, program 7 of 9 (flatMap form)"},
    {"pagerank/listing-8", "pagerank/listing-8.il", "pagerank chain, program 8 of 9 (after group-intro)"},
    {"pagerank/listing-9", "pagerank/listing-9.il", "pagerank chain, program 9 of 9 (reduceByKey form)"},
    {"sumarrays/plain", "sumarrays/plain.il", "element-wise sum, direct indexing"},
    {"sumarrays/zipped", "sumarrays/zipped.il", "element-wise sum over zip(xs, ys)"},
};

}  // namespace

void setCorpusRoot(const std::string& dir) { rootStorage() = dir; }

std::string corpusRoot() {
  if (!rootStorage().empty()) return rootStorage();
  if (const char* env = std::getenv("MRV_CORPUS_DIR")) return env;
  return "corpus";
}

std::vector<std::string> listPrograms() {
  std::vector<std::string> ids;
  for (const auto& e : kEntries) ids.push_back(e.id);
  return ids;
}

Result<CorpusEntry, CorpusError> getProgram(const std::string& id) {
  for (const auto& e : kEntries) {
    if (id == e.id) {
      CorpusEntry entry;
      entry.id = e.id;
      entry.path = corpusRoot() + "/" + e.file;
      entry.provenance = e.provenance;
      std::ifstream in(entry.path, std::ios::binary);
      if (!in) return CorpusError{"cannot read corpus file '" + entry.path + "'"};
      std::ostringstream buf;
      buf << in.rdbuf();
      entry.source = buf.str();
      return entry;
    }
  }
  return CorpusError{"unknown corpus id '" + id + "'"};
}

Result<chain::ChainManifest, CorpusError> getChain(const std::string& name) {
  if (name != "pagerank" && name != "sumarrays")
    return CorpusError{"unknown chain '" + name + "' (expected pagerank or sumarrays)"};
  auto m = chain::loadManifest(corpusRoot() + "/" + name + ".chain.json");
  if (!m.ok()) return CorpusError{m.error().render()};
  return m.value();
}

}  // namespace mrv::corpus
