#include "mrv/chain/manifest.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mrv/il/parser.hpp"
#include "mrv/rewrite/rules.hpp"

namespace mrv::chain {

using nlohmann::json;

const char* stepKindName(StepSpec::Kind k) {
  switch (k) {
    case StepSpec::Kind::Rewrite: return "rewrite";
    case StepSpec::Kind::Coupling: return "coupling";
    case StepSpec::Kind::Definitional: return "definitional";
  }
  return "?";
}

namespace {

Result<std::string, ManifestError> readFile(const std::string& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return ManifestError{field, "cannot read '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string joinPath(const std::string& base, const std::string& rel) {
  if (rel.empty()) return base;
  if (rel.front() == '/') return rel;
  if (base.empty()) return rel;
  return base.back() == '/' ? base + rel : base + "/" + rel;
}

Result<ChainManifest, ManifestError> build(const json& doc, const std::string& baseDir,
                                           const std::string& displayPath) {
  ChainManifest m;
  m.path = displayPath;

  if (!doc.is_object()) return ManifestError{"", "the manifest must be a JSON object"};
  if (!doc.contains("programs") || !doc["programs"].is_array())
    return ManifestError{"programs", "required array of IL file paths"};
  if (!doc.contains("steps") || !doc["steps"].is_array())
    return ManifestError{"steps", "required array of step objects"};

  if (doc.contains("config")) {
    const json& c = doc["config"];
    if (!c.is_object()) return ManifestError{"config", "must be an object"};
    if (c.contains("trials")) m.config.trials = c["trials"].get<int>();
    if (c.contains("seed")) m.config.seed = c["seed"].get<std::uint64_t>();
    if (c.contains("budget")) m.config.budget = c["budget"].get<long long>();
    if (c.contains("maxArray")) m.config.maxArrayLen = c["maxArray"].get<int>();
    if (c.contains("maxInt")) m.config.maxInt = c["maxInt"].get<int>();
    if (c.contains("maxIter")) m.config.maxIter = c["maxIter"].get<int>();
    if (c.contains("maxGraph")) m.config.maxGraph = c["maxGraph"].get<int>();
    if (c.contains("checkEntry")) m.checkEntry = c["checkEntry"].get<bool>();
    if (m.config.trials < 1) return ManifestError{"config.trials", "must be positive"};
    if (m.config.budget < 1) return ManifestError{"config.budget", "must be positive"};
  }

  const json& programs = doc["programs"];
  if (programs.size() < 2)
    return ManifestError{"programs", "a chain needs at least two programs"};
  for (size_t i = 0; i < programs.size(); ++i) {
    std::string field = "programs[" + std::to_string(i) + "]";
    if (!programs[i].is_string()) return ManifestError{field, "must be a file path"};
    ProgramEntry entry;
    entry.path = programs[i].get<std::string>();
    entry.resolved = joinPath(baseDir, entry.path);
    auto src = readFile(entry.resolved, field);
    if (!src.ok()) return src.error();
    entry.source = std::move(src.value());
    auto parsed = il::parseProgram(entry.source, entry.path);
    if (!parsed.ok())
      return ManifestError{field, "parse error: " + parsed.error().render(entry.path)};
    auto typed = il::typecheckProgram(parsed.value());
    if (!typed.ok()) {
      std::string msg = "type errors:";
      for (const auto& e : typed.error()) msg += "\n  " + e.render(entry.path);
      return ManifestError{field, msg};
    }
    entry.typed = std::move(typed.value());
    m.programs.push_back(std::move(entry));
  }

  // Chains compare programs pointwise; all signatures must agree.
  const auto& first = m.programs.front().typed;
  for (size_t i = 1; i < m.programs.size(); ++i) {
    const auto& cur = m.programs[i].typed;
    bool same = cur.params().size() == first.params().size() &&
                il::typeEqual(cur.returnType(), first.returnType());
    for (size_t k = 0; same && k < cur.params().size(); ++k)
      same = il::typeEqual(cur.params()[k].type, first.params()[k].type);
    if (!same)
      return ManifestError{"programs[" + std::to_string(i) + "]",
                           "signature differs from the first program"};
  }

  const json& steps = doc["steps"];
  if (steps.size() != m.programs.size() - 1)
    return ManifestError{"steps", "expected " + std::to_string(m.programs.size() - 1) +
                                      " steps for " + std::to_string(m.programs.size()) +
                                      " programs, found " + std::to_string(steps.size())};
  for (size_t i = 0; i < steps.size(); ++i) {
    std::string field = "steps[" + std::to_string(i) + "]";
    const json& s = steps[i];
    if (!s.is_object() || !s.contains("kind") || !s["kind"].is_string())
      return ManifestError{field, "each step needs a string 'kind'"};
    std::string kind = s["kind"].get<std::string>();
    StepSpec spec;
    if (kind == "rewrite") {
      spec.kind = StepSpec::Kind::Rewrite;
      if (!s.contains("rule") || !s["rule"].is_string())
        return ManifestError{field + ".rule", "rewrite steps name a rule"};
      spec.rule = s["rule"].get<std::string>();
      if (!rewrite::findRule(spec.rule))
        return ManifestError{field + ".rule", "unknown rule '" + spec.rule + "'"};
    } else if (kind == "coupling") {
      spec.kind = StepSpec::Kind::Coupling;
      if (!s.contains("invariant") || !s["invariant"].is_string())
        return ManifestError{field + ".invariant", "coupling steps carry an invariant"};
      spec.invariantText = s["invariant"].get<std::string>();
      auto pred = coupling::parsePredicate(spec.invariantText, m.programs[i].typed,
                                           m.programs[i + 1].typed);
      if (!pred.ok())
        return ManifestError{field + ".invariant", pred.error().message};
      spec.predicate = std::move(pred.value());
      if (s.contains("at")) {
        if (!s["at"].is_array() || s["at"].size() != 2)
          return ManifestError{field + ".at", "expected [boundary1, boundary2]"};
        spec.atBoundary1 = s["at"][0].get<int>();
        spec.atBoundary2 = s["at"][1].get<int>();
      }
    } else if (kind == "definitional") {
      spec.kind = StepSpec::Kind::Definitional;
    } else {
      return ManifestError{field + ".kind",
                           "unknown kind '" + kind + "' (rewrite | coupling | definitional)"};
    }
    m.steps.push_back(std::move(spec));
  }
  return m;
}

}  // namespace

Result<ChainManifest, ManifestError> loadManifest(const std::string& path) {
  auto text = readFile(path, "");
  if (!text.ok()) return text.error();
  std::string baseDir;
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) baseDir = path.substr(0, slash);
  return loadManifestText(text.value(), baseDir, path);
}

Result<ChainManifest, ManifestError> loadManifestText(const std::string& jsonText,
                                                      const std::string& baseDir,
                                                      const std::string& displayPath) {
  json doc = json::parse(jsonText, nullptr, false);
  if (doc.is_discarded()) return ManifestError{"", "invalid JSON in '" + displayPath + "'"};
  return build(doc, baseDir, displayPath);
}

}  // namespace mrv::chain
