#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>

#include "helpers.hpp"
#include "mrv/chain/verifier.hpp"
#include "mrv/corpus/corpus.hpp"

using namespace mrv;
using chain::StepReport;
using chain::StepSpec;

namespace {

chain::ChainManifest mustChain(const std::string& name) {
  testutil::useRepoCorpus();
  auto m = corpus::getChain(name);
  if (!m.ok()) throw std::runtime_error(m.error().message);
  return std::move(m.value());
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out);
  out << text;
}

std::string replaceOnce(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("the pagerank manifest loads with 9 programs and 8 steps") {
  chain::ChainManifest m = mustChain("pagerank");
  CHECK(m.programs.size() == 9);
  REQUIRE(m.steps.size() == 8);
  const StepSpec::Kind R = StepSpec::Kind::Rewrite;
  const StepSpec::Kind C = StepSpec::Kind::Coupling;
  const StepSpec::Kind D = StepSpec::Kind::Definitional;
  StepSpec::Kind expected[] = {R, C, R, C, R, D, R, D};
  for (int i = 0; i < 8; ++i) CHECK(m.steps[i].kind == expected[i]);
  CHECK(m.steps[0].rule == "map-introduce");
  CHECK(m.steps[2].rule == "range-remove");
  CHECK(m.steps[4].rule == "concat-intro");
  CHECK(m.steps[6].rule == "group-intro");
}

TEST_CASE("manifest validation finds unknown rules and arity mismatches") {
  testutil::useRepoCorpus();
  std::string root = corpus::corpusRoot();

  auto bad1 = chain::loadManifestText(
      R"({"programs": ["sumarrays/plain.il", "sumarrays/zipped.il"],
          "steps": [{"kind": "rewrite", "rule": "fold-fuse"}]})",
      root, "<test>");
  REQUIRE(!bad1.ok());
  CHECK(bad1.error().field == "steps[0].rule");

  auto bad2 = chain::loadManifestText(
      R"({"programs": ["sumarrays/plain.il", "sumarrays/zipped.il",
                        "sumarrays/plain.il"],
          "steps": [{"kind": "definitional"}]})",
      root, "<test>");
  REQUIRE(!bad2.ok());
  CHECK(bad2.error().field == "steps");

  auto bad3 = chain::loadManifestText(
      R"({"programs": ["sumarrays/plain.il", "missing.il"],
          "steps": [{"kind": "definitional"}]})",
      root, "<test>");
  REQUIRE(!bad3.ok());

  // signature mismatch across the chain
  auto bad4 = chain::loadManifestText(
      R"({"programs": ["sumarrays/plain.il", "pagerank/listing-1.il"],
          "steps": [{"kind": "definitional"}]})",
      root, "<test>");
  REQUIRE(!bad4.ok());
  CHECK(bad4.error().message.find("signature") != std::string::npos);

  // coupling invariants are parsed and resolved at load time
  auto bad5 = chain::loadManifestText(
      R"({"programs": ["sumarrays/plain.il", "sumarrays/zipped.il"],
          "steps": [{"kind": "coupling", "invariant": "ghost_1 = ghost_2"}]})",
      root, "<test>");
  REQUIRE(!bad5.ok());
  CHECK(bad5.error().field == "steps[0].invariant");
}

TEST_CASE("the sumarrays chain passes end to end") {
  chain::ChainManifest m = mustChain("sumarrays");
  m.config.trials = 60;
  chain::VerificationReport report = chain::verifyChain(m);
  CHECK(report.overallPass);
  REQUIRE(report.steps.size() == 1);
  CHECK(report.steps[0].verdict == StepReport::Verdict::EmpiricallyValidated);
  CHECK(report.endpoint.mismatches == 0);
  CHECK(report.endpoint.trials == 60);
}

TEST_CASE("the full pagerank chain passes with the declared justifications") {
  chain::ChainManifest m = mustChain("pagerank");
  m.config.trials = 30;  // the acceptance suite runs the full 200
  m.config.maxGraph = 5;
  chain::VerificationReport report = chain::verifyChain(m);
  for (const auto& s : report.steps) {
    CAPTURE(s.index);
    CAPTURE(s.detail);
    CHECK(s.verdict != StepReport::Verdict::Failed);
  }
  CHECK(report.steps[0].verdict == StepReport::Verdict::Justified);
  CHECK(report.steps[1].verdict == StepReport::Verdict::EmpiricallyValidated);
  CHECK(report.steps[5].verdict == StepReport::Verdict::Definitional);
  CHECK(report.endpoint.mismatches == 0);
  CHECK(report.overallPass);

  // rewrite steps with obligations actually exercised them in context
  CHECK(report.steps[0].obligationChecks > 0);
  CHECK(report.steps[6].obligationChecks > 0);

  // a JSON rendering is available for CI consumption
  std::string json = report.renderJson();
  CHECK(json.find("\"overall\": \"pass\"") != std::string::npos);
}

TEST_CASE("verification verdicts are deterministic and step-independent") {
  chain::ChainManifest m = mustChain("sumarrays");
  m.config.trials = 25;
  chain::VerificationReport a = chain::verifyChain(m);
  chain::VerificationReport b = chain::verifyChain(m);
  REQUIRE(a.steps.size() == b.steps.size());
  for (size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].verdict == b.steps[i].verdict);
    CHECK(a.steps[i].detail == b.steps[i].detail);
  }
  CHECK(a.endpoint.mismatches == b.endpoint.mismatches);
}

TEST_CASE("differential testing: reflexivity and endpoint equivalence") {
  testutil::useRepoCorpus();
  il::TypedProgram l1 = testutil::corpusProgram("pagerank/listing-1");
  chain::GenConfig cfg;
  cfg.trials = 40;
  cfg.maxGraph = 5;
  auto self = chain::differentialTest(l1, l1, cfg);
  CHECK(self.trials == 40);
  CHECK(self.mismatches == 0);

  il::TypedProgram l9 = testutil::corpusProgram("pagerank/listing-9");
  auto ends = chain::differentialTest(l1, l9, cfg);
  CHECK(ends.mismatches == 0);
}

TEST_CASE("mutation: a semantically altered endpoint is caught with a witness") {
  testutil::useRepoCorpus();
  std::string source = readFile(corpus::corpusRoot() + "/pagerank/listing-9.il");
  std::string mutated = replaceOnce(source, "dampening * rank", "(1 + dampening) * rank");
  auto parsed = il::parseProgram(mutated, "mutated-listing-9");
  REQUIRE(parsed.ok());
  auto typed = il::typecheckProgram(parsed.value());
  REQUIRE(typed.ok());

  il::TypedProgram l1 = testutil::corpusProgram("pagerank/listing-1");
  chain::GenConfig cfg;
  cfg.trials = 60;
  cfg.maxGraph = 5;
  auto diff = chain::differentialTest(l1, typed.value(), cfg);
  CHECK(diff.mismatches > 0);
  CHECK(!diff.firstWitness.empty());
}

TEST_CASE("mutation: wrong rule, altered intermediate program, corrupted invariant") {
  testutil::useRepoCorpus();
  std::string root = corpus::corpusRoot();
  std::string tmp = "/tmp/mrv-mutify";
  std::system(("rm -rf " + tmp + " && mkdir -p " + tmp).c_str());

  std::string manifest = readFile(root + "/pagerank.chain.json");

  SUBCASE("wrong rule name on step 1 fails only that step") {
    std::string bad = replaceOnce(manifest, "\"rule\": \"map-introduce\"",
                                  "\"rule\": \"range-remove\"");
    auto m = chain::loadManifestText(bad, root, "<mutated>");
    REQUIRE(m.ok());
    m.value().config.trials = 20;
    chain::VerificationReport report = chain::verifyChain(m.value());
    CHECK(!report.overallPass);
    CHECK(report.steps[0].verdict == StepReport::Verdict::Failed);
    // independence: the other steps keep their verdicts
    for (size_t i = 1; i < report.steps.size(); ++i)
      CHECK(report.steps[i].verdict != StepReport::Verdict::Failed);
    CHECK(report.endpoint.mismatches == 0);
  }

  SUBCASE("a semantically altered intermediate program fails its steps") {
    std::string l5 = readFile(root + "/pagerank/listing-5.il");
    writeFile(tmp + "/listing-5.il",
              replaceOnce(l5, "newRanks[fst link_contrib] + snd link_contrib",
                          "newRanks[fst link_contrib] - snd link_contrib"));
    std::string patched = replaceOnce(manifest, "pagerank/listing-5.il", tmp + "/listing-5.il");
    auto m = chain::loadManifestText(patched, root, "<mutated>");
    REQUIRE(m.ok());
    m.value().config.trials = 25;
    chain::VerificationReport report = chain::verifyChain(m.value());
    CHECK(!report.overallPass);
    // the coupling into listing 5 and the rewrite out of it both break
    CHECK(report.steps[3].verdict == StepReport::Verdict::Failed);
    CHECK(report.steps[4].verdict == StepReport::Verdict::Failed);
    // endpoints unaffected: listing 1 and listing 9 are the originals
    CHECK(report.endpoint.mismatches == 0);
  }

  SUBCASE("a corrupted invariant fails its coupling step") {
    std::string bad = replaceOnce(manifest, "outRanks_2 = zip(links_1, ranks_1)",
                                  "outRanks_2 = zip(links_1, newRanks_1)");
    auto m = chain::loadManifestText(bad, root, "<mutated>");
    REQUIRE(m.ok());
    m.value().config.trials = 40;
    chain::VerificationReport report = chain::verifyChain(m.value());
    CHECK(!report.overallPass);
    CHECK(report.steps[1].verdict == StepReport::Verdict::Failed);
  }
}

TEST_CASE("input generation is deterministic and covers boundary cases") {
  testutil::useRepoCorpus();
  chain::GenConfig cfg;
  std::vector<il::TypePtr> pagerankSig = {il::tArray(il::tArray(il::tInt())), il::tRat(),
                                          il::tInt()};

  // the stream starts with the smallest valid graphs
  auto t0 = chain::genArgs(pagerankSig, chain::trialSeed(42, 0), cfg, 0);
  REQUIRE(t0.ok());
  CHECK(t0.value()[0] == Value::array({testutil::intArray({0})}));  // self loop
  auto t1 = chain::genArgs(pagerankSig, chain::trialSeed(42, 1), cfg, 1);
  REQUIRE(t1.ok());
  CHECK(t1.value()[0] ==
        Value::array({testutil::intArray({1}), testutil::intArray({0})}));  // 2-cycle

  // equal seeds give identical streams
  for (int trial = 0; trial < 30; ++trial) {
    auto a = chain::genArgs(pagerankSig, chain::trialSeed(7, trial), cfg, trial);
    auto b = chain::genArgs(pagerankSig, chain::trialSeed(7, trial), cfg, trial);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    REQUIRE(a.value().size() == b.value().size());
    for (size_t i = 0; i < a.value().size(); ++i) CHECK(a.value()[i] == b.value()[i]);
    // dampening strictly inside (0,1), iterations within the bound
    const BigRat& d = a.value()[1].asRat();
    CHECK(d > 0);
    CHECK(d < 1);
    CHECK(a.value()[2].asInt() >= 0);
    CHECK(a.value()[2].asInt() <= cfg.maxIter);
  }

  // paired same-type arrays are generated with equal lengths
  std::vector<il::TypePtr> pairSig = {il::tArray(il::tInt()), il::tArray(il::tInt())};
  for (int trial = 0; trial < 50; ++trial) {
    auto a = chain::genArgs(pairSig, chain::trialSeed(9, trial), cfg, trial);
    REQUIRE(a.ok());
    CHECK(a.value()[0].asArray().size() == a.value()[1].asArray().size());
  }

  // function-typed parameters are reported as not generable
  std::vector<il::TypePtr> funSig = {il::tFun({il::tInt()}, il::tInt())};
  auto bad = chain::genArgs(funSig, 1, cfg, 0);
  CHECK(!bad.ok());
}

TEST_CASE("a non-product-compatible coupling step fails gracefully") {
  testutil::useRepoCorpus();
  std::string root = corpus::corpusRoot();
  // definitional justification bridges a coupling-shaped difference: fails
  auto m = chain::loadManifestText(
      R"({"programs": ["sumarrays/plain.il", "sumarrays/zipped.il"],
          "steps": [{"kind": "definitional"}]})",
      root, "<test>");
  REQUIRE(m.ok());
  m.value().config.trials = 10;
  chain::VerificationReport report = chain::verifyChain(m.value());
  CHECK(report.steps[0].verdict == StepReport::Verdict::Failed);
  // but the endpoint differential still passes: the programs are equivalent
  CHECK(report.endpoint.mismatches == 0);
}
