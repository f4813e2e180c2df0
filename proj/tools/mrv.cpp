// mrv - checks behavioural equivalence chains between imperative programs and
// their MapReduce-style counterparts.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mrv/chain/verifier.hpp"
#include "mrv/ffl/check.hpp"
#include "mrv/ffl/eval.hpp"
#include "mrv/il/interp.hpp"
#include "mrv/il/parser.hpp"
#include "mrv/rewrite/rules.hpp"
#include "mrv/translate.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;  // manifest / IO / input errors

std::optional<std::string> readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<mrv::il::TypedProgram> loadProgram(const std::string& path) {
  auto src = readFile(path);
  if (!src) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  auto parsed = mrv::il::parseProgram(*src, path);
  if (!parsed.ok()) {
    std::cerr << parsed.error().render(path) << "\n";
    return std::nullopt;
  }
  auto typed = mrv::il::typecheckProgram(parsed.value());
  if (!typed.ok()) {
    for (const auto& e : typed.error()) std::cerr << e.render(path) << "\n";
    return std::nullopt;
  }
  return std::move(typed.value());
}

// Literal argument tuples for `mrv run`:
//   value := int | int '/' int | 'true' | 'false' | '[' values ']' | '(' value ',' value ')'
class ArgParser {
 public:
  explicit ArgParser(const std::string& text) : s_(text) {}

  std::optional<std::vector<mrv::Value>> parseTuple() {
    std::vector<mrv::Value> out;
    skipWs();
    if (done()) return out;
    while (true) {
      auto v = parseValue();
      if (!v) return std::nullopt;
      out.push_back(std::move(*v));
      skipWs();
      if (done()) return out;
      if (s_[i_] != ',') return std::nullopt;
      ++i_;
    }
  }

 private:
  const std::string& s_;
  size_t i_ = 0;

  bool done() const { return i_ >= s_.size(); }
  void skipWs() {
    while (!done() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skipWs();
    if (done() || s_[i_] != c) return false;
    ++i_;
    return true;
  }
  bool eatWord(const char* w) {
    skipWs();
    size_t n = std::string(w).size();
    if (s_.compare(i_, n, w) == 0) {
      i_ += n;
      return true;
    }
    return false;
  }

  std::optional<mrv::Value> parseValue() {
    skipWs();
    if (done()) return std::nullopt;
    if (eatWord("true")) return mrv::Value(true);
    if (eatWord("false")) return mrv::Value(false);
    if (eat('[')) {
      std::vector<mrv::Value> elems;
      skipWs();
      if (eat(']')) return mrv::Value::array(std::move(elems));
      while (true) {
        auto v = parseValue();
        if (!v) return std::nullopt;
        elems.push_back(std::move(*v));
        if (eat(']')) return mrv::Value::array(std::move(elems));
        if (!eat(',')) return std::nullopt;
      }
    }
    if (eat('(')) {
      auto a = parseValue();
      if (!a || !eat(',')) return std::nullopt;
      auto b = parseValue();
      if (!b || !eat(')')) return std::nullopt;
      return mrv::Value::pair(std::move(*a), std::move(*b));
    }
    // signed integer or rational p/q
    skipWs();
    size_t start = i_;
    if (!done() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start) return std::nullopt;
    mrv::BigInt num(s_.substr(start, i_ - start));
    skipWs();
    if (!done() && s_[i_] == '/') {
      ++i_;
      skipWs();
      size_t dstart = i_;
      if (!done() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
      while (!done() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ == dstart) return std::nullopt;
      mrv::BigInt den(s_.substr(dstart, i_ - dstart));
      if (den == 0) return std::nullopt;
      return mrv::Value(mrv::BigRat(num, den));
    }
    return mrv::Value(num);
  }
};

int cmdCheck(const std::string& manifestPath, std::optional<int> trials,
             std::optional<std::uint64_t> seed, std::optional<long long> budget,
             const std::string& format, bool verbose) {
  auto manifest = mrv::chain::loadManifest(manifestPath);
  if (!manifest.ok()) {
    std::cerr << "manifest error: " << manifest.error().render() << "\n";
    return kExitUsage;
  }
  mrv::chain::ChainManifest m = std::move(manifest.value());
  if (trials) m.config.trials = *trials;
  if (seed) m.config.seed = *seed;
  if (budget) m.config.budget = *budget;

  mrv::chain::VerificationReport report = mrv::chain::verifyChain(m);
  if (format == "json")
    std::cout << report.renderJson() << "\n";
  else
    std::cout << report.renderText(verbose);
  return report.overallPass ? kExitPass : kExitVerificationFailure;
}

int cmdRules() {
  for (const auto& r : mrv::rewrite::listRules()) {
    std::cout << r.name << (r.definitional ? "  (definitional)" : "") << "\n";
    std::cout << "    " << r.lhs << "\n      ~>  " << r.rhs << "\n";
    std::cout << "    " << r.summary << "\n";
  }
  return kExitPass;
}

int cmdRun(const std::string& path, const std::string& argsText, long long budget) {
  auto typed = loadProgram(path);
  if (!typed) return kExitUsage;
  ArgParser ap(argsText);
  auto args = ap.parseTuple();
  if (!args) {
    std::cerr << "error: cannot parse --args (expected a comma-separated literal tuple)\n";
    return kExitUsage;
  }
  if (args->size() != typed->params().size()) {
    std::cerr << "error: program takes " << typed->params().size() << " argument(s), got "
              << args->size() << "\n";
    return kExitUsage;
  }
  for (size_t i = 0; i < args->size(); ++i) {
    if (!mrv::il::valueHasType((*args)[i], typed->params()[i].type)) {
      std::cerr << "error: argument " << i + 1 << " does not have type "
                << mrv::il::showType(typed->params()[i].type) << "\n";
      return kExitUsage;
    }
  }
  mrv::EvalOutcome out = mrv::il::interpretProgram(*typed, *args, budget);
  std::cout << out.render() << "\n";
  return out.isValue() ? kExitPass : kExitVerificationFailure;
}

int cmdTranslate(const std::string& path) {
  auto typed = loadProgram(path);
  if (!typed) return kExitUsage;
  std::cout << mrv::ffl::renderTerm(mrv::translate(*typed)) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mrv - equivalence chains between imperative and MapReduce-style programs"};
  app.require_subcommand(1);

  std::string manifestPath, ilPath, argsText;
  std::string format = "text";
  bool verbose = false;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<long long> budgetOverride;
  long long runBudget = 1000000;

  auto* check = app.add_subcommand("check", "verify a chain manifest");
  check->add_option("manifest", manifestPath, "path to a .chain.json manifest")->required();
  check->add_option("--trials", trials, "override the number of generated inputs per check");
  check->add_option("--seed", seed, "override the generator seed");
  check->add_option("--budget", budgetOverride, "override the evaluation step budget");
  check->add_option("--report", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--verbose", verbose, "include per-step obligation details");

  auto* rules = app.add_subcommand("rules", "print the rewrite rule catalog");

  auto* run = app.add_subcommand("run", "evaluate one IL program on literal arguments");
  run->add_option("file", ilPath, "an .il source file")->required();
  run->add_option("--args", argsText, "comma-separated literal argument tuple");
  run->add_option("--budget", runBudget, "evaluation step budget");

  auto* translate = app.add_subcommand("translate", "print a program's functional translation");
  translate->add_option("file", ilPath, "an .il source file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) return cmdCheck(manifestPath, trials, seed, budgetOverride, format, verbose);
    if (rules->parsed()) return cmdRules();
    if (run->parsed()) return cmdRun(ilPath, argsText, runBudget);
    if (translate->parsed()) return cmdTranslate(ilPath);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
