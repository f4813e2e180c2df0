#include "mrv/corpus/pagerank.hpp"

#include <stdexcept>

namespace mrv::corpus {

bool PageRankInput::valid() const {
  if (links.empty()) return false;
  if (iterations < 0) return false;
  if (dampening <= 0 || dampening >= 1) return false;
  for (const auto& targets : links) {
    if (targets.empty()) return false;  // out-degree >= 1
    for (int t : targets)
      if (t < 0 || static_cast<size_t>(t) >= links.size()) return false;
  }
  return true;
}

std::vector<BigRat> pagerankDelta(const std::vector<std::vector<int>>& links,
                                  const std::vector<BigRat>& prevRanks) {
  std::vector<BigRat> delta(links.size(), BigRat(0));
  for (size_t o = 0; o < links.size(); ++o) {
    BigRat contribution = prevRanks[o] / BigRat(static_cast<long long>(links[o].size()));
    for (int p : links[o]) delta[static_cast<size_t>(p)] += contribution;
  }
  return delta;
}

std::vector<BigRat> pagerankReference(const PageRankInput& input) {
  if (!input.valid()) throw std::invalid_argument("pagerankReference: invalid input");
  const size_t n = input.links.size();
  BigRat initial = BigRat(1) / BigRat(static_cast<long long>(n));
  std::vector<BigRat> ranks(n, initial);
  BigRat base = (BigRat(1) - input.dampening) / BigRat(static_cast<long long>(n));
  for (long long k = 0; k < input.iterations; ++k) {
    std::vector<BigRat> delta = pagerankDelta(input.links, ranks);
    for (size_t p = 0; p < n; ++p) ranks[p] = input.dampening * delta[p] + base;
  }
  return ranks;
}

std::vector<Value> pagerankArgs(const PageRankInput& input) {
  std::vector<Value> pages;
  pages.reserve(input.links.size());
  for (const auto& targets : input.links) {
    std::vector<Value> t;
    t.reserve(targets.size());
    for (int x : targets) t.push_back(Value(BigInt(x)));
    pages.push_back(Value::array(std::move(t)));
  }
  return {Value::array(std::move(pages)), Value(input.dampening),
          Value(BigInt(input.iterations))};
}

PageRankInput pagerankInputFromArgs(const std::vector<Value>& args) {
  PageRankInput in;
  for (const auto& page : args[0].asArray()) {
    std::vector<int> targets;
    for (const auto& t : page.asArray())
      targets.push_back(static_cast<int>(t.asInt().convert_to<long long>()));
    in.links.push_back(std::move(targets));
  }
  in.dampening = args[1].asRat();
  in.iterations = args[2].asInt().convert_to<long long>();
  return in;
}

}  // namespace mrv::corpus
