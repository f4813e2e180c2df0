#pragma once

#include <vector>

#include "mrv/number.hpp"
#include "mrv/value.hpp"

namespace mrv::corpus {

/// Adjacency-list input: page i links to every index in links[i].
/// Invariants: at least one page, every index in range, out-degree >= 1,
/// 0 < dampening < 1, iterations >= 0.
struct PageRankInput {
  std::vector<std::vector<int>> links;
  BigRat dampening;
  long long iterations = 0;

  bool valid() const;
};

/// Independent reference for the iterative rank laws, written directly over
/// the edge set with exact rationals (no interpreter reuse):
///   rank_0(p)   = 1 / n
///   delta_k(p)  = sum over edges (o, p) of rank_{k-1}(o) / outdeg(o)
///   rank_k(p)   = dampening * delta_k(p) + (1 - dampening) / n
std::vector<BigRat> pagerankReference(const PageRankInput& input);

/// Per-iteration contribution masses; sum(delta_k) == sum(rank_{k-1}) since
/// every page distributes its whole rank among its targets.
std::vector<BigRat> pagerankDelta(const std::vector<std::vector<int>>& links,
                                  const std::vector<BigRat>& prevRanks);

/// The same input as interpreter argument values ([[Int]], Rat, Int).
std::vector<Value> pagerankArgs(const PageRankInput& input);

/// Reads a generated argument tuple back into a PageRankInput.
PageRankInput pagerankInputFromArgs(const std::vector<Value>& args);

}  // namespace mrv::corpus
