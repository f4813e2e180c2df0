#include "mrv/chain/gen.hpp"

#include <random>

namespace mrv::chain {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool isType(const il::TypePtr& t, il::TypeKind k) { return t->kind == k; }
bool isArrayOf(const il::TypePtr& t, il::TypeKind k) {
  return t->kind == il::TypeKind::Array && t->args[0]->kind == k;
}

bool isPagerankSignature(const std::vector<il::TypePtr>& sig) {
  return sig.size() == 3 && sig[0]->kind == il::TypeKind::Array &&
         isArrayOf(sig[0]->args[0], il::TypeKind::Int) && isType(sig[1], il::TypeKind::Rat) &&
         isType(sig[2], il::TypeKind::Int);
}

bool isEqualLengthSignature(const std::vector<il::TypePtr>& sig) {
  return sig.size() == 2 && sig[0]->kind == il::TypeKind::Array &&
         sig[1]->kind == il::TypeKind::Array && il::typeEqual(sig[0], sig[1]);
}

struct Gen {
  std::mt19937_64 rng;
  const GenConfig& cfg;

  int intIn(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Value value(const il::TypePtr& t, int depth) {
    switch (t->kind) {
      case il::TypeKind::Int:
        return Value(BigInt(intIn(-cfg.maxInt, cfg.maxInt)));
      case il::TypeKind::Rat: {
        int den = intIn(1, cfg.maxInt);
        return Value(BigRat(intIn(-cfg.maxInt, cfg.maxInt), den));
      }
      case il::TypeKind::Bool:
        return Value(intIn(0, 1) == 1);
      case il::TypeKind::Array: {
        int len = intIn(0, depth > 2 ? 2 : cfg.maxArrayLen);
        std::vector<Value> elems;
        elems.reserve(len);
        for (int i = 0; i < len; ++i) elems.push_back(value(t->args[0], depth + 1));
        return Value::array(std::move(elems));
      }
      case il::TypeKind::Pair:
        return Value::pair(value(t->args[0], depth + 1), value(t->args[1], depth + 1));
      case il::TypeKind::Sum:
        if (intIn(0, 1) == 0) return Value::inl(value(t->args[0], depth + 1));
        return Value::inr(value(t->args[1], depth + 1));
      case il::TypeKind::Fun:
        throw std::string("cannot generate a function-typed argument: " + il::showType(t));
    }
    throw std::string("cannot generate a value of type " + il::showType(t));
  }

  Value adjacency(int n) {
    std::vector<Value> pages;
    pages.reserve(n);
    for (int p = 0; p < n; ++p) {
      int outDeg = intIn(1, n);
      std::vector<Value> targets;
      targets.reserve(outDeg);
      for (int k = 0; k < outDeg; ++k) targets.push_back(Value(BigInt(intIn(0, n - 1))));
      pages.push_back(Value::array(std::move(targets)));
    }
    return Value::array(std::move(pages));
  }

  Value dampening() {
    int den = intIn(2, 9);
    int num = intIn(1, den - 1);
    return Value(BigRat(num, den));
  }
};

}  // namespace

std::uint64_t trialSeed(std::uint64_t seed, int trial) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

Result<std::vector<Value>, std::string> genArgs(const std::vector<il::TypePtr>& sig,
                                                std::uint64_t trialSeedValue, const GenConfig& cfg,
                                                int trialIndex) {
  Gen g{std::mt19937_64(trialSeedValue), cfg};
  try {
    if (isPagerankSignature(sig)) {
      std::vector<Value> args;
      if (trialIndex == 0) {
        // smallest valid graph: one page linking to itself
        args.push_back(Value::array({Value::array({Value(BigInt(0))})}));
        args.push_back(Value(BigRat(1, 2)));
        args.push_back(Value(BigInt(1)));
        return args;
      }
      if (trialIndex == 1) {
        // symmetric 2-cycle
        args.push_back(Value::array(
            {Value::array({Value(BigInt(1))}), Value::array({Value(BigInt(0))})}));
        args.push_back(Value(BigRat(1, 2)));
        args.push_back(Value(BigInt(1)));
        return args;
      }
      int n = g.intIn(1, cfg.maxGraph);
      args.push_back(g.adjacency(n));
      args.push_back(g.dampening());
      // Trial 2 pins the zero-iteration boundary.
      args.push_back(Value(BigInt(trialIndex == 2 ? 0 : g.intIn(0, cfg.maxIter))));
      return args;
    }
    if (isEqualLengthSignature(sig)) {
      int len = g.intIn(0, cfg.maxArrayLen);
      if (trialIndex == 0) len = 0;
      if (trialIndex == 1) len = 1;
      std::vector<Value> a, b;
      for (int i = 0; i < len; ++i) {
        a.push_back(g.value(sig[0]->args[0], 1));
        b.push_back(g.value(sig[1]->args[0], 1));
      }
      return std::vector<Value>{Value::array(std::move(a)), Value::array(std::move(b))};
    }
    std::vector<Value> args;
    args.reserve(sig.size());
    for (const auto& t : sig) args.push_back(g.value(t, 0));
    return args;
  } catch (std::string& err) {
    return err;
  }
}

Result<Value, std::string> genValueOfType(const il::TypePtr& t, std::uint64_t seedValue,
                                          const GenConfig& cfg) {
  Gen g{std::mt19937_64(seedValue), cfg};
  try {
    return g.value(t, 0);
  } catch (std::string& err) {
    return err;
  }
}

}  // namespace mrv::chain
