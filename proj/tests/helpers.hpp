#pragma once

#include <random>
#include <string>

#include "mrv/corpus/corpus.hpp"
#include "mrv/il/interp.hpp"
#include "mrv/il/parser.hpp"
#include "mrv/il/typecheck.hpp"

namespace testutil {

inline void useRepoCorpus() { mrv::corpus::setCorpusRoot(MRV_CORPUS_DIR); }

inline mrv::il::Program mustParse(const std::string& src) {
  auto r = mrv::il::parseProgram(src, "<test>");
  if (!r.ok()) throw std::runtime_error("parse failed: " + r.error().render("<test>"));
  return std::move(r.value());
}

inline mrv::il::TypedProgram mustTypecheck(const std::string& src) {
  auto typed = mrv::il::typecheckProgram(mustParse(src));
  if (!typed.ok()) {
    std::string msg = "typecheck failed:";
    for (const auto& e : typed.error()) msg += "\n  " + e.render("<test>");
    throw std::runtime_error(msg);
  }
  return std::move(typed.value());
}

inline mrv::il::TypedProgram corpusProgram(const std::string& id) {
  useRepoCorpus();
  auto entry = mrv::corpus::getProgram(id);
  if (!entry.ok()) throw std::runtime_error(entry.error().message);
  return mustTypecheck(entry.value().source);
}

inline mrv::Value intv(long long x) { return mrv::Value(mrv::BigInt(x)); }
inline mrv::Value ratv(long long num, long long den) {
  return mrv::Value(mrv::BigRat(num, den));
}
inline mrv::Value intArray(std::initializer_list<long long> xs) {
  std::vector<mrv::Value> elems;
  for (long long x : xs) elems.push_back(intv(x));
  return mrv::Value::array(std::move(elems));
}

}  // namespace testutil
