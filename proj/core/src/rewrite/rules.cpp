#include "mrv/rewrite/rules.hpp"

namespace mrv::rewrite {

const std::vector<RuleInfo>& listRules() {
  static const std::vector<RuleInfo> kRules = {
      {"map-introduce", false,
       "Replaces an index-range loop that writes f(xs[i]) into ys[i] with ys := map(f, xs). "
       "Side condition: f reads neither the index nor the target array; tested obligations: "
       "the read, written and range-bound arrays all have the same length.",
       "fold(\\acc. \\i. acc[i := f(xs[i])], ys, range(0, length(zs)))", "map(f, xs)"},
      {"range-remove", false,
       "Turns a loop over an index range into a loop over the elements themselves. Side "
       "condition: the index is used only to read xs[i]; tested obligation (when the range "
       "bound is a different array): equal lengths.",
       "fold(\\acc. \\i. f(acc, xs[i]), acc0, range(0, length(zs)))",
       "fold(\\acc. \\x. f(acc, x), acc0, xs)"},
      {"concat-intro", false,
       "Collapses two nested element loops into one loop over the concatenation. Side "
       "condition: the outer element is referenced only as the inner loop's array and the "
       "inner accumulator starts from the outer one.",
       "fold(\\acc. \\xs. fold(\\a. \\x. f(a, x), acc, xs), acc0, xss)",
       "fold(\\acc. \\x. f(acc, x), acc0, concat(xss))"},
      {"group-intro", false,
       "Replaces indexed accumulation over key-value tuples by group, a per-key fold, and a "
       "write-back loop. The per-key seed comes from the initial accumulator (simplified to "
       "the replicated constant when acc0 = replicate(n, c)); tested obligation: every key is "
       "a valid index of acc0.",
       "fold(\\acc. \\p. acc[fst p := f(acc[fst p], snd p)], acc0, xs)",
       "fold(\\acc. \\p. acc[fst p := snd p], acc0, map(\\kv. (fst kv, fold(f, acc0[fst kv], "
       "snd kv)), group(xs)))"},
      {"flatmap-fuse", true,
       "Fuses concat(map(f, xss)) into flatMap(f, xss). flatMap is a synonym, so the step "
       "disappears after synonym expansion.",
       "concat(map(f, xss))", "flatMap(f, xss)"},
      {"reducebykey-fold", true,
       "Folds the group/map/fold composition into reduceByKey. reduceByKey is a synonym, so "
       "the step disappears after synonym expansion.",
       "map(\\kv. (fst kv, fold(f, i, snd kv)), group(xs))", "reduceByKey(f, i, xs)"},
  };
  return kRules;
}

const RuleInfo* findRule(const std::string& name) {
  for (const auto& r : listRules())
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace mrv::rewrite
