#pragma once

#include <set>
#include <vector>

#include "transonline/adversaries.hpp"
#include "transonline/concepts.hpp"

namespace transonline::testing {

// Every realizable label sequence on a fixed xs is the projection of some
// concept, so there are at most |C| distinct realizable streams.
inline std::vector<Stream> realizable_streams(const ConceptClass& cls,
                                              const std::vector<int>& xs) {
  std::set<std::vector<Label>> seen;
  std::vector<Stream> out;
  for (int c = 0; c < cls.size(); ++c) {
    std::vector<Label> ys;
    for (int x : xs) ys.push_back(cls.value(c, x));
    if (!seen.insert(ys).second) continue;
    Stream s;
    s.xs = xs;
    s.ys = std::move(ys);
    s.meta.construction = "exhaustive";
    s.meta.concept_index = c;
    s.meta.realizable = true;
    out.push_back(std::move(s));
  }
  return out;
}

// All instance sequences of the given length (odometer order).
inline std::vector<std::vector<int>> all_sequences(int n_instances, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> xs(len, 0);
  while (true) {
    out.push_back(xs);
    int pos = len - 1;
    while (pos >= 0 && xs[pos] == n_instances - 1) xs[pos--] = 0;
    if (pos < 0) break;
    ++xs[pos];
  }
  return out;
}

// The fixed 10-class battery used by the acceptance suite (all with n <= 3,
// all with certified-exact B).
inline std::vector<ConceptClass> battery() {
  return {
      gen_constants(1, 1),
      gen_constants(3, 2),
      gen_full(2, 2),
      gen_full(2, 3),
      gen_full(3, 2),
      gen_branch_class(2, true),
      gen_branch_class(2, false),
      gen_edge_labeled_branch_class(3),
      gen_one_branch_per_level_class(3),
      gen_nt_chain(3),
  };
}

}  // namespace transonline::testing
