// Test-only reference implementations, deliberately independent of the
// engines in src/: plain unmemoized recursions over explicitly enumerated
// labelings. Used to freeze expected values and for the oracle-equivalence
// checks.
#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "transonline/concepts.hpp"
#include "transonline/rng.hpp"
#include "transonline/trees.hpp"

namespace transonline::testing {

inline std::vector<Label> naive_labels(const ConceptClass& cls, ConceptMask set, int x) {
  std::vector<Label> out;
  for (int i = 0; i < cls.size(); ++i)
    if ((set >> i) & 1) out.push_back(cls.value(i, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline ConceptMask naive_restrict(const ConceptClass& cls, ConceptMask set, int x, Label y) {
  ConceptMask out = 0;
  for (int i = 0; i < cls.size(); ++i)
    if (((set >> i) & 1) && cls.value(i, x) == y) out |= 1ull << i;
  return out;
}

// Littlestone-labeled shattering of one fixed sequence: both children of a
// node must be non-empty under a pair of distinct labels and recursively
// shatterable. No memo.
inline bool naive_seq_shatters(const ConceptClass& cls, ConceptMask set,
                               const std::vector<int>& xs, size_t i) {
  if (set == 0) return false;
  if (i == xs.size()) return true;
  auto labels = naive_labels(cls, set, xs[i]);
  for (size_t a = 0; a < labels.size(); ++a)
    for (size_t b = a + 1; b < labels.size(); ++b) {
      ConceptMask s0 = naive_restrict(cls, set, xs[i], labels[a]);
      ConceptMask s1 = naive_restrict(cls, set, xs[i], labels[b]);
      if (s0 && s1 && naive_seq_shatters(cls, s0, xs, i + 1) &&
          naive_seq_shatters(cls, s1, xs, i + 1))
        return true;
    }
  return false;
}

// D by exhaustive enumeration of instance sequences up to max_depth.
inline int naive_level_littlestone(const ConceptClass& cls, int max_depth) {
  ConceptMask full = full_mask(cls.size());
  int best = 0;
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<int> xs(d, 0);
    bool found = false;
    while (!found) {
      if (naive_seq_shatters(cls, full, xs, 0)) found = true;
      int pos = d - 1;
      while (pos >= 0 && xs[pos] == cls.n_instances - 1) xs[pos--] = 0;
      if (pos < 0) break;
      ++xs[pos];
    }
    if (!found) break;
    best = d;
  }
  return best;
}

// Branching potential of one fixed sequence: at each position a set either
// passes on one realized label or branches on two distinct ones (both parts
// non-empty); value is the min accumulated count, maximized. No memo.
inline int naive_branching_potential(const ConceptClass& cls, ConceptMask set,
                                     const std::vector<int>& xs, size_t i) {
  if (i == xs.size()) return 0;
  auto labels = naive_labels(cls, set, xs[i]);
  std::vector<ConceptMask> parts;
  std::vector<int> vals;
  int best = 0;
  for (Label y : labels) {
    ConceptMask part = naive_restrict(cls, set, xs[i], y);
    parts.push_back(part);
    vals.push_back(naive_branching_potential(cls, part, xs, i + 1));
    best = std::max(best, vals.back());
  }
  for (size_t a = 0; a < parts.size(); ++a)
    for (size_t b = a + 1; b < parts.size(); ++b)
      best = std::max(best, 1 + std::min(vals[a], vals[b]));
  return best;
}

// S(V) by looping over all 2^T position masks with a direct per-mask check.
inline bool naive_mask_shattered(const ConceptClass& cls, ConceptMask set,
                                 const std::vector<int>& xs, std::uint32_t mask) {
  std::vector<int> sub;
  for (size_t i = 0; i < xs.size(); ++i)
    if ((mask >> i) & 1) sub.push_back(xs[i]);
  return naive_seq_shatters(cls, set, sub, 0);
}

inline std::uint64_t naive_count_shattered(const ConceptClass& cls, ConceptMask set,
                                           const std::vector<int>& xs) {
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << xs.size()); ++mask)
    if (naive_mask_shattered(cls, set, xs, mask)) ++count;
  return count;
}

// Seeded random class within the acceptance corpus limits.
inline ConceptClass random_class(std::uint64_t seed, int max_concepts = 12, int max_instances = 4,
                                 int max_labels = 4) {
  Lcg64 rng(seed);
  int n = 1 + static_cast<int>(rng.next_below(max_instances));
  int labels = 1 + static_cast<int>(rng.next_below(max_labels));
  int k = 1 + static_cast<int>(rng.next_below(max_concepts));
  ConceptClass c;
  c.name = "rand" + std::to_string(seed);
  c.n_instances = n;
  std::vector<std::vector<Label>> rows;
  for (int i = 0; i < k; ++i) {
    std::vector<Label> row(n);
    for (int x = 0; x < n; ++x) row[x] = static_cast<Label>(rng.next_below(labels));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  c.concepts = std::move(rows);
  c.validate();
  return c;
}

// Random shattered tree on a random instance sequence, branch-biased. The
// construction keeps every leaf set non-empty, so the tree is shattered by
// the class it was built from.
inline LCTree random_shattered_tree(const ConceptClass& cls, const std::vector<int>& xs,
                                    Lcg64& rng, int branch_percent = 80) {
  LCTree t = LCTree::make(xs);
  std::function<void(int, std::uint32_t, ConceptMask)> build = [&](int lvl, std::uint32_t node,
                                                                   ConceptMask set) {
    if (lvl == t.depth) return;
    auto labels = naive_labels(cls, set, xs[lvl]);
    bool branch = labels.size() >= 2 && rng.next_below(100) < static_cast<std::uint64_t>(branch_percent);
    Label y0, y1;
    if (branch) {
      size_t a = rng.next_below(labels.size());
      size_t b = rng.next_below(labels.size() - 1);
      if (b >= a) ++b;
      y0 = labels[std::min(a, b)];
      y1 = labels[std::max(a, b)];
    } else {
      y0 = y1 = labels[rng.next_below(labels.size())];
    }
    t.edge_ref(lvl, node, 0) = y0;
    t.edge_ref(lvl, node, 1) = y1;
    build(lvl + 1, node * 2, naive_restrict(cls, set, xs[lvl], y0));
    build(lvl + 1, node * 2 + 1, naive_restrict(cls, set, xs[lvl], y1));
  };
  build(0, 0, full_mask(cls.size()));
  return t;
}

}  // namespace transonline::testing
