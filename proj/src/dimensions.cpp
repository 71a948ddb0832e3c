#include "transonline/dimensions.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace transonline {

std::string dim_kind_name(DimKind k) {
  switch (k) {
    case DimKind::D: return "D";
    case DimKind::B: return "B";
    case DimKind::L: return "L";
    case DimKind::DS: return "DS";
    case DimKind::G: return "G";
    case DimKind::NT: return "NT";
  }
  return "?";
}

namespace {

void check_engine_caps(const ConceptClass& cls, const Caps& caps, const std::string& what) {
  if (cls.size() > caps.max_concepts)
    throw CapError(what + ": class has " + std::to_string(cls.size()) +
                   " concepts, cap is " + std::to_string(caps.max_concepts));
  if (cls.n_instances > caps.max_instances)
    throw CapError(what + ": class has " + std::to_string(cls.n_instances) +
                   " instances, cap is " + std::to_string(caps.max_instances));
}

int floor_log2(std::uint64_t v) { return v == 0 ? -1 : 63 - __builtin_clzll(v); }

// Labels realized by a mask at instance x, sorted ascending.
std::vector<Label> mask_labels(const ConceptClass& cls, ConceptMask set, int x) {
  std::vector<Label> out;
  for (int i = 0; i < cls.size(); ++i)
    if ((set >> i) & 1) out.push_back(cls.value(i, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConceptMask mask_restrict(const ConceptClass& cls, ConceptMask set, int x, Label y) {
  ConceptMask out = 0;
  for (int i = 0; i < cls.size(); ++i)
    if (((set >> i) & 1) && cls.value(i, x) == y) out |= 1ull << i;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// D: joint multiset recursion
// ---------------------------------------------------------------------------

namespace {

struct LevelSearch {
  const ConceptClass& cls;
  // memo: canonical (sorted) multiset of masks + remaining depth -> shatterable?
  std::map<std::pair<std::vector<ConceptMask>, int>, bool> memo;

  // Valid label pairs for one set at instance x: both restrictions non-empty.
  std::vector<std::pair<Label, Label>> pairs_at(ConceptMask set, int x) const {
    std::vector<std::pair<Label, Label>> out;
    auto labels = mask_labels(cls, set, x);
    for (size_t a = 0; a < labels.size(); ++a)
      for (size_t b = a + 1; b < labels.size(); ++b)
        out.push_back({labels[a], labels[b]});
    return out;
  }

  // DFS over per-set pair choices at instance x; on a full assignment,
  // recurse into the children multiset.
  bool try_choices(const std::vector<ConceptMask>& sets, int x, size_t idx,
                   std::vector<ConceptMask>& children, int r) {
    if (idx == sets.size()) return can_shatter(children, r - 1);
    for (const auto& [y0, y1] : pairs_at(sets[idx], x)) {
      children.push_back(mask_restrict(cls, sets[idx], x, y0));
      children.push_back(mask_restrict(cls, sets[idx], x, y1));
      if (try_choices(sets, x, idx + 1, children, r)) return true;
      children.pop_back();
      children.pop_back();
    }
    return false;
  }

  bool can_shatter(std::vector<ConceptMask> sets, int r) {
    if (r == 0) return true;
    for (ConceptMask s : sets)
      if (__builtin_popcountll(s) < 2) return false;  // cannot split r more times
    std::sort(sets.begin(), sets.end());
    auto key = std::make_pair(sets, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (int x = 0; x < cls.n_instances && !ok; ++x) {
      std::vector<ConceptMask> children;
      children.reserve(sets.size() * 2);
      ok = try_choices(sets, x, 0, children, r);
    }
    memo[key] = ok;
    return ok;
  }

  // Rebuilds a witness: finds the instance and pair choices whose children
  // multiset certifies depth r-1, then recurses with node addresses.
  void build(LCTree& t, const std::vector<std::pair<ConceptMask, std::uint32_t>>& nodes,
             int level, int r) {
    if (r == 0) return;
    std::vector<ConceptMask> sets;
    for (const auto& [m, idx] : nodes) sets.push_back(m);
    for (int x = 0; x < cls.n_instances; ++x) {
      std::vector<std::pair<Label, Label>> chosen(nodes.size());
      std::vector<ConceptMask> children;
      std::function<bool(size_t)> dfs = [&](size_t idx) -> bool {
        if (idx == sets.size()) {
          std::vector<ConceptMask> canon = children;
          return can_shatter(canon, r - 1);
        }
        for (const auto& pr : pairs_at(sets[idx], x)) {
          chosen[idx] = pr;
          children.push_back(mask_restrict(cls, sets[idx], x, pr.first));
          children.push_back(mask_restrict(cls, sets[idx], x, pr.second));
          if (dfs(idx + 1)) return true;
          children.pop_back();
          children.pop_back();
        }
        return false;
      };
      if (!dfs(0)) continue;
      t.level_instances[level] = x;
      std::vector<std::pair<ConceptMask, std::uint32_t>> next;
      for (size_t i = 0; i < nodes.size(); ++i) {
        std::uint32_t node = nodes[i].second;
        t.edge_ref(level, node, 0) = chosen[i].first;
        t.edge_ref(level, node, 1) = chosen[i].second;
        next.push_back({children[2 * i], node * 2});
        next.push_back({children[2 * i + 1], node * 2 + 1});
      }
      build(t, next, level + 1, r - 1);
      return;
    }
    throw std::logic_error("witness reconstruction failed");  // memo said shatterable
  }
};

}  // namespace

DimensionWitness dim_level_littlestone(const ConceptClass& cls, const Caps& caps) {
  check_engine_caps(cls, caps, "dim_level_littlestone");
  LevelSearch search{cls, {}};
  ConceptMask full = full_mask(cls.size());
  int bound = floor_log2(static_cast<std::uint64_t>(cls.size()));
  int d = 0;
  while (d < bound && search.can_shatter({full}, d + 1)) ++d;

  DimensionWitness w;
  w.kind = DimKind::D;
  w.value = d;
  w.exact = true;
  LCTree t = LCTree::make(std::vector<int>(d, 0));
  if (d > 0) search.build(t, {{full, 0}}, 0, d);
  w.tree = std::move(t);
  return w;
}

// ---------------------------------------------------------------------------
// L: per-node recursion
// ---------------------------------------------------------------------------

namespace {

struct LdimSearch {
  const ConceptClass& cls;
  std::unordered_map<ConceptMask, int> memo;

  int ldim(ConceptMask set) {
    if (__builtin_popcountll(set) < 2) return 0;
    auto it = memo.find(set);
    if (it != memo.end()) return it->second;
    memo[set] = 0;  // guards against re-entry; sets only shrink, so no cycles
    int best = 0;
    for (int x = 0; x < cls.n_instances; ++x) {
      auto labels = mask_labels(cls, set, x);
      for (size_t a = 0; a < labels.size(); ++a) {
        for (size_t b = a + 1; b < labels.size(); ++b) {
          ConceptMask s0 = mask_restrict(cls, set, x, labels[a]);
          ConceptMask s1 = mask_restrict(cls, set, x, labels[b]);
          best = std::max(best, 1 + std::min(ldim(s0), ldim(s1)));
        }
      }
    }
    memo[set] = best;
    return best;
  }

  int build(LittlestoneTree& t, ConceptMask set, int remaining) {
    if (remaining == 0) return -1;
    for (int x = 0; x < cls.n_instances; ++x) {
      auto labels = mask_labels(cls, set, x);
      for (size_t a = 0; a < labels.size(); ++a) {
        for (size_t b = a + 1; b < labels.size(); ++b) {
          ConceptMask s0 = mask_restrict(cls, set, x, labels[a]);
          ConceptMask s1 = mask_restrict(cls, set, x, labels[b]);
          if (std::min(ldim(s0), ldim(s1)) >= remaining - 1) {
            int idx = static_cast<int>(t.nodes.size());
            t.nodes.push_back({});
            t.nodes[idx].instance = x;
            t.nodes[idx].label[0] = labels[a];
            t.nodes[idx].label[1] = labels[b];
            t.nodes[idx].child[0] = build(t, s0, remaining - 1);
            t.nodes[idx].child[1] = build(t, s1, remaining - 1);
            return idx;
          }
        }
      }
    }
    throw std::logic_error("L witness reconstruction failed");
  }
};

bool ltree_valid_rec(const LittlestoneTree& t, const ConceptClass& cls, int node,
                     std::vector<std::pair<int, Label>>& path) {
  if (node < 0) {
    for (int c = 0; c < cls.size(); ++c) {
      bool ok = true;
      for (auto& [x, y] : path)
        if (cls.value(c, x) != y) { ok = false; break; }
      if (ok) return true;
    }
    return false;
  }
  const auto& nd = t.nodes[node];
  if (nd.label[0] == nd.label[1]) return false;
  for (int bit = 0; bit < 2; ++bit) {
    path.push_back({nd.instance, nd.label[bit]});
    bool ok = ltree_valid_rec(t, cls, nd.child[bit], path);
    path.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool littlestone_tree_valid(const LittlestoneTree& t, const ConceptClass& cls) {
  if (t.nodes.empty()) return t.depth == 0;
  std::vector<std::pair<int, Label>> path;
  return ltree_valid_rec(t, cls, 0, path);
}

DimensionWitness dim_littlestone(const ConceptClass& cls, const Caps& caps) {
  check_engine_caps(cls, caps, "dim_littlestone");
  LdimSearch search{cls, {}};
  ConceptMask full = full_mask(cls.size());
  DimensionWitness w;
  w.kind = DimKind::L;
  w.value = search.ldim(full);
  w.exact = true;
  LittlestoneTree t;
  t.depth = w.value;
  if (w.value > 0) search.build(t, full, w.value);
  w.ltree = std::move(t);
  return w;
}

// ---------------------------------------------------------------------------
// Branching potential and B
// ---------------------------------------------------------------------------

BranchingPotentialEngine::BranchingPotentialEngine(const ConceptClass& cls, std::vector<int> xs,
                                                   const Caps& caps)
    : cls_(cls), xs_(std::move(xs)) {
  if (cls_.size() > caps.max_class_size)
    throw CapError("branching_potential: class above hard cap");
  if (xs_.size() > 31) throw CapError("branching_potential: sequence longer than 31");
  for (int x : xs_)
    if (x < 0 || x >= cls_.n_instances)
      throw std::invalid_argument("branching_potential: instance out of range");
}

int BranchingPotentialEngine::potential(ConceptMask set, int from) {
  if (set == 0) throw std::invalid_argument("empty version set");
  if (from >= static_cast<int>(xs_.size())) return 0;
  auto key = std::make_pair(set, from);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  int x = xs_[from];
  auto labels = mask_labels(cls_, set, x);
  int best = 0;
  std::vector<ConceptMask> parts;
  std::vector<int> vals;
  for (Label y : labels) {
    ConceptMask part = mask_restrict(cls_, set, x, y);
    parts.push_back(part);
    vals.push_back(potential(part, from + 1));  // pass move
    best = std::max(best, vals.back());
  }
  for (size_t a = 0; a < parts.size(); ++a)
    for (size_t b = a + 1; b < parts.size(); ++b)
      best = std::max(best, 1 + std::min(vals[a], vals[b]));
  memo_[key] = best;
  return best;
}

void BranchingPotentialEngine::build_witness(LCTree& t, ConceptMask set, int from, int level,
                                             std::uint32_t node) {
  if (from >= static_cast<int>(xs_.size())) return;
  int target = potential(set, from);
  int x = xs_[from];
  auto labels = mask_labels(cls_, set, x);
  // branch moves first so the witness actually exhibits the branching
  for (size_t a = 0; a < labels.size(); ++a) {
    for (size_t b = a + 1; b < labels.size(); ++b) {
      ConceptMask s0 = mask_restrict(cls_, set, x, labels[a]);
      ConceptMask s1 = mask_restrict(cls_, set, x, labels[b]);
      if (1 + std::min(potential(s0, from + 1), potential(s1, from + 1)) == target) {
        t.edge_ref(level, node, 0) = labels[a];
        t.edge_ref(level, node, 1) = labels[b];
        build_witness(t, s0, from + 1, level + 1, node * 2);
        build_witness(t, s1, from + 1, level + 1, node * 2 + 1);
        return;
      }
    }
  }
  for (Label y : labels) {
    ConceptMask part = mask_restrict(cls_, set, x, y);
    if (potential(part, from + 1) == target) {
      t.edge_ref(level, node, 0) = y;
      t.edge_ref(level, node, 1) = y;
      build_witness(t, part, from + 1, level + 1, node * 2);
      build_witness(t, part, from + 1, level + 1, node * 2 + 1);
      return;
    }
  }
  throw std::logic_error("branching witness reconstruction failed");
}

LCTree BranchingPotentialEngine::witness(ConceptMask set, int from) {
  LCTree t = LCTree::make(std::vector<int>(xs_.begin() + from, xs_.end()));
  build_witness(t, set, from, 0, 0);
  return t;
}

int branching_potential(const VersionSet& v, const std::vector<int>& xs, const Caps& caps) {
  if (v.empty()) throw std::invalid_argument("empty version set");
  BranchingPotentialEngine engine(*v.cls, xs, caps);
  return engine.potential(v.members, 0);
}

DimensionWitness dim_branching(const ConceptClass& cls, int seq_cap, const Caps& caps) {
  if (seq_cap < 1) throw std::invalid_argument("dim_branching: seq_cap must be >= 1");
  check_engine_caps(cls, caps, "dim_branching");
  int L = dim_littlestone(cls, caps).value;
  ConceptMask full = full_mask(cls.size());

  DimensionWitness w;
  w.kind = DimKind::B;
  w.value = 0;
  std::vector<int> best_xs;
  bool done = false;
  for (int len = 1; len <= seq_cap && !done; ++len) {
    std::vector<int> xs(len, 0);
    while (true) {
      BranchingPotentialEngine engine(cls, xs, caps);
      int v = engine.potential(full, 0);
      if (v > w.value) {
        w.value = v;
        best_xs = xs;
        if (v >= L) { done = true; break; }
      }
      // odometer over instance indices
      int pos = len - 1;
      while (pos >= 0 && xs[pos] == cls.n_instances - 1) xs[pos--] = 0;
      if (pos < 0) break;
      ++xs[pos];
    }
  }
  w.exact = (w.value >= L);
  if (!best_xs.empty()) {
    BranchingPotentialEngine engine(cls, best_xs, caps);
    w.tree = engine.witness(full, 0);
  } else {
    w.tree = LCTree::make({});
  }
  return w;
}

// ---------------------------------------------------------------------------
// DS
// ---------------------------------------------------------------------------

namespace {

// Distinct projections of the class onto the instance tuple S.
std::vector<std::vector<Label>> projections(const ConceptClass& cls, const std::vector<int>& S) {
  std::vector<std::vector<Label>> out;
  for (int c = 0; c < cls.size(); ++c) {
    std::vector<Label> row;
    row.reserve(S.size());
    for (int x : S) row.push_back(cls.value(c, x));
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_i_neighbour(const std::vector<Label>& f, const std::vector<Label>& g, size_t i) {
  if (f[i] == g[i]) return false;
  for (size_t j = 0; j < f.size(); ++j)
    if (j != i && f[j] != g[j]) return false;
  return true;
}

// The union of valid behavior subsets is valid, so the maximal one is the
// fixpoint of repeatedly dropping vectors that lack an i-neighbour.
std::vector<std::vector<Label>> ds_core(std::vector<std::vector<Label>> behaviors, size_t d) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t idx = 0; idx < behaviors.size(); ++idx) {
      for (size_t i = 0; i < d; ++i) {
        bool has = false;
        for (size_t other = 0; other < behaviors.size() && !has; ++other)
          if (other != idx && is_i_neighbour(behaviors[idx], behaviors[other], i)) has = true;
        if (!has) {
          behaviors.erase(behaviors.begin() + idx);
          changed = true;
          --idx;
          break;
        }
      }
    }
  }
  return behaviors;
}

}  // namespace

DimensionWitness dim_ds(const ConceptClass& cls, const Caps& caps) {
  check_engine_caps(cls, caps, "dim_ds");
  DimensionWitness w;
  w.kind = DimKind::DS;
  w.value = 0;
  w.exact = true;
  int n = cls.n_instances;
  if (cls.size() < 2) return w;
  // A repeated instance can never be DS-shattered (an i-neighbour at a
  // duplicated coordinate is impossible), so subsets suffice.
  for (int d = n; d >= 1; --d) {
    std::vector<int> S(d);
    std::function<bool(int, int)> pick = [&](int start, int k) -> bool {
      if (k == d) {
        auto core = ds_core(projections(cls, S), d);
        if (!core.empty()) {
          w.value = d;
          w.instance_seq = S;
          w.behaviors = core;
          return true;
        }
        return false;
      }
      for (int x = start; x < n; ++x) {
        S[k] = x;
        if (pick(x + 1, k + 1)) return true;
      }
      return false;
    };
    if (pick(0, 0)) break;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Graph dimension
// ---------------------------------------------------------------------------

DimensionWitness dim_graph(const ConceptClass& cls, const Caps& caps) {
  check_engine_caps(cls, caps, "dim_graph");
  DimensionWitness w;
  w.kind = DimKind::G;
  w.value = 0;
  w.exact = true;
  int n = cls.n_instances;
  // All 2^|S| agreement patterns must be realized, so |S| <= floor(log2 |C|).
  int maxs = std::min(n, floor_log2(static_cast<std::uint64_t>(cls.size())));
  for (int s = maxs; s >= 1; --s) {
    std::vector<int> S(s);
    std::function<bool(int, int)> pick = [&](int start, int k) -> bool {
      if (k == s) {
        // T = S forces f to be the projection of some concept.
        for (const auto& f : projections(cls, S)) {
          std::vector<bool> achieved(1ull << s, false);
          for (int c = 0; c < cls.size(); ++c) {
            std::uint32_t m = 0;
            for (int i = 0; i < s; ++i)
              if (cls.value(c, S[i]) == f[i]) m |= 1u << i;
            achieved[m] = true;
          }
          if (std::all_of(achieved.begin(), achieved.end(), [](bool b) { return b; })) {
            w.value = s;
            w.instance_seq = S;
            w.labeling = f;
            return true;
          }
        }
        return false;
      }
      for (int x = start; x < n; ++x) {
        S[k] = x;
        if (pick(x + 1, k + 1)) return true;
      }
      return false;
    };
    if (pick(0, 0)) break;
  }
  return w;
}

// ---------------------------------------------------------------------------
// NT
// ---------------------------------------------------------------------------

namespace {

// Consecutive chain members must differ exactly at the projected coordinate i;
// that characterization makes the chain search a reachability sweep.
bool differ_exactly_at(const ConceptClass& cls, int c1, int c2, const std::vector<int>& S,
                       int pos) {
  for (size_t j = 0; j < S.size(); ++j) {
    bool same = cls.value(c1, S[j]) == cls.value(c2, S[j]);
    if (static_cast<int>(j) == pos ? same : !same) return false;
  }
  return true;
}

bool nt_shattered(const ConceptClass& cls, const std::vector<int>& S, std::vector<int>* chain) {
  int d = static_cast<int>(S.size());
  int m = cls.size();
  std::vector<std::vector<int>> reach(d + 1);  // predecessor for backtracking
  std::vector<bool> cur(m, true), next(m);
  std::vector<std::vector<int>> pred(d + 1, std::vector<int>(m, -1));
  for (int i = 1; i <= d; ++i) {
    std::fill(next.begin(), next.end(), false);
    for (int c2 = 0; c2 < m; ++c2)
      for (int c1 = 0; c1 < m; ++c1)
        if (cur[c1] && differ_exactly_at(cls, c1, c2, S, i - 1)) {
          next[c2] = true;
          if (pred[i][c2] < 0) pred[i][c2] = c1;
        }
    cur = next;
    if (std::none_of(cur.begin(), cur.end(), [](bool b) { return b; })) return false;
  }
  if (chain) {
    chain->assign(d + 1, -1);
    int c = 0;
    while (!cur[c]) ++c;
    (*chain)[d] = c;
    for (int i = d; i >= 1; --i) (*chain)[i - 1] = pred[i][(*chain)[i]];
  }
  return true;
}

}  // namespace

DimensionWitness dim_nt(const ConceptClass& cls, const Caps& caps) {
  check_engine_caps(cls, caps, "dim_nt");
  DimensionWitness w;
  w.kind = DimKind::NT;
  w.value = 0;
  w.exact = true;
  int n = cls.n_instances;
  // Chain members are pairwise distinct, so d <= |C| - 1; repeated instances
  // are impossible (they would force f and g to collide at that position).
  int maxd = std::min(n, cls.size() - 1);
  for (int d = maxd; d >= 1; --d) {
    std::vector<int> S(d);
    std::vector<bool> used(n, false);
    std::function<bool(int)> pick = [&](int k) -> bool {
      if (k == d) {
        std::vector<int> chain;
        if (nt_shattered(cls, S, &chain)) {
          w.value = d;
          w.instance_seq = S;
          w.chain = chain;
          return true;
        }
        return false;
      }
      for (int x = 0; x < n; ++x) {
        if (used[x]) continue;
        used[x] = true;
        S[k] = x;
        if (pick(k + 1)) return true;
        used[x] = false;
      }
      return false;
    };
    if (pick(0)) break;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Shattered-subsequence counting
// ---------------------------------------------------------------------------

ShatterCounter::ShatterCounter(const ConceptClass& cls, std::vector<int> xs, const Caps& caps,
                               bool relax_len)
    : cls_(cls), xs_(std::move(xs)) {
  int cap = relax_len ? 31 : caps.max_subseq_len;
  if (static_cast<int>(xs_.size()) > cap)
    throw CapError("count_shattered_subsequences: sequence length " +
                   std::to_string(xs_.size()) + " above cap " + std::to_string(cap));
  for (int x : xs_)
    if (x < 0 || x >= cls_.n_instances)
      throw std::invalid_argument("count_shattered_subsequences: instance out of range");
}

const std::vector<std::uint32_t>& ShatterCounter::family(ConceptMask set, int from) {
  auto key = std::make_pair(set, from);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::vector<std::uint32_t> fam;
  if (from >= static_cast<int>(xs_.size())) {
    fam.push_back(0);  // the empty subsequence
  } else {
    fam = family(set, from + 1);
    int x = xs_[from];
    auto labels = mask_labels(cls_, set, x);
    std::vector<std::uint32_t> with_i;
    for (size_t a = 0; a < labels.size(); ++a) {
      ConceptMask sa = mask_restrict(cls_, set, x, labels[a]);
      const auto& fa = family(sa, from + 1);
      for (size_t b = a + 1; b < labels.size(); ++b) {
        ConceptMask sb = mask_restrict(cls_, set, x, labels[b]);
        const auto& fb = family(sb, from + 1);
        std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(),
                              std::back_inserter(with_i));
      }
    }
    std::sort(with_i.begin(), with_i.end());
    with_i.erase(std::unique(with_i.begin(), with_i.end()), with_i.end());
    for (std::uint32_t m : with_i) fam.push_back(m | (1u << from));
    std::sort(fam.begin(), fam.end());
  }
  return memo_.emplace(key, std::move(fam)).first->second;
}

std::uint64_t ShatterCounter::count(ConceptMask set) {
  if (set == 0) throw std::invalid_argument("empty version set");
  return family(set, 0).size();
}

std::uint64_t count_shattered_subsequences(const VersionSet& v, const std::vector<int>& xs,
                                           const Caps& caps) {
  if (v.empty()) throw std::invalid_argument("empty version set");
  ShatterCounter counter(*v.cls, xs, caps);
  return counter.count(v.members);
}

// ---------------------------------------------------------------------------
// Witness serialization
// ---------------------------------------------------------------------------

nlohmann::ordered_json witness_to_json(const DimensionWitness& w) {
  nlohmann::ordered_json j;
  j["kind"] = dim_kind_name(w.kind);
  j["value"] = w.value;
  j["exact"] = w.exact;
  if (w.tree) j["witness"] = tree_to_json(*w.tree);
  if (!w.instance_seq.empty() || w.kind == DimKind::DS || w.kind == DimKind::G ||
      w.kind == DimKind::NT) {
    nlohmann::ordered_json aux;
    aux["instances"] = w.instance_seq;
    if (w.kind == DimKind::DS) aux["behaviors"] = w.behaviors;
    if (w.kind == DimKind::G) aux["labeling"] = w.labeling;
    if (w.kind == DimKind::NT) aux["chain"] = w.chain;
    j["witness"] = aux;
  }
  return j;
}

}  // namespace transonline
