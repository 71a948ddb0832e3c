#include "transonline/adversaries.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>

#include "transonline/learners.hpp"
#include "transonline/rng.hpp"

namespace transonline {

int consistent_concept(const ConceptClass& cls, const Stream& s) {
  for (int c = 0; c < cls.size(); ++c) {
    bool ok = true;
    for (int t = 0; t < s.horizon() && ok; ++t)
      if (cls.value(c, s.xs[t]) != s.ys[t]) ok = false;
    if (ok) return c;
  }
  return -1;
}

nlohmann::ordered_json stream_to_json(const Stream& s) {
  nlohmann::ordered_json j;
  j["xs"] = s.xs;
  j["ys"] = s.ys;
  nlohmann::ordered_json meta;
  meta["construction"] = s.meta.construction;
  meta["sigma"] = s.meta.sigma;
  meta["concept"] = s.meta.concept_index;
  meta["seed"] = s.meta.seed;
  meta["realizable"] = s.meta.realizable;
  j["meta"] = meta;
  return j;
}

Stream stream_from_json(const nlohmann::ordered_json& j) {
  Stream s;
  s.xs = j.at("xs").get<std::vector<int>>();
  s.ys = j.at("ys").get<std::vector<Label>>();
  if (s.xs.size() != s.ys.size())
    throw std::invalid_argument("stream file: xs and ys lengths differ");
  if (j.contains("meta")) {
    const auto& m = j.at("meta");
    s.meta.construction = m.value("construction", std::string("file"));
    s.meta.sigma = m.value("sigma", std::string());
    s.meta.concept_index = m.value("concept", -1);
    s.meta.seed = m.value("seed", std::uint64_t(0));
    s.meta.realizable = m.value("realizable", false);
  }
  return s;
}

void save_stream(const Stream& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << stream_to_json(s).dump(2) << "\n";
}

Stream load_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::ordered_json j;
  in >> j;
  return stream_from_json(j);
}

namespace {

std::uint32_t parse_sigma(const std::string& sigma, int depth) {
  if (static_cast<int>(sigma.size()) != depth)
    throw std::invalid_argument("sigma length " + std::to_string(sigma.size()) +
                                " does not match tree depth " + std::to_string(depth));
  std::uint32_t bits = 0;
  for (char c : sigma) {
    if (c != '0' && c != '1') throw std::invalid_argument("sigma must be a 0/1 bitstring");
    bits = bits * 2 + (c - '0');
  }
  return bits;
}

std::string draw_sigma(int depth, Lcg64& rng) {
  std::string s(depth, '0');
  for (int i = 0; i < depth; ++i) s[i] = rng.next_bit() ? '1' : '0';
  return s;
}

void require_witness(const ConceptClass& cls, const LCTree& tree, bool littlestone) {
  if (littlestone && !is_littlestone_labeled(tree))
    throw std::invalid_argument("tree is not Littlestone-labeled");
  if (!is_shattered(tree, VersionSet::full(cls)))
    throw std::invalid_argument("tree is not shattered by the class");
}

void check_stream_realizable(const ConceptClass& cls, Stream& s) {
  s.meta.concept_index = consistent_concept(cls, s);
  if (s.meta.concept_index < 0)
    throw std::logic_error("constructed stream is not realizable");
  s.meta.realizable = true;
}

bool subtree_equal(const LCTree& t, int level, std::uint32_t a, std::uint32_t b) {
  if (level == t.depth) return true;
  if (t.edge(level, a, 0) != t.edge(level, b, 0) || t.edge(level, a, 1) != t.edge(level, b, 1))
    return false;
  return subtree_equal(t, level + 1, a * 2, b * 2) &&
         subtree_equal(t, level + 1, a * 2 + 1, b * 2 + 1);
}

bool symmetric_at_nonbranching(const LCTree& t, int level, std::uint32_t node) {
  if (level == t.depth) return true;
  if (!t.node_branches(level, node) &&
      !subtree_equal(t, level + 1, node * 2, node * 2 + 1))
    return false;
  return symmetric_at_nonbranching(t, level + 1, node * 2) &&
         symmetric_at_nonbranching(t, level + 1, node * 2 + 1);
}

int max_path_branching(const LCTree& t, int level, std::uint32_t node) {
  if (level == t.depth) return 0;
  int here = t.node_branches(level, node) ? 1 : 0;
  return here + std::max(max_path_branching(t, level + 1, node * 2),
                         max_path_branching(t, level + 1, node * 2 + 1));
}

}  // namespace

Stream path_stream(const ConceptClass& cls, const LCTree& witness, const std::string& sigma) {
  require_witness(cls, witness, /*littlestone=*/true);
  std::uint32_t bits = parse_sigma(sigma, witness.depth);
  Stream s;
  s.xs = witness.level_instances;
  for (int t = 0; t < witness.depth; ++t) s.ys.push_back(witness.label_on_path(bits, t));
  s.meta.construction = "path";
  s.meta.sigma = sigma;
  check_stream_realizable(cls, s);
  return s;
}

Stream path_stream_seeded(const ConceptClass& cls, const LCTree& witness, std::uint64_t seed) {
  Lcg64 rng(seed);
  Stream s = path_stream(cls, witness, draw_sigma(witness.depth, rng));
  s.meta.seed = seed;
  return s;
}

Stream logT_stream(const ConceptClass& cls, const LCTree& normalized, int T,
                   const std::string& sigma) {
  require_witness(cls, normalized, /*littlestone=*/false);
  int q = min_path_branching(normalized);
  if (max_path_branching(normalized, 0, 0) != q)
    throw std::invalid_argument("logT_stream: tree paths do not all have equal branching");
  if (!symmetric_at_nonbranching(normalized, 0, 0))
    throw std::invalid_argument("logT_stream: tree is not symmetric at non-branching nodes");
  if (q < 1) throw std::invalid_argument("logT_stream: tree has no branching levels");

  std::vector<int> levels;  // 0-based levels with at least one branching node
  for (int lvl = 0; lvl < normalized.depth; ++lvl)
    for (std::uint32_t node = 0; node < (1u << lvl); ++node)
      if (normalized.node_branches(lvl, node)) {
        levels.push_back(lvl);
        break;
      }
  if (static_cast<int>(levels.size()) > T)
    throw std::invalid_argument("logT_stream: " + std::to_string(levels.size()) +
                                " branching levels exceed horizon " + std::to_string(T));

  std::uint32_t bits = parse_sigma(sigma, normalized.depth);
  Stream s;
  for (int lvl : levels) {
    s.xs.push_back(normalized.level_instances[lvl]);
    s.ys.push_back(normalized.label_on_path(bits, lvl));
  }
  while (s.horizon() < T) {
    s.xs.push_back(s.xs.back());
    s.ys.push_back(s.ys.back());
  }
  s.meta.construction = "logT";
  s.meta.sigma = sigma;
  check_stream_realizable(cls, s);
  return s;
}

Stream logT_stream_seeded(const ConceptClass& cls, const LCTree& normalized, int T,
                          std::uint64_t seed) {
  Lcg64 rng(seed);
  Stream s = logT_stream(cls, normalized, T, draw_sigma(normalized.depth, rng));
  s.meta.seed = seed;
  return s;
}

Stream block_stream(const ConceptClass& cls, const LCTree& witness, int T, std::uint64_t seed) {
  require_witness(cls, witness, /*littlestone=*/true);
  int d = witness.depth;
  if (d < 1) throw std::invalid_argument("block_stream: witness tree has depth 0");
  if (T < d)
    throw std::invalid_argument("block_stream: horizon " + std::to_string(T) +
                                " below witness depth " + std::to_string(d));
  int k = T / d;
  if (k % 2 == 0) --k;  // largest odd k with k*d <= T

  Lcg64 rng(seed);
  std::vector<int> bits(T);
  std::string sigma(T, '0');
  for (int t = 0; t < T; ++t) {
    bits[t] = rng.next_bit();
    sigma[t] = bits[t] ? '1' : '0';
  }

  Stream s;
  std::uint32_t majority_prefix = 0;  // majority bits of completed blocks
  int completed = 0;
  for (int t = 0; t < T; ++t) {
    int block = std::min(t / k, d - 1);
    while (completed < block) {
      int ones = 0;
      for (int u = completed * k; u < (completed + 1) * k; ++u) ones += bits[u];
      majority_prefix = majority_prefix * 2 + (ones > k - ones ? 1 : 0);
      ++completed;
    }
    s.xs.push_back(witness.level_instances[block]);
    s.ys.push_back(witness.edge(block, majority_prefix, bits[t]));
  }
  s.meta.construction = "block";
  s.meta.sigma = sigma;
  s.meta.seed = seed;
  s.meta.realizable = false;
  return s;
}

std::pair<Stream, int> worst_case_stream(const ConceptClass& cls, const std::vector<int>& xs,
                                         const std::string& learner, const Caps& caps) {
  if (!is_realizable_learner(learner))
    throw std::invalid_argument("worst_case_stream: learner '" + learner +
                                "' is not a deterministic realizable learner");
  int T = static_cast<int>(xs.size());
  if (T > caps.max_worst_case_len)
    throw CapError("worst_case_stream: horizon " + std::to_string(T) + " above cap " +
                   std::to_string(caps.max_worst_case_len));

  BranchingPotentialEngine bp_engine(cls, xs, caps);
  ShatterCounter counter(cls, xs, caps);
  bool conservative = learner == "ssh-conservative";
  auto predict = [&](ConceptMask set, int t) -> Label {
    return learner == "bp" ? bp_prediction(cls, bp_engine, set, t)
                           : ssh_prediction(cls, counter, set, t);
  };

  struct Result {
    int mistakes = -1;
    std::vector<Label> ys;
  };
  // The conservative learner's state can lag behind the true version set, so
  // realizability is tracked on a separate mask.
  std::map<std::tuple<ConceptMask, ConceptMask, int>, Result> memo;
  std::function<Result(ConceptMask, ConceptMask, int)> search =
      [&](ConceptMask learner_set, ConceptMask true_set, int t) -> Result {
    if (t > T) return Result{0, {}};
    auto key = std::make_tuple(learner_set, true_set, t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Label pred = predict(learner_set, t);
    Result best;
    for (Label y : realized_labels(VersionSet{&cls, true_set}, xs[t - 1])) {
      ConceptMask true_next = restrict_to(VersionSet{&cls, true_set}, xs[t - 1], y).members;
      ConceptMask learner_next =
          (conservative && y == pred)
              ? learner_set
              : restrict_to(VersionSet{&cls, learner_set}, xs[t - 1], y).members;
      Result sub = search(learner_next, true_next, t + 1);
      int m = sub.mistakes + (y != pred ? 1 : 0);
      if (m > best.mistakes) {
        best.mistakes = m;
        best.ys.clear();
        best.ys.push_back(y);
        best.ys.insert(best.ys.end(), sub.ys.begin(), sub.ys.end());
      }
    }
    memo[key] = best;
    return best;
  };

  ConceptMask full = full_mask(cls.size());
  Result top = search(full, full, 1);
  Stream s;
  s.xs = xs;
  s.ys = top.ys;
  s.meta.construction = "worst_case(" + learner + ")";
  check_stream_realizable(cls, s);
  return {s, top.mistakes};
}

}  // namespace transonline
