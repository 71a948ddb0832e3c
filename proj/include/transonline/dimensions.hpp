#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "transonline/common.hpp"
#include "transonline/concepts.hpp"
#include "transonline/trees.hpp"

namespace transonline {

enum class DimKind { D, B, L, DS, G, NT };

std::string dim_kind_name(DimKind k);

/// Littlestone tree with a per-node instance (internal witness form for L;
/// not a stored artifact). Node i's children live at child[i][bit]; -1 marks
/// a leaf.
struct LittlestoneTree {
  struct Node {
    int instance = -1;
    Label label[2] = {0, 0};
    int child[2] = {-1, -1};
  };
  std::vector<Node> nodes;  // nodes[0] is the root when non-empty
  int depth = 0;
};

/// Verifies a Littlestone-tree witness against a class: distinct edge labels
/// per node and every root-to-leaf path realized.
bool littlestone_tree_valid(const LittlestoneTree& t, const ConceptClass& cls);

struct DimensionWitness {
  DimKind kind;
  int value = 0;
  bool exact = true;  // false when a search cap bounded the answer from below

  std::optional<LCTree> tree;                 // D, B
  std::optional<LittlestoneTree> ltree;       // L
  std::vector<int> instance_seq;              // DS, G, NT
  std::vector<std::vector<Label>> behaviors;  // DS: surviving projected vectors
  std::vector<Label> labeling;                // G: the witness labeling f
  std::vector<int> chain;                     // NT: concept chain c_0..c_d
};

nlohmann::ordered_json witness_to_json(const DimensionWitness& w);

// ---------------------------------------------------------------------------
// Dimension engines. All are exhaustive searches with memoization, exact
// within the stated caps.
// ---------------------------------------------------------------------------

/// Level-constrained Littlestone dimension D with a shattered,
/// Littlestone-labeled witness tree of that depth. Joint recursion over
/// multisets of version sets (one shared instance per level), memoized on
/// canonical multiset keys; depth is bounded by floor(log2 |C|) since each
/// level splits every surviving set into disjoint non-empty parts.
DimensionWitness dim_level_littlestone(const ConceptClass& cls, const Caps& caps = {});

/// Littlestone dimension L via the standard per-node recursion, memoized on
/// the version set.
DimensionWitness dim_littlestone(const ConceptClass& cls, const Caps& caps = {});

/// Level-constrained Branching dimension via the sequence-sup formulation:
/// max of branching_potential over all instance sequences (repetition
/// allowed) of length up to seq_cap. `exact` is set when the value reaches
/// L (then B = L is certified); otherwise the result is a certified lower
/// bound at that cap.
DimensionWitness dim_branching(const ConceptClass& cls, int seq_cap, const Caps& caps = {});

/// DS dimension: largest d with d instances whose projected behaviors admit a
/// non-empty subset in which every vector has an i-neighbour for every
/// coordinate i.
DimensionWitness dim_ds(const ConceptClass& cls, const Caps& caps = {});

/// Graph dimension: largest |S| with a labeling f realized by some concept on
/// all of S such that every agreement pattern T subseteq S is achieved.
DimensionWitness dim_graph(const ConceptClass& cls, const Caps& caps = {});

/// Natarajan Threshold dimension: largest d with an instance sequence and a
/// concept chain c_0..c_d where consecutive concepts differ exactly at the
/// i-th projected coordinate.
DimensionWitness dim_nt(const ConceptClass& cls, const Caps& caps = {});

// ---------------------------------------------------------------------------
// Learner potentials over a fixed instance sequence.
// ---------------------------------------------------------------------------

/// Memoized evaluator of the branching potential B(V, xs[from:]): the best
/// min-path-branching over level-constrained trees on exactly that suffix
/// shattered by V. At each position a set either branches on two distinct
/// realized labels (both parts non-empty, count+1) or passes on one realized
/// label. Sibling subtrees are independent once the sequence is fixed, so the
/// recursion runs per set.
class BranchingPotentialEngine {
 public:
  BranchingPotentialEngine(const ConceptClass& cls, std::vector<int> xs, const Caps& caps = {});

  int potential(ConceptMask set, int from);
  /// A tree on xs[from:] achieving potential(set, from), shattered by `set`.
  LCTree witness(ConceptMask set, int from);

  const std::vector<int>& sequence() const { return xs_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<ConceptMask, int>& k) const {
      return std::hash<ConceptMask>()(k.first * 31 + static_cast<ConceptMask>(k.second));
    }
  };
  void build_witness(LCTree& t, ConceptMask set, int from, int level, std::uint32_t node);

  const ConceptClass& cls_;
  std::vector<int> xs_;
  std::unordered_map<std::pair<ConceptMask, int>, int, KeyHash> memo_;
};

/// One-shot wrapper: B(V, xs). Errors on an empty version set; empty xs is
/// legal and gives 0.
int branching_potential(const VersionSet& v, const std::vector<int>& xs, const Caps& caps = {});

/// Counts order-preserving subsequences of a fixed instance sequence that are
/// LC-Littlestone-shattered by a version set (the empty subsequence counts
/// for every non-empty set). Families of shattered position masks are
/// materialized explicitly; their size is Sauer-bounded, which keeps this
/// practical well past naive 2^T enumeration.
class ShatterCounter {
 public:
  /// relax_len lifts the horizon cap to the structural limit (31); used by
  /// the agnostic learner whose expert simulations run at horizons past the
  /// public cap.
  ShatterCounter(const ConceptClass& cls, std::vector<int> xs, const Caps& caps = {},
                 bool relax_len = false);

  std::uint64_t count(ConceptMask set);
  const std::vector<std::uint32_t>& family(ConceptMask set, int from);

  const std::vector<int>& sequence() const { return xs_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<ConceptMask, int>& k) const {
      return std::hash<ConceptMask>()(k.first * 31 + static_cast<ConceptMask>(k.second));
    }
  };
  const ConceptClass& cls_;
  std::vector<int> xs_;
  std::unordered_map<std::pair<ConceptMask, int>, std::vector<std::uint32_t>, KeyHash> memo_;
};

/// One-shot wrapper: S(V) over xs. Errors on an empty set or |xs| above the
/// cap (default 16).
std::uint64_t count_shattered_subsequences(const VersionSet& v, const std::vector<int>& xs,
                                           const Caps& caps = {});

}  // namespace transonline
