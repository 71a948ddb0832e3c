#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "transonline/concepts.hpp"

namespace transonline {

/// A complete binary tree of depth d with one instance per level and a label
/// on every edge. Node addresses are bitstrings sigma (root = ""); the edge
/// map *is* the label function family: Y_t(sigma_{<=t}) is the label of edge
/// (sigma_{<t}, sigma_t). Internally nodes are indexed in heap order per
/// level; serialization uses bitstring addresses.
struct LCTree {
  int depth = 0;
  std::vector<int> level_instances;          // size depth
  std::vector<std::vector<Label>> edges;     // edges[t][node*2 + bit], size 2^(t+1)

  static LCTree make(const std::vector<int>& instances);

  Label edge(int level, std::uint32_t node, int bit) const {
    return edges[level][node * 2 + bit];
  }
  Label& edge_ref(int level, std::uint32_t node, int bit) {
    return edges[level][node * 2 + bit];
  }
  /// True when the node's two outgoing edges carry distinct labels.
  bool node_branches(int level, std::uint32_t node) const {
    return edge(level, node, 0) != edge(level, node, 1);
  }
  /// Label along path sigma at level t (0-based): Y_{t+1}(sigma_{<=t+1}).
  Label label_on_path(std::uint32_t sigma, int t) const {
    std::uint32_t node = sigma >> (depth - t);
    int bit = (sigma >> (depth - 1 - t)) & 1;
    return edge(t, node, bit);
  }
};

bool operator==(const LCTree& a, const LCTree& b);

struct PathReport {
  std::string path;         // bitstring sigma of length depth
  int branching_count = 0;  // nodes along sigma with distinct outgoing labels
};

/// Condition (i): every node's two outgoing edge labels differ.
bool is_littlestone_labeled(const LCTree& tree);

/// Condition (ii): every root-to-leaf path is realized by some concept in V.
/// Depth-0 trees are vacuously shattered by any non-empty set.
bool is_shattered(const LCTree& tree, const VersionSet& v);

/// Branching factor of the path sigma (|sigma| must equal depth).
PathReport path_branching(const LCTree& tree, const std::string& sigma);

/// Minimum branching factor over all 2^depth root-to-leaf paths.
int min_path_branching(const LCTree& tree);

/// Number of levels containing at least one branching node.
int branching_levels(const LCTree& tree);

/// Rewrites a shattered tree (min path branching >= q) so that every path has
/// branching factor exactly q and every non-branching node has identical
/// left/right subtrees. Paths are frozen at their q-th branching by
/// relabeling everything below with the lowest-index consistent concept.
LCTree normalize_tree(const LCTree& tree, const ConceptClass& cls, int q);

// Tree file: {"depth": int, "level_instances": [int,...],
//             "edges": [{"node": "bitstring", "b": 0|1, "label": int},...]}
// with edges in lexicographic (node, b) order.
nlohmann::ordered_json tree_to_json(const LCTree& tree);
LCTree tree_from_json(const nlohmann::ordered_json& j);

void save_tree(const LCTree& tree, const std::string& path);
LCTree load_tree(const std::string& path);

}  // namespace transonline
