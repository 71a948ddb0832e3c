#include "transonline/trees.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace transonline {

LCTree LCTree::make(const std::vector<int>& instances) {
  LCTree t;
  t.depth = static_cast<int>(instances.size());
  t.level_instances = instances;
  t.edges.resize(t.depth);
  for (int lvl = 0; lvl < t.depth; ++lvl) t.edges[lvl].assign(2ull << lvl, 0);
  return t;
}

bool operator==(const LCTree& a, const LCTree& b) {
  return a.depth == b.depth && a.level_instances == b.level_instances && a.edges == b.edges;
}

bool is_littlestone_labeled(const LCTree& tree) {
  for (int lvl = 0; lvl < tree.depth; ++lvl)
    for (std::uint32_t node = 0; node < (1u << lvl); ++node)
      if (!tree.node_branches(lvl, node)) return false;
  return true;
}

namespace {

void check_tree_instances(const LCTree& tree, const ConceptClass& cls) {
  for (int x : tree.level_instances)
    if (x < 0 || x >= cls.n_instances)
      throw std::invalid_argument("tree instance " + std::to_string(x) +
                                  " out of range for class '" + cls.name + "'");
}

bool shattered_rec(const LCTree& tree, const VersionSet& set, int lvl, std::uint32_t node) {
  if (set.empty()) return false;
  if (lvl == tree.depth) return true;
  int x = tree.level_instances[lvl];
  for (int bit = 0; bit < 2; ++bit) {
    VersionSet child = restrict_to(set, x, tree.edge(lvl, node, bit));
    if (!shattered_rec(tree, child, lvl + 1, node * 2 + bit)) return false;
  }
  return true;
}

}  // namespace

bool is_shattered(const LCTree& tree, const VersionSet& v) {
  if (v.cls == nullptr) throw std::invalid_argument("version set has no class");
  check_tree_instances(tree, *v.cls);
  return shattered_rec(tree, v, 0, 0);
}

PathReport path_branching(const LCTree& tree, const std::string& sigma) {
  if (static_cast<int>(sigma.size()) != tree.depth)
    throw std::invalid_argument("path length " + std::to_string(sigma.size()) +
                                " does not match depth " + std::to_string(tree.depth));
  PathReport r;
  r.path = sigma;
  std::uint32_t node = 0;
  for (int lvl = 0; lvl < tree.depth; ++lvl) {
    char c = sigma[lvl];
    if (c != '0' && c != '1') throw std::invalid_argument("path must be a 0/1 bitstring");
    if (tree.node_branches(lvl, node)) ++r.branching_count;
    node = node * 2 + (c - '0');
  }
  return r;
}

namespace {

int min_branching_rec(const LCTree& tree, int lvl, std::uint32_t node) {
  if (lvl == tree.depth) return 0;
  int here = tree.node_branches(lvl, node) ? 1 : 0;
  return here + std::min(min_branching_rec(tree, lvl + 1, node * 2),
                         min_branching_rec(tree, lvl + 1, node * 2 + 1));
}

}  // namespace

int min_path_branching(const LCTree& tree) { return min_branching_rec(tree, 0, 0); }

int branching_levels(const LCTree& tree) {
  int count = 0;
  for (int lvl = 0; lvl < tree.depth; ++lvl) {
    for (std::uint32_t node = 0; node < (1u << lvl); ++node) {
      if (tree.node_branches(lvl, node)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

namespace {

// Relabels the subtree hanging below (lvl, node) with the outputs of the
// given concept; kills all branching below this point.
void freeze_subtree(LCTree& t, const ConceptClass& cls, int lvl, std::uint32_t node,
                    int concept_index) {
  if (lvl == t.depth) return;
  Label y = cls.value(concept_index, t.level_instances[lvl]);
  t.edge_ref(lvl, node, 0) = y;
  t.edge_ref(lvl, node, 1) = y;
  freeze_subtree(t, cls, lvl + 1, node * 2, concept_index);
  freeze_subtree(t, cls, lvl + 1, node * 2 + 1, concept_index);
}

void freeze_rec(LCTree& t, const ConceptClass& cls, int lvl, std::uint32_t node,
                const VersionSet& set, int acc, int q) {
  if (acc == q) {
    int lowest = __builtin_ctzll(set.members);
    freeze_subtree(t, cls, lvl, node, lowest);
    return;
  }
  if (lvl == t.depth) return;
  int x = t.level_instances[lvl];
  int acc2 = acc + (t.node_branches(lvl, node) ? 1 : 0);
  for (int bit = 0; bit < 2; ++bit) {
    VersionSet child = restrict_to(set, x, t.edge(lvl, node, bit));
    freeze_rec(t, cls, lvl + 1, node * 2 + bit, child, acc2, q);
  }
}

void copy_subtree(LCTree& t, int lvl, std::uint32_t from, std::uint32_t to) {
  if (lvl == t.depth) return;
  t.edge_ref(lvl, to, 0) = t.edge(lvl, from, 0);
  t.edge_ref(lvl, to, 1) = t.edge(lvl, from, 1);
  copy_subtree(t, lvl + 1, from * 2, to * 2);
  copy_subtree(t, lvl + 1, from * 2 + 1, to * 2 + 1);
}

void symmetrize_rec(LCTree& t, int lvl, std::uint32_t node) {
  if (lvl == t.depth) return;
  if (t.node_branches(lvl, node)) {
    symmetrize_rec(t, lvl + 1, node * 2);
    symmetrize_rec(t, lvl + 1, node * 2 + 1);
  } else {
    symmetrize_rec(t, lvl + 1, node * 2);
    copy_subtree(t, lvl + 1, node * 2, node * 2 + 1);
  }
}

}  // namespace

LCTree normalize_tree(const LCTree& tree, const ConceptClass& cls, int q) {
  if (q < 0) throw std::invalid_argument("normalize_tree: q must be >= 0");
  VersionSet all = VersionSet::full(cls);
  if (!is_shattered(tree, all))
    throw std::invalid_argument("normalize_tree: tree is not shattered by the class");
  if (min_path_branching(tree) < q)
    throw std::invalid_argument("normalize_tree: min path branching below q=" + std::to_string(q));
  LCTree out = tree;
  freeze_rec(out, cls, 0, 0, all, 0, q);
  symmetrize_rec(out, 0, 0);
  return out;
}

namespace {

std::string node_address(int level, std::uint32_t node) {
  std::string s(level, '0');
  for (int i = 0; i < level; ++i)
    if ((node >> (level - 1 - i)) & 1) s[i] = '1';
  return s;
}

}  // namespace

nlohmann::ordered_json tree_to_json(const LCTree& tree) {
  nlohmann::ordered_json j;
  j["depth"] = tree.depth;
  j["level_instances"] = tree.level_instances;
  std::vector<std::pair<std::string, std::pair<int, Label>>> rows;  // (node, (b, label))
  for (int lvl = 0; lvl < tree.depth; ++lvl)
    for (std::uint32_t node = 0; node < (1u << lvl); ++node)
      for (int bit = 0; bit < 2; ++bit)
        rows.push_back({node_address(lvl, node), {bit, tree.edge(lvl, node, bit)}});
  std::sort(rows.begin(), rows.end());
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [node, e] : rows) {
    nlohmann::ordered_json row;
    row["node"] = node;
    row["b"] = e.first;
    row["label"] = e.second;
    edges.push_back(row);
  }
  j["edges"] = edges;
  return j;
}

LCTree tree_from_json(const nlohmann::ordered_json& j) {
  LCTree t = LCTree::make(j.at("level_instances").get<std::vector<int>>());
  if (j.at("depth").get<int>() != t.depth)
    throw std::invalid_argument("tree file: depth does not match level_instances");
  std::map<std::pair<std::string, int>, Label> seen;
  for (const auto& row : j.at("edges")) {
    std::string node = row.at("node").get<std::string>();
    int bit = row.at("b").get<int>();
    Label label = row.at("label").get<Label>();
    if (static_cast<int>(node.size()) >= t.depth)
      throw std::invalid_argument("tree file: node '" + node + "' too deep");
    if (!seen.emplace(std::make_pair(node, bit), label).second)
      throw std::invalid_argument("tree file: duplicate edge for node '" + node + "'");
    std::uint32_t idx = 0;
    for (char c : node) {
      if (c != '0' && c != '1') throw std::invalid_argument("tree file: bad node address");
      idx = idx * 2 + (c - '0');
    }
    t.edge_ref(static_cast<int>(node.size()), idx, bit) = label;
  }
  // completeness: one label per (node, bit)
  std::size_t expected = 0;
  for (int lvl = 0; lvl < t.depth; ++lvl) expected += 2ull << lvl;
  if (seen.size() != expected)
    throw std::invalid_argument("tree file: incomplete edge map");
  return t;
}

void save_tree(const LCTree& tree, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << tree_to_json(tree).dump(2) << "\n";
}

LCTree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::ordered_json j;
  in >> j;
  return tree_from_json(j);
}

}  // namespace transonline
