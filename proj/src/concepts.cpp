#include "transonline/concepts.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace transonline {

Caps parse_caps(const std::string& overrides, Caps base) {
  if (overrides.empty()) return base;
  std::stringstream ss(overrides);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad caps item '" + item + "', expected key=value");
    std::string key = item.substr(0, eq);
    int val = std::stoi(item.substr(eq + 1));
    if (key == "concepts") base.max_concepts = val;
    else if (key == "instances") base.max_instances = val;
    else if (key == "subseq") base.max_subseq_len = val;
    else if (key == "minimax") base.max_minimax_len = val;
    else if (key == "enum") base.max_enum_len = val;
    else if (key == "worst") base.max_worst_case_len = val;
    else if (key == "experts") base.max_experts = val;
    else if (key == "class_size") base.max_class_size = std::min(val, 64);
    else throw std::invalid_argument("unknown caps key '" + key + "'");
  }
  return base;
}

void ConceptClass::validate() const {
  if (n_instances <= 0)
    throw std::invalid_argument("class '" + name + "': n_instances must be positive");
  if (concepts.empty())
    throw std::invalid_argument("class '" + name + "': concepts list is empty");
  for (size_t i = 0; i < concepts.size(); ++i) {
    if (static_cast<int>(concepts[i].size()) != n_instances)
      throw std::invalid_argument("class '" + name + "': concept " + std::to_string(i) +
                                  " has " + std::to_string(concepts[i].size()) +
                                  " entries, expected " + std::to_string(n_instances));
    for (Label y : concepts[i])
      if (y < 0)
        throw std::invalid_argument("class '" + name + "': concept " + std::to_string(i) +
                                    " has a negative label");
  }
  std::set<std::vector<Label>> seen;
  for (size_t i = 0; i < concepts.size(); ++i)
    if (!seen.insert(concepts[i]).second)
      throw std::invalid_argument("class '" + name + "': concept " + std::to_string(i) +
                                  " duplicates an earlier concept");
}

bool operator==(const ConceptClass& a, const ConceptClass& b) {
  if (a.name != b.name || a.n_instances != b.n_instances) return false;
  auto ca = a.concepts, cb = b.concepts;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

std::vector<Label> realized_labels(const VersionSet& v, int x) {
  if (v.empty()) throw std::invalid_argument("empty version set");
  if (x < 0 || x >= v.cls->n_instances)
    throw std::invalid_argument("instance index " + std::to_string(x) + " out of range");
  std::vector<Label> out;
  for (int i = 0; i < v.cls->size(); ++i)
    if (v.contains(i)) out.push_back(v.cls->value(i, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VersionSet restrict_to(const VersionSet& v, int x, Label y) {
  if (x < 0 || x >= v.cls->n_instances)
    throw std::invalid_argument("instance index " + std::to_string(x) + " out of range");
  ConceptMask m = 0;
  for (int i = 0; i < v.cls->size(); ++i)
    if (v.contains(i) && v.cls->value(i, x) == y) m |= 1ull << i;
  return VersionSet{v.cls, m};
}

namespace {

void check_class_size(long long n_concepts, int n, const Caps& caps, const std::string& what) {
  if (n_concepts > caps.max_class_size)
    throw CapError(what + " would have " + std::to_string(n_concepts) +
                   " concepts, cap is " + std::to_string(caps.max_class_size));
  if (n > 4096)
    throw CapError(what + " would have " + std::to_string(n) + " instances");
}

// Node index of address sigma (|sigma| = level) in heap order.
int node_index(int level, std::uint32_t addr) { return (1 << level) - 1 + static_cast<int>(addr); }

}  // namespace

ConceptClass gen_constants(int m, int n, const Caps& caps) {
  if (m < 1 || n < 1) throw std::invalid_argument("gen_constants: m and n must be >= 1");
  check_class_size(m, n, caps, "gen_constants");
  ConceptClass c;
  c.name = "constants(" + std::to_string(m) + "," + std::to_string(n) + ")";
  c.n_instances = n;
  for (int i = 0; i < m; ++i) c.concepts.emplace_back(n, i);
  c.validate();
  return c;
}

ConceptClass gen_full(int labels, int n, const Caps& caps) {
  if (labels < 1 || n < 1) throw std::invalid_argument("gen_full: labels and n must be >= 1");
  long long count = 1;
  for (int i = 0; i < n; ++i) {
    count *= labels;
    if (count > caps.max_class_size)
      throw CapError("gen_full: " + std::to_string(labels) + "^" + std::to_string(n) +
                     " concepts exceed cap " + std::to_string(caps.max_class_size));
  }
  ConceptClass c;
  c.name = "full(" + std::to_string(labels) + "," + std::to_string(n) + ")";
  c.n_instances = n;
  for (long long v = 0; v < count; ++v) {
    std::vector<Label> row(n);
    long long rem = v;
    for (int x = n - 1; x >= 0; --x) {
      row[x] = static_cast<Label>(rem % labels);
      rem /= labels;
    }
    c.concepts.push_back(std::move(row));
  }
  c.validate();
  return c;
}

ConceptClass gen_branch_class(int depth, bool unique_off_branch, const Caps& caps) {
  if (depth < 1) throw std::invalid_argument("gen_branch_class: depth must be >= 1");
  long long n_concepts = 1ll << depth;
  int n = (1 << depth) - 1;  // internal nodes
  check_class_size(n_concepts, n, caps, "gen_branch_class");
  ConceptClass c;
  c.name = std::string("branch(") + std::to_string(depth) + "," +
           (unique_off_branch ? "unique" : "zero") + ")";
  c.n_instances = n;
  for (std::uint32_t branch = 0; branch < (1u << depth); ++branch) {
    std::vector<Label> row(n, 0);
    for (int level = 0; level < depth; ++level) {
      for (std::uint32_t addr = 0; addr < (1u << level); ++addr) {
        int x = node_index(level, addr);
        bool on_branch = (branch >> (depth - level)) == addr;
        if (on_branch) {
          row[x] = static_cast<Label>((branch >> (depth - 1 - level)) & 1);
        } else {
          row[x] = unique_off_branch ? static_cast<Label>(2 + branch) : 0;
        }
      }
    }
    c.concepts.push_back(std::move(row));
  }
  c.validate();
  return c;
}

ConceptClass gen_edge_labeled_branch_class(int depth, const Caps& caps) {
  if (depth < 1) throw std::invalid_argument("gen_edge_labeled_branch_class: depth must be >= 1");
  long long n_concepts = 1ll << depth;
  check_class_size(n_concepts, depth, caps, "gen_edge_labeled_branch_class");
  ConceptClass c;
  c.name = "edge_branch(" + std::to_string(depth) + ")";
  c.n_instances = depth;  // one instance per level
  // Edge (level t, node addr, bit b) gets a sequential label in (t, addr, b) order.
  auto edge_label = [&](int level, std::uint32_t addr, int bit) {
    int base = (1 << (level + 1)) - 2;  // edges above this level
    return static_cast<Label>(base + 2 * static_cast<int>(addr) + bit);
  };
  for (std::uint32_t branch = 0; branch < (1u << depth); ++branch) {
    std::vector<Label> row(depth);
    for (int level = 0; level < depth; ++level) {
      std::uint32_t addr = branch >> (depth - level);
      int bit = (branch >> (depth - 1 - level)) & 1;
      row[level] = edge_label(level, addr, bit);
    }
    c.concepts.push_back(std::move(row));
  }
  c.validate();
  return c;
}

ConceptClass gen_one_branch_per_level_class(int depth, const Caps& caps) {
  if (depth < 1) throw std::invalid_argument("gen_one_branch_per_level_class: depth must be >= 1");
  check_class_size(depth + 1, depth, caps, "gen_one_branch_per_level_class");
  ConceptClass c;
  c.name = "one_branch(" + std::to_string(depth) + ")";
  c.n_instances = depth;
  // Per level l (0-based): continue edge, exit edge, then one chain edge for
  // each branch that exited at an earlier level, all globally distinct.
  std::vector<Label> cont(depth), exit_(depth);
  std::vector<std::vector<Label>> chain(depth);  // chain[t][l] for l > t
  Label next = 0;
  for (int l = 0; l < depth; ++l) {
    cont[l] = next++;
    exit_[l] = next++;
    for (int t = 0; t < l; ++t) chain[t].push_back(next++);
  }
  // Concepts: exit at level t (t = 0..depth-1), then the all-continue branch.
  for (int t = 0; t < depth; ++t) {
    std::vector<Label> row(depth);
    for (int l = 0; l < depth; ++l) {
      if (l < t) row[l] = cont[l];
      else if (l == t) row[l] = exit_[t];
      else row[l] = chain[t][l - t - 1];
    }
    c.concepts.push_back(std::move(row));
  }
  c.concepts.push_back(cont);
  c.validate();
  return c;
}

ConceptClass gen_nt_chain(int d, const Caps& caps) {
  if (d < 1) throw std::invalid_argument("gen_nt_chain: d must be >= 1");
  check_class_size(d + 1, d, caps, "gen_nt_chain");
  ConceptClass c;
  c.name = "nt_chain(" + std::to_string(d) + ")";
  c.n_instances = d;
  for (int i = 0; i <= d; ++i) {
    std::vector<Label> row(d);
    for (int j = 0; j < d; ++j) row[j] = j < i ? 1 : 0;
    c.concepts.push_back(std::move(row));
  }
  c.validate();
  return c;
}

nlohmann::ordered_json class_to_json(const ConceptClass& c) {
  auto sorted = c.concepts;
  std::sort(sorted.begin(), sorted.end());
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["n_instances"] = c.n_instances;
  j["concepts"] = sorted;
  return j;
}

ConceptClass class_from_json(const nlohmann::ordered_json& j, const Caps& caps) {
  ConceptClass c;
  if (!j.contains("name") || !j.contains("n_instances") || !j.contains("concepts"))
    throw std::invalid_argument("class file: missing one of name/n_instances/concepts");
  c.name = j.at("name").get<std::string>();
  c.n_instances = j.at("n_instances").get<int>();
  const auto& rows = j.at("concepts");
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("class file: concepts must be a non-empty array");
  std::set<std::vector<Label>> seen;
  int line = 0;
  for (const auto& row : rows) {
    ++line;
    if (!row.is_array())
      throw std::invalid_argument("class file: concept " + std::to_string(line) +
                                  " is not an array");
    std::vector<Label> vec;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw std::invalid_argument("class file: concept " + std::to_string(line) +
                                    " has a non-integer label");
      vec.push_back(v.get<Label>());
    }
    if (static_cast<int>(vec.size()) != c.n_instances)
      throw std::invalid_argument("class file: concept " + std::to_string(line) + " has " +
                                  std::to_string(vec.size()) + " entries, expected " +
                                  std::to_string(c.n_instances));
    if (!seen.insert(vec).second) {
      std::cerr << "warning: class '" << c.name << "': duplicate concept at entry " << line
                << " removed\n";
      continue;
    }
    c.concepts.push_back(std::move(vec));
  }
  if (static_cast<int>(c.concepts.size()) > caps.max_class_size)
    throw CapError("class '" + c.name + "' has " + std::to_string(c.concepts.size()) +
                   " concepts, cap is " + std::to_string(caps.max_class_size));
  c.validate();
  return c;
}

void save_class(const ConceptClass& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << class_to_json(c).dump(2) << "\n";
}

ConceptClass load_class(const std::string& path, const Caps& caps) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("class file '" + path + "': " + e.what());
  }
  return class_from_json(j, caps);
}

}  // namespace transonline
