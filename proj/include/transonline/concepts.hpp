#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "transonline/common.hpp"

namespace transonline {

/// Opaque label identifier. Labels are only compared for equality/ordering;
/// the integer value carries no arithmetic meaning.
using Label = int;

/// A finite multiclass concept class: an explicit table of label vectors over
/// an indexed instance universe {0, ..., n_instances-1}. Immutable after
/// construction; all operations below are pure.
struct ConceptClass {
  std::string name;
  int n_instances = 0;
  std::vector<std::vector<Label>> concepts;  // each of length n_instances

  int size() const { return static_cast<int>(concepts.size()); }
  Label value(int concept_index, int x) const { return concepts[concept_index][x]; }

  /// Throws std::invalid_argument on an invariant violation: empty class,
  /// ragged or duplicate concept vectors, negative labels, bad n_instances.
  void validate() const;
};

/// Set-wise equality: same name, same universe, same concept vectors
/// regardless of order.
bool operator==(const ConceptClass& a, const ConceptClass& b);

using ConceptMask = std::uint64_t;

inline ConceptMask full_mask(int n) {
  return n >= 64 ? ~0ull : ((1ull << n) - 1);
}

/// A subset of a ConceptClass's concepts, stored as a bitmask over concept
/// indices. Cheap to copy; the referenced class must outlive the set.
struct VersionSet {
  const ConceptClass* cls = nullptr;
  ConceptMask members = 0;

  static VersionSet full(const ConceptClass& c) {
    return VersionSet{&c, full_mask(c.size())};
  }
  bool empty() const { return members == 0; }
  int count() const { return __builtin_popcountll(members); }
  bool contains(int i) const { return (members >> i) & 1; }
};

/// {c(x) : c in V}, sorted ascending. Throws on an empty version set.
std::vector<Label> realized_labels(const VersionSet& v, int x);

/// {c in V : c(x) = y}. May be empty; callers decide what that means.
VersionSet restrict_to(const VersionSet& v, int x, Label y);

// ---------------------------------------------------------------------------
// Canonical class generators. All are deterministic: same parameters give a
// bit-identical class. Fresh per-concept labels are always allocated above
// the structural labels.
// ---------------------------------------------------------------------------

/// m constant functions over n instances; concept i maps everything to i.
ConceptClass gen_constants(int m, int n, const Caps& caps = {});

/// All labels^n label vectors over n instances.
ConceptClass gen_full(int labels, int n, const Caps& caps = {});

/// Instance universe = the 2^depth - 1 internal nodes of a complete binary
/// tree; one concept per root-to-leaf branch. On-branch nodes map to the
/// branch's 0/1 edge bit; off-branch nodes map to a fresh per-concept label
/// when unique_off_branch is set, otherwise to label 0.
ConceptClass gen_branch_class(int depth, bool unique_off_branch, const Caps& caps = {});

/// One instance per level of a complete binary tree of the given depth,
/// every edge carrying a globally distinct label; concepts = branches.
ConceptClass gen_edge_labeled_branch_class(int depth, const Caps& caps = {});

/// Binary tree where exactly one node per level has two children, all edges
/// globally distinct; concepts = root-to-leaf branches (depth+1 of them).
ConceptClass gen_one_branch_per_level_class(int depth, const Caps& caps = {});

/// d instances and d+1 threshold concepts: concept i maps instance j to 1
/// when j < i and to 0 otherwise.
ConceptClass gen_nt_chain(int d, const Caps& caps = {});

// ---------------------------------------------------------------------------
// File I/O. Class file format:
//   {"name": string, "n_instances": int, "concepts": [[int,...],...]}
// Field order is fixed as listed; concepts are serialized in lexicographic
// order. Duplicate concepts are removed at load with a warning on stderr.
// ---------------------------------------------------------------------------

nlohmann::ordered_json class_to_json(const ConceptClass& c);
ConceptClass class_from_json(const nlohmann::ordered_json& j, const Caps& caps = {});

void save_class(const ConceptClass& c, const std::string& path);
ConceptClass load_class(const std::string& path, const Caps& caps = {});

}  // namespace transonline
