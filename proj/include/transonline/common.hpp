#pragma once

#include <stdexcept>
#include <string>

namespace transonline {

/// Search limits for the combinatorial engines. Defaults are sized for
/// interactive desk-scale use; override individual fields or use the CLI
/// --caps flag (e.g. "concepts=32,subseq=20").
struct Caps {
  int max_class_size = 64;    // hard limit: version sets are 64-bit masks
  int max_concepts = 20;      // dimension engines and the minimax oracle
  int max_instances = 8;
  int max_subseq_len = 16;    // count_shattered_subsequences horizon
  int max_minimax_len = 8;    // |xs| accepted by the minimax oracle
  int max_enum_len = 5;       // sequence enumeration inside verify_bounds
  int max_worst_case_len = 6; // horizon for the exhaustive adversary
  int max_experts = 5000;     // agnostic expert pool
};

/// A Caps limit was exceeded. The CLI maps this to exit code 2.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse "key=value,key=value" overrides on top of `base`.
/// Keys: concepts, instances, subseq, minimax, enum, worst, experts, class_size.
Caps parse_caps(const std::string& overrides, Caps base = {});

}  // namespace transonline
