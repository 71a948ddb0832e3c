#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "transonline/concepts.hpp"
#include "transonline/trees.hpp"

namespace transonline {

struct StreamMeta {
  std::string construction;
  std::string sigma;       // the random bits that built the stream, if any
  int concept_index = -1;  // realizing concept when realizable
  std::uint64_t seed = 0;
  bool realizable = false;
};

/// A fixed instance sequence plus a label sequence. Streams flagged
/// realizable are verified against their class on construction.
struct Stream {
  std::vector<int> xs;
  std::vector<Label> ys;
  StreamMeta meta;

  int horizon() const { return static_cast<int>(xs.size()); }
};

/// Index of a concept consistent with the whole stream, or -1.
int consistent_concept(const ConceptClass& cls, const Stream& s);

nlohmann::ordered_json stream_to_json(const Stream& s);
Stream stream_from_json(const nlohmann::ordered_json& j);
void save_stream(const Stream& s, const std::string& path);
Stream load_stream(const std::string& path);

/// Realizable stream reading the labels along path sigma of a shattered,
/// Littlestone-labeled witness tree.
Stream path_stream(const ConceptClass& cls, const LCTree& witness, const std::string& sigma);
/// Same with sigma drawn uniformly from the seed.
Stream path_stream_seeded(const ConceptClass& cls, const LCTree& witness, std::uint64_t seed);

/// Stream of the branching-level pairs of a normalized tree along a given or
/// uniform path, padded to horizon T by repeating the last emitted pair.
Stream logT_stream(const ConceptClass& cls, const LCTree& normalized, int T,
                   const std::string& sigma);
Stream logT_stream_seeded(const ConceptClass& cls, const LCTree& normalized, int T,
                          std::uint64_t seed);

/// Agnostic block construction over a D-witness tree: instance x*_i repeated
/// for k rounds per block (k = largest odd number with k*depth <= T), labels
/// drawn with fresh uniform bits against the per-block majority prefix.
Stream block_stream(const ConceptClass& cls, const LCTree& witness, int T, std::uint64_t seed);

/// Exhaustive adversary: the realizable stream on xs maximizing the named
/// deterministic learner's mistakes (ties to the lexicographically smallest
/// label sequence). Learner is "bp", "ssh" or "ssh-conservative".
std::pair<Stream, int> worst_case_stream(const ConceptClass& cls, const std::vector<int>& xs,
                                         const std::string& learner, const Caps& caps = {});

}  // namespace transonline
