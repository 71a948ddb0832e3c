#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "transonline/common.hpp"
#include "transonline/concepts.hpp"
#include "transonline/dimensions.hpp"
#include "transonline/rng.hpp"

namespace transonline {

/// Realizable learner that predicts the label whose restriction keeps the
/// branching potential of the suffix highest. Deterministic; ties broken by
/// smallest label id. Rounds are 1-based.
class BpLearner {
 public:
  BpLearner(const ConceptClass& cls, std::vector<int> xs, const Caps& caps = {});

  Label predict();
  /// Intersects the version set with the true label. Throws
  /// std::runtime_error on a realizability breach (empty result).
  void observe(Label y);

  int round() const { return t_; }
  int horizon() const { return static_cast<int>(engine_.sequence().size()); }
  VersionSet version() const { return VersionSet{&cls_, set_}; }
  /// B(V_t, x_{t:T}) for the current round (0 after the final round).
  int potential_now() { return engine_.potential(set_, t_ - 1); }

 private:
  const ConceptClass& cls_;
  BranchingPotentialEngine engine_;
  ConceptMask set_;
  int t_ = 1;
};

/// Realizable halving-style learner scored by the shattered-subsequence
/// count of the full revealed sequence. In conservative mode the version set
/// is only updated on mistaken rounds.
class SshLearner {
 public:
  SshLearner(const ConceptClass& cls, std::vector<int> xs, bool conservative,
             const Caps& caps = {}, bool relax_len = false);

  Label predict();
  void observe(Label y);

  int round() const { return t_; }
  int horizon() const { return static_cast<int>(counter_.sequence().size()); }
  VersionSet version() const { return VersionSet{&cls_, set_}; }
  std::uint64_t scount_now() { return counter_.count(set_); }

 private:
  const ConceptClass& cls_;
  ShatterCounter counter_;
  ConceptMask set_;
  bool conservative_;
  int t_ = 1;
  Label last_prediction_ = -1;
};

/// One expert of the agnostic construction: a simulated conservative halving
/// learner that is fed the true label exactly on its designated rounds.
struct ExpertId {
  std::vector<int> update_rounds;  // subset of [T], |.| <= M_cap
};

/// Multiplicative-weights master over the expert family {B subseteq [T],
/// |B| <= M_cap}. Predictions are sampled from the weight distribution with
/// the seeded generator, so runs are deterministic given the seed.
class AgnosticLearner {
 public:
  /// m_cap < 0 selects the automatic cap min{B_lower, ceil(D log2(eT/D)), T}.
  AgnosticLearner(const ConceptClass& cls, std::vector<int> xs, std::uint64_t seed,
                  double eta_scale = 1.0, int m_cap = -1, const Caps& caps = {});

  Label predict();
  void observe(Label y);

  int round() const { return t_; }
  int expert_count() const { return static_cast<int>(experts_.size()); }
  int mistake_cap() const { return m_cap_; }
  double eta() const { return eta_; }

 private:
  struct Expert {
    ExpertId id;
    ConceptMask set;
    double weight = 1.0;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<ConceptMask, int>& k) const {
      return std::hash<ConceptMask>()(k.first * 31 + static_cast<ConceptMask>(k.second));
    }
  };

  Label ssh_prediction(ConceptMask set, int t);

  const ConceptClass& cls_;
  std::vector<int> xs_;
  ShatterCounter counter_;
  std::vector<Expert> experts_;
  std::unordered_map<std::pair<ConceptMask, int>, Label, KeyHash> prediction_cache_;
  std::vector<Label> round_predictions_;  // per expert, for the pending round
  Lcg64 rng_;
  double eta_ = 0.0;
  int m_cap_ = 0;
  int t_ = 1;
};

/// Names accepted by the CLI and the game runner:
/// "bp" | "ssh" | "ssh-conservative" | "agnostic".
bool is_realizable_learner(const std::string& name);

/// The prediction rules as pure functions of (version set, round), shared by
/// the learner classes and the exhaustive adversary. Rounds are 1-based.
Label bp_prediction(const ConceptClass& cls, BranchingPotentialEngine& engine, ConceptMask set,
                    int t);
Label ssh_prediction(const ConceptClass& cls, ShatterCounter& counter, ConceptMask set, int t);

/// min{B_lower, ceil(D log2(eT/D)), T}: the automatic expert mistake cap.
int auto_mistake_cap(const ConceptClass& cls, int T, const Caps& caps = {});

}  // namespace transonline
