#include "transonline/learners.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace transonline {

namespace {

// Argmax over realized labels with smallest-id tie break.
template <typename Score>
Label best_realized_label(const std::vector<Label>& labels, Score&& score) {
  Label best = labels.front();
  auto best_score = score(labels.front());
  for (size_t i = 1; i < labels.size(); ++i) {
    auto s = score(labels[i]);
    if (s > best_score) {
      best_score = s;
      best = labels[i];
    }
  }
  return best;
}

}  // namespace

Label bp_prediction(const ConceptClass& cls, BranchingPotentialEngine& engine, ConceptMask set,
                    int t) {
  int x = engine.sequence()[t - 1];
  auto labels = realized_labels(VersionSet{&cls, set}, x);
  if (labels.size() == 1) return labels.front();
  return best_realized_label(labels, [&](Label y) {
    return engine.potential(restrict_to(VersionSet{&cls, set}, x, y).members, t);
  });
}

Label ssh_prediction(const ConceptClass& cls, ShatterCounter& counter, ConceptMask set, int t) {
  int x = counter.sequence()[t - 1];
  auto labels = realized_labels(VersionSet{&cls, set}, x);
  if (labels.size() == 1) return labels.front();
  return best_realized_label(labels, [&](Label y) {
    return counter.count(restrict_to(VersionSet{&cls, set}, x, y).members);
  });
}

// ---------------------------------------------------------------------------
// BpLearner
// ---------------------------------------------------------------------------

BpLearner::BpLearner(const ConceptClass& cls, std::vector<int> xs, const Caps& caps)
    : cls_(cls), engine_(cls, std::move(xs), caps), set_(full_mask(cls.size())) {}

Label BpLearner::predict() {
  if (t_ > horizon()) throw std::logic_error("predict past the horizon");
  return bp_prediction(cls_, engine_, set_, t_);
}

void BpLearner::observe(Label y) {
  if (t_ > horizon()) throw std::logic_error("observe past the horizon");
  int x = engine_.sequence()[t_ - 1];
  ConceptMask next = restrict_to(version(), x, y).members;
  if (next == 0)
    throw std::runtime_error("non-realizable stream: no concept matches label " +
                             std::to_string(y) + " at round " + std::to_string(t_));
  set_ = next;
  ++t_;
}

// ---------------------------------------------------------------------------
// SshLearner
// ---------------------------------------------------------------------------

SshLearner::SshLearner(const ConceptClass& cls, std::vector<int> xs, bool conservative,
                       const Caps& caps, bool relax_len)
    : cls_(cls),
      counter_(cls, std::move(xs), caps, relax_len),
      set_(full_mask(cls.size())),
      conservative_(conservative) {}

Label SshLearner::predict() {
  if (t_ > horizon()) throw std::logic_error("predict past the horizon");
  last_prediction_ = ssh_prediction(cls_, counter_, set_, t_);
  return last_prediction_;
}

void SshLearner::observe(Label y) {
  if (t_ > horizon()) throw std::logic_error("observe past the horizon");
  int x = counter_.sequence()[t_ - 1];
  if (last_prediction_ < 0) last_prediction_ = predict();
  bool mistake = last_prediction_ != y;
  if (!conservative_ || mistake) {
    ConceptMask next = restrict_to(version(), x, y).members;
    if (next == 0)
      throw std::runtime_error("non-realizable stream: no concept matches label " +
                               std::to_string(y) + " at round " + std::to_string(t_));
    set_ = next;
  }
  last_prediction_ = -1;
  ++t_;
}

// ---------------------------------------------------------------------------
// AgnosticLearner
// ---------------------------------------------------------------------------

int auto_mistake_cap(const ConceptClass& cls, int T, const Caps& caps) {
  int D = dim_level_littlestone(cls, caps).value;
  int B = dim_branching(cls, 4, caps).value;
  double dlog = D > 0 ? D * std::log2(std::exp(1.0) * T / D) : 0.0;
  return std::min({B, static_cast<int>(std::ceil(dlog)), T});
}

AgnosticLearner::AgnosticLearner(const ConceptClass& cls, std::vector<int> xs, std::uint64_t seed,
                                 double eta_scale, int m_cap, const Caps& caps)
    : cls_(cls),
      xs_(xs),
      counter_(cls, std::move(xs), caps, /*relax_len=*/true),
      rng_(seed) {
  int T = static_cast<int>(xs_.size());
  m_cap_ = m_cap >= 0 ? std::min(m_cap, T) : auto_mistake_cap(cls_, T, caps);

  // Expert pool: all update-round subsets of size <= m_cap_, in lexicographic
  // order of the sorted round lists.
  long long count = 0;
  std::vector<int> rounds;
  std::function<void(int)> emit = [&](int start) {
    ++count;
    if (count > caps.max_experts)
      throw CapError("agnostic learner would need more than " +
                     std::to_string(caps.max_experts) + " experts; reduce T or the mistake cap");
    experts_.push_back(Expert{ExpertId{rounds}, full_mask(cls_.size()), 1.0});
    if (static_cast<int>(rounds.size()) == m_cap_) return;
    for (int r = start; r <= T; ++r) {
      rounds.push_back(r);
      emit(r + 1);
      rounds.pop_back();
    }
  };
  emit(1);

  double n = static_cast<double>(experts_.size());
  eta_ = eta_scale * std::sqrt(8.0 * std::log(n) / std::max(1, T));
}

Label AgnosticLearner::ssh_prediction(ConceptMask set, int t) {
  auto key = std::make_pair(set, t);
  auto it = prediction_cache_.find(key);
  if (it != prediction_cache_.end()) return it->second;
  Label pred = transonline::ssh_prediction(cls_, counter_, set, t);
  prediction_cache_.emplace(key, pred);
  return pred;
}

Label AgnosticLearner::predict() {
  if (t_ > static_cast<int>(xs_.size())) throw std::logic_error("predict past the horizon");
  round_predictions_.resize(experts_.size());
  for (size_t i = 0; i < experts_.size(); ++i)
    round_predictions_[i] = ssh_prediction(experts_[i].set, t_);

  double total = 0.0;
  for (const auto& e : experts_) total += e.weight;
  double u = rng_.next_unit() * total;
  size_t pick = experts_.size() - 1;
  double acc = 0.0;
  for (size_t i = 0; i < experts_.size(); ++i) {
    acc += experts_[i].weight;
    if (u < acc) {
      pick = i;
      break;
    }
  }
  return round_predictions_[pick];
}

void AgnosticLearner::observe(Label y) {
  if (t_ > static_cast<int>(xs_.size())) throw std::logic_error("observe past the horizon");
  if (round_predictions_.empty()) predict();
  int x = xs_[t_ - 1];
  for (size_t i = 0; i < experts_.size(); ++i) {
    auto& e = experts_[i];
    if (round_predictions_[i] != y) e.weight *= std::exp(-eta_);
    if (std::binary_search(e.id.update_rounds.begin(), e.id.update_rounds.end(), t_)) {
      ConceptMask next = restrict_to(VersionSet{&cls_, e.set}, x, y).members;
      if (next != 0) e.set = next;  // empty only on non-realizable feeds; skip
    }
  }
  round_predictions_.clear();
  ++t_;
}

bool is_realizable_learner(const std::string& name) {
  return name == "bp" || name == "ssh" || name == "ssh-conservative";
}

}  // namespace transonline
