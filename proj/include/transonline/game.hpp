#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "transonline/adversaries.hpp"
#include "transonline/common.hpp"
#include "transonline/concepts.hpp"

namespace transonline {

using Rational = boost::multiprecision::cpp_rational;

std::string rational_to_string(const Rational& r);

/// Per-round record of one protocol run. potential/scount are -1 when the
/// learner does not track that quantity.
struct TranscriptRow {
  int t = 0;
  int x = 0;
  Label pred = -1;
  Label truth = -1;
  bool mistake = false;
  long long potential = -1;
  long long scount = -1;
};

struct Transcript {
  std::string learner;
  std::vector<TranscriptRow> rows;
  long long final_potential = -1;  // value after the last round
  long long final_scount = -1;
  int mistakes = 0;
  int best_in_class_mistakes = 0;

  int regret() const { return mistakes - best_in_class_mistakes; }
};

/// CSV with header `t,x,pred,true,mistake,potential,scount`.
void transcript_to_csv(const Transcript& tr, std::ostream& out);

/// Runs a realizable learner ("bp" | "ssh" | "ssh-conservative") over the
/// stream, recording per-round potentials (branching potential for bp, the
/// shattered-subsequence count for ssh). Throws on a non-realizable stream.
Transcript run_realizable(const std::string& learner, const ConceptClass& cls, const Stream& s,
                          const Caps& caps = {});

/// Checks B(V_{t+1}, x_{t+1:T}) <= B(V_t, x_{t:T}) - 1{mistake at t} at every
/// round of a bp transcript. Throws std::invalid_argument when potentials are
/// missing.
bool verify_potential_trace(const Transcript& tr);

/// Checks S(V^{t+1}) <= max{1{correct}, 1/2} S(V^t) at every round of a
/// non-conservative ssh transcript, in exact integer arithmetic.
bool verify_halving_trace(const Transcript& tr);

/// Exact value of the randomized-prediction zero-sum game on the fixed
/// instance sequence: by backward induction, the round value is the unique v
/// solving sum_y max(0, a_y - v) = 1 over realized labels y with
/// a_y = 1 + continuation. The adversary is constrained to realized labels,
/// which preserves realizability.
Rational minimax_mistakes(const ConceptClass& cls, const std::vector<int>& xs,
                          const Caps& caps = {});

/// Water-filling solve of min_p max_y (a_y - p_y) over the simplex; exposed
/// for direct property checks.
Rational solve_waterfill(std::vector<Rational> a);

struct BoundVerdict {
  Rational lower;        // (1/2) min{D, T}
  Rational upper;        // min over the certified integer terms {B-or-L, T}
  Rational value;        // max over xs of the exact oracle value
  bool pass = false;
  int D = 0, B = 0, L = 0;
  bool B_exact = false;
  double upper_dlog2 = 0.0;  // D log2(eT/D), the form used by the check
  double upper_dln = 0.0;    // natural-log form, reported for reference
  int T = 0;
};

nlohmann::ordered_json verdict_to_json(const BoundVerdict& v);

/// Computes D, B (capped sweep), L, then maximizes the oracle over all
/// instance sequences of length T and checks
///   (1/2) min{D, T} <= M* <= min{B, D log2(eT/D), T}.
/// When B is not certified exact its term falls back to L.
BoundVerdict verify_bounds(const ConceptClass& cls, int T, const Caps& caps = {},
                           int b_seq_cap = 4);

struct AgnosticSummary {
  double mean_regret = 0.0;
  double stderr_mean = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // 95% normal approximation
  int trials = 0;
  double mean_mistakes = 0.0;
  int best_in_class_mistakes = 0;
};

/// Monte Carlo of the agnostic learner over one fixed stream, one run per
/// seed.
AgnosticSummary run_agnostic(const ConceptClass& cls, const Stream& s,
                             const std::vector<std::uint64_t>& seeds, double eta_scale = 1.0,
                             const Caps& caps = {});

}  // namespace transonline
