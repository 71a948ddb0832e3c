#include "transonline/game.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>

#include "transonline/dimensions.hpp"
#include "transonline/learners.hpp"

namespace transonline {

std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

void transcript_to_csv(const Transcript& tr, std::ostream& out) {
  out << "t,x,pred,true,mistake,potential,scount\n";
  for (const auto& r : tr.rows)
    out << r.t << "," << r.x << "," << r.pred << "," << r.truth << "," << (r.mistake ? 1 : 0)
        << "," << r.potential << "," << r.scount << "\n";
}

namespace {

int best_in_class(const ConceptClass& cls, const Stream& s) {
  int best = s.horizon();
  for (int c = 0; c < cls.size(); ++c) {
    int diff = 0;
    for (int t = 0; t < s.horizon(); ++t)
      if (cls.value(c, s.xs[t]) != s.ys[t]) ++diff;
    best = std::min(best, diff);
  }
  return best;
}

}  // namespace

Transcript run_realizable(const std::string& learner, const ConceptClass& cls, const Stream& s,
                          const Caps& caps) {
  if (!is_realizable_learner(learner))
    throw std::invalid_argument("run_realizable: unknown learner '" + learner + "'");
  if (consistent_concept(cls, s) < 0)
    throw std::runtime_error("run_realizable: stream is not realizable for class '" + cls.name +
                             "'");
  Transcript tr;
  tr.learner = learner;
  int T = s.horizon();

  if (learner == "bp") {
    BpLearner L(cls, s.xs, caps);
    for (int t = 1; t <= T; ++t) {
      TranscriptRow row;
      row.t = t;
      row.x = s.xs[t - 1];
      row.potential = L.potential_now();
      row.pred = L.predict();
      row.truth = s.ys[t - 1];
      row.mistake = row.pred != row.truth;
      L.observe(row.truth);
      tr.rows.push_back(row);
    }
    tr.final_potential = L.potential_now();
  } else {
    SshLearner L(cls, s.xs, learner == "ssh-conservative", caps);
    for (int t = 1; t <= T; ++t) {
      TranscriptRow row;
      row.t = t;
      row.x = s.xs[t - 1];
      row.scount = static_cast<long long>(L.scount_now());
      row.pred = L.predict();
      row.truth = s.ys[t - 1];
      row.mistake = row.pred != row.truth;
      L.observe(row.truth);
      tr.rows.push_back(row);
    }
    tr.final_scount = static_cast<long long>(L.scount_now());
  }

  for (const auto& r : tr.rows) tr.mistakes += r.mistake ? 1 : 0;
  tr.best_in_class_mistakes = best_in_class(cls, s);
  return tr;
}

bool verify_potential_trace(const Transcript& tr) {
  if (tr.rows.empty()) return true;
  for (const auto& r : tr.rows)
    if (r.potential < 0) throw std::invalid_argument("transcript has no recorded potentials");
  if (tr.final_potential < 0)
    throw std::invalid_argument("transcript has no final potential");
  for (size_t i = 0; i < tr.rows.size(); ++i) {
    long long next = i + 1 < tr.rows.size() ? tr.rows[i + 1].potential : tr.final_potential;
    if (next > tr.rows[i].potential - (tr.rows[i].mistake ? 1 : 0)) return false;
  }
  return true;
}

bool verify_halving_trace(const Transcript& tr) {
  if (tr.rows.empty()) return true;
  for (const auto& r : tr.rows)
    if (r.scount < 0) throw std::invalid_argument("transcript has no recorded S values");
  if (tr.final_scount < 0) throw std::invalid_argument("transcript has no final S value");
  for (size_t i = 0; i < tr.rows.size(); ++i) {
    long long cur = tr.rows[i].scount;
    long long next = i + 1 < tr.rows.size() ? tr.rows[i + 1].scount : tr.final_scount;
    if (tr.rows[i].mistake ? (2 * next > cur) : (next > cur)) return false;
  }
  return true;
}

Rational solve_waterfill(std::vector<Rational> a) {
  if (a.empty()) throw std::invalid_argument("waterfill: empty payoff vector");
  std::sort(a.begin(), a.end(), std::greater<Rational>());
  Rational prefix = 0;
  Rational v = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    prefix += a[j];
    Rational cand = (prefix - 1) / Rational(static_cast<int>(j + 1));
    if (a[j] > cand) v = cand;  // largest active prefix wins
  }
  return v;
}

Rational minimax_mistakes(const ConceptClass& cls, const std::vector<int>& xs, const Caps& caps) {
  if (cls.size() > caps.max_concepts)
    throw CapError("minimax_mistakes: class has " + std::to_string(cls.size()) +
                   " concepts, cap is " + std::to_string(caps.max_concepts));
  if (static_cast<int>(xs.size()) > caps.max_minimax_len)
    throw CapError("minimax_mistakes: sequence length " + std::to_string(xs.size()) +
                   " above cap " + std::to_string(caps.max_minimax_len));
  for (int x : xs)
    if (x < 0 || x >= cls.n_instances)
      throw std::invalid_argument("minimax_mistakes: instance out of range");

  int T = static_cast<int>(xs.size());
  std::map<std::pair<ConceptMask, int>, Rational> memo;
  std::function<Rational(ConceptMask, int)> value = [&](ConceptMask set, int i) -> Rational {
    if (i == T) return Rational(0);
    auto key = std::make_pair(set, i);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Rational> a;
    for (Label y : realized_labels(VersionSet{&cls, set}, xs[i])) {
      ConceptMask child = restrict_to(VersionSet{&cls, set}, xs[i], y).members;
      a.push_back(Rational(1) + value(child, i + 1));
    }
    Rational v = solve_waterfill(std::move(a));
    memo[key] = v;
    return v;
  };
  return value(full_mask(cls.size()), 0);
}

nlohmann::ordered_json verdict_to_json(const BoundVerdict& v) {
  nlohmann::ordered_json j;
  j["lower"] = rational_to_string(v.lower);
  j["upper"] = rational_to_string(v.upper);
  j["value"] = rational_to_string(v.value);
  j["pass"] = v.pass;
  nlohmann::ordered_json detail;
  detail["T"] = v.T;
  detail["D"] = v.D;
  detail["B"] = v.B;
  detail["B_exact"] = v.B_exact;
  detail["L"] = v.L;
  detail["upper_dlog2"] = v.upper_dlog2;
  detail["upper_dln"] = v.upper_dln;
  j["detail"] = detail;
  return j;
}

BoundVerdict verify_bounds(const ConceptClass& cls, int T, const Caps& caps, int b_seq_cap) {
  if (T < 1) throw std::invalid_argument("verify_bounds: T must be >= 1");
  if (T > caps.max_enum_len)
    throw CapError("verify_bounds: horizon " + std::to_string(T) + " above cap " +
                   std::to_string(caps.max_enum_len));

  BoundVerdict v;
  v.T = T;
  v.D = dim_level_littlestone(cls, caps).value;
  auto b = dim_branching(cls, std::max(b_seq_cap, std::min(T, caps.max_minimax_len)), caps);
  v.B = b.value;
  v.B_exact = b.exact;
  v.L = dim_littlestone(cls, caps).value;

  // Max of the exact oracle over every instance sequence of length T.
  Rational best = 0;
  std::vector<int> xs(T, 0);
  while (true) {
    best = std::max(best, minimax_mistakes(cls, xs, caps));
    int pos = T - 1;
    while (pos >= 0 && xs[pos] == cls.n_instances - 1) xs[pos--] = 0;
    if (pos < 0) break;
    ++xs[pos];
  }
  v.value = best;

  v.lower = Rational(std::min(v.D, T)) / 2;
  // A capped, non-exact B cannot stand as an upper bound; L always can.
  int b_term = v.B_exact ? v.B : v.L;
  v.upper = Rational(std::min(b_term, T));
  if (v.D > 0) {
    v.upper_dlog2 = v.D * std::log2(std::exp(1.0) * T / v.D);
    v.upper_dln = v.D * std::log(std::exp(1.0) * T / v.D);
  } else {
    v.upper_dlog2 = v.upper_dln = 0.0;
  }

  // The D log(eT/D) form bounds log2 of the binomial sum only when T >= D;
  // below that the T term is the binding clip.
  bool log_ok = true;
  if (v.D == 0) log_ok = v.value == 0;
  else if (T >= v.D) log_ok = static_cast<double>(v.value) <= v.upper_dlog2;
  v.pass = v.lower <= v.value && v.value <= v.upper && log_ok;
  return v;
}

AgnosticSummary run_agnostic(const ConceptClass& cls, const Stream& s,
                             const std::vector<std::uint64_t>& seeds, double eta_scale,
                             const Caps& caps) {
  AgnosticSummary out;
  out.trials = static_cast<int>(seeds.size());
  out.best_in_class_mistakes = best_in_class(cls, s);
  if (seeds.empty()) return out;

  std::vector<double> regrets;
  regrets.reserve(seeds.size());
  double sum_mistakes = 0.0;
  int m_cap = auto_mistake_cap(cls, s.horizon(), caps);
  for (std::uint64_t seed : seeds) {
    AgnosticLearner L(cls, s.xs, seed, eta_scale, m_cap, caps);
    int mistakes = 0;
    for (int t = 1; t <= s.horizon(); ++t) {
      Label pred = L.predict();
      if (pred != s.ys[t - 1]) ++mistakes;
      L.observe(s.ys[t - 1]);
    }
    sum_mistakes += mistakes;
    regrets.push_back(static_cast<double>(mistakes - out.best_in_class_mistakes));
  }
  double n = static_cast<double>(regrets.size());
  double mean = 0.0;
  for (double r : regrets) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : regrets) var += (r - mean) * (r - mean);
  var = n > 1 ? var / (n - 1) : 0.0;
  out.mean_regret = mean;
  out.stderr_mean = std::sqrt(var / n);
  out.ci_lo = mean - 1.96 * out.stderr_mean;
  out.ci_hi = mean + 1.96 * out.stderr_mean;
  out.mean_mistakes = sum_mistakes / n;
  return out;
}

}  // namespace transonline
