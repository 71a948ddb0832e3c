#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "support/naive_oracles.hpp"
#include "support/test_util.hpp"
#include "transonline/game.hpp"
#include "transonline/dimensions.hpp"

using namespace transonline;
using namespace transonline::testing;

TEST_CASE("waterfill solves sum (a - v)+ = 1 exactly") {
  Lcg64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    int m = 1 + static_cast<int>(rng.next_below(6));
    std::vector<Rational> a;
    for (int i = 0; i < m; ++i)
      a.push_back(Rational(static_cast<int>(rng.next_below(9)),
                           1 + static_cast<int>(rng.next_below(4))));
    Rational v = solve_waterfill(a);
    Rational total = 0;
    Rational lo = a[0], hi = a[0];
    for (const Rational& ai : a) {
      if (ai > v) total += ai - v;
      lo = std::min(lo, ai);
      hi = std::max(hi, ai);
    }
    CHECK(total == Rational(1));
    CHECK(v >= lo - 1);
    CHECK(v <= hi);
  }
}

TEST_CASE("minimax examples") {
  auto two = gen_constants(2, 1);
  CHECK(minimax_mistakes(two, {0}) == Rational(1, 2));
  // forced rounds contribute nothing: the set is a singleton afterwards
  CHECK(minimax_mistakes(two, {0, 0}) == Rational(1, 2));
  CHECK(minimax_mistakes(two, {0, 0, 0}) == Rational(1, 2));

  auto constants = gen_constants(3, 2);
  CHECK(minimax_mistakes(constants, {0, 1, 0}) == Rational(2, 3));

  auto full = gen_full(2, 2);
  Rational v = minimax_mistakes(full, {0, 1});
  CHECK(v == Rational(1));
  // sandwich: D/2 = 1 <= v <= min{B, T} = 2
  CHECK(v >= Rational(1));
  CHECK(v <= Rational(2));

  CHECK(minimax_mistakes(gen_constants(1, 1), {0, 0}) == Rational(0));
}

TEST_CASE("minimax caps") {
  auto full = gen_full(2, 2);
  std::vector<int> long_xs(9, 0);
  CHECK_THROWS_AS(minimax_mistakes(full, long_xs), CapError);
  Caps tight;
  tight.max_concepts = 2;
  CHECK_THROWS_AS(minimax_mistakes(full, {0}, tight), CapError);
}

TEST_CASE("run_realizable records potentials and verifies traces") {
  auto constants = gen_constants(3, 2);
  auto [ws, wm] = worst_case_stream(constants, {0, 1, 0}, "bp");
  auto tr = run_realizable("bp", constants, ws);
  CHECK(tr.mistakes == 1);
  CHECK(tr.rows[0].potential == 1);  // B(C, xs) = 1 for constants
  CHECK(verify_potential_trace(tr));

  auto ssh_tr = run_realizable("ssh", constants, ws);
  CHECK(ssh_tr.mistakes == 1);
  CHECK(verify_halving_trace(ssh_tr));

  auto single = gen_constants(1, 2);
  Stream s;
  s.xs = {0, 1};
  s.ys = {0, 0};
  CHECK(run_realizable("bp", single, s).mistakes == 0);

  Stream bad;
  bad.xs = {0};
  bad.ys = {7};
  CHECK_THROWS_AS(run_realizable("bp", constants, bad), std::runtime_error);
  CHECK_THROWS_AS(run_realizable("agnostic", constants, s), std::invalid_argument);
}

TEST_CASE("trace verifiers reject fabricated violations") {
  Transcript fake;
  fake.learner = "bp";
  fake.rows.push_back({1, 0, 0, 1, true, 2, -1});
  fake.rows.push_back({2, 0, 0, 0, false, 2, -1});  // should have dropped
  fake.final_potential = 0;
  CHECK_FALSE(verify_potential_trace(fake));

  Transcript ok;
  ok.learner = "bp";
  ok.rows.push_back({1, 0, 0, 0, false, 2, -1});
  ok.rows.push_back({2, 0, 0, 0, false, 1, -1});  // monotone non-increase suffices
  ok.final_potential = 1;
  CHECK(verify_potential_trace(ok));

  Transcript missing;
  missing.rows.push_back({1, 0, 0, 0, false, -1, -1});
  CHECK_THROWS_AS(verify_potential_trace(missing), std::invalid_argument);

  Transcript halv;
  halv.rows.push_back({1, 0, 0, 1, true, -1, 10});
  halv.rows.push_back({2, 0, 0, 0, false, -1, 6});  // 6 > 10/2
  halv.final_scount = 6;
  CHECK_FALSE(verify_halving_trace(halv));
  halv.rows[1].scount = 5;
  halv.final_scount = 5;
  CHECK(verify_halving_trace(halv));
}

TEST_CASE("every exhaustive bp run satisfies potential descent") {
  auto cls = gen_full(2, 2);
  for (int T = 1; T <= 4; ++T)
    for (const auto& xs : all_sequences(cls.n_instances, T))
      for (const auto& s : realizable_streams(cls, xs))
        CHECK(verify_potential_trace(run_realizable("bp", cls, s)));
}

TEST_CASE("every exhaustive ssh run satisfies the halving inequality") {
  auto cls = gen_full(2, 2);
  for (int T = 1; T <= 4; ++T)
    for (const auto& xs : all_sequences(cls.n_instances, T))
      for (const auto& s : realizable_streams(cls, xs))
        CHECK(verify_halving_trace(run_realizable("ssh", cls, s)));
}

TEST_CASE("verify_bounds battery spot checks") {
  auto v1 = verify_bounds(gen_constants(3, 2), 3);
  CHECK(v1.pass);
  CHECK(v1.lower == Rational(1, 2));
  CHECK(v1.value == Rational(2, 3));
  CHECK(v1.upper == Rational(1));

  auto v2 = verify_bounds(gen_full(2, 3), 3);
  CHECK(v2.pass);
  CHECK(v2.lower == Rational(3, 2));
  CHECK(v2.value == Rational(3, 2));
  CHECK(v2.upper == Rational(3));

  // T below D: the bounds clip at T
  auto v3 = verify_bounds(gen_full(2, 3), 2);
  CHECK(v3.pass);
  CHECK(v3.lower == Rational(1));
  CHECK(v3.upper == Rational(2));

  auto j = verdict_to_json(v1);
  CHECK(j["lower"] == "1/2");
  CHECK(j["value"] == "2/3");
  CHECK(j["pass"] == true);
}

TEST_CASE("oracle sandwich holds on the battery") {
  for (const auto& cls : battery()) {
    for (int T = 1; T <= 3; ++T) {
      auto v = verify_bounds(cls, T);
      CHECK(v.pass);
    }
  }
}

TEST_CASE("lower-bound attainment on the witness sequence") {
  for (const auto& cls : battery()) {
    auto w = dim_level_littlestone(cls);
    if (w.value == 0) continue;
    Rational mm = minimax_mistakes(cls, w.tree->level_instances);
    CHECK(mm >= Rational(w.value, 2));
  }
}

TEST_CASE("transcript totals equal the per-round sums") {
  auto cls = gen_full(2, 2);
  for (const auto& s : realizable_streams(cls, {0, 1, 0, 1})) {
    for (const char* name : {"bp", "ssh", "ssh-conservative"}) {
      auto tr = run_realizable(name, cls, s);
      int sum = 0;
      for (const auto& r : tr.rows) sum += r.mistake ? 1 : 0;
      CHECK(tr.mistakes == sum);
      CHECK(tr.regret() == tr.mistakes - tr.best_in_class_mistakes);
      CHECK(tr.best_in_class_mistakes == 0);  // realizable
    }
  }
}

TEST_CASE("transcript csv format") {
  auto constants = gen_constants(3, 2);
  auto [ws, wm] = worst_case_stream(constants, {0, 1}, "ssh");
  auto tr = run_realizable("ssh", constants, ws);
  std::ostringstream out;
  transcript_to_csv(tr, out);
  std::string csv = out.str();
  CHECK(csv.rfind("t,x,pred,true,mistake,potential,scount\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rounds
}

TEST_CASE("run_agnostic summary fields") {
  auto cls = gen_constants(2, 1);
  Stream s;
  s.xs = {0};
  s.ys = {0};
  auto summary = run_agnostic(cls, s, {1, 2, 3});
  CHECK(summary.trials == 3);
  CHECK(summary.mean_regret >= 0.0);
  CHECK(summary.mean_regret <= 1.0);
  CHECK(summary.ci_lo <= summary.mean_regret);
  CHECK(summary.ci_hi >= summary.mean_regret);
}
