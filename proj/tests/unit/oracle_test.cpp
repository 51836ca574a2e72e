#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "uclsim/oracle.hpp"

using namespace uclsim;

TEST_CASE("a two-team format whose only match is focal") {
  MiniFormat mini;
  mini.teams = {PotRating(1), PotRating(4)};
  mini.fixtures = {};
  mini.goal_cap = 2;
  for (TieRule rule : {TieRule::league_chain, TieRule::group_chain}) {
    mini.tie_rule = rule;
    const ProbTriple home = exact_prob_triple(mini, {0, 1}, 1, Side::home);
    CHECK(home.p_win == 1.0);
    CHECK(home.p_draw == 0.5);
    CHECK(home.p_loss == 0.0);
    const ProbTriple away = exact_prob_triple(mini, {0, 1}, 1, Side::away);
    CHECK(away.p_win == 1.0);
    CHECK(away.p_draw == 0.5);
    CHECK(away.p_loss == 0.0);
  }
}

TEST_CASE("a cutoff equal to the number of teams makes every probability one") {
  MiniFormat mini;
  mini.teams = {PotRating(1), PotRating(2), PotRating(3)};
  mini.fixtures = {{1, 2}, {2, 0}};
  mini.goal_cap = 2;
  mini.tie_rule = TieRule::league_chain;
  const ProbTriple triple = exact_prob_triple(mini, {0, 1}, 3);
  CHECK(triple.p_win == 1.0);
  CHECK(triple.p_draw == 1.0);
  CHECK(triple.p_loss == 1.0);
}

TEST_CASE("the forced all-tied format is decided by the uniform draw alone") {
  const auto checks = standard_mini_checks();
  const auto all_tied = std::find_if(checks.begin(), checks.end(), [](const MiniCheck& check) {
    return check.name == "all-tied";
  });
  REQUIRE(all_tied != checks.end());
  const ProbTriple triple =
      exact_prob_triple(all_tied->mini, all_tied->focal, all_tied->rank_cutoff);
  CHECK(triple.p_win == 1.0);
  CHECK(triple.p_draw == 0.5);  // one 4-team band, cutoff 2
  CHECK(triple.p_loss == 0.0);
}

TEST_CASE("enumeration order does not change the probabilities") {
  MiniFormat mini;
  mini.teams = {PotRating(1), PotRating(2), PotRating(3), PotRating(4)};
  mini.fixtures = {{1, 2}, {2, 3}, {3, 0}, {1, 3}, {2, 0}};
  mini.goal_cap = 1;
  mini.tie_rule = TieRule::group_chain;
  const ProbTriple reference = exact_prob_triple(mini, {0, 1}, 2);
  MiniFormat permuted = mini;
  std::rotate(permuted.fixtures.begin(), permuted.fixtures.begin() + 2,
              permuted.fixtures.end());
  const ProbTriple rotated = exact_prob_triple(permuted, {0, 1}, 2);
  CHECK(rotated.p_win == doctest::Approx(reference.p_win).epsilon(1e-12));
  CHECK(rotated.p_draw == doctest::Approx(reference.p_draw).epsilon(1e-12));
  CHECK(rotated.p_loss == doctest::Approx(reference.p_loss).epsilon(1e-12));
}

TEST_CASE("validation and the enumeration bound") {
  MiniFormat mini;
  mini.teams = {PotRating(1), PotRating(2), PotRating(3), PotRating(4)};
  mini.fixtures = {{1, 2}, {2, 3}, {3, 0}, {1, 3}, {2, 0}, {0, 1}};
  mini.goal_cap = 4;  // 5^12 combinations is past the bound
  mini.tie_rule = TieRule::group_chain;
  CHECK_THROWS_AS(exact_prob_triple(mini, {0, 3}, 2), EnumerationBoundError);
  mini.goal_cap = 5;
  CHECK_THROWS_AS(exact_prob_triple(mini, {0, 3}, 2), std::invalid_argument);
  mini.goal_cap = 2;
  CHECK_THROWS_AS(exact_prob_triple(mini, {0, 3}, 5), std::invalid_argument);
  CHECK_THROWS_AS(exact_prob_triple(mini, {0, 0}, 2), std::invalid_argument);
  mini.teams.push_back(PotRating(1));
  CHECK_THROWS_AS(exact_prob_triple(mini, {0, 3}, 2), std::invalid_argument);
}

// The estimates and the enumeration must agree for every built-in format,
// from both perspectives; this is the fast version of the acceptance check.
TEST_CASE("Monte Carlo estimates agree with exact enumeration") {
  constexpr std::uint64_t n = 200'000;
  for (const MiniCheck& check : standard_mini_checks()) {
    CAPTURE(check.name);
    for (Side side : {Side::home, Side::away}) {
      const ProbTriple exact =
          exact_prob_triple(check.mini, check.focal, check.rank_cutoff, side);
      const IncentiveResult estimate = run_setup(to_setup(check.mini, check.focal),
                                                 check.rank_cutoff, side, n, 29, true, 1);
      const double est[3] = {estimate.probs.p_win, estimate.probs.p_draw,
                             estimate.probs.p_loss};
      const double ref[3] = {exact.p_win, exact.p_draw, exact.p_loss};
      const double se[3] = {estimate.probs.stderr_win, estimate.probs.stderr_draw,
                            estimate.probs.stderr_loss};
      for (int i = 0; i < 3; ++i) {
        if (se[i] == 0.0)
          CHECK(est[i] == ref[i]);
        else
          CHECK(std::abs(est[i] - ref[i]) < 4 * se[i]);
      }
    }
  }
}
