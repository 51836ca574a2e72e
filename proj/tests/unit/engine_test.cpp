#include <cmath>

#include "doctest.h"
#include "uclsim/engine.hpp"
#include "uclsim/fixtures.hpp"

using namespace uclsim;

namespace {

Scenario make_scenario(Format format, int home_pot, int away_pot, Side side, int cutoff,
                       std::uint64_t replications, std::uint64_t seed) {
  Scenario scenario;
  scenario.match_type = MatchType{PotRating(home_pot), PotRating(away_pot)};
  scenario.perspective = side;
  scenario.threshold = ThresholdSpec{format, cutoff};
  scenario.replications = replications;
  scenario.master_seed = seed;
  return scenario;
}

bool bit_identical(const IncentiveResult& a, const IncentiveResult& b) {
  return a.probs.p_win == b.probs.p_win && a.probs.p_draw == b.probs.p_draw &&
         a.probs.p_loss == b.probs.p_loss && a.probs.stderr_win == b.probs.stderr_win &&
         a.probs.stderr_draw == b.probs.stderr_draw &&
         a.probs.stderr_loss == b.probs.stderr_loss && a.incentive == b.incentive &&
         a.incentive_stderr == b.incentive_stderr;
}

}  // namespace

TEST_CASE("a cutoff equal to the field size is degenerate") {
  const auto result = run_scenario(make_scenario(Format::group, 1, 2, Side::home, 4, 2000, 1));
  CHECK(result.probs.p_win == 1.0);
  CHECK(result.probs.p_draw == 1.0);
  CHECK(result.probs.p_loss == 1.0);
  CHECK(result.degenerate());
  CHECK(!result.incentive.has_value());
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS(run_scenario(make_scenario(Format::group, 3, 3, Side::home, 2, 100, 0)),
                  NoSuchMatchTypeError);
  CHECK_THROWS_AS(run_scenario(make_scenario(Format::group, 1, 2, Side::home, 0, 100, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_scenario(make_scenario(Format::league, 1, 2, Side::home, 37, 100, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_scenario(make_scenario(Format::group, 1, 2, Side::home, 2, 0, 0)),
                  std::invalid_argument);
  Scenario bad_threads = make_scenario(Format::group, 1, 2, Side::home, 2, 100, 0);
  bad_threads.threads = 0;
  CHECK_THROWS_AS(run_scenario(bad_threads), std::invalid_argument);
}

TEST_CASE("results are bit-identical for any worker thread count") {
  Scenario scenario = make_scenario(Format::league, 2, 3, Side::away, 8, 20'000, 7);
  scenario.threads = 1;
  const auto single = run_scenario(scenario);
  scenario.threads = 3;
  const auto triple = run_scenario(scenario);
  scenario.threads = 8;
  const auto eight = run_scenario(scenario);
  CHECK(bit_identical(single, triple));
  CHECK(bit_identical(single, eight));
}

TEST_CASE("same seed reproduces, different seed moves the estimate only slightly") {
  const auto a = run_scenario(make_scenario(Format::group, 1, 4, Side::home, 2, 50'000, 11));
  const auto b = run_scenario(make_scenario(Format::group, 1, 4, Side::home, 2, 50'000, 11));
  CHECK(bit_identical(a, b));
  const auto c = run_scenario(make_scenario(Format::group, 1, 4, Side::home, 2, 50'000, 12));
  REQUIRE(a.incentive.has_value());
  REQUIRE(c.incentive.has_value());
  const double combined =
      std::sqrt(*a.incentive_stderr * *a.incentive_stderr +
                *c.incentive_stderr * *c.incentive_stderr);
  CHECK(std::abs(*a.incentive - *c.incentive) < 5 * combined);
}

TEST_CASE("winning dominates drawing dominates losing") {
  for (const auto& scenario :
       {make_scenario(Format::group, 4, 1, Side::home, 2, 100'000, 3),
        make_scenario(Format::league, 1, 4, Side::away, 24, 30'000, 3)}) {
    const auto result = run_scenario(scenario);
    CHECK(result.diff_win_draw > 4 * result.stderr_diff_win_draw);
    CHECK(result.diff_draw_loss > 4 * result.stderr_diff_draw_loss);
    REQUIRE(result.incentive.has_value());
    CHECK(*result.incentive > 0);
  }
}

TEST_CASE("common random numbers shift variance, not the estimate") {
  Scenario scenario = make_scenario(Format::group, 1, 4, Side::home, 2, 200'000, 19);
  scenario.common_random_numbers = true;
  const auto with_crn = run_scenario(scenario);
  scenario.common_random_numbers = false;
  const auto without_crn = run_scenario(scenario);
  REQUIRE(with_crn.incentive.has_value());
  REQUIRE(without_crn.incentive.has_value());
  const double combined =
      std::sqrt(*with_crn.incentive_stderr * *with_crn.incentive_stderr +
                *without_crn.incentive_stderr * *without_crn.incentive_stderr);
  CHECK(std::abs(*with_crn.incentive - *without_crn.incentive) < 4 * combined);
  // The paired differences are where the variance reduction shows up.
  CHECK(with_crn.stderr_diff_win_draw < without_crn.stderr_diff_win_draw);
  CHECK(with_crn.stderr_diff_draw_loss < without_crn.stderr_diff_draw_loss);
}

TEST_CASE("the full grid has 96 cells in canonical order") {
  GridOptions options;
  options.replications = 2'000;
  options.master_seed = 5;
  int batches_seen = 0;
  options.progress = [&batches_seen](int done, int total) {
    CHECK(total == 24);
    batches_seen = done;
  };
  const auto cells = run_incentive_grid(options);
  CHECK(batches_seen == 24);
  REQUIRE(cells.size() == 96);
  CHECK(cells[0].format == Format::group);
  CHECK(cells[0].rank_cutoff == 2);
  CHECK(cells[0].match_type.home_pot.value() == 1);
  CHECK(cells[0].match_type.away_pot.value() == 2);
  CHECK(cells[0].perspective == Side::home);
  CHECK(cells[1].perspective == Side::away);
  CHECK(cells[24].rank_cutoff == 3);
  CHECK(cells[48].format == Format::league);
  CHECK(cells[48].rank_cutoff == 8);
  CHECK(cells[95].rank_cutoff == 24);
  CHECK(cells[95].match_type.home_pot.value() == 4);
  CHECK(cells[95].match_type.away_pot.value() == 3);
  for (const GridCell& cell : cells) {
    CHECK(cell.replications == 2'000);
    CHECK(cell.master_seed == 5);
  }
}

namespace {

std::vector<GridCell> synthetic_grid(double group_first, double group_second,
                                     double league_first, double league_second) {
  std::vector<GridCell> cells;
  for (Format format : {Format::group, Format::league})
    for (int cutoff : format == Format::group ? std::vector<int>{2, 3} : std::vector<int>{8, 24})
      for (const MatchType& type : cross_pot_match_types())
        for (Side side : {Side::home, Side::away}) {
          IncentiveResult result;
          const bool first = cutoff == 2 || cutoff == 8;
          result.incentive = format == Format::group ? (first ? group_first : group_second)
                                                     : (first ? league_first : league_second);
          result.incentive_stderr = 0.0;
          cells.push_back(GridCell{format, cutoff, type, side, result, 1000, 0});
        }
  return cells;
}

}  // namespace

TEST_CASE("aggregate_uplift on synthetic tables") {
  SUBCASE("identical incentives mean zero uplift") {
    const auto summary = aggregate_uplift(synthetic_grid(1.5, 0.9, 1.5, 0.9));
    CHECK(summary.first_prize_mean_pct == doctest::Approx(0.0));
    CHECK(summary.second_prize_mean_pct == doctest::Approx(0.0));
    CHECK(summary.cells.size() == 24);
  }
  SUBCASE("uniform doubling means one hundred percent") {
    const auto summary = aggregate_uplift(synthetic_grid(1.2, 0.8, 2.4, 1.6));
    CHECK(summary.first_prize_mean_pct == doctest::Approx(100.0));
    CHECK(summary.second_prize_mean_pct == doctest::Approx(100.0));
  }
  SUBCASE("degenerate cells poison the aggregate") {
    auto cells = synthetic_grid(1.2, 0.8, 2.4, 1.6);
    cells[50].result.incentive.reset();
    cells[50].result.incentive_stderr.reset();
    CHECK_THROWS_AS(aggregate_uplift(cells), DegenerateCellError);
  }
  SUBCASE("missing cells are rejected") {
    auto cells = synthetic_grid(1.2, 0.8, 2.4, 1.6);
    cells.pop_back();
    CHECK_THROWS_AS(aggregate_uplift(cells), std::invalid_argument);
  }
}

TEST_CASE("custom setups drive the same machinery") {
  TournamentSetup setup;
  setup.team_pots = {PotRating(1), PotRating(4)};
  setup.fixtures = {};
  setup.focal = {0, 1};
  setup.tie_rule = TieRule::league_chain;
  const auto result = run_setup(setup, 1, Side::home, 50'000, 2, true, 1);
  CHECK(result.probs.p_win == 1.0);
  CHECK(result.probs.p_loss == 0.0);
  CHECK(std::abs(result.probs.p_draw - 0.5) < 4 * result.probs.stderr_draw);
}
