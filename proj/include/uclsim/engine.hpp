#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uclsim/goal_model.hpp"
#include "uclsim/types.hpp"

namespace uclsim {

// A prize is a final-table cutoff: top 2 / top 3 in a group, top 8 / top 24
// in the league. Other cutoffs are allowed for sensitivity runs.
struct ThresholdSpec {
  Format format;
  int rank_cutoff;
};

struct Scenario {
  MatchType match_type{PotRating(1), PotRating(2)};  // group scenarios need home_pot != away_pot
  Side perspective = Side::home;
  ThresholdSpec threshold{Format::league, 8};
  std::uint64_t replications = 1'000'000;
  std::uint64_t master_seed = 0;
  bool common_random_numbers = true;
  int threads = 1;
  GoalModelParams params = GoalModelParams::fitted();
  PointsRule points{};
};

struct ProbTriple {
  double p_win = 0;
  double p_draw = 0;
  double p_loss = 0;
  double stderr_win = 0;
  double stderr_draw = 0;
  double stderr_loss = 0;
};

struct IncentiveResult {
  ProbTriple probs;
  double diff_win_draw = 0;   // p_win - p_draw
  double diff_draw_loss = 0;  // p_draw - p_loss
  // Paired standard errors of the two differences (they account for the
  // covariance induced by common random numbers).
  double stderr_diff_win_draw = 0;
  double stderr_diff_draw_loss = 0;
  // Empty when the denominator p_draw - p_loss is degenerate, i.e. smaller
  // in magnitude than 10 of its paired standard errors.
  std::optional<double> incentive;
  std::optional<double> incentive_stderr;

  bool degenerate() const noexcept { return !incentive.has_value(); }
};

// Fixes the focal match of the scenario's pot pairing at 1-0 / 0-0 / 0-1
// (from the focal team's viewpoint), simulates every other match of the
// format, and estimates the three conditional prize probabilities and their
// ratio-of-differences incentive. With common random numbers the non-focal
// scorelines are shared across the three conditionings.
IncentiveResult run_scenario(const Scenario& scenario);

// Arbitrary small tournament; drives the exact-enumeration cross-checks.
struct TournamentSetup {
  std::vector<PotRating> team_pots;
  std::vector<std::pair<int, int>> fixtures;  // non-focal, flat team indices
  std::pair<int, int> focal;
  TieRule tie_rule;
  std::optional<int> goal_cap;  // truncated sampling when set
  std::uint64_t stream_salt = 0;
  GoalModelParams params = GoalModelParams::fitted();
  PointsRule points{};
};

IncentiveResult run_setup(const TournamentSetup& setup, int rank_cutoff, Side perspective,
                          std::uint64_t replications, std::uint64_t master_seed,
                          bool common_random_numbers, int threads);

struct GridCell {
  Format format;
  int rank_cutoff;
  MatchType match_type;
  Side perspective;
  IncentiveResult result;
  std::uint64_t replications;
  std::uint64_t master_seed;
};

struct GridOptions {
  std::uint64_t replications = 1'000'000;
  std::uint64_t master_seed = 0;
  bool common_random_numbers = true;
  int threads = 1;
  GoalModelParams params = GoalModelParams::fitted();
  PointsRule points{};
  // Called after each simulation batch (24 in total) when set.
  std::function<void(int done, int total)> progress;
};

// The full 96-cell table: both formats, both prize cutoffs (top 2 / top 3
// for the group, top 8 / top 24 for the league), the 12 cross-pot pairings,
// both perspectives. One simulation batch per (format, pairing) feeds both
// perspectives and both cutoffs. Cells come back sorted by
// (format, cutoff, home pot, away pot, perspective).
std::vector<GridCell> run_incentive_grid(const GridOptions& options);

struct DegenerateCellError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UpliftCell {
  MatchType match_type;
  Side perspective;
  double first_prize_uplift;   // I_league_top8 / I_group_top2 - 1
  double second_prize_uplift;  // I_league_top24 / I_group_top3 - 1
  double first_prize_stderr;
  double second_prize_stderr;
};

struct UpliftSummary {
  double first_prize_mean_pct;
  double second_prize_mean_pct;
  std::vector<UpliftCell> cells;  // 24, ordered by (home pot, away pot, perspective)
};

// Mean league-vs-group incentive uplift over the 24 (pairing, perspective)
// cells, per prize. Throws DegenerateCellError if any required cell carries
// no incentive value.
UpliftSummary aggregate_uplift(std::span<const GridCell> cells);

}  // namespace uclsim
