#include "uclsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "uclsim/fixtures.hpp"
#include "uclsim/standings.hpp"

namespace uclsim {
namespace {

// Focal match conditioned at 1-0 / 0-0 / 0-1 from the home scoreboard.
constexpr Scoreline kConditionings[3] = {{1, 0}, {0, 0}, {0, 1}};

constexpr std::uint64_t kChunkSize = 8192;
constexpr int kMaxCutoffs = 4;

struct CellCounts {
  std::uint64_t n_win = 0;
  std::uint64_t n_draw = 0;
  std::uint64_t n_loss = 0;
  std::uint64_t n_win_draw = 0;
  std::uint64_t n_win_loss = 0;
  std::uint64_t n_draw_loss = 0;

  void add(bool win, bool draw, bool loss) noexcept {
    n_win += win;
    n_draw += draw;
    n_loss += loss;
    n_win_draw += win && draw;
    n_win_loss += win && loss;
    n_draw_loss += draw && loss;
  }

  CellCounts& operator+=(const CellCounts& other) noexcept {
    n_win += other.n_win;
    n_draw += other.n_draw;
    n_loss += other.n_loss;
    n_win_draw += other.n_win_draw;
    n_win_loss += other.n_win_loss;
    n_draw_loss += other.n_draw_loss;
    return *this;
  }
};

struct Batch {
  int n_teams = 0;
  std::vector<TeamId> team_ids;
  std::vector<std::pair<int, int>> fixtures;  // non-focal, flat indices
  std::pair<int, int> focal{0, 0};
  TieRule rule = TieRule::league_chain;
  std::vector<PoissonSampler> samplers;  // home, away per fixture
  std::vector<int> cutoffs;
  std::uint64_t salt = 0;
  PointsRule points;
};

Batch prepare_batch(const std::vector<PotRating>& pots,
                    const std::vector<std::pair<int, int>>& fixtures, std::pair<int, int> focal,
                    TieRule rule, std::vector<int> cutoffs, std::uint64_t salt,
                    const GoalModelParams& params, const PointsRule& points,
                    std::optional<int> goal_cap) {
  Batch batch;
  batch.n_teams = static_cast<int>(pots.size());
  if (batch.n_teams < 2) throw std::invalid_argument("at least two teams required");
  std::array<int, 4> next_index{};
  batch.team_ids.reserve(pots.size());
  for (const PotRating& pot : pots)
    batch.team_ids.push_back(TeamId{pot, next_index[static_cast<std::size_t>(pot.value() - 1)]++});

  auto check_team = [&](int team) {
    if (team < 0 || team >= batch.n_teams)
      throw std::invalid_argument("fixture references a team out of range");
  };
  check_team(focal.first);
  check_team(focal.second);
  if (focal.first == focal.second)
    throw std::invalid_argument("focal match needs two distinct teams");
  batch.focal = focal;
  batch.fixtures = fixtures;
  batch.samplers.reserve(fixtures.size() * 2);
  for (const auto& [home, away] : fixtures) {
    check_team(home);
    check_team(away);
    if (home == away) throw std::invalid_argument("a team cannot host itself");
    const PotRating home_pot = pots[static_cast<std::size_t>(home)];
    const PotRating away_pot = pots[static_cast<std::size_t>(away)];
    const double lh = lambda_home(params, home_pot, away_pot);
    const double la = lambda_away(params, home_pot, away_pot);
    if (goal_cap) {
      batch.samplers.emplace_back(lh, *goal_cap);
      batch.samplers.emplace_back(la, *goal_cap);
    } else {
      batch.samplers.emplace_back(lh);
      batch.samplers.emplace_back(la);
    }
  }
  for (int cutoff : cutoffs)
    if (cutoff < 1 || cutoff > batch.n_teams)
      throw std::invalid_argument("rank cutoff out of range for the field size");
  if (cutoffs.empty() || cutoffs.size() > kMaxCutoffs)
    throw std::invalid_argument("between 1 and 4 cutoffs per batch");
  batch.cutoffs = std::move(cutoffs);
  batch.rule = rule;
  batch.salt = salt;
  batch.points = points;
  return batch;
}

struct WorkerState {
  std::vector<TableRow> rows;
  std::vector<Scoreline> scores;
  std::vector<MatchRef> match_refs;  // group chain only; focal last
  std::vector<int> order;
  TableRow saved_home;
  TableRow saved_away;

  explicit WorkerState(const Batch& batch)
      : scores(batch.fixtures.size()),
        order(static_cast<std::size_t>(batch.n_teams)),
        saved_home(TableRow{batch.team_ids[0]}),
        saved_away(TableRow{batch.team_ids[0]}) {
    rows.reserve(batch.team_ids.size());
    for (const TeamId& team : batch.team_ids) rows.push_back(TableRow{team});
    if (batch.rule == TieRule::group_chain) {
      match_refs.reserve(batch.fixtures.size() + 1);
      for (const auto& [home, away] : batch.fixtures)
        match_refs.push_back(MatchRef{home, away, Scoreline{}});
      match_refs.push_back(MatchRef{batch.focal.first, batch.focal.second, Scoreline{}});
    }
  }
};

void reset_rows(WorkerState& state) {
  for (TableRow& row : state.rows) {
    row.points = 0;
    row.goals_for = 0;
    row.goals_against = 0;
    row.away_goals_for = 0;
    row.wins = 0;
    row.away_wins = 0;
  }
}

void sample_and_accumulate(const Batch& batch, WorkerState& state, Xoshiro256pp& rng) {
  for (std::size_t f = 0; f < batch.fixtures.size(); ++f) {
    state.scores[f].home_goals = batch.samplers[2 * f].sample(rng);
    state.scores[f].away_goals = batch.samplers[2 * f + 1].sample(rng);
  }
  reset_rows(state);
  for (std::size_t f = 0; f < batch.fixtures.size(); ++f) {
    const auto& [home, away] = batch.fixtures[f];
    apply_match(state.rows[static_cast<std::size_t>(home)],
                state.rows[static_cast<std::size_t>(away)], state.scores[f], batch.points);
    if (batch.rule == TieRule::group_chain) state.match_refs[f].score = state.scores[f];
  }
}

void simulate_range(const Batch& batch, std::uint64_t master_seed, bool crn,
                    std::uint64_t rep_begin, std::uint64_t rep_end, WorkerState& state,
                    std::vector<CellCounts>& counts) {
  const int n_cutoffs = static_cast<int>(batch.cutoffs.size());
  const auto focal_home = static_cast<std::size_t>(batch.focal.first);
  const auto focal_away = static_cast<std::size_t>(batch.focal.second);
  bool reached[2][kMaxCutoffs][3];

  for (std::uint64_t rep = rep_begin; rep < rep_end; ++rep) {
    Xoshiro256pp rng = Xoshiro256pp::replication_stream(master_seed, batch.salt, rep);
    if (crn) sample_and_accumulate(batch, state, rng);
    for (int c = 0; c < 3; ++c) {
      if (!crn) sample_and_accumulate(batch, state, rng);
      state.saved_home = state.rows[focal_home];
      state.saved_away = state.rows[focal_away];
      apply_match(state.rows[focal_home], state.rows[focal_away], kConditionings[c],
                  batch.points);
      if (batch.rule == TieRule::group_chain) {
        state.match_refs.back().score = kConditionings[c];
        rank_group_positions(state.rows, state.match_refs, rng, state.order, batch.points);
      } else {
        rank_league_positions(state.rows, rng, state.order);
      }
      int home_rank = 0;
      int away_rank = 0;
      for (std::size_t i = 0; i < state.order.size(); ++i) {
        if (state.order[i] == batch.focal.first) home_rank = static_cast<int>(i) + 1;
        if (state.order[i] == batch.focal.second) away_rank = static_cast<int>(i) + 1;
      }
      for (int k = 0; k < n_cutoffs; ++k) {
        reached[0][k][c] = home_rank <= batch.cutoffs[static_cast<std::size_t>(k)];
        reached[1][k][c] = away_rank <= batch.cutoffs[static_cast<std::size_t>(k)];
      }
      state.rows[focal_home] = state.saved_home;
      state.rows[focal_away] = state.saved_away;
    }
    for (int side = 0; side < 2; ++side)
      for (int k = 0; k < n_cutoffs; ++k) {
        // The focal home team wins conditioning 0, the away team conditioning 2.
        const bool win = side == 0 ? reached[0][k][0] : reached[1][k][2];
        const bool draw = reached[static_cast<std::size_t>(side)][k][1];
        const bool loss = side == 0 ? reached[0][k][2] : reached[1][k][0];
        counts[static_cast<std::size_t>(side * n_cutoffs + k)].add(win, draw, loss);
      }
  }
}

// Counter totals are plain sums over replications, so any partition of the
// range over threads reproduces the single-thread result exactly.
std::vector<CellCounts> run_batch(const Batch& batch, std::uint64_t replications,
                                  std::uint64_t master_seed, bool crn, int threads) {
  const std::size_t n_cells = 2 * batch.cutoffs.size();
  if (threads <= 1 || replications < 2 * kChunkSize) {
    std::vector<CellCounts> counts(n_cells);
    WorkerState state(batch);
    simulate_range(batch, master_seed, crn, 0, replications, state, counts);
    return counts;
  }
  std::atomic<std::uint64_t> next_chunk{0};
  const std::uint64_t chunk_count = (replications + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<CellCounts>> partials(static_cast<std::size_t>(threads),
                                                std::vector<CellCounts>(n_cells));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      WorkerState state(batch);
      auto& local = partials[static_cast<std::size_t>(t)];
      for (;;) {
        const std::uint64_t chunk = next_chunk.fetch_add(1, std::memory_order_relaxed);
        if (chunk >= chunk_count) break;
        const std::uint64_t begin = chunk * kChunkSize;
        const std::uint64_t end = std::min(begin + kChunkSize, replications);
        simulate_range(batch, master_seed, crn, begin, end, state, local);
      }
    });
  }
  for (auto& worker : workers) worker.join();
  std::vector<CellCounts> counts(n_cells);
  for (const auto& partial : partials)
    for (std::size_t i = 0; i < n_cells; ++i) counts[i] += partial[i];
  return counts;
}

IncentiveResult finalize(const CellCounts& counts, std::uint64_t replications) {
  const double n = static_cast<double>(replications);
  IncentiveResult result;
  const double p_win = static_cast<double>(counts.n_win) / n;
  const double p_draw = static_cast<double>(counts.n_draw) / n;
  const double p_loss = static_cast<double>(counts.n_loss) / n;
  const double var_win = p_win * (1 - p_win) / n;
  const double var_draw = p_draw * (1 - p_draw) / n;
  const double var_loss = p_loss * (1 - p_loss) / n;
  const double cov_wd = (static_cast<double>(counts.n_win_draw) / n - p_win * p_draw) / n;
  const double cov_wl = (static_cast<double>(counts.n_win_loss) / n - p_win * p_loss) / n;
  const double cov_dl = (static_cast<double>(counts.n_draw_loss) / n - p_draw * p_loss) / n;

  result.probs = ProbTriple{p_win,
                            p_draw,
                            p_loss,
                            std::sqrt(std::max(var_win, 0.0)),
                            std::sqrt(std::max(var_draw, 0.0)),
                            std::sqrt(std::max(var_loss, 0.0))};
  const double numerator = p_win - p_draw;
  const double denominator = p_draw - p_loss;
  const double var_num = std::max(var_win + var_draw - 2 * cov_wd, 0.0);
  const double var_den = std::max(var_draw + var_loss - 2 * cov_dl, 0.0);
  const double cov_num_den = cov_wd - cov_wl - var_draw + cov_dl;
  result.diff_win_draw = numerator;
  result.diff_draw_loss = denominator;
  result.stderr_diff_win_draw = std::sqrt(var_num);
  result.stderr_diff_draw_loss = std::sqrt(var_den);

  // The ratio is noise-dominated once the denominator is within 10 paired
  // standard errors of zero; report an explicit error state instead.
  if (denominator == 0.0 || std::abs(denominator) < 10.0 * result.stderr_diff_draw_loss)
    return result;
  const double incentive = numerator / denominator;
  const double var_incentive =
      (var_num - 2 * incentive * cov_num_den + incentive * incentive * var_den) /
      (denominator * denominator);
  result.incentive = incentive;
  result.incentive_stderr = std::sqrt(std::max(var_incentive, 0.0));
  return result;
}

std::uint64_t batch_salt(Format format, MatchType type) {
  return static_cast<std::uint64_t>(format == Format::group ? 1 : 2) * 100 +
         static_cast<std::uint64_t>(type.home_pot.value()) * 10 +
         static_cast<std::uint64_t>(type.away_pot.value());
}

Batch format_batch(Format format, MatchType type, std::vector<int> cutoffs,
                   const GoalModelParams& params, const PointsRule& points) {
  const Fixture focal = focal_fixture(format, type);
  const int focal_home = flat_index(format, focal.home);
  const int focal_away = flat_index(format, focal.away);
  const auto all = format == Format::group ? group_fixtures() : league_fixtures();
  std::vector<PotRating> pots;
  pots.reserve(static_cast<std::size_t>(team_count(format)));
  for (int flat = 0; flat < team_count(format); ++flat)
    pots.push_back(team_at(format, flat).pot);
  std::vector<std::pair<int, int>> fixtures;
  fixtures.reserve(all.size() - 1);
  for (const Fixture& fixture : all) {
    const int home = flat_index(format, fixture.home);
    const int away = flat_index(format, fixture.away);
    if (home == focal_home && away == focal_away) continue;
    fixtures.emplace_back(home, away);
  }
  const TieRule rule =
      format == Format::group ? TieRule::group_chain : TieRule::league_chain;
  return prepare_batch(pots, fixtures, {focal_home, focal_away}, rule, std::move(cutoffs),
                       batch_salt(format, type), params, points, std::nullopt);
}

void validate_run(std::uint64_t replications, int threads) {
  if (replications == 0) throw std::invalid_argument("replications must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

}  // namespace

IncentiveResult run_scenario(const Scenario& scenario) {
  validate_run(scenario.replications, scenario.threads);
  Batch batch = format_batch(scenario.threshold.format, scenario.match_type,
                             {scenario.threshold.rank_cutoff}, scenario.params, scenario.points);
  const auto counts = run_batch(batch, scenario.replications, scenario.master_seed,
                                scenario.common_random_numbers, scenario.threads);
  const std::size_t cell = scenario.perspective == Side::home ? 0 : 1;
  return finalize(counts[cell], scenario.replications);
}

IncentiveResult run_setup(const TournamentSetup& setup, int rank_cutoff, Side perspective,
                          std::uint64_t replications, std::uint64_t master_seed,
                          bool common_random_numbers, int threads) {
  validate_run(replications, threads);
  Batch batch = prepare_batch(setup.team_pots, setup.fixtures, setup.focal, setup.tie_rule,
                              {rank_cutoff}, setup.stream_salt, setup.params, setup.points,
                              setup.goal_cap);
  const auto counts =
      run_batch(batch, replications, master_seed, common_random_numbers, threads);
  return finalize(counts[perspective == Side::home ? 0 : 1], replications);
}

std::vector<GridCell> run_incentive_grid(const GridOptions& options) {
  validate_run(options.replications, options.threads);
  const auto types = cross_pot_match_types();
  std::vector<GridCell> cells;
  cells.reserve(96);
  int done = 0;
  const int total = static_cast<int>(types.size()) * 2;
  for (Format format : {Format::group, Format::league}) {
    const std::vector<int> cutoffs =
        format == Format::group ? std::vector<int>{2, 3} : std::vector<int>{8, 24};
    for (const MatchType& type : types) {
      Batch batch = format_batch(format, type, cutoffs, options.params, options.points);
      const auto counts = run_batch(batch, options.replications, options.master_seed,
                                    options.common_random_numbers, options.threads);
      for (int side = 0; side < 2; ++side)
        for (std::size_t k = 0; k < cutoffs.size(); ++k)
          cells.push_back(GridCell{format, cutoffs[k], type,
                                   side == 0 ? Side::home : Side::away,
                                   finalize(counts[static_cast<std::size_t>(side) * cutoffs.size() + k],
                                            options.replications),
                                   options.replications, options.master_seed});
      if (options.progress) options.progress(++done, total);
    }
  }
  std::sort(cells.begin(), cells.end(), [](const GridCell& a, const GridCell& b) {
    if (a.format != b.format) return a.format == Format::group;
    if (a.rank_cutoff != b.rank_cutoff) return a.rank_cutoff < b.rank_cutoff;
    if (a.match_type.home_pot.value() != b.match_type.home_pot.value())
      return a.match_type.home_pot.value() < b.match_type.home_pot.value();
    if (a.match_type.away_pot.value() != b.match_type.away_pot.value())
      return a.match_type.away_pot.value() < b.match_type.away_pot.value();
    return a.perspective == Side::home && b.perspective == Side::away;
  });
  return cells;
}

UpliftSummary aggregate_uplift(std::span<const GridCell> cells) {
  auto find_cell = [&cells](Format format, int cutoff, const MatchType& type,
                            Side side) -> const GridCell& {
    for (const GridCell& cell : cells)
      if (cell.format == format && cell.rank_cutoff == cutoff &&
          cell.match_type == type && cell.perspective == side)
        return cell;
    throw std::invalid_argument("aggregate_uplift: needs the full 96-cell table");
  };
  auto incentive_of = [](const GridCell& cell) {
    if (cell.result.degenerate())
      throw DegenerateCellError("aggregate_uplift: a cell carries no incentive value");
    return std::pair{*cell.result.incentive, *cell.result.incentive_stderr};
  };

  UpliftSummary summary{0, 0, {}};
  summary.cells.reserve(24);
  for (const MatchType& type : cross_pot_match_types())
    for (Side side : {Side::home, Side::away}) {
      const auto [i2, s2] = incentive_of(find_cell(Format::group, 2, type, side));
      const auto [i3, s3] = incentive_of(find_cell(Format::group, 3, type, side));
      const auto [i8, s8] = incentive_of(find_cell(Format::league, 8, type, side));
      const auto [i24, s24] = incentive_of(find_cell(Format::league, 24, type, side));
      const double first = i8 / i2 - 1;
      const double second = i24 / i3 - 1;
      const double first_stderr =
          std::abs(i8 / i2) * std::sqrt(s8 / i8 * (s8 / i8) + s2 / i2 * (s2 / i2));
      const double second_stderr =
          std::abs(i24 / i3) * std::sqrt(s24 / i24 * (s24 / i24) + s3 / i3 * (s3 / i3));
      summary.cells.push_back(UpliftCell{type, side, first, second, first_stderr, second_stderr});
      summary.first_prize_mean_pct += first;
      summary.second_prize_mean_pct += second;
    }
  summary.first_prize_mean_pct *= 100.0 / static_cast<double>(summary.cells.size());
  summary.second_prize_mean_pct *= 100.0 / static_cast<double>(summary.cells.size());
  return summary;
}

}  // namespace uclsim
