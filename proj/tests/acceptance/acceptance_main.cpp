// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. The full profile runs 10^6 replications per simulation batch and
// needs a few CPU-minutes; --smoke switches to 10^5 replications with a 10%
// reproduction tolerance.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "uclsim/engine.hpp"
#include "uclsim/fixtures.hpp"
#include "uclsim/goal_model.hpp"
#include "uclsim/oracle.hpp"
#include "uclsim/report.hpp"

using namespace uclsim;

namespace {

struct Options {
  std::uint64_t replications = 1'000'000;
  std::uint64_t seed = 0;
  int threads = 0;
  bool smoke = false;
};

struct ReferenceRow {
  const char* type;
  double i2;
  double i3;
  double i8;
  double i24;
};

// Published incentive estimates for both designs, per pot pairing.
constexpr ReferenceRow kHomeReference[12] = {
    {"1-2", 1.0272944522347, 0.886057464130553, 1.90393707746012, 1.05107274723081},
    {"2-1", 1.55358513814511, 1.20076238881829, 2.44079175384773, 1.35288096456669},
    {"1-3", 0.81347222684461, 0.724808112104781, 2.00849896144977, 1.05491329479768},
    {"3-1", 2.03106897350737, 1.45819766506134, 3.29286456529269, 1.76071720381298},
    {"1-4", 0.867802330619598, 0.554334521845564, 2.08953777741514, 1.08837718284243},
    {"4-1", 2.7735154351217, 1.92447171385424, 4.48619528619528, 2.3303285046435},
    {"2-3", 1.04912406391743, 0.935764496146772, 2.65453607748964, 1.3951298091652},
    {"3-2", 1.69868995633187, 1.38407402580477, 3.45369568980439, 1.80893951130202},
    {"2-4", 1.10999155303487, 0.710547643088696, 2.7590554874089, 1.42278014077615},
    {"4-2", 2.41968495738446, 1.842896489388, 4.70158150851581, 2.39123863831246},
    {"3-4", 1.66836297727408, 0.915569276763078, 3.73978578006106, 1.88504192588585},
    {"4-3", 2.29534950377987, 1.57892667237918, 4.7783191230207, 2.44904956215784},
};

constexpr ReferenceRow kAwayReference[12] = {
    {"1-2", 1.3262491178231, 1.10936547390142, 2.26026737728412, 1.26035868063473},
    {"2-1", 0.839778712761109, 0.771641463949156, 1.76372559730404, 0.973686219620816},
    {"1-3", 1.69905145156654, 1.3655218804888, 2.93819461457938, 1.64312996607964},
    {"3-1", 0.668499158627306, 0.602554056015092, 1.8862044101021, 0.96231370371952},
    {"1-4", 2.33573777447756, 1.77593509066834, 3.99798441279226, 2.17396148650647},
    {"4-1", 0.785622983204169, 0.426790898186938, 2.01186912601799, 1.00174177290246},
    {"2-3", 1.32957754231457, 1.21583281298782, 3.15831647736113, 1.66584156219779},
    {"3-2", 0.839011228214536, 0.764313555651797, 2.52071175739022, 1.28182465363342},
    {"2-4", 1.92372810935455, 1.52829913550671, 4.26702702702702, 2.19048499654477},
    {"4-2", 0.994006876320852, 0.537002979085603, 2.68267242709458, 1.31244722518948},
    {"3-4", 1.93529332251959, 1.17363895276278, 4.60075765547721, 2.23448119395918},
    {"4-3", 1.52431285791021, 0.672624587795807, 3.56563648638511, 1.72748383647693},
};

int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  std::string padded = name;
  padded.resize(32, '.');
  std::printf("[%d/6] %s %s  %s\n", index, padded.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

const GridCell& find_cell(const std::vector<GridCell>& cells, Format format, int cutoff,
                          const char* type, Side side) {
  const int home_pot = type[0] - '0';
  const int away_pot = type[2] - '0';
  for (const GridCell& cell : cells)
    if (cell.format == format && cell.rank_cutoff == cutoff &&
        cell.match_type.home_pot.value() == home_pot &&
        cell.match_type.away_pot.value() == away_pot && cell.perspective == side)
      return cell;
  std::fprintf(stderr, "internal: missing grid cell %s\n", type);
  std::exit(99);
}

std::string cell_label(Format format, int cutoff, const char* type, Side side) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%s %s %s top-%d", format_name(format), type,
                side_name(side), cutoff);
  return buffer;
}

void criterion_figure2(const std::vector<GridCell>& cells, const Options& options) {
  const double floor_tolerance = options.smoke ? 0.10 : 0.03;
  int within = 0;
  double worst_margin = -1e300;
  std::string worst_label;
  double worst_dev = 0;
  double worst_tol = 0;
  for (int side_index = 0; side_index < 2; ++side_index) {
    const Side side = side_index == 0 ? Side::home : Side::away;
    const ReferenceRow* table = side_index == 0 ? kHomeReference : kAwayReference;
    for (int row = 0; row < 12; ++row) {
      const struct {
        Format format;
        int cutoff;
        double reference;
      } prizes[4] = {{Format::group, 2, table[row].i2},
                     {Format::group, 3, table[row].i3},
                     {Format::league, 8, table[row].i8},
                     {Format::league, 24, table[row].i24}};
      for (const auto& prize : prizes) {
        const GridCell& cell =
            find_cell(cells, prize.format, prize.cutoff, table[row].type, side);
        if (cell.result.degenerate()) {
          report(1, "figure-2 reproduction", false,
                 "degenerate cell " +
                     cell_label(prize.format, prize.cutoff, table[row].type, side));
          return;
        }
        const double estimate = *cell.result.incentive;
        const double rel_dev = std::abs(estimate - prize.reference) / prize.reference;
        const double tol =
            std::max(floor_tolerance, 3.0 * *cell.result.incentive_stderr / estimate);
        if (rel_dev <= tol) ++within;
        if (rel_dev - tol > worst_margin) {
          worst_margin = rel_dev - tol;
          worst_label = cell_label(prize.format, prize.cutoff, table[row].type, side);
          worst_dev = rel_dev;
          worst_tol = tol;
        }
      }
    }
  }
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "%d/96 cells within max(%.0f%%, 3*se); worst %s: dev %.2f%% vs tol %.2f%%",
                within, floor_tolerance * 100, worst_label.c_str(), worst_dev * 100,
                worst_tol * 100);
  report(1, "figure-2 reproduction", within == 96, detail);
}

void criterion_uplift(const std::vector<GridCell>& cells, const Options& options) {
  const double mean_tolerance_pp = options.smoke ? 8.0 : 5.0;
  const double range_floor = options.smoke ? 0.10 : 0.03;
  UpliftSummary summary;
  try {
    summary = aggregate_uplift(cells);
  } catch (const std::exception& e) {
    report(2, "aggregate uplift", false, e.what());
    return;
  }
  const bool first_ok = std::abs(summary.first_prize_mean_pct - 119.0) <= mean_tolerance_pp;
  const bool second_ok = std::abs(summary.second_prize_mean_pct - 58.0) <= mean_tolerance_pp;

  // Published per-side uplift ranges: home 57-153% / 13-106%,
  // away 70-200% / 14-157%.
  int in_range = 0;
  int range_total = 0;
  for (const UpliftCell& cell : summary.cells) {
    const bool is_home = cell.perspective == Side::home;
    const double first_lo = is_home ? 0.57 : 0.70;
    const double first_hi = is_home ? 1.53 : 2.00;
    const double second_lo = is_home ? 0.13 : 0.14;
    const double second_hi = is_home ? 1.06 : 1.57;
    const double first_tol = std::max(range_floor, 3.0 * cell.first_prize_stderr);
    const double second_tol = std::max(range_floor, 3.0 * cell.second_prize_stderr);
    ++range_total;
    if (cell.first_prize_uplift >= first_lo - first_tol &&
        cell.first_prize_uplift <= first_hi + first_tol)
      ++in_range;
    ++range_total;
    if (cell.second_prize_uplift >= second_lo - second_tol &&
        cell.second_prize_uplift <= second_hi + second_tol)
      ++in_range;
  }
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "first %.1f%% (target 119+-%.0f), second %.1f%% (target 58+-%.0f); "
                "%d/%d per-type uplifts inside the published ranges",
                summary.first_prize_mean_pct, mean_tolerance_pp,
                summary.second_prize_mean_pct, mean_tolerance_pp, in_range, range_total);
  report(2, "aggregate uplift", first_ok && second_ok && in_range == range_total, detail);
}

void criterion_oracle(const Options& options) {
  const std::uint64_t n = options.smoke ? 100'000 : 1'000'000;
  double worst_z = 0;
  std::string worst_label;
  bool all_ok = true;
  int comparisons = 0;
  for (const MiniCheck& check : standard_mini_checks()) {
    for (Side side : {Side::home, Side::away}) {
      const ProbTriple exact =
          exact_prob_triple(check.mini, check.focal, check.rank_cutoff, side);
      const IncentiveResult estimate =
          run_setup(to_setup(check.mini, check.focal), check.rank_cutoff, side, n,
                    options.seed + 101, true, std::max(options.threads, 1));
      const double est[3] = {estimate.probs.p_win, estimate.probs.p_draw,
                             estimate.probs.p_loss};
      const double ref[3] = {exact.p_win, exact.p_draw, exact.p_loss};
      const double se[3] = {estimate.probs.stderr_win, estimate.probs.stderr_draw,
                            estimate.probs.stderr_loss};
      for (int i = 0; i < 3; ++i) {
        ++comparisons;
        if (se[i] == 0.0) {
          if (est[i] != ref[i]) {
            all_ok = false;
            worst_label = check.name + std::string(" ") + side_name(side);
            worst_z = 1e9;
          }
          continue;
        }
        const double z = std::abs(est[i] - ref[i]) / se[i];
        if (z > worst_z) {
          worst_z = z;
          worst_label = check.name + std::string(" ") + side_name(side);
        }
        all_ok = all_ok && z <= 4.0;
      }
    }
  }
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "%d probabilities over %zu formats x 2 sides at n=%llu; max |z| %.2f (%s)",
                comparisons, standard_mini_checks().size(),
                static_cast<unsigned long long>(n), worst_z, worst_label.c_str());
  report(3, "oracle equivalence", all_ok, detail);
}

void criterion_monotonicity(const std::vector<GridCell>& cells) {
  double min_z_win_draw = 1e300;
  double min_z_draw_loss = 1e300;
  bool all_positive = true;
  for (const GridCell& cell : cells) {
    min_z_win_draw =
        std::min(min_z_win_draw, cell.result.diff_win_draw / cell.result.stderr_diff_win_draw);
    min_z_draw_loss = std::min(min_z_draw_loss,
                               cell.result.diff_draw_loss / cell.result.stderr_diff_draw_loss);
    all_positive =
        all_positive && cell.result.incentive.has_value() && *cell.result.incentive > 0;
  }
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "96 cells: min z(p_win-p_draw) %.1f, min z(p_draw-p_loss) %.1f, "
                "incentives all positive: %s",
                min_z_win_draw, min_z_draw_loss, all_positive ? "yes" : "no");
  report(4, "monotonicity", min_z_win_draw > 4.0 && min_z_draw_loss > 4.0 && all_positive,
         detail);
}

void criterion_determinism(const Options& options) {
  GridOptions grid;
  grid.replications = 20'000;
  grid.master_seed = options.seed + 123;
  std::string csv[3];
  const int thread_counts[3] = {1, 2, 8};
  for (int i = 0; i < 3; ++i) {
    grid.threads = thread_counts[i];
    csv[static_cast<std::size_t>(i)] = to_csv(run_incentive_grid(grid));
  }
  const bool bytes_equal = csv[0] == csv[1] && csv[0] == csv[2];

  Scenario scenario;
  scenario.match_type = MatchType{PotRating(2), PotRating(4)};
  scenario.perspective = Side::away;
  scenario.threshold = ThresholdSpec{Format::league, 8};
  scenario.replications = 100'000;
  scenario.threads = std::max(options.threads, 1);
  scenario.master_seed = options.seed + 201;
  const IncentiveResult seed_a = run_scenario(scenario);
  scenario.master_seed = options.seed + 202;
  const IncentiveResult seed_b = run_scenario(scenario);
  const double combined = std::sqrt(*seed_a.incentive_stderr * *seed_a.incentive_stderr +
                                    *seed_b.incentive_stderr * *seed_b.incentive_stderr);
  const double seed_gap = std::abs(*seed_a.incentive - *seed_b.incentive);
  const bool seeds_ok = seed_gap < 5.0 * combined;
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "CSV bytes across threads 1/2/8: %s; seed shift %.4f vs 5*se %.4f",
                bytes_equal ? "identical" : "DIFFER", seed_gap, 5.0 * combined);
  report(5, "determinism", bytes_equal && seeds_ok, detail);
}

void criterion_model_sanity(const Options& options) {
  const auto params = GoalModelParams::fitted();
  constexpr std::uint64_t n = 1'000'000;
  double worst_z = 0;
  std::string worst_label;
  for (int home = 1; home <= 4; ++home)
    for (int away = 1; away <= 4; ++away) {
      Xoshiro256pp rng = Xoshiro256pp::replication_stream(
          options.seed + 301, static_cast<std::uint64_t>(home * 10 + away), 0);
      std::uint64_t home_sum = 0;
      std::uint64_t home_sq = 0;
      std::uint64_t away_sum = 0;
      std::uint64_t away_sq = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        const Scoreline score =
            sample_scoreline(params, PotRating(home), PotRating(away), rng);
        home_sum += static_cast<std::uint64_t>(score.home_goals);
        home_sq += static_cast<std::uint64_t>(score.home_goals) *
                   static_cast<std::uint64_t>(score.home_goals);
        away_sum += static_cast<std::uint64_t>(score.away_goals);
        away_sq += static_cast<std::uint64_t>(score.away_goals) *
                   static_cast<std::uint64_t>(score.away_goals);
      }
      const double lambdas[2] = {lambda_home(params, PotRating(home), PotRating(away)),
                                 lambda_away(params, PotRating(home), PotRating(away))};
      const double means[2] = {static_cast<double>(home_sum) / n,
                               static_cast<double>(away_sum) / n};
      const double sq[2] = {static_cast<double>(home_sq) / n,
                            static_cast<double>(away_sq) / n};
      for (int side = 0; side < 2; ++side) {
        const double variance = sq[side] - means[side] * means[side];
        const double se = std::sqrt(variance / static_cast<double>(n));
        const double z = std::abs(means[side] - lambdas[side]) / se;
        if (z > worst_z) {
          worst_z = z;
          char label[32];
          std::snprintf(label, sizeof label, "%d-%d %s", home, away,
                        side == 0 ? "home" : "away");
          worst_label = label;
        }
      }
    }
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "32 sampled goal means vs closed-form intensities at n=%llu; max |z| %.2f (%s)",
                static_cast<unsigned long long>(n), worst_z, worst_label.c_str());
  report(6, "goal-model sanity", worst_z < 4.0, detail);
}

}  // namespace

int main(int argc, char** argv) {
  Options options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next_u64 = [&](const char* what) {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "%s needs a value\n", what);
        std::exit(64);
      }
      return std::strtoull(argv[++i], nullptr, 10);
    };
    if (arg == "--smoke") {
      options.smoke = true;
    } else if (arg == "--replications" || arg == "-n") {
      options.replications = next_u64("--replications");
    } else if (arg == "--seed") {
      options.seed = next_u64("--seed");
    } else if (arg == "--threads") {
      options.threads = static_cast<int>(next_u64("--threads"));
    } else {
      std::fprintf(stderr, "unknown option %s\n", arg.c_str());
      return 64;
    }
  }
  if (options.smoke && options.replications == 1'000'000) options.replications = 100'000;
  if (options.threads == 0) {
    const unsigned hardware = std::thread::hardware_concurrency();
    options.threads = hardware == 0 ? 1 : static_cast<int>(hardware);
  }

  std::printf("acceptance: profile=%s replications=%llu seed=%llu threads=%d\n",
              options.smoke ? "smoke" : "full",
              static_cast<unsigned long long>(options.replications),
              static_cast<unsigned long long>(options.seed), options.threads);
  std::fflush(stdout);

  GridOptions grid;
  grid.replications = options.replications;
  grid.master_seed = options.seed;
  grid.threads = options.threads;
  grid.common_random_numbers = true;
  grid.progress = [](int done, int total) {
    std::fprintf(stderr, "\rgrid batch %d/%d", done, total);
    if (done == total) std::fprintf(stderr, "\n");
  };
  const auto cells = run_incentive_grid(grid);

  criterion_figure2(cells, options);
  criterion_uplift(cells, options);
  criterion_oracle(options);
  criterion_monotonicity(cells);
  criterion_determinism(options);
  criterion_model_sanity(options);

  std::printf("acceptance: %d/6 criteria passed\n", 6 - g_failures);
  return g_failures;
}
