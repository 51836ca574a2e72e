#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "uclsim/cli_config.hpp"
#include "uclsim/engine.hpp"
#include "uclsim/fixtures.hpp"
#include "uclsim/oracle.hpp"
#include "uclsim/report.hpp"

namespace {

using namespace uclsim;

int cmd_simulate(const RunConfig& config) {
  const Scenario scenario = config.to_scenario();
  const IncentiveResult result = run_scenario(scenario);
  const GridCell cell{config.format, config.cutoff,        config.match_type,
                      config.side,   result,               config.replications,
                      config.master_seed};
  std::printf("format: %s  type: %d-%d  side: %s  cutoff: %d\n", format_name(config.format),
              config.match_type.home_pot.value(), config.match_type.away_pot.value(),
              side_name(config.side), config.cutoff);
  std::printf("replications: %llu  seed: %llu  threads: %d  crn: %s\n",
              static_cast<unsigned long long>(config.replications),
              static_cast<unsigned long long>(config.master_seed), config.threads,
              config.crn ? "on" : "off");
  std::printf("p_win  = %.6f (se %.6f)\n", result.probs.p_win, result.probs.stderr_win);
  std::printf("p_draw = %.6f (se %.6f)\n", result.probs.p_draw, result.probs.stderr_draw);
  std::printf("p_loss = %.6f (se %.6f)\n", result.probs.p_loss, result.probs.stderr_loss);
  if (result.incentive) {
    std::printf("incentive = %.6f (se %.6f)\n", *result.incentive, *result.incentive_stderr);
  } else {
    std::printf("incentive = NA (denominator p_draw - p_loss = %.6f is degenerate)\n",
                result.diff_draw_loss);
  }
  if (!config.output_path.empty()) {
    write_csv(std::vector<GridCell>{cell}, config.output_path);
    std::fprintf(stderr, "wrote %s\n", config.output_path.c_str());
  }
  return result.degenerate() ? 2 : 0;
}

std::vector<GridCell> run_grid_with_progress(const RunConfig& config) {
  GridOptions options;
  options.replications = config.replications;
  options.master_seed = config.master_seed;
  options.common_random_numbers = config.crn;
  options.threads = config.threads;
  options.params = config.params;
  options.points = config.points;
  options.progress = [](int done, int total) {
    std::fprintf(stderr, "\rbatch %d/%d", done, total);
    if (done == total) std::fprintf(stderr, "\n");
  };
  return run_incentive_grid(options);
}

int cmd_figure2(const RunConfig& config) {
  const auto cells = run_grid_with_progress(config);
  if (config.output_path.empty())
    std::fputs(to_csv(cells).c_str(), stdout);
  else
    write_csv(cells, config.output_path);
  const bool any_degenerate = std::any_of(cells.begin(), cells.end(), [](const GridCell& c) {
    return c.result.degenerate();
  });
  if (any_degenerate) std::fprintf(stderr, "warning: degenerate cells in the grid\n");
  return any_degenerate ? 2 : 0;
}

int cmd_uplift(const RunConfig& config) {
  const auto cells = config.input_path.empty() ? run_grid_with_progress(config)
                                               : read_csv(config.input_path);
  UpliftSummary summary;
  try {
    summary = aggregate_uplift(cells);
  } catch (const DegenerateCellError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  auto side_range = [&summary](Side side, bool first_prize) {
    double lo = 1e300, hi = -1e300;
    for (const UpliftCell& cell : summary.cells) {
      if (cell.perspective != side) continue;
      const double value = first_prize ? cell.first_prize_uplift : cell.second_prize_uplift;
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    return std::pair{lo * 100, hi * 100};
  };
  const auto [h1_lo, h1_hi] = side_range(Side::home, true);
  const auto [a1_lo, a1_hi] = side_range(Side::away, true);
  const auto [h2_lo, h2_hi] = side_range(Side::home, false);
  const auto [a2_lo, a2_hi] = side_range(Side::away, false);
  std::printf("first prize  (league top-8 vs group top-2):  %+.1f%% on average  "
              "(home %+.1f%%..%+.1f%%, away %+.1f%%..%+.1f%%)\n",
              summary.first_prize_mean_pct, h1_lo, h1_hi, a1_lo, a1_hi);
  std::printf("second prize (league top-24 vs group top-3): %+.1f%% on average  "
              "(home %+.1f%%..%+.1f%%, away %+.1f%%..%+.1f%%)\n",
              summary.second_prize_mean_pct, h2_lo, h2_hi, a2_lo, a2_hi);
  if (!config.output_path.empty()) {
    std::string text = "prize,home_pot,away_pot,perspective,uplift_pct,stderr_pct\n";
    char buffer[160];
    for (const UpliftCell& cell : summary.cells) {
      std::snprintf(buffer, sizeof buffer, "first,%d,%d,%s,%.4f,%.4f\n",
                    cell.match_type.home_pot.value(), cell.match_type.away_pot.value(),
                    side_name(cell.perspective), cell.first_prize_uplift * 100,
                    cell.first_prize_stderr * 100);
      text += buffer;
    }
    for (const UpliftCell& cell : summary.cells) {
      std::snprintf(buffer, sizeof buffer, "second,%d,%d,%s,%.4f,%.4f\n",
                    cell.match_type.home_pot.value(), cell.match_type.away_pot.value(),
                    side_name(cell.perspective), cell.second_prize_uplift * 100,
                    cell.second_prize_stderr * 100);
      text += buffer;
    }
    std::FILE* out = std::fopen(config.output_path.c_str(), "wb");
    if (out == nullptr) {
      std::fprintf(stderr, "error: cannot open for writing: %s\n", config.output_path.c_str());
      return 1;
    }
    std::fputs(text.c_str(), out);
    std::fclose(out);
  }
  return 0;
}

int cmd_oracle_check(const RunConfig& config) {
  bool all_ok = true;
  for (const MiniCheck& check : standard_mini_checks()) {
    for (Side side : {Side::home, Side::away}) {
      const ProbTriple exact =
          exact_prob_triple(check.mini, check.focal, check.rank_cutoff, side);
      const IncentiveResult estimate =
          run_setup(to_setup(check.mini, check.focal), check.rank_cutoff, side,
                    config.replications, config.master_seed, config.crn, config.threads);
      double max_z = 0;
      const double est[3] = {estimate.probs.p_win, estimate.probs.p_draw,
                             estimate.probs.p_loss};
      const double ref[3] = {exact.p_win, exact.p_draw, exact.p_loss};
      const double se[3] = {estimate.probs.stderr_win, estimate.probs.stderr_draw,
                            estimate.probs.stderr_loss};
      bool ok = true;
      for (int i = 0; i < 3; ++i) {
        if (se[i] == 0) {
          ok = ok && est[i] == ref[i];
          continue;
        }
        max_z = std::max(max_z, std::abs(est[i] - ref[i]) / se[i]);
      }
      ok = ok && max_z <= 4.0;
      all_ok = all_ok && ok;
      std::printf("%-24s %-4s exact (%.6f %.6f %.6f)  estimate (%.6f %.6f %.6f)  "
                  "max|z| %.2f  %s\n",
                  check.name.c_str(), side_name(side), ref[0], ref[1], ref[2], est[0], est[1],
                  est[2], max_z, ok ? "ok" : "FAIL");
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunConfig config = parse_args(args);
    switch (config.command) {
      case RunConfig::Command::simulate:
        return cmd_simulate(config);
      case RunConfig::Command::figure2:
        return cmd_figure2(config);
      case RunConfig::Command::uplift:
        return cmd_uplift(config);
      case RunConfig::Command::oracle_check:
        return cmd_oracle_check(config);
    }
  } catch (const uclsim::HelpRequested& help) {
    std::fputs(help.text.c_str(), stdout);
    return 0;
  } catch (const uclsim::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
