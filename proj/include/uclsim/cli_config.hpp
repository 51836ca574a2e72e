#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uclsim/engine.hpp"
#include "uclsim/types.hpp"

namespace uclsim {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when --help is requested; carries the text to print.
struct HelpRequested {
  std::string text;
};

// Fully resolved command-line configuration. Precedence: command-line flags,
// then the optional key=value config file, then the UCLSIM_THREADS
// environment variable (thread count only), then built-in defaults.
struct RunConfig {
  enum class Command { simulate, figure2, uplift, oracle_check };

  Command command = Command::simulate;

  // simulate only
  Format format = Format::league;
  MatchType match_type{PotRating(1), PotRating(2)};
  Side side = Side::home;
  int cutoff = 0;  // 0 = format's first prize (top 2 group, top 8 league)

  std::uint64_t replications = 1'000'000;
  std::uint64_t master_seed = 0;
  int threads = 1;
  bool crn = true;
  std::string output_path;  // empty: stdout
  std::string input_path;   // uplift: aggregate an existing CSV instead of simulating

  GoalModelParams params = GoalModelParams::fitted();
  PointsRule points{};

  Scenario to_scenario() const;
};

// Parses the argument vector (program name excluded). Throws UsageError with
// a message on invalid pots, cutoffs or command combinations.
RunConfig parse_args(const std::vector<std::string>& args);

MatchType parse_match_type(const std::string& text);

}  // namespace uclsim
