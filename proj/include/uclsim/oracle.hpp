#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uclsim/engine.hpp"
#include "uclsim/types.hpp"

namespace uclsim {

struct EnumerationBoundError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Miniature tournament with truncated goal support, small enough to exhaust.
struct MiniFormat {
  std::vector<PotRating> teams;              // up to 4
  std::vector<std::pair<int, int>> fixtures;  // non-focal, up to 5
  int goal_cap;                               // up to 4
  TieRule tie_rule;
  GoalModelParams params = GoalModelParams::fitted();
  PointsRule points{};
};

// Exact conditional prize probabilities: every truncated scoreline
// combination of the non-focal fixtures is enumerated and weighted by its
// renormalised truncated-Poisson probability; residual random tie-breaks
// enter as exact expectations (averages over the tied set's permutations).
// stderr fields are zero. Enumeration size (cap+1)^(2*fixtures) must stay
// within 10^7. The ranking chain here is written independently of the
// standings module so the two paths check each other.
ProbTriple exact_prob_triple(const MiniFormat& mini, std::pair<int, int> focal,
                             int rank_cutoff, Side perspective = Side::home);

// The same miniature tournament as a Monte Carlo setup (truncated sampling
// switched on), for engine-vs-enumeration comparisons.
TournamentSetup to_setup(const MiniFormat& mini, std::pair<int, int> focal);

struct MiniCheck {
  std::string name;
  MiniFormat mini;
  std::pair<int, int> focal;
  int rank_cutoff;
};

// Built-in cross-check formats: both tie-rule chains, one instance that can
// only be ranked through recursive head-to-head, and one where every
// non-focal match is forced to 0-0 so the table is decided purely by the
// random draw.
std::vector<MiniCheck> standard_mini_checks();

}  // namespace uclsim
