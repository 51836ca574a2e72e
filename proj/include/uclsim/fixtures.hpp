#pragma once

#include <stdexcept>
#include <vector>

#include "uclsim/types.hpp"

namespace uclsim {

struct NoSuchMatchTypeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// 1 team per pot in a group, 9 in the league.
int pot_size(Format format) noexcept;
// 4 or 36.
int team_count(Format format) noexcept;

int flat_index(Format format, const TeamId& team);
TeamId team_at(Format format, int flat);

// The 12 ordered pairs of the 4-team double round-robin.
std::vector<Fixture> group_fixtures();

// The 144 matches of the 36-team incomplete round-robin, one canonical
// feasible design: within a pot, team i hosts team i+1 (mod 9); across pots
// P < Q, P_i hosts Q_i and Q_i hosts P_{i+1} (mod 9). Every team meets every
// pot (its own included) once at home and once away, against two distinct
// opponents, for 8 matches in total.
std::vector<Fixture> league_fixtures();

// The representative conditioned match for a pot pairing: the qualifying
// fixture smallest under (home pot, home index, away pot, away index).
// Throws NoSuchMatchTypeError for a same-pot pairing in the group format.
Fixture focal_fixture(Format format, MatchType type);

// The 12 cross-pot pairings, ordered by (home pot, away pot).
std::vector<MatchType> cross_pot_match_types();

}  // namespace uclsim
