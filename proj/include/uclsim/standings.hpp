#pragma once

#include <span>
#include <vector>

#include "uclsim/rng.hpp"
#include "uclsim/types.hpp"

namespace uclsim {

struct TableRow {
  TeamId team;
  int points = 0;
  int goals_for = 0;
  int goals_against = 0;
  int away_goals_for = 0;
  int wins = 0;
  int away_wins = 0;
};

// Fold one completed match into the two affected rows.
void apply_match(TableRow& home_row, TableRow& away_row, const Scoreline& score,
                 const PointsRule& points = {});

// One row per team, in the given team order. Throws on duplicate teams or on
// a match referencing a team outside the list.
std::vector<TableRow> accumulate(std::span<const TeamId> teams,
                                 std::span<const ScoredMatch> matches,
                                 const PointsRule& points = {});

// Hot-path variant: match endpoints are positions into the row span.
struct MatchRef {
  int home_pos;
  int away_pos;
  Scoreline score;
};

// Write row positions in final-table order (rank 1 first). Ties that survive
// the full criteria chain are shuffled uniformly from the stream. The group
// chain supports up to 8 rows, the league chain up to 64.
void rank_group_positions(std::span<const TableRow> rows, std::span<const MatchRef> matches,
                          Xoshiro256pp& rng, std::span<int> order,
                          const PointsRule& points = {});
void rank_league_positions(std::span<const TableRow> rows, Xoshiro256pp& rng,
                           std::span<int> order);

// Official 4-team chain: points; head-to-head points, goal difference and
// goals scored among the tied teams, reapplied recursively to any strict
// subset that stays tied; overall goal difference; overall goals scored;
// unbiased random draw. Requires exactly 4 rows and the 12 matches among
// them.
std::vector<TeamId> rank_group(std::span<const TableRow> rows,
                               std::span<const ScoredMatch> matches, Xoshiro256pp& rng,
                               const PointsRule& points = {});

// 36-team chain: points, goal difference, goals scored, away goals scored,
// wins, away wins, then unbiased random draw.
std::vector<TeamId> rank_league(std::span<const TableRow> rows, Xoshiro256pp& rng);

}  // namespace uclsim
