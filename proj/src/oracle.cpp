#include "uclsim/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "uclsim/goal_model.hpp"

namespace uclsim {
namespace {

constexpr int kMaxTeams = 4;
constexpr double kEnumerationBound = 1e7;

constexpr Scoreline kFocalResults[3] = {{1, 0}, {0, 0}, {0, 1}};

struct TeamTotals {
  int points = 0;
  int gf = 0;
  int ga = 0;
  int away_gf = 0;
  int wins = 0;
  int away_wins = 0;
};

struct Match {
  int home;
  int away;
  int home_goals;
  int away_goals;
};

void tally(const Match& match, std::array<TeamTotals, kMaxTeams>& totals,
           const PointsRule& points) {
  TeamTotals& home = totals[static_cast<std::size_t>(match.home)];
  TeamTotals& away = totals[static_cast<std::size_t>(match.away)];
  home.gf += match.home_goals;
  home.ga += match.away_goals;
  away.gf += match.away_goals;
  away.ga += match.home_goals;
  away.away_gf += match.away_goals;
  if (match.home_goals > match.away_goals) {
    home.points += points.win;
    home.wins += 1;
  } else if (match.home_goals < match.away_goals) {
    away.points += points.win;
    away.wins += 1;
    away.away_wins += 1;
  } else {
    home.points += points.draw;
    away.points += points.draw;
  }
}

// -1 / 0 / +1 comparison of a against b under the flat league criteria.
int league_compare(const TeamTotals& a, const TeamTotals& b) {
  auto cmp = [](int x, int y) { return x < y ? -1 : (x > y ? 1 : 0); };
  if (int c = cmp(a.points, b.points)) return c;
  if (int c = cmp(a.gf - a.ga, b.gf - b.ga)) return c;
  if (int c = cmp(a.gf, b.gf)) return c;
  if (int c = cmp(a.away_gf, b.away_gf)) return c;
  if (int c = cmp(a.wins, b.wins)) return c;
  return cmp(a.away_wins, b.away_wins);
}

struct Standing {
  int teams_ahead;  // strictly better than the focal team
  int band_size;    // focal team's residual all-tied band, focal included
};

Standing league_standing(const std::array<TeamTotals, kMaxTeams>& totals, int n_teams,
                         int focal_team) {
  Standing standing{0, 1};
  const TeamTotals& focal = totals[static_cast<std::size_t>(focal_team)];
  for (int team = 0; team < n_teams; ++team) {
    if (team == focal_team) continue;
    const int c = league_compare(totals[static_cast<std::size_t>(team)], focal);
    if (c > 0)
      ++standing.teams_ahead;
    else if (c == 0)
      ++standing.band_size;
  }
  return standing;
}

// Focal-centric walk of the group chain: at every stage only the focal
// team's tied set matters, so the chain is followed by repeatedly narrowing
// that set instead of producing a full table.
struct GroupChainWalker {
  const std::vector<Match>& matches;
  const PointsRule& points;
  const std::array<TeamTotals, kMaxTeams>& totals;

  Standing standing(int n_teams, int focal_team) const {
    int ahead = 0;
    std::array<int, kMaxTeams> level{};
    int level_size = 0;
    const int focal_points = totals[static_cast<std::size_t>(focal_team)].points;
    for (int team = 0; team < n_teams; ++team) {
      const int team_points = totals[static_cast<std::size_t>(team)].points;
      if (team_points > focal_points)
        ++ahead;
      else if (team_points == focal_points)
        level[static_cast<std::size_t>(level_size++)] = team;
    }
    if (level_size == 1) return Standing{ahead, 1};
    return head_to_head(level, level_size, focal_team, ahead);
  }

  Standing head_to_head(std::array<int, kMaxTeams> set, int set_size, int focal_team,
                        int ahead) const {
    std::array<int, kMaxTeams> mini_points{};
    std::array<int, kMaxTeams> mini_gd{};
    std::array<int, kMaxTeams> mini_gf{};
    auto slot_of = [&set, set_size](int team) {
      for (int i = 0; i < set_size; ++i)
        if (set[static_cast<std::size_t>(i)] == team) return i;
      return -1;
    };
    for (const Match& match : matches) {
      const int hs = slot_of(match.home);
      const int as = slot_of(match.away);
      if (hs < 0 || as < 0) continue;
      const auto h = static_cast<std::size_t>(hs);
      const auto a = static_cast<std::size_t>(as);
      mini_gd[h] += match.home_goals - match.away_goals;
      mini_gd[a] += match.away_goals - match.home_goals;
      mini_gf[h] += match.home_goals;
      mini_gf[a] += match.away_goals;
      if (match.home_goals > match.away_goals)
        mini_points[h] += points.win;
      else if (match.home_goals < match.away_goals)
        mini_points[a] += points.win;
      else {
        mini_points[h] += points.draw;
        mini_points[a] += points.draw;
      }
    }
    auto mini_compare = [&](int slot_a, int slot_b) {
      const auto a = static_cast<std::size_t>(slot_a);
      const auto b = static_cast<std::size_t>(slot_b);
      if (mini_points[a] != mini_points[b]) return mini_points[a] < mini_points[b] ? -1 : 1;
      if (mini_gd[a] != mini_gd[b]) return mini_gd[a] < mini_gd[b] ? -1 : 1;
      if (mini_gf[a] != mini_gf[b]) return mini_gf[a] < mini_gf[b] ? -1 : 1;
      return 0;
    };
    const int focal_slot = slot_of(focal_team);
    std::array<int, kMaxTeams> still_tied{};
    int tied_size = 0;
    int gained = 0;
    for (int slot = 0; slot < set_size; ++slot) {
      const int c = mini_compare(slot, focal_slot);
      if (c > 0)
        ++gained;
      else if (c == 0)
        still_tied[static_cast<std::size_t>(tied_size++)] = set[static_cast<std::size_t>(slot)];
    }
    if (tied_size == set_size) {
      // Head-to-head separated no one; overall goal difference, then goals.
      return overall(set, set_size, focal_team, ahead);
    }
    if (tied_size == 1) return Standing{ahead + gained, 1};
    return head_to_head(still_tied, tied_size, focal_team, ahead + gained);
  }

  Standing overall(const std::array<int, kMaxTeams>& set, int set_size, int focal_team,
                   int ahead) const {
    const TeamTotals& focal = totals[static_cast<std::size_t>(focal_team)];
    const int focal_gd = focal.gf - focal.ga;
    int band = 0;
    int gained = 0;
    for (int i = 0; i < set_size; ++i) {
      const TeamTotals& other = totals[static_cast<std::size_t>(set[static_cast<std::size_t>(i)])];
      const int gd = other.gf - other.ga;
      if (gd != focal_gd) {
        if (gd > focal_gd) ++gained;
        continue;
      }
      if (other.gf != focal.gf) {
        if (other.gf > focal.gf) ++gained;
        continue;
      }
      ++band;  // focal itself lands here too
    }
    return Standing{ahead + gained, band};
  }
};

// Exact expectation of reaching the cutoff over uniform orderings of the
// focal team's residual band, by literal enumeration of the permutations.
double band_probability(const Standing& standing, int cutoff) {
  const int slots = cutoff - standing.teams_ahead;
  if (slots <= 0) return 0.0;
  if (slots >= standing.band_size) return 1.0;
  std::array<int, kMaxTeams> members{};
  std::iota(members.begin(), members.begin() + standing.band_size, 0);
  long hits = 0;
  long perms = 0;
  do {
    ++perms;
    for (int position = 0; position < slots; ++position)
      if (members[static_cast<std::size_t>(position)] == 0) {
        ++hits;
        break;
      }
  } while (std::next_permutation(members.begin(), members.begin() + standing.band_size));
  return static_cast<double>(hits) / static_cast<double>(perms);
}

}  // namespace

ProbTriple exact_prob_triple(const MiniFormat& mini, std::pair<int, int> focal,
                             int rank_cutoff, Side perspective) {
  const int n_teams = static_cast<int>(mini.teams.size());
  const int n_fixtures = static_cast<int>(mini.fixtures.size());
  if (n_teams < 2 || n_teams > kMaxTeams)
    throw std::invalid_argument("exact_prob_triple: between 2 and 4 teams");
  if (mini.goal_cap < 0 || mini.goal_cap > 4)
    throw std::invalid_argument("exact_prob_triple: goal cap must be in 0..4");
  if (rank_cutoff < 1 || rank_cutoff > n_teams)
    throw std::invalid_argument("exact_prob_triple: cutoff out of range");
  auto check_team = [n_teams](int team) {
    if (team < 0 || team >= n_teams)
      throw std::invalid_argument("exact_prob_triple: fixture team out of range");
  };
  check_team(focal.first);
  check_team(focal.second);
  if (focal.first == focal.second)
    throw std::invalid_argument("exact_prob_triple: focal teams must differ");

  const int levels = mini.goal_cap + 1;
  const double combos = std::pow(static_cast<double>(levels), 2.0 * n_fixtures);
  if (combos > kEnumerationBound)
    throw EnumerationBoundError("exact_prob_triple: enumeration bound exceeded");

  // Renormalised truncated Poisson masses, one row per sampled goal count.
  std::vector<std::array<double, 5>> mass(static_cast<std::size_t>(2 * n_fixtures));
  for (int f = 0; f < n_fixtures; ++f) {
    const auto [home, away] = mini.fixtures[static_cast<std::size_t>(f)];
    check_team(home);
    check_team(away);
    const PotRating home_pot = mini.teams[static_cast<std::size_t>(home)];
    const PotRating away_pot = mini.teams[static_cast<std::size_t>(away)];
    const double lambdas[2] = {lambda_home(mini.params, home_pot, away_pot),
                               lambda_away(mini.params, home_pot, away_pot)};
    for (int side = 0; side < 2; ++side) {
      auto& row = mass[static_cast<std::size_t>(2 * f + side)];
      double term = std::exp(-lambdas[side]);
      double total = 0;
      for (int m = 0; m < levels; ++m) {
        if (m > 0) term *= lambdas[side] / m;
        row[static_cast<std::size_t>(m)] = term;
        total += term;
      }
      for (int m = 0; m < levels; ++m) row[static_cast<std::size_t>(m)] /= total;
    }
  }

  const int focal_team = perspective == Side::home ? focal.first : focal.second;
  std::vector<Match> matches(static_cast<std::size_t>(n_fixtures) + 1);
  for (int f = 0; f < n_fixtures; ++f)
    matches[static_cast<std::size_t>(f)] =
        Match{mini.fixtures[static_cast<std::size_t>(f)].first,
              mini.fixtures[static_cast<std::size_t>(f)].second, 0, 0};
  matches.back() = Match{focal.first, focal.second, 0, 0};

  std::vector<int> goals(static_cast<std::size_t>(2 * n_fixtures), 0);
  double conditional[3] = {0, 0, 0};
  double total_weight = 0;
  for (;;) {
    double weight = 1;
    for (std::size_t slot = 0; slot < goals.size(); ++slot)
      weight *= mass[slot][static_cast<std::size_t>(goals[slot])];
    total_weight += weight;
    for (int f = 0; f < n_fixtures; ++f) {
      matches[static_cast<std::size_t>(f)].home_goals = goals[static_cast<std::size_t>(2 * f)];
      matches[static_cast<std::size_t>(f)].away_goals =
          goals[static_cast<std::size_t>(2 * f + 1)];
    }
    for (int c = 0; c < 3; ++c) {
      matches.back().home_goals = kFocalResults[c].home_goals;
      matches.back().away_goals = kFocalResults[c].away_goals;
      std::array<TeamTotals, kMaxTeams> totals{};
      for (const Match& match : matches) tally(match, totals, mini.points);
      const Standing standing =
          mini.tie_rule == TieRule::league_chain
              ? league_standing(totals, n_teams, focal_team)
              : GroupChainWalker{matches, mini.points, totals}.standing(n_teams, focal_team);
      conditional[c] += weight * band_probability(standing, rank_cutoff);
    }
    // Odometer over the truncated supports.
    std::size_t slot = 0;
    while (slot < goals.size() && ++goals[slot] == levels) goals[slot++] = 0;
    if (slot == goals.size()) break;
  }
  // The weights sum to one up to float rounding; divide it out so that
  // structurally certain events come back as exactly one.
  for (double& value : conditional) value /= total_weight;

  ProbTriple triple;
  if (perspective == Side::home) {
    triple.p_win = conditional[0];
    triple.p_draw = conditional[1];
    triple.p_loss = conditional[2];
  } else {
    triple.p_win = conditional[2];
    triple.p_draw = conditional[1];
    triple.p_loss = conditional[0];
  }
  return triple;
}

TournamentSetup to_setup(const MiniFormat& mini, std::pair<int, int> focal) {
  TournamentSetup setup;
  setup.team_pots = mini.teams;
  setup.fixtures = mini.fixtures;
  setup.focal = focal;
  setup.tie_rule = mini.tie_rule;
  setup.goal_cap = mini.goal_cap;
  setup.stream_salt = 0x6d696e69;  // distinct stream family for the minis
  setup.params = mini.params;
  setup.points = mini.points;
  return setup;
}

std::vector<MiniCheck> standard_mini_checks() {
  std::vector<MiniCheck> checks;

  MiniFormat three_team;
  three_team.teams = {PotRating(1), PotRating(2), PotRating(3)};
  three_team.fixtures = {{1, 2}, {2, 0}};
  three_team.goal_cap = 3;
  three_team.tie_rule = TieRule::league_chain;
  checks.push_back(MiniCheck{"three-team-league", three_team, {0, 1}, 1});

  // Single round-robin of four equal teams; point ties that the head-to-head
  // block only partially separates occur with sizeable probability, which
  // drives the recursive branch.
  MiniFormat recursive;
  recursive.teams = {PotRating(2), PotRating(2), PotRating(2), PotRating(2)};
  recursive.fixtures = {{1, 2}, {2, 3}, {3, 0}, {1, 3}, {2, 0}};
  recursive.goal_cap = 2;
  recursive.tie_rule = TieRule::group_chain;
  checks.push_back(MiniCheck{"recursive-head-to-head", recursive, {0, 1}, 2});

  // Every non-focal match is forced to 0-0, so under the 0-0 conditioning
  // the whole table is one random band: p_draw is exactly cutoff/teams.
  MiniFormat all_tied;
  all_tied.teams = {PotRating(1), PotRating(2), PotRating(3), PotRating(4)};
  all_tied.fixtures = {{2, 3}, {3, 2}, {1, 0}};
  all_tied.goal_cap = 0;
  all_tied.tie_rule = TieRule::league_chain;
  checks.push_back(MiniCheck{"all-tied", all_tied, {0, 1}, 2});

  MiniFormat focal_only;
  focal_only.teams = {PotRating(1), PotRating(4)};
  focal_only.fixtures = {};
  focal_only.goal_cap = 2;
  focal_only.tie_rule = TieRule::league_chain;
  checks.push_back(MiniCheck{"two-team-focal-only", focal_only, {0, 1}, 1});

  return checks;
}

}  // namespace uclsim
