#include "uclsim/standings.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace uclsim {

void apply_match(TableRow& home_row, TableRow& away_row, const Scoreline& score,
                 const PointsRule& points) {
  home_row.goals_for += score.home_goals;
  home_row.goals_against += score.away_goals;
  away_row.goals_for += score.away_goals;
  away_row.goals_against += score.home_goals;
  away_row.away_goals_for += score.away_goals;
  if (score.home_goals > score.away_goals) {
    home_row.points += points.win;
    home_row.wins += 1;
  } else if (score.home_goals < score.away_goals) {
    away_row.points += points.win;
    away_row.wins += 1;
    away_row.away_wins += 1;
  } else {
    home_row.points += points.draw;
    away_row.points += points.draw;
  }
}

std::vector<TableRow> accumulate(std::span<const TeamId> teams,
                                 std::span<const ScoredMatch> matches,
                                 const PointsRule& points) {
  std::vector<TableRow> rows;
  rows.reserve(teams.size());
  for (const TeamId& team : teams) {
    for (const TableRow& existing : rows)
      if (existing.team == team) throw std::invalid_argument("accumulate: duplicate team");
    rows.push_back(TableRow{team});
  }
  auto row_of = [&rows](const TeamId& team) -> TableRow& {
    for (TableRow& row : rows)
      if (row.team == team) return row;
    throw std::invalid_argument("accumulate: match references an unknown team");
  };
  for (const ScoredMatch& match : matches) {
    TableRow& home_row = row_of(match.fixture.home);
    TableRow& away_row = row_of(match.fixture.away);
    if (&home_row == &away_row)
      throw std::invalid_argument("accumulate: a team cannot play itself");
    apply_match(home_row, away_row, match.score, points);
  }
  return rows;
}

namespace {

constexpr int kMaxGroupRows = 8;
constexpr int kMaxLeagueRows = 64;

bool league_better(const TableRow& x, const TableRow& y) noexcept {
  if (x.points != y.points) return x.points > y.points;
  const int x_gd = x.goals_for - x.goals_against;
  const int y_gd = y.goals_for - y.goals_against;
  if (x_gd != y_gd) return x_gd > y_gd;
  if (x.goals_for != y.goals_for) return x.goals_for > y.goals_for;
  if (x.away_goals_for != y.away_goals_for) return x.away_goals_for > y.away_goals_for;
  if (x.wins != y.wins) return x.wins > y.wins;
  return x.away_wins > y.away_wins;
}

bool league_equal(const TableRow& x, const TableRow& y) noexcept {
  return x.points == y.points &&
         x.goals_for - x.goals_against == y.goals_for - y.goals_against &&
         x.goals_for == y.goals_for && x.away_goals_for == y.away_goals_for &&
         x.wins == y.wins && x.away_wins == y.away_wins;
}

void shuffle_span(std::span<int> order, int begin, int end, Xoshiro256pp& rng) {
  for (int i = end - begin - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(i + 1)));
    std::swap(order[static_cast<std::size_t>(begin + i)],
              order[static_cast<std::size_t>(begin + j)]);
  }
}

struct MiniStats {
  int points = 0;
  int gd = 0;
  int gf = 0;
};

// Resolves one set of teams tied on points through the official chain and
// collects the final all-tied bands, in rank order, into `order`/`bands`.
struct GroupChainResolver {
  std::span<const TableRow> rows;
  std::span<const MatchRef> matches;
  const PointsRule& points;

  std::array<int, kMaxGroupRows> order{};
  int order_size = 0;
  std::array<std::pair<int, int>, kMaxGroupRows> bands{};  // (start, length)
  int band_count = 0;

  void emit_band(const int* members, int count) {
    bands[static_cast<std::size_t>(band_count++)] = {order_size, count};
    for (int i = 0; i < count; ++i) order[static_cast<std::size_t>(order_size++)] = members[i];
  }

  // Overall goal difference, then overall goals scored; whatever still ties
  // is one random band.
  void resolve_by_overall(std::array<int, kMaxGroupRows>& members, int count) {
    auto better = [this](int a, int b) {
      const TableRow& x = rows[static_cast<std::size_t>(a)];
      const TableRow& y = rows[static_cast<std::size_t>(b)];
      const int x_gd = x.goals_for - x.goals_against;
      const int y_gd = y.goals_for - y.goals_against;
      if (x_gd != y_gd) return x_gd > y_gd;
      return x.goals_for > y.goals_for;
    };
    std::sort(members.begin(), members.begin() + count, [&](int a, int b) {
      if (better(a, b)) return true;
      if (better(b, a)) return false;
      return a < b;
    });
    int i = 0;
    while (i < count) {
      int j = i + 1;
      while (j < count && !better(members[static_cast<std::size_t>(i)],
                                  members[static_cast<std::size_t>(j)]) &&
             !better(members[static_cast<std::size_t>(j)], members[static_cast<std::size_t>(i)]))
        ++j;
      emit_band(members.data() + i, j - i);
      i = j;
    }
  }

  // Head-to-head points / goal difference / goals scored over the matches
  // among `members`, applied as a block; reapplied recursively to any strict
  // subset that stays tied; falls through to the overall criteria when the
  // block separates no one.
  void resolve_head_to_head(std::array<int, kMaxGroupRows> members, int count) {
    std::array<MiniStats, kMaxGroupRows> mini{};
    std::uint32_t member_mask = 0;
    for (int i = 0; i < count; ++i) member_mask |= 1u << members[static_cast<std::size_t>(i)];
    for (const MatchRef& match : matches) {
      if (!(member_mask >> match.home_pos & 1u) || !(member_mask >> match.away_pos & 1u))
        continue;
      MiniStats& home = mini[static_cast<std::size_t>(match.home_pos)];
      MiniStats& away = mini[static_cast<std::size_t>(match.away_pos)];
      const int scored = match.score.home_goals - match.score.away_goals;
      home.gd += scored;
      away.gd -= scored;
      home.gf += match.score.home_goals;
      away.gf += match.score.away_goals;
      if (scored > 0) {
        home.points += points.win;
      } else if (scored < 0) {
        away.points += points.win;
      } else {
        home.points += points.draw;
        away.points += points.draw;
      }
    }
    auto better = [&mini](int a, int b) {
      const MiniStats& x = mini[static_cast<std::size_t>(a)];
      const MiniStats& y = mini[static_cast<std::size_t>(b)];
      if (x.points != y.points) return x.points > y.points;
      if (x.gd != y.gd) return x.gd > y.gd;
      return x.gf > y.gf;
    };
    auto equal = [&better](int a, int b) { return !better(a, b) && !better(b, a); };
    std::sort(members.begin(), members.begin() + count, [&](int a, int b) {
      if (better(a, b)) return true;
      if (better(b, a)) return false;
      return a < b;
    });
    const bool separated = !equal(members[0], members[static_cast<std::size_t>(count - 1)]);
    if (!separated) {
      resolve_by_overall(members, count);
      return;
    }
    int i = 0;
    while (i < count) {
      int j = i + 1;
      while (j < count &&
             equal(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]))
        ++j;
      if (j - i == 1) {
        emit_band(members.data() + i, 1);
      } else {
        std::array<int, kMaxGroupRows> subset{};
        std::copy(members.begin() + i, members.begin() + j, subset.begin());
        resolve_head_to_head(subset, j - i);
      }
      i = j;
    }
  }
};

}  // namespace

void rank_group_positions(std::span<const TableRow> rows, std::span<const MatchRef> matches,
                          Xoshiro256pp& rng, std::span<int> order, const PointsRule& points) {
  const int n = static_cast<int>(rows.size());
  if (n > kMaxGroupRows) throw std::invalid_argument("rank_group_positions: too many rows");
  if (order.size() != rows.size())
    throw std::invalid_argument("rank_group_positions: order size mismatch");

  std::array<int, kMaxGroupRows> by_points{};
  std::iota(by_points.begin(), by_points.begin() + n, 0);
  std::sort(by_points.begin(), by_points.begin() + n, [&rows](int a, int b) {
    const int pa = rows[static_cast<std::size_t>(a)].points;
    const int pb = rows[static_cast<std::size_t>(b)].points;
    if (pa != pb) return pa > pb;
    return a < b;
  });

  GroupChainResolver resolver{rows, matches, points};
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && rows[static_cast<std::size_t>(by_points[static_cast<std::size_t>(j)])].points ==
                        rows[static_cast<std::size_t>(by_points[static_cast<std::size_t>(i)])].points)
      ++j;
    if (j - i == 1) {
      resolver.emit_band(by_points.data() + i, 1);
    } else {
      std::array<int, kMaxGroupRows> tied{};
      std::copy(by_points.begin() + i, by_points.begin() + j, tied.begin());
      resolver.resolve_head_to_head(tied, j - i);
    }
    i = j;
  }

  for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = resolver.order[static_cast<std::size_t>(k)];
  for (int b = 0; b < resolver.band_count; ++b) {
    const auto [start, length] = resolver.bands[static_cast<std::size_t>(b)];
    if (length > 1) shuffle_span(order, start, start + length, rng);
  }
}

void rank_league_positions(std::span<const TableRow> rows, Xoshiro256pp& rng,
                           std::span<int> order) {
  const int n = static_cast<int>(rows.size());
  if (n > kMaxLeagueRows) throw std::invalid_argument("rank_league_positions: too many rows");
  if (order.size() != rows.size())
    throw std::invalid_argument("rank_league_positions: order size mismatch");
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&rows](int a, int b) {
    const TableRow& x = rows[static_cast<std::size_t>(a)];
    const TableRow& y = rows[static_cast<std::size_t>(b)];
    if (league_better(x, y)) return true;
    if (league_better(y, x)) return false;
    return a < b;
  });
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && league_equal(rows[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])],
                                 rows[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]))
      ++j;
    if (j - i > 1) shuffle_span(order, i, j, rng);
    i = j;
  }
}

std::vector<TeamId> rank_group(std::span<const TableRow> rows,
                               std::span<const ScoredMatch> matches, Xoshiro256pp& rng,
                               const PointsRule& points) {
  if (rows.size() != 4) throw std::invalid_argument("rank_group: exactly 4 rows required");
  if (matches.size() != 12)
    throw std::invalid_argument("rank_group: the 12 matches among the 4 teams are required");
  auto position_of = [&rows](const TeamId& team) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].team == team) return static_cast<int>(i);
    throw std::invalid_argument("rank_group: match references an unknown team");
  };
  std::array<MatchRef, 12> refs{};
  bool seen[4][4] = {};
  for (std::size_t m = 0; m < matches.size(); ++m) {
    const int home_pos = position_of(matches[m].fixture.home);
    const int away_pos = position_of(matches[m].fixture.away);
    if (home_pos == away_pos || seen[home_pos][away_pos])
      throw std::invalid_argument("rank_group: match set is not the double round-robin");
    seen[home_pos][away_pos] = true;
    refs[m] = MatchRef{home_pos, away_pos, matches[m].score};
  }
  std::array<int, 4> order{};
  rank_group_positions(rows, refs, rng, order, points);
  std::vector<TeamId> ranking;
  ranking.reserve(4);
  for (int pos : order) ranking.push_back(rows[static_cast<std::size_t>(pos)].team);
  return ranking;
}

std::vector<TeamId> rank_league(std::span<const TableRow> rows, Xoshiro256pp& rng) {
  if (rows.size() != 36) throw std::invalid_argument("rank_league: exactly 36 rows required");
  std::vector<int> order(rows.size());
  rank_league_positions(rows, rng, order);
  std::vector<TeamId> ranking;
  ranking.reserve(rows.size());
  for (int pos : order) ranking.push_back(rows[static_cast<std::size_t>(pos)].team);
  return ranking;
}

}  // namespace uclsim
