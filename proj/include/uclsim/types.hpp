#pragma once

#include <stdexcept>

namespace uclsim {

enum class Format { group, league };
enum class Side { home, away };

// Ranking rule chains: the 4-team double round-robin uses recursive
// head-to-head, the 36-team league table uses the flat six-criterion chain.
enum class TieRule { group_chain, league_chain };

// Seeding tier 1..4, pot 1 holding the strongest teams. The pot number is
// the only team attribute the goal model sees.
class PotRating {
 public:
  explicit PotRating(int pot) : pot_(pot) {
    if (pot < 1 || pot > 4) throw std::invalid_argument("pot rating must be in 1..4");
  }
  int value() const noexcept { return pot_; }
  friend bool operator==(PotRating, PotRating) = default;

 private:
  int pot_;
};

struct TeamId {
  PotRating pot;
  int index;  // 0 within a group pot, 0..8 within a league pot
  friend bool operator==(const TeamId&, const TeamId&) = default;
};

struct MatchType {
  PotRating home_pot;
  PotRating away_pot;
  friend bool operator==(const MatchType&, const MatchType&) = default;
};

// Ordered pair; ordering encodes venue.
struct Fixture {
  TeamId home;
  TeamId away;
  friend bool operator==(const Fixture&, const Fixture&) = default;
};

struct Scoreline {
  int home_goals = 0;
  int away_goals = 0;
  friend bool operator==(const Scoreline&, const Scoreline&) = default;
};

struct ScoredMatch {
  Fixture fixture;
  Scoreline score;
};

// Points per match result, 3/1/0 by default; overridable for sensitivity
// runs.
struct PointsRule {
  int win = 3;
  int draw = 1;
};

}  // namespace uclsim
