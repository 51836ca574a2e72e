#include "uclsim/fixtures.hpp"

#include <string>

namespace uclsim {

namespace {

constexpr int kPots = 4;

std::string type_label(const MatchType& type) {
  return std::to_string(type.home_pot.value()) + "-" + std::to_string(type.away_pot.value());
}

}  // namespace

int pot_size(Format format) noexcept { return format == Format::group ? 1 : 9; }

int team_count(Format format) noexcept { return kPots * pot_size(format); }

int flat_index(Format format, const TeamId& team) {
  const int size = pot_size(format);
  if (team.index < 0 || team.index >= size)
    throw std::invalid_argument("team index out of range for format");
  return (team.pot.value() - 1) * size + team.index;
}

TeamId team_at(Format format, int flat) {
  const int size = pot_size(format);
  if (flat < 0 || flat >= team_count(format))
    throw std::invalid_argument("flat team index out of range");
  return TeamId{PotRating(flat / size + 1), flat % size};
}

std::vector<Fixture> group_fixtures() {
  std::vector<Fixture> fixtures;
  fixtures.reserve(12);
  for (int home = 1; home <= kPots; ++home)
    for (int away = 1; away <= kPots; ++away)
      if (home != away)
        fixtures.push_back(Fixture{TeamId{PotRating(home), 0}, TeamId{PotRating(away), 0}});
  return fixtures;
}

std::vector<Fixture> league_fixtures() {
  constexpr int n = 9;
  std::vector<Fixture> fixtures;
  fixtures.reserve(144);
  for (int pot = 1; pot <= kPots; ++pot)
    for (int i = 0; i < n; ++i)
      fixtures.push_back(
          Fixture{TeamId{PotRating(pot), i}, TeamId{PotRating(pot), (i + 1) % n}});
  for (int p = 1; p <= kPots; ++p)
    for (int q = p + 1; q <= kPots; ++q)
      for (int i = 0; i < n; ++i) {
        fixtures.push_back(Fixture{TeamId{PotRating(p), i}, TeamId{PotRating(q), i}});
        fixtures.push_back(
            Fixture{TeamId{PotRating(q), i}, TeamId{PotRating(p), (i + 1) % n}});
      }
  return fixtures;
}

Fixture focal_fixture(Format format, MatchType type) {
  const int home = type.home_pot.value();
  const int away = type.away_pot.value();
  if (format == Format::group) {
    if (home == away)
      throw NoSuchMatchTypeError("no " + type_label(type) +
                                 " match in a group: every pot holds one team");
    return Fixture{TeamId{type.home_pot, 0}, TeamId{type.away_pot, 0}};
  }
  // Smallest qualifying fixture of the canonical league design.
  if (home == away)
    return Fixture{TeamId{type.home_pot, 0}, TeamId{type.away_pot, 1}};
  if (home < away) return Fixture{TeamId{type.home_pot, 0}, TeamId{type.away_pot, 0}};
  return Fixture{TeamId{type.home_pot, 0}, TeamId{type.away_pot, 1}};
}

std::vector<MatchType> cross_pot_match_types() {
  std::vector<MatchType> types;
  types.reserve(12);
  for (int home = 1; home <= kPots; ++home)
    for (int away = 1; away <= kPots; ++away)
      if (home != away) types.push_back(MatchType{PotRating(home), PotRating(away)});
  return types;
}

}  // namespace uclsim
