#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "uclsim/engine.hpp"
#include "uclsim/fixtures.hpp"
#include "uclsim/goal_model.hpp"
#include "uclsim/oracle.hpp"
#include "uclsim/report.hpp"

namespace py = pybind11;
using namespace uclsim;

namespace {

Format format_from(const std::string& name) {
  if (name == "group") return Format::group;
  if (name == "league") return Format::league;
  throw std::invalid_argument("format must be 'group' or 'league', got: " + name);
}

Side side_from(const std::string& name) {
  if (name == "home") return Side::home;
  if (name == "away") return Side::away;
  throw std::invalid_argument("side must be 'home' or 'away', got: " + name);
}

MatchType type_from(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 >= text.size())
    throw std::invalid_argument("match type must look like '4-1', got: " + text);
  return MatchType{PotRating(std::stoi(text.substr(0, dash))),
                   PotRating(std::stoi(text.substr(dash + 1)))};
}

py::tuple fixture_tuple(Format format, const Fixture& fixture) {
  (void)format;
  return py::make_tuple(py::make_tuple(fixture.home.pot.value(), fixture.home.index),
                        py::make_tuple(fixture.away.pot.value(), fixture.away.index));
}

GoalModelParams params_or_fitted(const std::optional<GoalModelParams>& params) {
  return params.value_or(GoalModelParams::fitted());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monte Carlo incentives for offensive play in the old group stage and the "
            "incomplete round-robin league phase of the Champions League";

  py::class_<GoalModelParams>(m, "GoalModelParams")
      .def(py::init([](double alpha_home, double beta_home, double alpha_away,
                       double beta_away) {
             return GoalModelParams{alpha_home, beta_home, alpha_away, beta_away};
           }),
           py::arg("alpha_home"), py::arg("beta_home"), py::arg("alpha_away"),
           py::arg("beta_away"))
      .def_readwrite("alpha_home", &GoalModelParams::alpha_home)
      .def_readwrite("beta_home", &GoalModelParams::beta_home)
      .def_readwrite("alpha_away", &GoalModelParams::alpha_away)
      .def_readwrite("beta_away", &GoalModelParams::beta_away)
      .def_static("fitted", &GoalModelParams::fitted)
      .def("__repr__", [](const GoalModelParams& p) {
        return "GoalModelParams(alpha_home=" + std::to_string(p.alpha_home) +
               ", beta_home=" + std::to_string(p.beta_home) +
               ", alpha_away=" + std::to_string(p.alpha_away) +
               ", beta_away=" + std::to_string(p.beta_away) + ")";
      });

  m.def(
      "lambda_home",
      [](int home_pot, int away_pot, const std::optional<GoalModelParams>& params) {
        return lambda_home(params_or_fitted(params), PotRating(home_pot), PotRating(away_pot));
      },
      py::arg("home_pot"), py::arg("away_pot"), py::arg("params") = std::nullopt,
      "Expected home goals for a (home pot, away pot) pairing");
  m.def(
      "lambda_away",
      [](int home_pot, int away_pot, const std::optional<GoalModelParams>& params) {
        return lambda_away(params_or_fitted(params), PotRating(home_pot), PotRating(away_pot));
      },
      py::arg("home_pot"), py::arg("away_pot"), py::arg("params") = std::nullopt,
      "Expected away goals for a (home pot, away pot) pairing");
  m.def("score_pmf", &score_pmf, py::arg("lam"), py::arg("goals"),
        "Poisson probability of scoring `goals` at intensity `lam`");

  m.def(
      "group_fixtures",
      [] {
        py::list fixtures;
        for (const Fixture& fixture : group_fixtures())
          fixtures.append(fixture_tuple(Format::group, fixture));
        return fixtures;
      },
      "The 12 (home, away) pairs of the 4-team double round-robin, teams as (pot, index)");
  m.def(
      "league_fixtures",
      [] {
        py::list fixtures;
        for (const Fixture& fixture : league_fixtures())
          fixtures.append(fixture_tuple(Format::league, fixture));
        return fixtures;
      },
      "The 144 (home, away) pairs of the canonical 36-team incomplete round-robin");
  m.def(
      "focal_fixture",
      [](const std::string& format, const std::string& match_type) {
        const Format f = format_from(format);
        return fixture_tuple(f, focal_fixture(f, type_from(match_type)));
      },
      py::arg("format"), py::arg("match_type"));

  py::class_<ProbTriple>(m, "ProbTriple")
      .def_readonly("p_win", &ProbTriple::p_win)
      .def_readonly("p_draw", &ProbTriple::p_draw)
      .def_readonly("p_loss", &ProbTriple::p_loss)
      .def_readonly("stderr_win", &ProbTriple::stderr_win)
      .def_readonly("stderr_draw", &ProbTriple::stderr_draw)
      .def_readonly("stderr_loss", &ProbTriple::stderr_loss);

  py::class_<IncentiveResult>(m, "IncentiveResult")
      .def_readonly("probs", &IncentiveResult::probs)
      .def_readonly("diff_win_draw", &IncentiveResult::diff_win_draw)
      .def_readonly("diff_draw_loss", &IncentiveResult::diff_draw_loss)
      .def_readonly("stderr_diff_win_draw", &IncentiveResult::stderr_diff_win_draw)
      .def_readonly("stderr_diff_draw_loss", &IncentiveResult::stderr_diff_draw_loss)
      .def_readonly("incentive", &IncentiveResult::incentive)
      .def_readonly("incentive_stderr", &IncentiveResult::incentive_stderr)
      .def("degenerate", &IncentiveResult::degenerate);

  py::class_<GridCell>(m, "GridCell")
      .def_property_readonly("format",
                             [](const GridCell& c) { return std::string(format_name(c.format)); })
      .def_readonly("rank_cutoff", &GridCell::rank_cutoff)
      .def_property_readonly("home_pot",
                             [](const GridCell& c) { return c.match_type.home_pot.value(); })
      .def_property_readonly("away_pot",
                             [](const GridCell& c) { return c.match_type.away_pot.value(); })
      .def_property_readonly(
          "perspective", [](const GridCell& c) { return std::string(side_name(c.perspective)); })
      .def_readonly("result", &GridCell::result)
      .def_readonly("replications", &GridCell::replications)
      .def_readonly("master_seed", &GridCell::master_seed);

  m.def(
      "run_scenario",
      [](const std::string& format, const std::string& match_type, const std::string& side,
         int cutoff, std::uint64_t replications, std::uint64_t seed, bool crn, int threads,
         const std::optional<GoalModelParams>& params) {
        Scenario scenario;
        scenario.match_type = type_from(match_type);
        scenario.perspective = side_from(side);
        scenario.threshold = ThresholdSpec{format_from(format), cutoff};
        scenario.replications = replications;
        scenario.master_seed = seed;
        scenario.common_random_numbers = crn;
        scenario.threads = threads;
        scenario.params = params_or_fitted(params);
        py::gil_scoped_release release;
        return run_scenario(scenario);
      },
      py::arg("format"), py::arg("match_type"), py::arg("side"), py::arg("cutoff"),
      py::arg("replications") = 1'000'000, py::arg("seed") = 0, py::arg("crn") = true,
      py::arg("threads") = 1, py::arg("params") = std::nullopt,
      "Conditional prize probabilities and the attack incentive for one focal match");

  m.def(
      "figure2",
      [](std::uint64_t replications, std::uint64_t seed, bool crn, int threads,
         const std::optional<GoalModelParams>& params) {
        GridOptions options;
        options.replications = replications;
        options.master_seed = seed;
        options.common_random_numbers = crn;
        options.threads = threads;
        options.params = params_or_fitted(params);
        py::gil_scoped_release release;
        return run_incentive_grid(options);
      },
      py::arg("replications") = 1'000'000, py::arg("seed") = 0, py::arg("crn") = true,
      py::arg("threads") = 1, py::arg("params") = std::nullopt,
      "The full 96-cell incentive grid over both designs, prizes and perspectives");

  py::class_<UpliftCell>(m, "UpliftCell")
      .def_property_readonly("home_pot",
                             [](const UpliftCell& c) { return c.match_type.home_pot.value(); })
      .def_property_readonly("away_pot",
                             [](const UpliftCell& c) { return c.match_type.away_pot.value(); })
      .def_property_readonly(
          "perspective", [](const UpliftCell& c) { return std::string(side_name(c.perspective)); })
      .def_readonly("first_prize_uplift", &UpliftCell::first_prize_uplift)
      .def_readonly("second_prize_uplift", &UpliftCell::second_prize_uplift)
      .def_readonly("first_prize_stderr", &UpliftCell::first_prize_stderr)
      .def_readonly("second_prize_stderr", &UpliftCell::second_prize_stderr);

  py::class_<UpliftSummary>(m, "UpliftSummary")
      .def_readonly("first_prize_mean_pct", &UpliftSummary::first_prize_mean_pct)
      .def_readonly("second_prize_mean_pct", &UpliftSummary::second_prize_mean_pct)
      .def_readonly("cells", &UpliftSummary::cells);

  m.def(
      "aggregate_uplift",
      [](const std::vector<GridCell>& cells) { return aggregate_uplift(cells); },
      py::arg("cells"),
      "Mean league-vs-group uplift per prize over the 24 pairing/perspective cells");

  m.def(
      "write_csv",
      [](const std::vector<GridCell>& cells, const std::string& path) {
        write_csv(cells, path);
      },
      py::arg("cells"), py::arg("path"));
  m.def("read_csv", &read_csv, py::arg("path"));
  m.def(
      "to_csv", [](const std::vector<GridCell>& cells) { return to_csv(cells); },
      py::arg("cells"));

  m.def(
      "oracle_check",
      [](std::uint64_t replications, std::uint64_t seed, int threads) {
        py::gil_scoped_release release;
        std::vector<std::tuple<std::string, std::string, double>> rows;
        for (const MiniCheck& check : standard_mini_checks())
          for (Side side : {Side::home, Side::away}) {
            const ProbTriple exact =
                exact_prob_triple(check.mini, check.focal, check.rank_cutoff, side);
            const IncentiveResult estimate =
                run_setup(to_setup(check.mini, check.focal), check.rank_cutoff, side,
                          replications, seed, true, threads);
            const double est[3] = {estimate.probs.p_win, estimate.probs.p_draw,
                                   estimate.probs.p_loss};
            const double ref[3] = {exact.p_win, exact.p_draw, exact.p_loss};
            const double se[3] = {estimate.probs.stderr_win, estimate.probs.stderr_draw,
                                  estimate.probs.stderr_loss};
            double max_z = 0;
            for (int i = 0; i < 3; ++i) {
              if (se[i] == 0.0)
                max_z = std::max(max_z, est[i] == ref[i] ? 0.0 : 1e9);
              else
                max_z = std::max(max_z, std::abs(est[i] - ref[i]) / se[i]);
            }
            rows.emplace_back(check.name, side_name(side), max_z);
          }
        return rows;
      },
      py::arg("replications") = 200'000, py::arg("seed") = 1, py::arg("threads") = 1,
      "Max |z| between the Monte Carlo engine and exact enumeration per built-in format");
}
