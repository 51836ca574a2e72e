#include "uclsim/cli_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <thread>

#include "CLI11.hpp"

namespace uclsim {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

// Plain `key = value` lines; `#` starts a comment.
std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file: " + path);
  std::map<std::string, std::string> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(line_number) +
                       ": expected `key = value`");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw UsageError(path + ":" + std::to_string(line_number) +
                       ": expected `key = value`");
    if (values.count(key))
      throw UsageError(path + ":" + std::to_string(line_number) + ": duplicate key " + key);
    values[key] = value;
  }
  return values;
}

bool parse_bool(const std::string& text, const std::string& what) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "1" || lower == "true" || lower == "on" || lower == "yes") return true;
  if (lower == "0" || lower == "false" || lower == "off" || lower == "no") return false;
  throw UsageError("invalid boolean for " + what + ": " + text);
}

long long parse_integer(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw UsageError("invalid integer for " + what + ": " + text);
  }
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw UsageError("invalid number for " + what + ": " + text);
  }
}

Format parse_format(const std::string& text) {
  if (text == "group") return Format::group;
  if (text == "league") return Format::league;
  throw UsageError("format must be `group` or `league`, got: " + text);
}

Side parse_side(const std::string& text) {
  if (text == "home") return Side::home;
  if (text == "away") return Side::away;
  throw UsageError("side must be `home` or `away`, got: " + text);
}

// Option handles for the values that the config file and environment can
// also supply; count()==0 means the flag was absent from the command line.
struct OptionSet {
  CLI::Option* format = nullptr;
  CLI::Option* type = nullptr;
  CLI::Option* side = nullptr;
  CLI::Option* cutoff = nullptr;
  CLI::Option* replications = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* crn = nullptr;
  CLI::Option* output = nullptr;
  CLI::Option* alpha_home = nullptr;
  CLI::Option* beta_home = nullptr;
  CLI::Option* alpha_away = nullptr;
  CLI::Option* beta_away = nullptr;
  CLI::Option* points_win = nullptr;
  CLI::Option* points_draw = nullptr;
};

struct RawValues {
  std::string format;
  std::string type;
  std::string side = "home";
  int cutoff = 0;
  std::uint64_t replications = 1'000'000;
  std::uint64_t seed = 0;
  int threads = 0;
  bool crn = true;
  std::string output;
  std::string input;
  std::string config_path;
  GoalModelParams params = GoalModelParams::fitted();
  PointsRule points{};
};

void add_run_options(CLI::App* cmd, RawValues& raw, OptionSet& opts, bool scenario_options) {
  if (scenario_options) {
    opts.format = cmd->add_option("--format", raw.format, "Tournament design: group or league");
    opts.type = cmd->add_option("--type", raw.type, "Pot pairing, e.g. 4-1 (home pot-away pot)");
    opts.side = cmd->add_option("--side", raw.side, "Focal team perspective: home or away");
    opts.cutoff = cmd->add_option("--cutoff", raw.cutoff,
                                  "Prize rank cutoff (default: the format's first prize)");
  }
  opts.replications =
      cmd->add_option("-n,--replications", raw.replications, "Simulation replications");
  opts.seed = cmd->add_option("--seed", raw.seed, "Master seed");
  opts.threads = cmd->add_option("--threads", raw.threads, "Worker threads");
  opts.crn = cmd->add_flag("--crn,!--no-crn", raw.crn,
                           "Share non-focal scorelines across the three conditionings");
  opts.output = cmd->add_option("-o,--output", raw.output, "Write CSV to this path");
  cmd->add_option("--config", raw.config_path, "Optional key = value config file");
  opts.alpha_home = cmd->add_option("--alpha-home", raw.params.alpha_home,
                                    "Goal model intercept, home side");
  opts.beta_home =
      cmd->add_option("--beta-home", raw.params.beta_home, "Goal model slope, home side");
  opts.alpha_away = cmd->add_option("--alpha-away", raw.params.alpha_away,
                                    "Goal model intercept, away side");
  opts.beta_away =
      cmd->add_option("--beta-away", raw.params.beta_away, "Goal model slope, away side");
  opts.points_win = cmd->add_option("--points-win", raw.points.win, "Points per win");
  opts.points_draw = cmd->add_option("--points-draw", raw.points.draw, "Points per draw");
}

void apply_config_file(const std::map<std::string, std::string>& values, RawValues& raw,
                       const OptionSet& opts) {
  auto absent = [](const CLI::Option* option) { return option != nullptr && option->count() == 0; };
  for (const auto& [key, value] : values) {
    if (key == "format" && opts.format) {
      if (absent(opts.format)) raw.format = value;
    } else if (key == "type" && opts.type) {
      if (absent(opts.type)) raw.type = value;
    } else if (key == "side" && opts.side) {
      if (absent(opts.side)) raw.side = value;
    } else if (key == "cutoff" && opts.cutoff) {
      if (absent(opts.cutoff)) raw.cutoff = static_cast<int>(parse_integer(value, "cutoff"));
    } else if (key == "replications") {
      if (absent(opts.replications)) {
        const long long n = parse_integer(value, "replications");
        if (n < 1) throw UsageError("replications must be positive");
        raw.replications = static_cast<std::uint64_t>(n);
      }
    } else if (key == "seed") {
      if (absent(opts.seed))
        raw.seed = static_cast<std::uint64_t>(parse_integer(value, "seed"));
    } else if (key == "threads") {
      if (absent(opts.threads)) raw.threads = static_cast<int>(parse_integer(value, "threads"));
    } else if (key == "crn") {
      if (absent(opts.crn)) raw.crn = parse_bool(value, "crn");
    } else if (key == "output") {
      if (absent(opts.output)) raw.output = value;
    } else if (key == "alpha_home") {
      if (absent(opts.alpha_home)) raw.params.alpha_home = parse_real(value, "alpha_home");
    } else if (key == "beta_home") {
      if (absent(opts.beta_home)) raw.params.beta_home = parse_real(value, "beta_home");
    } else if (key == "alpha_away") {
      if (absent(opts.alpha_away)) raw.params.alpha_away = parse_real(value, "alpha_away");
    } else if (key == "beta_away") {
      if (absent(opts.beta_away)) raw.params.beta_away = parse_real(value, "beta_away");
    } else if (key == "points_win") {
      if (absent(opts.points_win))
        raw.points.win = static_cast<int>(parse_integer(value, "points_win"));
    } else if (key == "points_draw") {
      if (absent(opts.points_draw))
        raw.points.draw = static_cast<int>(parse_integer(value, "points_draw"));
    } else {
      throw UsageError("unknown config key: " + key);
    }
  }
}

int resolve_threads(const RawValues& raw, const OptionSet& opts,
                    const std::map<std::string, std::string>& config_values) {
  if (opts.threads->count() > 0 || config_values.count("threads")) {
    if (raw.threads < 1) throw UsageError("threads must be at least 1");
    return raw.threads;
  }
  if (const char* env = std::getenv("UCLSIM_THREADS")) {
    const long long n = parse_integer(env, "UCLSIM_THREADS");
    if (n < 1) throw UsageError("UCLSIM_THREADS must be at least 1");
    return static_cast<int>(n);
  }
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : static_cast<int>(hardware);
}

}  // namespace

MatchType parse_match_type(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos)
    throw UsageError("match type must look like `4-1` (home pot-away pot), got: " + text);
  try {
    const int home = static_cast<int>(parse_integer(text.substr(0, dash), "match type"));
    const int away = static_cast<int>(parse_integer(text.substr(dash + 1), "match type"));
    return MatchType{PotRating(home), PotRating(away)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid match type `") + text + "`: " + e.what());
  }
}

Scenario RunConfig::to_scenario() const {
  Scenario scenario;
  scenario.match_type = match_type;
  scenario.perspective = side;
  scenario.threshold = ThresholdSpec{format, cutoff};
  scenario.replications = replications;
  scenario.master_seed = master_seed;
  scenario.common_random_numbers = crn;
  scenario.threads = threads;
  scenario.params = params;
  scenario.points = points;
  return scenario;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Incentives for offensive play in the two Champions League designs"};
  app.require_subcommand(1);

  RawValues raw;
  OptionSet opts;

  CLI::App* simulate =
      app.add_subcommand("simulate", "Estimate one conditional-incentive scenario");
  CLI::App* figure2 = app.add_subcommand(
      "figure2", "Run the full 96-cell incentive grid over both designs");
  CLI::App* uplift = app.add_subcommand(
      "uplift", "Aggregate league-vs-group incentive uplift (119%/58% style summary)");
  CLI::App* oracle_check = app.add_subcommand(
      "oracle-check", "Compare the Monte Carlo engine against exact enumeration");
  uplift->add_option("--input", raw.input,
                     "Aggregate an existing figure2 CSV instead of simulating");

  // The subcommands share one raw-value store; exactly one subcommand parses.
  OptionSet simulate_opts, figure2_opts, uplift_opts, oracle_opts;
  add_run_options(simulate, raw, simulate_opts, true);
  add_run_options(figure2, raw, figure2_opts, false);
  add_run_options(uplift, raw, uplift_opts, false);
  add_run_options(oracle_check, raw, oracle_opts, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    CLI::App* active = nullptr;
    for (CLI::App* sub : {simulate, figure2, uplift, oracle_check})
      if (app.got_subcommand(sub)) active = sub;
    throw HelpRequested{active != nullptr ? active->help() : app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig config;
  if (app.got_subcommand(simulate)) {
    config.command = RunConfig::Command::simulate;
    opts = simulate_opts;
  } else if (app.got_subcommand(figure2)) {
    config.command = RunConfig::Command::figure2;
    opts = figure2_opts;
  } else if (app.got_subcommand(uplift)) {
    config.command = RunConfig::Command::uplift;
    opts = uplift_opts;
  } else {
    config.command = RunConfig::Command::oracle_check;
    opts = oracle_opts;
  }

  std::map<std::string, std::string> config_values;
  if (!raw.config_path.empty()) {
    config_values = load_config_file(raw.config_path);
    apply_config_file(config_values, raw, opts);
  }

  if (config.command == RunConfig::Command::simulate) {
    if (raw.format.empty()) throw UsageError("simulate requires --format (group or league)");
    if (raw.type.empty()) throw UsageError("simulate requires --type, e.g. --type 4-1");
    config.format = parse_format(raw.format);
    config.match_type = parse_match_type(raw.type);
    config.side = parse_side(raw.side);
    const int field = config.format == Format::group ? 4 : 36;
    config.cutoff = raw.cutoff != 0 ? raw.cutoff : (config.format == Format::group ? 2 : 8);
    if (config.cutoff < 1 || config.cutoff > field)
      throw UsageError("cutoff must be in 1.." + std::to_string(field) + " for the " +
                       std::string(raw.format) + " format");
    if (config.format == Format::group &&
        config.match_type.home_pot == config.match_type.away_pot)
      throw UsageError("the group format has no same-pot matches; --type " + raw.type +
                       " is only valid with --format league");
  }

  if (raw.replications < 1) throw UsageError("replications must be positive");
  config.replications = raw.replications;
  config.master_seed = raw.seed;
  config.crn = raw.crn;
  config.output_path = raw.output;
  config.input_path = raw.input;
  config.params = raw.params;
  config.points = raw.points;
  config.threads = resolve_threads(raw, opts, config_values);
  return config;
}

}  // namespace uclsim
