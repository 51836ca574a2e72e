#include "uclsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uclsim {

namespace {

std::string fixed6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

const char* format_name(Format format) noexcept {
  return format == Format::group ? "group" : "league";
}

const char* side_name(Side side) noexcept { return side == Side::home ? "home" : "away"; }

std::string to_csv(std::span<const GridCell> cells) {
  std::vector<GridCell> sorted(cells.begin(), cells.end());
  std::sort(sorted.begin(), sorted.end(), [](const GridCell& a, const GridCell& b) {
    if (a.format != b.format) return a.format == Format::group;
    if (a.rank_cutoff != b.rank_cutoff) return a.rank_cutoff < b.rank_cutoff;
    if (a.match_type.home_pot.value() != b.match_type.home_pot.value())
      return a.match_type.home_pot.value() < b.match_type.home_pot.value();
    if (a.match_type.away_pot.value() != b.match_type.away_pot.value())
      return a.match_type.away_pot.value() < b.match_type.away_pot.value();
    return a.perspective == Side::home && b.perspective == Side::away;
  });

  std::string text(kCsvHeader);
  text += '\n';
  for (const GridCell& cell : sorted) {
    const IncentiveResult& r = cell.result;
    text += format_name(cell.format);
    text += ',' + std::to_string(cell.rank_cutoff);
    text += ',' + std::to_string(cell.match_type.home_pot.value());
    text += ',' + std::to_string(cell.match_type.away_pot.value());
    text += ',';
    text += side_name(cell.perspective);
    text += ',' + fixed6(r.probs.p_win);
    text += ',' + fixed6(r.probs.p_draw);
    text += ',' + fixed6(r.probs.p_loss);
    text += ',' + fixed6(r.probs.stderr_win);
    text += ',' + fixed6(r.probs.stderr_draw);
    text += ',' + fixed6(r.probs.stderr_loss);
    if (r.incentive) {
      text += ',' + fixed6(*r.incentive);
      text += ',' + fixed6(*r.incentive_stderr);
    } else {
      text += ",NA,NA";
    }
    text += ',' + std::to_string(cell.replications);
    text += ',' + std::to_string(cell.master_seed);
    text += '\n';
  }
  return text;
}

void write_csv(std::span<const GridCell> cells, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_csv(cells);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<GridCell> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("unrecognised CSV header in " + path);
  std::vector<GridCell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 15) throw std::runtime_error("malformed CSV row in " + path);
    Format format;
    if (fields[0] == "group")
      format = Format::group;
    else if (fields[0] == "league")
      format = Format::league;
    else
      throw std::runtime_error("unknown format in " + path + ": " + fields[0]);
    Side side;
    if (fields[4] == "home")
      side = Side::home;
    else if (fields[4] == "away")
      side = Side::away;
    else
      throw std::runtime_error("unknown perspective in " + path + ": " + fields[4]);
    IncentiveResult result;
    result.probs.p_win = std::stod(fields[5]);
    result.probs.p_draw = std::stod(fields[6]);
    result.probs.p_loss = std::stod(fields[7]);
    result.probs.stderr_win = std::stod(fields[8]);
    result.probs.stderr_draw = std::stod(fields[9]);
    result.probs.stderr_loss = std::stod(fields[10]);
    result.diff_win_draw = result.probs.p_win - result.probs.p_draw;
    result.diff_draw_loss = result.probs.p_draw - result.probs.p_loss;
    if (fields[11] != "NA") {
      result.incentive = std::stod(fields[11]);
      result.incentive_stderr = std::stod(fields[12]);
    }
    cells.push_back(GridCell{format, std::stoi(fields[1]),
                             MatchType{PotRating(std::stoi(fields[2])),
                                       PotRating(std::stoi(fields[3]))},
                             side, result, std::stoull(fields[13]),
                             std::stoull(fields[14])});
  }
  return cells;
}

}  // namespace uclsim
