#pragma once

#include <span>
#include <string>
#include <vector>

#include "uclsim/engine.hpp"

namespace uclsim {

inline constexpr const char* kCsvHeader =
    "format,prize_cutoff,home_pot,away_pot,perspective,p_win,p_draw,p_loss,"
    "stderr_win,stderr_draw,stderr_loss,incentive,incentive_stderr,replications,seed";

const char* format_name(Format format) noexcept;
const char* side_name(Side side) noexcept;

// CSV text for a set of result cells: fixed header, probabilities and
// standard errors with 6 decimals, degenerate incentives rendered as NA,
// rows sorted by (format, cutoff, home pot, away pot, perspective with home
// first). Byte-identical for identical inputs.
std::string to_csv(std::span<const GridCell> cells);

// Throws std::runtime_error on an unwritable path.
void write_csv(std::span<const GridCell> cells, const std::string& path);

// Reads a file produced by write_csv back into cells (probabilities,
// incentive and the run metadata; the paired-difference diagnostics are not
// part of the format and come back zeroed).
std::vector<GridCell> read_csv(const std::string& path);

}  // namespace uclsim
