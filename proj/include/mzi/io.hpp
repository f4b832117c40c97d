// io.hpp
// Deterministic artifact output: shortest round-trip number formatting,
// fixed CSV layouts and write-then-rename file emission.

#pragma once

#include "mzi/protocols.hpp"

#include <string>
#include <vector>

namespace mzi {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

// Fixed 17-significant-digit form used by the fringe table.
std::string format_double_17(double x);

// Writes to a temporary sibling and renames into place; no partial files are
// left behind on failure. Throws std::runtime_error on I/O errors.
void write_file_atomic(const std::string& path, const std::string& contents);

struct FringePoint {
  double phase = 0.0;
  double p_plus = 0.0;
};

// header "phase,p_plus", 17 significant digits, LF rows, trailing newline
std::string fringe_csv(const std::vector<FringePoint>& points);

// header "efficiency,p_ww,p_wp", shortest round-trip values
std::string frontier_csv(const std::vector<FrontierPoint>& points);

// header "trial,b_ww,b_wp,port_bit,pol_bit,g_ww,g_wp"
std::string trials_csv(const std::vector<TrialRecord>& records);

} // namespace mzi
