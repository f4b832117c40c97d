// duality.hpp
// Complementarity quantities and the relations tying them together:
// predictability, fringe visibility, detector efficiency, path
// distinguishability, and the retrodictive guess probabilities with their
// ellipse identity.

#pragma once

#include "mzi/interferometer.hpp"
#include "mzi/states.hpp"

#include <array>
#include <functional>
#include <optional>

namespace mzi {

// P = |w1 - w2|
double predictability(const PathState& s);

struct FringeScan {
  double visibility = 0.0;
  double phase_max = 0.0, p_max = 0.0;
  double phase_min = 0.0, p_min = 0.0;
};

// Scan an arbitrary fringe P+(phase) over [0, 2pi) and refine the extrema by
// golden-section search to 1e-10 phase resolution. grid_points >= 64.
FringeScan scan_fringe_fn(const std::function<double(double)>& p_plus, int grid_points);

// Fringe of the port-+ probability as the phase knob is scanned.
FringeScan scan_fringe(const PathState& s, const DetectorModel& det, int grid_points);
double visibility_scan(const PathState& s, const DetectorModel& det, int grid_points);

// D = Tr|w1 rho_a - w2 rho_b| over the pointer space.
double distinguishability(const PathState& s, const DetectorModel& det);

// sqrt(P^2 + E^2 - E^2 P^2); equals the trace-norm route for pure pointers.
double distinguishability_closed_form(double p, double e);

// Mixed-pointer routes (classical mixtures of pure pointers).
double distinguishability_general(double w1, const Mat2& rho_a, const Mat2& rho_b);
double efficiency_general(const Mat2& rho_a, const Mat2& rho_b);

struct PredictiveReport {
  double p = 0.0;    // predictability
  double v = 0.0;    // visibility
  double e = 0.0;    // detector efficiency
  double d = 0.0;    // distinguishability
  double p_ww = 0.0; // (1 + D)/2
  double p_wp = 0.0; // (1 + V)/2
  double lhs = 0.0;  // D^2 + V^2
};

// V comes from the numerical fringe scan, D from the trace norm. The duality
// bound lhs <= 1 is checked and violated only by a bug, never by physics.
PredictiveReport predictive_report(const PathState& s, const DetectorModel& det,
                                   int grid_points = 720);

struct RetrodictiveReport {
  double d_ww = 0.0;
  double d_wp = 0.0;
  double e = 0.0;
  double p_ww = 0.5; // (1 + E d_ww)/2
  double p_wp = 0.5; // (1 + sqrt(1-E^2) d_wp)/2
  // Ellipse terms ((2p-1)/d)^2; absent when the corresponding distance is
  // degenerate (below 1e-9). lhs present only when both terms are.
  std::optional<double> ellipse_ww_term;
  std::optional<double> ellipse_wp_term;
  std::optional<double> ellipse_lhs;
};

RetrodictiveReport retrodictive_probabilities(double alpha, double phi, double e);

// Joint probability of (input bits, output bits):
//   (1/16)(1 + b_ww b_ww_out E d_ww + b_wp b_wp_out sqrt(1-E^2) d_wp).
std::array<double, 16> joint_distribution(double alpha, double phi, double e);

// Row-major index with bit order (b_ww, b_wp, b_ww_out, b_wp_out), +1 -> 0.
std::size_t joint_index(int b_ww, int b_wp, int b_ww_out, int b_wp_out);

} // namespace mzi
