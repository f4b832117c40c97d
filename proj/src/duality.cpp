#include "mzi/duality.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGoldenTol = 1e-10;   // phase resolution of the refinement
constexpr double kDegenerateD = 1e-9;  // distance below which a rectangle side is gone

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > kGoldenTol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

} // namespace

double predictability(const PathState& s) {
  return std::abs(std::norm(s.amp_a) - std::norm(s.amp_b));
}

FringeScan scan_fringe_fn(const std::function<double(double)>& p_plus, int grid_points) {
  if (grid_points < 64) {
    throw std::invalid_argument("scan_fringe: need at least 64 grid points");
  }
  const double step = kTwoPi / grid_points;

  double best_max = -1.0, best_min = 2.0;
  double arg_max = 0.0, arg_min = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double phase = k * step;
    const double p = p_plus(phase);
    if (p > best_max) {
      best_max = p;
      arg_max = phase;
    }
    if (p < best_min) {
      best_min = p;
      arg_min = phase;
    }
  }

  const auto neg = [&](double x) { return -p_plus(x); };
  const double phase_max = golden_max(p_plus, arg_max - step, arg_max + step);
  const double phase_min = golden_max(neg, arg_min - step, arg_min + step);

  FringeScan scan;
  scan.phase_max = phase_max;
  scan.p_max = p_plus(phase_max);
  scan.phase_min = phase_min;
  scan.p_min = p_plus(phase_min);
  scan.visibility = (scan.p_max - scan.p_min) / (scan.p_max + scan.p_min);
  return scan;
}

FringeScan scan_fringe(const PathState& s, const DetectorModel& det, int grid_points) {
  return scan_fringe_fn(
      [&](double phase) { return port_plus_probability(evolve(s, det, phase)); }, grid_points);
}

double visibility_scan(const PathState& s, const DetectorModel& det, int grid_points) {
  return scan_fringe(s, det, grid_points).visibility;
}

double distinguishability(const PathState& s, const DetectorModel& det) {
  const double w1 = std::norm(s.amp_a);
  const double w2 = std::norm(s.amp_b);
  const Mat2 diff = cx{w1, 0.0} * outer(det.pointer_a, det.pointer_a) -
                    cx{w2, 0.0} * outer(det.pointer_b, det.pointer_b);
  return trace_norm(diff);
}

double distinguishability_closed_form(double p, double e) {
  return std::sqrt(p * p + e * e - e * e * p * p);
}

double distinguishability_general(double w1, const Mat2& rho_a, const Mat2& rho_b) {
  return trace_norm(cx{w1, 0.0} * rho_a - cx{1.0 - w1, 0.0} * rho_b);
}

double efficiency_general(const Mat2& rho_a, const Mat2& rho_b) {
  return 0.5 * trace_norm(rho_a - rho_b);
}

PredictiveReport predictive_report(const PathState& s, const DetectorModel& det,
                                   int grid_points) {
  PredictiveReport rep;
  rep.p = predictability(s);
  rep.v = visibility_scan(s, det, grid_points);
  rep.e = det.efficiency;
  rep.d = distinguishability(s, det);
  rep.p_ww = 0.5 * (1.0 + rep.d);
  rep.p_wp = 0.5 * (1.0 + rep.v);
  rep.lhs = rep.d * rep.d + rep.v * rep.v;
  if (rep.lhs > 1.0 + 1e-10) {
    throw std::logic_error("predictive_report: duality bound violated");
  }
  return rep;
}

RetrodictiveReport retrodictive_probabilities(double alpha, double phi, double e) {
  if (e < -1e-12 || e > 1.0 + 1e-12) {
    throw std::invalid_argument("retrodictive_probabilities: E must lie in [0, 1]");
  }
  e = std::min(1.0, std::max(0.0, e));
  const FamilyDistances fd = family_distances(alpha, phi);

  RetrodictiveReport rep;
  rep.d_ww = fd.d_ww;
  rep.d_wp = fd.d_wp;
  rep.e = e;
  rep.p_ww = 0.5 * (1.0 + e * fd.d_ww);
  rep.p_wp = 0.5 * (1.0 + std::sqrt(1.0 - e * e) * fd.d_wp);

  if (fd.d_ww > kDegenerateD) {
    const double t = (2.0 * rep.p_ww - 1.0) / fd.d_ww;
    rep.ellipse_ww_term = t * t;
  }
  if (fd.d_wp > kDegenerateD) {
    const double t = (2.0 * rep.p_wp - 1.0) / fd.d_wp;
    rep.ellipse_wp_term = t * t;
  }
  if (rep.ellipse_ww_term && rep.ellipse_wp_term) {
    rep.ellipse_lhs = *rep.ellipse_ww_term + *rep.ellipse_wp_term;
  }
  return rep;
}

std::size_t joint_index(int b_ww, int b_wp, int b_ww_out, int b_wp_out) {
  const auto bit = [](int b) { return b == +1 ? std::size_t{0} : std::size_t{1}; };
  return (bit(b_ww) << 3) | (bit(b_wp) << 2) | (bit(b_ww_out) << 1) | bit(b_wp_out);
}

std::array<double, 16> joint_distribution(double alpha, double phi, double e) {
  const FamilyDistances fd = family_distances(alpha, phi);
  const double ww_signal = e * fd.d_ww;
  const double wp_signal = std::sqrt(std::max(0.0, 1.0 - e * e)) * fd.d_wp;

  std::array<double, 16> joint{};
  for (int b_ww : {+1, -1})
    for (int b_wp : {+1, -1})
      for (int b_ww_out : {+1, -1})
        for (int b_wp_out : {+1, -1}) {
          const double s_ww = b_ww * b_ww_out;
          const double s_wp = b_wp * b_wp_out;
          joint[joint_index(b_ww, b_wp, b_ww_out, b_wp_out)] =
              (1.0 + s_ww * ww_signal + s_wp * wp_signal) / 16.0;
        }
  return joint;
}

} // namespace mzi
