#include "mzi/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzi {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNormTol = 1e-12;
constexpr double kRangeTol = 1e-12;
} // namespace

PathState path_state(cx amp_a, cx amp_b) {
  const double n2 = std::norm(amp_a) + std::norm(amp_b);
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw std::invalid_argument("path_state: amplitudes are not normalized");
  }
  return PathState{amp_a, amp_b};
}

Vec2 as_vec(const PathState& s) { return Vec2{{s.amp_a, s.amp_b}}; }

Mat2 density(const PathState& s) { return outer(as_vec(s), as_vec(s)); }

void validate(const InputLabel& label) {
  if (label.b_ww != +1 && label.b_ww != -1) {
    throw std::invalid_argument("InputLabel: b_ww must be +1 or -1");
  }
  if (label.b_wp != +1 && label.b_wp != -1) {
    throw std::invalid_argument("InputLabel: b_wp must be +1 or -1");
  }
  if (label.alpha < -kRangeTol || label.alpha > kPi / 2 + kRangeTol) {
    throw std::invalid_argument("InputLabel: alpha must lie in [0, pi/2]");
  }
  if (label.phi < -kRangeTol || label.phi > kPi + kRangeTol) {
    throw std::invalid_argument("InputLabel: phi must lie in [0, pi]");
  }
}

PathState make_input_state(const InputLabel& label) {
  validate(label);
  // cos^2(pi/4 + x) + cos^2(pi/4 - x) = 1, so the state is normalized by
  // construction.
  const double amp_a = std::cos(kPi / 4 + label.b_ww * label.alpha / 2);
  const double amp_b = std::cos(kPi / 4 - label.b_ww * label.alpha / 2);
  const cx phase = std::polar(1.0, label.b_wp * label.phi);
  return PathState{cx{amp_a, 0.0}, phase * amp_b};
}

BlochVector to_bloch(const PathState& s) {
  const cx cross = std::conj(s.amp_a) * s.amp_b;
  return BlochVector{2.0 * cross.real(), 2.0 * cross.imag(),
                     std::norm(s.amp_a) - std::norm(s.amp_b)};
}

double trace_distance(const PathState& s1, const PathState& s2) {
  const double overlap2 = std::norm(dot(as_vec(s1), as_vec(s2)));
  return std::sqrt(std::max(0.0, 1.0 - overlap2));
}

double trace_distance(const Mat2& rho1, const Mat2& rho2) {
  return 0.5 * trace_norm(rho1 - rho2);
}

FamilyDistances family_distances(double alpha, double phi) {
  const auto state = [&](int b_ww, int b_wp) {
    return make_input_state(InputLabel{b_ww, b_wp, alpha, phi});
  };
  // Symmetry is checked on squared distances: near a degenerate rectangle
  // side the square root would amplify 1e-16 overlap noise to ~1e-8.
  const auto dist2 = [&](const PathState& s1, const PathState& s2) {
    return std::max(0.0, 1.0 - std::norm(dot(as_vec(s1), as_vec(s2))));
  };

  const double ww_p = dist2(state(+1, +1), state(-1, +1));
  const double ww_m = dist2(state(+1, -1), state(-1, -1));
  const double wp_p = dist2(state(+1, +1), state(+1, -1));
  const double wp_m = dist2(state(-1, +1), state(-1, -1));

  if (std::abs(ww_p - ww_m) > 1e-12 || std::abs(wp_p - wp_m) > 1e-12) {
    throw std::logic_error("family_distances: rectangle symmetry violated");
  }
  return FamilyDistances{std::sqrt(0.5 * (ww_p + ww_m)), std::sqrt(0.5 * (wp_p + wp_m))};
}

} // namespace mzi
