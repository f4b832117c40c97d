// interferometer.hpp
// The optical train: variable input splitter, Faraday rotator + phase delay
// in one arm, output splitter and polarizing splitters. Polarization is kept
// in the circular basis, where the Faraday rotator acts as diag(1, e^{2i beta})
// on the arm-A component.
//
// Conventions fixed here and relied on everywhere else:
//   * joint amplitudes are ordered path (x) polarization, arm A first;
//   * output ports are |+/-> = (|A> +/- i|B>)/sqrt(2), port + first;
//   * the single phase knob is a relative phase applied to arm B.

#pragma once

#include "mzi/qmath.hpp"
#include "mzi/states.hpp"

#include <array>

namespace mzi {

// Which-way detector: the photon's own polarization. pointer_a is the arm-A
// (rotated) pointer, pointer_b the untouched arm-B one.
struct DetectorModel {
  double beta = 0.0;
  Vec2 pointer_in{};
  Vec2 pointer_a{};
  Vec2 pointer_b{};
  double efficiency = 0.0; // E = sqrt(1 - |<a|b>|^2)
};

// Throws std::invalid_argument when pointer_in is not normalized.
DetectorModel build_detector(double beta, const Vec2& pointer_in);

// Balanced linear pointer, beta = asin(e); E = |sin beta| for this pointer.
DetectorModel detector_from_efficiency(double e);

enum class ElementKind {
  input_splitter,
  faraday,
  phase_delay,
  output_splitter,
  polarizing_splitter,
};

struct OpticalElement {
  ElementKind kind;
  Mat4 u; // unitary on the joint path (x) polarization space
};

Vec4 apply(const OpticalElement& el, const Vec4& psi);

// Variable input splitter realizing Alice's amplitudes: |A> into
// cos(pi/4 + b_ww alpha/2)|A> + cos(pi/4 - b_ww alpha/2)|B>.
OpticalElement input_splitter(double alpha, int b_ww);

// Relative phase e^{i phase} on arm B (covers both Alice's phase imprint and
// the fringe-scan knob).
OpticalElement phase_delay(double phase);

OpticalElement faraday_element(double beta);

OpticalElement output_splitter();

struct PointerBasis {
  Vec2 a_prime{};
  Vec2 b_prime{};
};

// Rotates polarization into a measurement basis: component 0 of the output
// polarization is the |a'> amplitude.
OpticalElement polarizing_splitter(const PointerBasis& basis);

// Minimal-error (Helstrom) basis discriminating the two pointers:
// |<a'|a>|^2 = (1+E)/2, |<a'|b>|^2 = (1-E)/2, symmetric under a<->b.
// For E = 1 the pointers themselves are returned. For coincident pointers
// (E = 0) the basis is taken at 45 degrees to the common pointer, matching
// the beta->0 limit of the Faraday construction for real pointer amplitudes.
PointerBasis optimal_pointer_basis(const DetectorModel& det);

// Full train on a prepared input: arm-conditional polarization map, arm-B
// phase knob, output splitter. Result lives in the port (x) polarization
// basis: indices 0,1 are port +, indices 2,3 port -.
Vec4 evolve(const PathState& in, const DetectorModel& det, double phase_knob);

double port_plus_probability(const Vec4& out);

// Fixed outcome order used by every sampler and table in the project.
enum Outcome : int {
  kOutAPlus = 0,  // polarization a', port +
  kOutAMinus = 1, // polarization a', port -
  kOutBPlus = 2,  // polarization b', port +
  kOutBMinus = 3, // polarization b', port -
};

int port_bit(int outcome); // +1 for port +
int pol_bit(int outcome);  // +1 for a'

// Click probabilities of the four detectors for an already evolved state.
std::array<double, 4> measurement_distribution(const Vec4& out, const PointerBasis& basis);

// Phase-delay setting at which the joint (port, polarization) statistics take
// their canonical product form; pi - arg<a|b>, i.e. pi + beta for the
// balanced pointer. The interference signal is phase-shifted by the mean
// polarization phase the Faraday rotator adds to arm A, and the delay plate
// is tuned to cancel it.
double working_phase(const DetectorModel& det);

// evolve at the working phase followed by measurement in the optimal basis.
std::array<double, 4> outcome_distribution(const PathState& in, const DetectorModel& det);

// The induced generalized measurement on the path qubit alone:
//   K_{a',+/-} = (1/2)|+/-><( sqrt(1+E) <A| +/- i sqrt(1-E) <B| )
//   K_{b',+/-} = (1/2)|+/-><( sqrt(1-E) <A| +/- i sqrt(1+E) <B| )
// indexed in the Outcome order above.
struct KrausSet {
  std::array<Mat2, 4> k{};
};

KrausSet extract_kraus(const DetectorModel& det);

// ||K_i psi||^2 for each outcome; equals outcome_distribution for every
// input state.
std::array<double, 4> kraus_probabilities(const KrausSet& ks, const PathState& in);

} // namespace mzi
