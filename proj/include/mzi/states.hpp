// states.hpp
// Input path states of the interferometer: the general two-arm qubit, the
// four-state family used in the retrodictive game, Bloch coordinates and
// trace distances.

#pragma once

#include "mzi/qmath.hpp"

namespace mzi {

// Photon path qubit: amplitudes on arms A and B. |amp_a|^2 + |amp_b|^2 = 1.
struct PathState {
  cx amp_a{1.0, 0.0};
  cx amp_b{0.0, 0.0};
};

// Validating factory; throws std::invalid_argument when not normalized
// within 1e-12.
PathState path_state(cx amp_a, cx amp_b);

Vec2 as_vec(const PathState& s);
Mat2 density(const PathState& s);

// Alice's choice in the four-state game: two sign bits plus the family
// parameters. alpha in [0, pi/2], phi in [0, pi].
struct InputLabel {
  int b_ww = +1;
  int b_wp = +1;
  double alpha = 0.0;
  double phi = 0.0;
};

// Throws std::invalid_argument on out-of-range fields.
void validate(const InputLabel& label);

// amp_a = cos(pi/4 + b_ww*alpha/2), amp_b = e^{i b_wp phi} cos(pi/4 - b_ww*alpha/2).
// The global phase is gauged so amp_a is real and nonnegative.
PathState make_input_state(const InputLabel& label);

struct BlochVector {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Axis convention: z = |amp_a|^2 - |amp_b|^2 (arm A is the north pole),
// x + iy = 2 conj(amp_a) amp_b.
BlochVector to_bloch(const PathState& s);

// Pure-state trace distance sqrt(1 - |<s1|s2>|^2).
double trace_distance(const PathState& s1, const PathState& s2);

// General route: (1/2) Tr|rho1 - rho2|.
double trace_distance(const Mat2& rho1, const Mat2& rho2);

struct FamilyDistances {
  double d_ww = 0.0; // distance across b_ww at fixed b_wp
  double d_wp = 0.0; // distance across b_wp at fixed b_ww
};

// Trace distances between the four family states. Verifies that d_ww is
// independent of the fixed b_wp (and d_wp of b_ww); the check runs on the
// squared distances to 1e-12, the well-conditioned form near degenerate
// rectangles. Returns the common values. d_ww^2 + d_wp^2 <= 1 always holds.
FamilyDistances family_distances(double alpha, double phi);

} // namespace mzi
