// protocols.hpp
// Seeded Monte Carlo engines for the guessing games: predictive (fixed
// state, which-way or which-phase measurement), retrodictive four-state
// discrimination, and the basis-disclosure alternative game.
//
// Trials are independent given their per-index RNG substreams and are
// aggregated with integer counters, so the OpenMP engines reproduce the
// serial reference bit for bit.

#pragma once

#include "mzi/duality.hpp"
#include "mzi/interferometer.hpp"
#include "mzi/states.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace mzi {

enum class PredictiveMode { ww, wp };

struct TrialRecord {
  std::int64_t trial = 0;
  std::int8_t b_ww = 0;  // hidden bits, 0 when the protocol has none
  std::int8_t b_wp = 0;
  std::int8_t basis = 0; // alternative game only: +1 WW basis, -1 WP basis
  std::int8_t port_bit = 0;
  std::int8_t pol_bit = 0;
  std::int8_t g_ww = 0;  // guesses, 0 when not made
  std::int8_t g_wp = 0;

  bool operator==(const TrialRecord&) const = default;
};

struct Estimate {
  double p_hat = 0.0;
  double std_err = 0.0; // sqrt(p_hat (1 - p_hat) / n)
  std::uint64_t n = 0;
  std::uint64_t successes = 0;

  bool operator==(const Estimate&) const = default;
};

struct GameStats {
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  std::optional<Estimate> ww;
  std::optional<Estimate> wp;

  bool operator==(const GameStats&) const = default;
};

struct ExecPolicy {
  bool parallel = true; // false selects the serial reference loop
};

// Retrodictive game model: Born outcome distributions of the four inputs at
// the working phase, plus Bob's maximum-likelihood guess per outcome (ties
// broken toward +1) and the exact success probabilities they imply.
struct RetroModel {
  DetectorModel det;
  std::array<std::array<double, 4>, 4> outcome_probs{}; // [label][outcome]
  std::array<std::int8_t, 4> guess_ww{};
  std::array<std::int8_t, 4> guess_wp{};
  double p_ww_exact = 0.5;
  double p_wp_exact = 0.5;
};

// (+1,+1) -> 0, (+1,-1) -> 1, (-1,+1) -> 2, (-1,-1) -> 3
int label_index(int b_ww, int b_wp);

RetroModel build_retro_model(double alpha, double phi, double e);

// Alternative game model: the two degenerate preparation bases (pure
// which-way: alpha = pi/2; pure which-phase: alpha = 0, phi = pi/2) with
// per-basis ML guess tables.
struct AlternativeModel {
  DetectorModel det;
  std::array<std::array<double, 4>, 2> ww_probs{}; // [bit(b_ww)][outcome]
  std::array<std::array<double, 4>, 2> wp_probs{}; // [bit(b_wp)][outcome]
  std::array<std::int8_t, 4> guess_ww{};
  std::array<std::int8_t, 4> guess_wp{};
  std::array<double, 2> p_ww_by_state{};
  std::array<double, 2> p_wp_by_state{};
  double p_ww_exact = 0.5; // success given the WW basis was used
  double p_wp_exact = 0.5;
};

AlternativeModel build_alternative_model(double e);

// Fixed input state; mode wp predicts the exit port at the fringe maximum,
// mode ww removes the output splitter (arm-basis measurement) and guesses
// the arm from the minimal-error pointer measurement. Estimates converge to
// (1+V)/2 and (1+D)/2 respectively.
GameStats run_predictive(const PathState& s, const DetectorModel& det, PredictiveMode mode,
                         std::int64_t n, std::uint64_t seed, ExecPolicy policy = {},
                         std::vector<TrialRecord>* records = nullptr);

// Uniform independent hidden bits; converges to (1 + E d_ww)/2 and
// (1 + sqrt(1-E^2) d_wp)/2.
GameStats run_retrodictive(double alpha, double phi, double e, std::int64_t n,
                           std::uint64_t seed, ExecPolicy policy = {},
                           std::vector<TrialRecord>* records = nullptr);

// Alice picks a basis, then a state in it; Bob measures with fixed E and
// guesses after the basis is disclosed. Non-averaged statistics condition on
// the matching basis; averaged mode forces both guesses every run (the
// undisclosed bit is a deterministic +1 tie-break worth exactly 1/2).
GameStats run_alternative(double e, std::int64_t n, std::uint64_t seed, bool averaged,
                          ExecPolicy policy = {}, std::vector<TrialRecord>* records = nullptr);

struct FrontierPoint {
  double e = 0.0;
  double p_ww = 0.5;
  double p_wp = 0.5;
};

// Analytic optimal pairs (P_WW, P_WP) as the detector efficiency sweeps the
// grid; every point satisfies the ellipse identity.
std::vector<FrontierPoint> frontier_sweep(double alpha, double phi,
                                          const std::vector<double>& e_grid);

} // namespace mzi
