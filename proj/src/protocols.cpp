#include "mzi/protocols.hpp"

#include "mzi/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTol = 1e-12;

std::int8_t ml_guess(double p_plus, double p_minus) {
  if (std::abs(p_plus - p_minus) <= kTieTol) return +1; // deterministic tie-break
  return p_plus > p_minus ? +1 : -1;
}

int sample4(const std::array<double, 4>& p, double u) {
  double c = p[0];
  if (u < c) return 0;
  c += p[1];
  if (u < c) return 1;
  c += p[2];
  if (u < c) return 2;
  return 3;
}

struct Tally {
  std::uint64_t considered_ww = 0;
  std::uint64_t correct_ww = 0;
  std::uint64_t considered_wp = 0;
  std::uint64_t correct_wp = 0;
};

// One loop body shared by the serial reference and the OpenMP engine; counts
// are integers, so parallel reduction is exact and order-independent.
template <class Body>
Tally run_trials(std::int64_t n, const ExecPolicy& policy, Body&& body) {
  if (policy.parallel) {
    std::uint64_t cww = 0, kww = 0, cwp = 0, kwp = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : cww, kww, cwp, kwp)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
      const Tally d = body(i);
      cww += d.considered_ww;
      kww += d.correct_ww;
      cwp += d.considered_wp;
      kwp += d.correct_wp;
    }
    return Tally{cww, kww, cwp, kwp};
  }
  Tally t;
  for (std::int64_t i = 0; i < n; ++i) {
    const Tally d = body(i);
    t.considered_ww += d.considered_ww;
    t.correct_ww += d.correct_ww;
    t.considered_wp += d.considered_wp;
    t.correct_wp += d.correct_wp;
  }
  return t;
}

std::optional<Estimate> make_estimate(std::uint64_t successes, std::uint64_t n) {
  if (n == 0) return std::nullopt;
  Estimate est;
  est.n = n;
  est.successes = successes;
  est.p_hat = static_cast<double>(successes) / static_cast<double>(n);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n));
  return est;
}

GameStats stats_from(const Tally& t, std::int64_t n, std::uint64_t seed) {
  GameStats stats;
  stats.n_trials = static_cast<std::uint64_t>(n);
  stats.seed = seed;
  stats.ww = make_estimate(t.correct_ww, t.considered_ww);
  stats.wp = make_estimate(t.correct_wp, t.considered_wp);
  return stats;
}

void require_trials(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("protocol run: need at least one trial");
}

} // namespace

int label_index(int b_ww, int b_wp) {
  return (b_ww == +1 ? 0 : 2) + (b_wp == +1 ? 0 : 1);
}

RetroModel build_retro_model(double alpha, double phi, double e) {
  RetroModel model;
  model.det = detector_from_efficiency(e);

  for (int b_ww : {+1, -1})
    for (int b_wp : {+1, -1}) {
      const PathState s = make_input_state(InputLabel{b_ww, b_wp, alpha, phi});
      model.outcome_probs[label_index(b_ww, b_wp)] = outcome_distribution(s, model.det);
    }

  model.p_ww_exact = 0.0;
  model.p_wp_exact = 0.0;
  for (int o = 0; o < 4; ++o) {
    const auto p = [&](int b_ww, int b_wp) { return model.outcome_probs[label_index(b_ww, b_wp)][o]; };
    const double ww_plus = 0.5 * (p(+1, +1) + p(+1, -1));
    const double ww_minus = 0.5 * (p(-1, +1) + p(-1, -1));
    const double wp_plus = 0.5 * (p(+1, +1) + p(-1, +1));
    const double wp_minus = 0.5 * (p(+1, -1) + p(-1, -1));
    model.guess_ww[o] = ml_guess(ww_plus, ww_minus);
    model.guess_wp[o] = ml_guess(wp_plus, wp_minus);
    model.p_ww_exact += 0.5 * (model.guess_ww[o] == +1 ? ww_plus : ww_minus);
    model.p_wp_exact += 0.5 * (model.guess_wp[o] == +1 ? wp_plus : wp_minus);
  }
  return model;
}

AlternativeModel build_alternative_model(double e) {
  AlternativeModel model;
  model.det = detector_from_efficiency(e);

  // Degenerate rectangles: pure which-way states |A>, |B> and pure
  // which-phase states (|A> +/- i|B>)/sqrt(2).
  for (int b : {+1, -1}) {
    const int idx = b == +1 ? 0 : 1;
    model.ww_probs[idx] =
        outcome_distribution(make_input_state(InputLabel{b, +1, kPi / 2, 0.0}), model.det);
    model.wp_probs[idx] =
        outcome_distribution(make_input_state(InputLabel{+1, b, 0.0, kPi / 2}), model.det);
  }

  for (int o = 0; o < 4; ++o) {
    model.guess_ww[o] = ml_guess(model.ww_probs[0][o], model.ww_probs[1][o]);
    model.guess_wp[o] = ml_guess(model.wp_probs[0][o], model.wp_probs[1][o]);
  }

  for (int b : {+1, -1}) {
    const int idx = b == +1 ? 0 : 1;
    double ww = 0.0, wp = 0.0;
    for (int o = 0; o < 4; ++o) {
      if (model.guess_ww[o] == b) ww += model.ww_probs[idx][o];
      if (model.guess_wp[o] == b) wp += model.wp_probs[idx][o];
    }
    model.p_ww_by_state[idx] = ww;
    model.p_wp_by_state[idx] = wp;
  }
  model.p_ww_exact = 0.5 * (model.p_ww_by_state[0] + model.p_ww_by_state[1]);
  model.p_wp_exact = 0.5 * (model.p_wp_by_state[0] + model.p_wp_by_state[1]);
  return model;
}

GameStats run_predictive(const PathState& s, const DetectorModel& det, PredictiveMode mode,
                         std::int64_t n, std::uint64_t seed, ExecPolicy policy,
                         std::vector<TrialRecord>* records) {
  require_trials(n);
  if (records) records->assign(static_cast<std::size_t>(n), TrialRecord{});

  Tally tally;
  if (mode == PredictiveMode::wp) {
    // exit-port prediction at the fringe maximum; port + is the likelier one
    const FringeScan scan = scan_fringe(s, det, 720);
    const double p_star = scan.p_max;
    tally = run_trials(n, policy, [&](std::int64_t i) {
      TrialRng rng(seed, static_cast<std::uint64_t>(i));
      const int port = rng.next_double() < p_star ? +1 : -1;
      if (records) {
        (*records)[i] = TrialRecord{i, 0, 0, 0, static_cast<std::int8_t>(port), 0, 0, +1};
      }
      return Tally{0, 0, 1, port == +1};
    });
  } else {
    // output splitter removed: joint (arm, pointer-click) statistics with the
    // pointer measured in the eigenbasis of w1 rho_a - w2 rho_b
    const double w1 = std::norm(s.amp_a);
    const double w2 = std::norm(s.amp_b);
    const Mat2 m = cx{w1, 0.0} * outer(det.pointer_a, det.pointer_a) -
                   cx{w2, 0.0} * outer(det.pointer_b, det.pointer_b);
    const auto eig = eig_hermitian(m);

    // outcome order: (A, h0), (A, h1), (B, h0), (B, h1)
    std::array<double, 4> probs{};
    for (int click = 0; click < 2; ++click) {
      probs[click] = w1 * std::norm(dot(eig.vectors[click], det.pointer_a));
      probs[2 + click] = w2 * std::norm(dot(eig.vectors[click], det.pointer_b));
    }
    std::array<std::int8_t, 2> guess_for_click{};
    for (int click = 0; click < 2; ++click) {
      const double lam = eig.values[click];
      guess_for_click[click] = std::abs(lam) <= kTieTol ? +1 : (lam > 0 ? +1 : -1);
    }

    tally = run_trials(n, policy, [&](std::int64_t i) {
      TrialRng rng(seed, static_cast<std::uint64_t>(i));
      const int o = sample4(probs, rng.next_double());
      const int arm = o < 2 ? +1 : -1;
      const int click = o & 1;
      const int g = guess_for_click[click];
      if (records) {
        (*records)[i] = TrialRecord{i,
                                    0,
                                    0,
                                    0,
                                    static_cast<std::int8_t>(arm),
                                    static_cast<std::int8_t>(click == 0 ? +1 : -1),
                                    static_cast<std::int8_t>(g),
                                    0};
      }
      return Tally{1, g == arm, 0, 0};
    });
  }
  return stats_from(tally, n, seed);
}

GameStats run_retrodictive(double alpha, double phi, double e, std::int64_t n,
                           std::uint64_t seed, ExecPolicy policy,
                           std::vector<TrialRecord>* records) {
  require_trials(n);
  const RetroModel model = build_retro_model(alpha, phi, e);
  if (records) records->assign(static_cast<std::size_t>(n), TrialRecord{});

  const Tally tally = run_trials(n, policy, [&](std::int64_t i) {
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    const int b_ww = rng.next_sign();
    const int b_wp = rng.next_sign();
    const int o = sample4(model.outcome_probs[label_index(b_ww, b_wp)], rng.next_double());
    const int g_ww = model.guess_ww[o];
    const int g_wp = model.guess_wp[o];
    if (records) {
      (*records)[i] = TrialRecord{i,
                                  static_cast<std::int8_t>(b_ww),
                                  static_cast<std::int8_t>(b_wp),
                                  0,
                                  static_cast<std::int8_t>(port_bit(o)),
                                  static_cast<std::int8_t>(pol_bit(o)),
                                  static_cast<std::int8_t>(g_ww),
                                  static_cast<std::int8_t>(g_wp)};
    }
    return Tally{1, g_ww == b_ww, 1, g_wp == b_wp};
  });
  return stats_from(tally, n, seed);
}

GameStats run_alternative(double e, std::int64_t n, std::uint64_t seed, bool averaged,
                          ExecPolicy policy, std::vector<TrialRecord>* records) {
  require_trials(n);
  const AlternativeModel model = build_alternative_model(e);
  if (records) records->assign(static_cast<std::size_t>(n), TrialRecord{});

  const Tally tally = run_trials(n, policy, [&](std::int64_t i) {
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    const int basis = rng.next_sign(); // +1 WW, -1 WP
    const int b_ww = rng.next_sign();
    const int b_wp = rng.next_sign();
    const auto& probs = basis == +1 ? model.ww_probs[b_ww == +1 ? 0 : 1]
                                    : model.wp_probs[b_wp == +1 ? 0 : 1];
    const int o = sample4(probs, rng.next_double());

    int g_ww = 0, g_wp = 0;
    Tally d;
    if (averaged) {
      // both bits guessed every run; the undisclosed one is a pure tie
      g_ww = basis == +1 ? model.guess_ww[o] : +1;
      g_wp = basis == -1 ? model.guess_wp[o] : +1;
      d = Tally{1, g_ww == b_ww, 1, g_wp == b_wp};
    } else if (basis == +1) {
      g_ww = model.guess_ww[o];
      d = Tally{1, g_ww == b_ww, 0, 0};
    } else {
      g_wp = model.guess_wp[o];
      d = Tally{0, 0, 1, g_wp == b_wp};
    }
    if (records) {
      (*records)[i] = TrialRecord{i,
                                  static_cast<std::int8_t>(b_ww),
                                  static_cast<std::int8_t>(b_wp),
                                  static_cast<std::int8_t>(basis),
                                  static_cast<std::int8_t>(port_bit(o)),
                                  static_cast<std::int8_t>(pol_bit(o)),
                                  static_cast<std::int8_t>(g_ww),
                                  static_cast<std::int8_t>(g_wp)};
    }
    return d;
  });
  return stats_from(tally, n, seed);
}

std::vector<FrontierPoint> frontier_sweep(double alpha, double phi,
                                          const std::vector<double>& e_grid) {
  const FamilyDistances fd = family_distances(alpha, phi);
  std::vector<FrontierPoint> out;
  out.reserve(e_grid.size());
  for (double e : e_grid) {
    if (e < -1e-12 || e > 1.0 + 1e-12) {
      throw std::invalid_argument("frontier_sweep: E values must lie in [0, 1]");
    }
    const double ec = std::min(1.0, std::max(0.0, e));
    out.push_back(FrontierPoint{ec, 0.5 * (1.0 + ec * fd.d_ww),
                                0.5 * (1.0 + std::sqrt(1.0 - ec * ec) * fd.d_wp)});
  }
  return out;
}

} // namespace mzi
