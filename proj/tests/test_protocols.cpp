#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mzi/protocols.hpp"
#include "testutil.hpp"

#include <cmath>
#include <numbers>

using namespace mzi;
using namespace mzi::test;

namespace {
constexpr double kPi = std::numbers::pi;

double sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

PathState weighted_state(double w1) {
  return path_state(cx{std::sqrt(w1), 0.0}, cx{std::sqrt(1.0 - w1), 0.0});
}
} // namespace

TEST_CASE("engines reject empty runs") {
  CHECK_THROWS_AS(run_retrodictive(0.3, 0.4, 0.5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_alternative(0.5, 0, 1, false), std::invalid_argument);
  CHECK_THROWS_AS(
      run_predictive(weighted_state(0.5), detector_from_efficiency(0.3), PredictiveMode::ww, 0, 1),
      std::invalid_argument);
}

TEST_CASE("determinism: identical seed reproduces stats and records exactly") {
  std::vector<TrialRecord> rec1, rec2, rec3;
  const GameStats s1 = run_retrodictive(kPi / 6, kPi / 2, 0.6, 20000, 99, {}, &rec1);
  const GameStats s2 = run_retrodictive(kPi / 6, kPi / 2, 0.6, 20000, 99, {}, &rec2);
  CHECK(s1 == s2);
  CHECK(rec1 == rec2);

  const GameStats s3 = run_retrodictive(kPi / 6, kPi / 2, 0.6, 20000, 100, {}, &rec3);
  CHECK(s1.ww->successes != s3.ww->successes);
}

TEST_CASE("serial reference and parallel engine agree bit for bit") {
  std::vector<TrialRecord> serial_rec, parallel_rec;
  for (std::uint64_t seed : {7ULL, 17ULL, 12345ULL}) {
    const GameStats serial =
        run_retrodictive(0.8, 1.1, 0.45, 50000, seed, ExecPolicy{false}, &serial_rec);
    const GameStats parallel =
        run_retrodictive(0.8, 1.1, 0.45, 50000, seed, ExecPolicy{true}, &parallel_rec);
    CHECK(serial == parallel);
    CHECK(serial_rec == parallel_rec);

    const GameStats aser = run_alternative(0.7, 30000, seed, true, ExecPolicy{false});
    const GameStats apar = run_alternative(0.7, 30000, seed, true, ExecPolicy{true});
    CHECK(aser == apar);

    const GameStats pser = run_predictive(weighted_state(0.8), detector_from_efficiency(0.8),
                                          PredictiveMode::ww, 30000, seed, ExecPolicy{false});
    const GameStats ppar = run_predictive(weighted_state(0.8), detector_from_efficiency(0.8),
                                          PredictiveMode::ww, 30000, seed, ExecPolicy{true});
    CHECK(pser == ppar);
  }
}

TEST_CASE("retro model: Born + maximum likelihood reproduces the closed forms") {
  for (int it = 0; it < 200; ++it) {
    const double alpha = uniform(0.01, kPi / 2 - 0.01);
    const double phi = uniform(0.01, kPi - 0.01);
    const double e = uniform(0.01, 0.99);
    const RetroModel model = build_retro_model(alpha, phi, e);
    const RetrodictiveReport rep = retrodictive_probabilities(alpha, phi, e);
    CHECK(model.p_ww_exact == doctest::Approx(rep.p_ww).epsilon(1e-12));
    CHECK(model.p_wp_exact == doctest::Approx(rep.p_wp).epsilon(1e-12));
  }
}

TEST_CASE("predictive game: endpoint configurations") {
  // E = 0, balanced input, phase prediction is perfect
  const GameStats wp = run_predictive(weighted_state(0.5), detector_from_efficiency(0.0),
                                      PredictiveMode::wp, 20000, 5);
  REQUIRE(wp.wp.has_value());
  CHECK(!wp.ww.has_value());
  CHECK(wp.wp->p_hat == doctest::Approx(1.0).epsilon(1e-6));

  // E = 1, balanced input, path retrodiction from the pointer is perfect
  const GameStats ww = run_predictive(weighted_state(0.5), detector_from_efficiency(1.0),
                                      PredictiveMode::ww, 20000, 5);
  REQUIRE(ww.ww.has_value());
  CHECK(!ww.wp.has_value());
  CHECK(ww.ww->p_hat == doctest::Approx(1.0));
}

TEST_CASE("predictive game converges to (1+D)/2 and (1+V)/2") {
  const std::int64_t n = 200000;
  const PathState s = weighted_state(0.8); // P = 0.6
  const DetectorModel det = detector_from_efficiency(0.8);

  const double d_target = 0.5 * (1.0 + std::sqrt(0.7696)); // 0.93864
  const GameStats ww = run_predictive(s, det, PredictiveMode::ww, n, 11);
  CHECK(std::abs(ww.ww->p_hat - d_target) < 3.0 * sigma(d_target, n));

  const double v = std::sqrt(1.0 - 0.36) * std::sqrt(1.0 - 0.64);
  const double v_target = 0.5 * (1.0 + v);
  const GameStats wp = run_predictive(s, det, PredictiveMode::wp, n, 11);
  CHECK(std::abs(wp.wp->p_hat - v_target) < 3.0 * sigma(v_target, n));
}

TEST_CASE("retrodictive game: pinned convergence") {
  const std::int64_t n = 100000;

  const GameStats blind = run_retrodictive(kPi / 6, kPi / 2, 0.0, n, 3);
  CHECK(std::abs(blind.ww->p_hat - 0.5) < 3.0 * sigma(0.5, n));

  const GameStats sharp = run_retrodictive(kPi / 2, 0.5, 1.0, n, 3);
  CHECK(sharp.ww->p_hat == doctest::Approx(1.0));

  const GameStats mid = run_retrodictive(kPi / 6, kPi / 2, 0.6, 1000000, 42);
  CHECK(std::abs(mid.ww->p_hat - 0.65) < 3.0 * sigma(0.65, 1000000));
  CHECK(std::abs(mid.wp->p_hat - 0.8464101615137754) < 3.0 * sigma(0.84641, 1000000));
}

TEST_CASE("retrodictive game: 3-sigma convergence across 100 seeds") {
  const std::int64_t n = 100000;
  const double ww_target = 0.65;
  const double wp_target = 0.8464101615137754;
  int ok_ww = 0, ok_wp = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const GameStats stats = run_retrodictive(kPi / 6, kPi / 2, 0.6, n, seed);
    if (std::abs(stats.ww->p_hat - ww_target) < 3.0 * sigma(ww_target, n)) ++ok_ww;
    if (std::abs(stats.wp->p_hat - wp_target) < 3.0 * sigma(wp_target, n)) ++ok_wp;
  }
  CHECK(ok_ww >= 99);
  CHECK(ok_wp >= 99);
}

TEST_CASE("empirical outcome frequencies match the model distribution") {
  const std::int64_t n = 200000;
  const double alpha = 0.7, phi = 1.3, e = 0.55;
  std::vector<TrialRecord> records;
  run_retrodictive(alpha, phi, e, n, 21, {}, &records);

  const RetroModel model = build_retro_model(alpha, phi, e);
  std::array<double, 4> expected{};
  for (int l = 0; l < 4; ++l)
    for (int o = 0; o < 4; ++o) expected[o] += 0.25 * model.outcome_probs[l][o];

  std::array<std::int64_t, 4> counts{};
  for (const auto& r : records) {
    const int o = (r.pol_bit == +1 ? 0 : 2) + (r.port_bit == +1 ? 0 : 1);
    ++counts[o];
  }
  for (int o = 0; o < 4; ++o) {
    const double freq = static_cast<double>(counts[o]) / n;
    CHECK(std::abs(freq - expected[o]) < 3.0 * sigma(expected[o], n));
  }
}

TEST_CASE("alternative game: endpoints and record shape") {
  const GameStats sharp = run_alternative(1.0, 50000, 9, false);
  CHECK(sharp.ww->p_hat == doctest::Approx(1.0));
  CHECK(std::abs(sharp.wp->p_hat - 0.5) < 3.0 * sigma(0.5, sharp.wp->n));

  std::vector<TrialRecord> records;
  run_alternative(0.5, 2000, 9, false, {}, &records);
  for (const auto& r : records) {
    CHECK(r.basis != 0);
    // exactly the disclosed-basis bit is guessed
    CHECK(((r.basis == +1) ? (r.g_ww != 0 && r.g_wp == 0) : (r.g_ww == 0 && r.g_wp != 0)));
  }
}

TEST_CASE("alternative game: circle identity and averaged variant") {
  const std::int64_t n = 400000;
  for (double e : {0.3, 0.6}) {
    const GameStats stats = run_alternative(e, n, 13, false);
    const double x = 2.0 * stats.ww->p_hat - 1.0;
    const double y = 2.0 * stats.wp->p_hat - 1.0;
    const double lhs = x * x + y * y;
    // propagated 3 sigma on (2p-1)^2 sums
    const double s_ww = 2.0 * sigma(stats.ww->p_hat, static_cast<double>(stats.ww->n));
    const double s_wp = 2.0 * sigma(stats.wp->p_hat, static_cast<double>(stats.wp->n));
    const double tol = 3.0 * std::sqrt(std::pow(2.0 * std::abs(x) * s_ww, 2) +
                                       std::pow(2.0 * std::abs(y) * s_wp, 2));
    CHECK(std::abs(lhs - 1.0) < tol);
  }

  const GameStats avg = run_alternative(1.0 / std::sqrt(2.0), n, 13, true);
  CHECK(avg.ww->n == static_cast<std::uint64_t>(n));
  const double x = 2.0 * avg.ww->p_hat - 1.0;
  const double y = 2.0 * avg.wp->p_hat - 1.0;
  CHECK(x * x + y * y == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("alternative game: success probability is the same for both states in a basis") {
  for (double e : {0.05, 0.3, 0.7, 0.95}) {
    const AlternativeModel model = build_alternative_model(e);
    CHECK(model.p_ww_by_state[0] == doctest::Approx(model.p_ww_by_state[1]).epsilon(1e-12));
    CHECK(model.p_wp_by_state[0] == doctest::Approx(model.p_wp_by_state[1]).epsilon(1e-12));
    CHECK(model.p_ww_exact == doctest::Approx(0.5 * (1.0 + e)).epsilon(1e-12));
    CHECK(model.p_wp_exact ==
          doctest::Approx(0.5 * (1.0 + std::sqrt(1.0 - e * e))).epsilon(1e-12));
  }
}

TEST_CASE("frontier_sweep: endpoints and ellipse membership") {
  const double alpha = kPi / 6, phi = kPi / 2;
  const FamilyDistances fd = family_distances(alpha, phi);

  const auto lo = frontier_sweep(alpha, phi, {0.0});
  CHECK(lo[0].p_ww == doctest::Approx(0.5));
  CHECK(lo[0].p_wp == doctest::Approx(0.5 * (1.0 + fd.d_wp)).epsilon(1e-12));

  const auto hi = frontier_sweep(alpha, phi, {1.0});
  CHECK(hi[0].p_ww == doctest::Approx(0.5 * (1.0 + fd.d_ww)).epsilon(1e-12));
  CHECK(hi[0].p_wp == doctest::Approx(0.5));

  std::vector<double> grid;
  for (int k = 0; k <= 100; ++k) grid.push_back(k / 100.0);
  for (const auto& pt : frontier_sweep(alpha, phi, grid)) {
    const double u = (2.0 * pt.p_ww - 1.0) / fd.d_ww;
    const double v = (2.0 * pt.p_wp - 1.0) / fd.d_wp;
    CHECK(u * u + v * v == doctest::Approx(1.0).epsilon(1e-10));
  }

  CHECK_THROWS_AS(frontier_sweep(alpha, phi, {1.5}), std::invalid_argument);
}

TEST_CASE("frontier dominates the averaged alternative game at d_ww = d_wp = 1/sqrt(2)") {
  const double alpha = kPi / 4, phi = kPi / 2; // sin(alpha) = cos(alpha) sin(phi) = 1/sqrt(2)
  const FamilyDistances fd = family_distances(alpha, phi);
  CHECK(fd.d_ww == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(fd.d_wp == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  for (double e : {0.2, 0.5, 1.0 / std::sqrt(2.0), 0.9}) {
    // averaged alternative-game operating point
    const double avg_ww = 0.5 * (0.5 * (1.0 + e) + 0.5);
    const double avg_wp = 0.5 * (0.5 * (1.0 + std::sqrt(1.0 - e * e)) + 0.5);

    // frontier point with the same P_WP
    const double root = (2.0 * avg_wp - 1.0) / fd.d_wp;
    const double e_frontier = std::sqrt(1.0 - root * root);
    const auto pt = frontier_sweep(alpha, phi, {e_frontier});
    CHECK(pt[0].p_wp == doctest::Approx(avg_wp).epsilon(1e-12));
    CHECK(pt[0].p_ww - avg_ww > 0.01);
  }
}
