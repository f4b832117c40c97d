// bench.cpp
// Compares the serial reference engine against the OpenMP one on the
// retrodictive game and checks that they produce identical statistics.

#include "mzi/protocols.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

} // namespace

int main(int argc, char** argv) {
  const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 4000000;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 42;
  if (n < 1) {
    std::fprintf(stderr, "usage: mzi_bench [n_trials >= 1] [seed]\n");
    return 2;
  }

  const double alpha = std::numbers::pi / 6;
  const double phi = std::numbers::pi / 2;
  const double e = 0.6;

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif

  std::printf("retrodictive game, alpha=pi/6 phi=pi/2 E=%.2f, n=%lld, seed=%llu\n", e,
              static_cast<long long>(n), static_cast<unsigned long long>(seed));

  const double t0 = now_seconds();
  const mzi::GameStats serial =
      mzi::run_retrodictive(alpha, phi, e, n, seed, mzi::ExecPolicy{false});
  const double t1 = now_seconds();
  const mzi::GameStats parallel =
      mzi::run_retrodictive(alpha, phi, e, n, seed, mzi::ExecPolicy{true});
  const double t2 = now_seconds();

  const double serial_s = t1 - t0;
  const double parallel_s = t2 - t1;

  std::printf("%-22s %12s %10s %12s\n", "engine", "trials", "seconds", "Mtrials/s");
  std::printf("%-22s %12lld %10.3f %12.2f\n", "serial", static_cast<long long>(n), serial_s,
              n / serial_s / 1e6);
  std::printf("openmp (%2d threads)    %12lld %10.3f %12.2f\n", threads,
              static_cast<long long>(n), parallel_s, n / parallel_s / 1e6);
  std::printf("speedup: %.2fx\n", serial_s / parallel_s);

  const bool same = serial == parallel;
  std::printf("results identical: %s\n", same ? "yes" : "NO");
  if (same && serial.ww && serial.wp) {
    std::printf("p_ww_hat = %.6f (se %.6f), p_wp_hat = %.6f (se %.6f)\n", serial.ww->p_hat,
                serial.ww->std_err, serial.wp->p_hat, serial.wp->std_err);
  }
  return same ? 0 : 1;
}
