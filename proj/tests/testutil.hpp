// testutil.hpp
// Shared helpers for the unit tests: seeded random states, Hermitian
// matrices and unitaries.

#pragma once

#include "mzi/qmath.hpp"
#include "mzi/states.hpp"

#include <random>

namespace mzi::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0xC0FFEEULL);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng());
}

inline cx random_cx() { return cx{uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

template <std::size_t N>
CVec<N> random_unit_vec() {
  CVec<N> v;
  double n = 0.0;
  do {
    for (std::size_t i = 0; i < N; ++i) v[i] = random_cx();
    n = norm(v);
  } while (n < 1e-3);
  return normalized(v);
}

template <std::size_t N>
CMat<N> random_hermitian() {
  CMat<N> m;
  for (std::size_t i = 0; i < N * N; ++i) m.m[i] = random_cx();
  return symmetrize(m);
}

// Columns are the eigenvectors of a random Hermitian matrix, hence unitary.
template <std::size_t N>
CMat<N> random_unitary() {
  const auto eig = eig_hermitian(random_hermitian<N>());
  CMat<N> u;
  for (std::size_t c = 0; c < N; ++c)
    for (std::size_t r = 0; r < N; ++r) u(r, c) = eig.vectors[c][r];
  return u;
}

inline PathState random_path_state() {
  const Vec2 v = random_unit_vec<2>();
  return path_state(v[0], v[1]);
}

template <std::size_t N>
double max_abs_diff(const CMat<N>& a, const CMat<N>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
  return worst;
}

template <std::size_t N>
CMat<N> reconstruct(const EigResult<N>& eig) {
  CMat<N> m;
  for (std::size_t i = 0; i < N; ++i)
    m = m + cx{eig.values[i], 0.0} * outer(eig.vectors[i], eig.vectors[i]);
  return m;
}

} // namespace mzi::test
