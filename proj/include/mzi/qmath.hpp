// qmath.hpp
// Dense complex linear algebra for the 2- and 4-dimensional Hilbert spaces
// used throughout the simulator: Hermitian eigendecomposition, trace norm,
// tensor products and the polarization partial trace.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace mzi {

using cx = std::complex<double>;

// Elementwise tolerance below which a matrix counts as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

template <std::size_t N>
struct CVec {
  static_assert(N == 2 || N == 4, "only 2- and 4-dimensional spaces are supported");
  std::array<cx, N> v{};

  cx& operator[](std::size_t i) { return v[i]; }
  const cx& operator[](std::size_t i) const { return v[i]; }
  static constexpr std::size_t dim() { return N; }
};

template <std::size_t N>
struct CMat {
  static_assert(N == 2 || N == 4, "only 2- and 4-dimensional spaces are supported");
  std::array<cx, N * N> m{};

  cx& operator()(std::size_t r, std::size_t c) { return m[r * N + c]; }
  const cx& operator()(std::size_t r, std::size_t c) const { return m[r * N + c]; }
  static constexpr std::size_t dim() { return N; }

  static CMat identity() {
    CMat out;
    for (std::size_t i = 0; i < N; ++i) out(i, i) = cx{1.0, 0.0};
    return out;
  }
};

using Vec2 = CVec<2>;
using Vec4 = CVec<4>;
using Mat2 = CMat<2>;
using Mat4 = CMat<4>;

// ---- elementwise arithmetic -------------------------------------------------

template <std::size_t N>
CVec<N> operator+(const CVec<N>& a, const CVec<N>& b) {
  CVec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + b[i];
  return out;
}

template <std::size_t N>
CVec<N> operator-(const CVec<N>& a, const CVec<N>& b) {
  CVec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i] - b[i];
  return out;
}

template <std::size_t N>
CVec<N> operator*(cx s, const CVec<N>& a) {
  CVec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = s * a[i];
  return out;
}

template <std::size_t N>
CMat<N> operator+(const CMat<N>& a, const CMat<N>& b) {
  CMat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = a.m[i] + b.m[i];
  return out;
}

template <std::size_t N>
CMat<N> operator-(const CMat<N>& a, const CMat<N>& b) {
  CMat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = a.m[i] - b.m[i];
  return out;
}

template <std::size_t N>
CMat<N> operator*(cx s, const CMat<N>& a) {
  CMat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = s * a.m[i];
  return out;
}

template <std::size_t N>
CMat<N> operator*(const CMat<N>& a, const CMat<N>& b) {
  CMat<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t k = 0; k < N; ++k) {
      const cx arc = a(r, k);
      for (std::size_t c = 0; c < N; ++c) out(r, c) += arc * b(k, c);
    }
  return out;
}

template <std::size_t N>
CVec<N> operator*(const CMat<N>& a, const CVec<N>& x) {
  CVec<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out[r] += a(r, c) * x[c];
  return out;
}

// <a|b>, conjugate-linear in the first argument.
template <std::size_t N>
cx dot(const CVec<N>& a, const CVec<N>& b) {
  cx s{};
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <std::size_t N>
double norm(const CVec<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::norm(a[i]);
  return std::sqrt(s);
}

template <std::size_t N>
CVec<N> normalized(const CVec<N>& a) {
  const double n = norm(a);
  return cx{1.0 / n, 0.0} * a;
}

// |v><w|
template <std::size_t N>
CMat<N> outer(const CVec<N>& v, const CVec<N>& w) {
  CMat<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = v[r] * std::conj(w[c]);
  return out;
}

template <std::size_t N>
CMat<N> adjoint(const CMat<N>& a) {
  CMat<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = std::conj(a(c, r));
  return out;
}

template <std::size_t N>
cx trace(const CMat<N>& a) {
  cx t{};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

template <std::size_t N>
bool is_hermitian(const CMat<N>& a, double tol = kHermitianTol) {
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
  return true;
}

// (M + M†)/2
template <std::size_t N>
CMat<N> symmetrize(const CMat<N>& a) {
  CMat<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
  return out;
}

// ---- spectral decomposition -------------------------------------------------

template <std::size_t N>
struct EigResult {
  std::array<double, N> values;   // descending
  std::array<CVec<N>, N> vectors; // orthonormal, values[i] <-> vectors[i]
};

// Analytic 2x2 Hermitian eigendecomposition (trace/determinant formula).
// Eigenvectors are phase-gauged so the largest-magnitude component is real
// and nonnegative. Throws std::invalid_argument on non-Hermitian input.
EigResult<2> eig_hermitian(const Mat2& m);

// 4x4 Hermitian eigendecomposition via cyclic complex Jacobi rotations,
// off-diagonal convergence threshold 1e-14. Same gauge and error behavior
// as the 2x2 overload.
EigResult<4> eig_hermitian(const Mat4& m);

// Tr|M| = sum of |eigenvalues| for Hermitian M.
double trace_norm(const Mat2& m);
double trace_norm(const Mat4& m);

// Kronecker products, path factor first, polarization second.
Vec4 tensor(const Vec2& path, const Vec2& pol);
Mat4 tensor(const Mat2& path, const Mat2& pol);

// Trace out the polarization factor of a path (x) polarization operator.
Mat2 partial_trace_pol(const Mat4& m);

} // namespace mzi
