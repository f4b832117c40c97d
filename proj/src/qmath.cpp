#include "mzi/qmath.hpp"

#include <algorithm>
#include <stdexcept>

namespace mzi {

namespace {

template <std::size_t N>
void require_hermitian(const CMat<N>& m) {
  if (!is_hermitian(m)) {
    throw std::invalid_argument("qmath: matrix is not Hermitian within tolerance");
  }
}

// Fix the unobservable eigenvector phase: rotate so the largest-magnitude
// component is real and nonnegative. Keeps decompositions byte-stable.
template <std::size_t N>
void gauge_phase(CVec<N>& v) {
  std::size_t k = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      k = i;
    }
  }
  if (best == 0.0) return;
  const cx ph = std::conj(v[k]) / best;
  for (std::size_t i = 0; i < N; ++i) v[i] *= ph;
}

template <std::size_t N>
void sort_descending(EigResult<N>& r) {
  std::array<std::size_t, N> idx{};
  for (std::size_t i = 0; i < N; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return r.values[a] > r.values[b]; });
  EigResult<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out.values[i] = r.values[idx[i]];
    out.vectors[i] = r.vectors[idx[i]];
  }
  r = out;
}

} // namespace

EigResult<2> eig_hermitian(const Mat2& m_in) {
  require_hermitian(m_in);
  const Mat2 m = symmetrize(m_in);

  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const cx alpha = m(0, 1);

  const double mean = 0.5 * (a + d);
  const double h = 0.5 * (a - d);
  const double r = std::hypot(h, std::abs(alpha));

  EigResult<2> out;
  out.values = {mean + r, mean - r};

  if (r < 1e-300) {
    // degenerate: any orthonormal basis diagonalizes
    out.vectors[0] = Vec2{{cx{1.0, 0.0}, cx{0.0, 0.0}}};
    out.vectors[1] = Vec2{{cx{0.0, 0.0}, cx{1.0, 0.0}}};
    return out;
  }

  // Two algebraically equivalent eigenvector formulas; pick the better
  // conditioned one depending on the sign of h.
  Vec2 v0, v1;
  if (h >= 0.0) {
    v0 = Vec2{{cx{r + h, 0.0}, std::conj(alpha)}};
    v1 = Vec2{{-alpha, cx{r + h, 0.0}}};
  } else {
    v0 = Vec2{{alpha, cx{r - h, 0.0}}};
    v1 = Vec2{{cx{-(r - h), 0.0}, std::conj(alpha)}};
  }
  out.vectors[0] = normalized(v0);
  out.vectors[1] = normalized(v1);
  gauge_phase(out.vectors[0]);
  gauge_phase(out.vectors[1]);
  return out;
}

EigResult<4> eig_hermitian(const Mat4& m_in) {
  require_hermitian(m_in);
  Mat4 a = symmetrize(m_in);
  Mat4 v = Mat4::identity();

  constexpr double kOffTol = 1e-14;
  constexpr int kMaxSweeps = 60;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off < kOffTol) break;

    for (std::size_t p = 0; p < 4; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const cx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < kOffTol * 1e-2) continue;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double y = (aqq - app) / (2.0 * r);
        const double t =
            (y == 0.0) ? 1.0 : ((y > 0.0 ? 1.0 : -1.0) / (std::abs(y) + std::hypot(1.0, y)));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cx g = (s * apq) / r; // s * e^{i arg(apq)}

        // A <- G† A G with the rotation in the (p,q) plane
        for (std::size_t i = 0; i < 4; ++i) {
          const cx aip = a(i, p);
          const cx aiq = a(i, q);
          a(i, p) = c * aip - std::conj(g) * aiq;
          a(i, q) = g * aip + c * aiq;
        }
        for (std::size_t j = 0; j < 4; ++j) {
          const cx apj = a(p, j);
          const cx aqj = a(q, j);
          a(p, j) = c * apj - g * aqj;
          a(q, j) = std::conj(g) * apj + c * aqj;
        }
        for (std::size_t i = 0; i < 4; ++i) {
          const cx vip = v(i, p);
          const cx viq = v(i, q);
          v(i, p) = c * vip - std::conj(g) * viq;
          v(i, q) = g * vip + c * viq;
        }
      }
    }
  }

  EigResult<4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.values[i] = a(i, i).real();
    for (std::size_t r = 0; r < 4; ++r) out.vectors[i][r] = v(r, i);
    gauge_phase(out.vectors[i]);
  }
  sort_descending(out);
  return out;
}

double trace_norm(const Mat2& m) {
  const auto eig = eig_hermitian(m);
  return std::abs(eig.values[0]) + std::abs(eig.values[1]);
}

double trace_norm(const Mat4& m) {
  const auto eig = eig_hermitian(m);
  double s = 0.0;
  for (double lam : eig.values) s += std::abs(lam);
  return s;
}

Vec4 tensor(const Vec2& path, const Vec2& pol) {
  Vec4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) out[2 * i + k] = path[i] * pol[k];
  return out;
}

Mat4 tensor(const Mat2& path, const Mat2& pol) {
  Mat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = path(i, j) * pol(k, l);
  return out;
}

Mat2 partial_trace_pol(const Mat4& m) {
  Mat2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) out(i, j) += m(2 * i + k, 2 * j + k);
  return out;
}

} // namespace mzi
