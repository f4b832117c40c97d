#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mzi/qmath.hpp"
#include "testutil.hpp"

#include <cmath>

using namespace mzi;
using namespace mzi::test;

TEST_CASE("trace_norm: pinned values") {
  Mat2 zero;
  CHECK(trace_norm(zero) == 0.0);

  CHECK(trace_norm(Mat2::identity()) == doctest::Approx(2.0));

  Mat2 d;
  d(0, 0) = 0.8;
  d(1, 1) = -0.2;
  // eigenvalues 0.8 and -0.2, so |0.8| + |-0.2| = 1.0
  CHECK(trace_norm(d) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("trace_norm: rejects non-Hermitian input") {
  Mat2 m;
  m(0, 1) = cx{1.0, 0.0};
  m(1, 0) = cx{0.5, 0.0};
  CHECK_THROWS_AS(trace_norm(m), std::invalid_argument);

  Mat4 m4;
  m4(0, 3) = cx{0.0, 1.0};
  m4(3, 0) = cx{0.0, 1.0}; // should be -i
  CHECK_THROWS_AS(trace_norm(m4), std::invalid_argument);
}

TEST_CASE("eig_hermitian 2x2: pinned spectra") {
  Mat2 sz;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const auto eig = eig_hermitian(sz);
  CHECK(eig.values[0] == doctest::Approx(1.0));
  CHECK(eig.values[1] == doctest::Approx(-1.0));
  CHECK(std::abs(eig.vectors[0][0]) == doctest::Approx(1.0));
  CHECK(std::abs(eig.vectors[1][1]) == doctest::Approx(1.0));

  // rank-1 projector (I + sigma_x)/2
  Mat2 proj;
  proj(0, 0) = proj(1, 1) = 0.5;
  proj(0, 1) = proj(1, 0) = 0.5;
  const auto eig2 = eig_hermitian(proj);
  CHECK(eig2.values[0] == doctest::Approx(1.0));
  CHECK(eig2.values[1] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("eig_hermitian: reconstruction and orthonormality") {
  for (int it = 0; it < 1000; ++it) {
    const Mat2 h2 = random_hermitian<2>();
    const auto e2 = eig_hermitian(h2);
    CHECK(max_abs_diff(reconstruct(e2), symmetrize(h2)) < 1e-10);
    CHECK(std::abs(dot(e2.vectors[0], e2.vectors[1])) < 1e-12);

    const Mat4 h4 = random_hermitian<4>();
    const auto e4 = eig_hermitian(h4);
    CHECK(max_abs_diff(reconstruct(e4), symmetrize(h4)) < 1e-10);
    for (int i = 0; i < 4; ++i) {
      CHECK(norm(e4.vectors[i]) == doctest::Approx(1.0).epsilon(1e-12));
      for (int j = i + 1; j < 4; ++j) {
        CHECK(std::abs(dot(e4.vectors[i], e4.vectors[j])) < 1e-12);
      }
    }
  }
}

TEST_CASE("eig_hermitian: eigenvalue equation") {
  for (int it = 0; it < 200; ++it) {
    const Mat4 h = symmetrize(random_hermitian<4>());
    const auto eig = eig_hermitian(h);
    for (int i = 0; i < 4; ++i) {
      const Vec4 lhs = h * eig.vectors[i];
      const Vec4 rhs = cx{eig.values[i], 0.0} * eig.vectors[i];
      CHECK(norm(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("tensor: pinned values") {
  const Vec2 arm_a{{cx{1.0, 0.0}, cx{0.0, 0.0}}};
  const Vec2 pol_a{{cx{1.0, 0.0}, cx{0.0, 0.0}}};
  const Vec4 basis = tensor(arm_a, pol_a);
  CHECK(basis[0] == cx{1.0, 0.0});
  CHECK(std::abs(basis[1]) + std::abs(basis[2]) + std::abs(basis[3]) == 0.0);

  CHECK(max_abs_diff(tensor(Mat2::identity(), Mat2::identity()), Mat4::identity()) == 0.0);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Vec2 balanced{{cx{inv_sqrt2, 0.0}, cx{inv_sqrt2, 0.0}}};
  const Vec4 joint = tensor(balanced, pol_a);
  CHECK(joint[0].real() == doctest::Approx(inv_sqrt2));
  CHECK(std::abs(joint[1]) == 0.0);
  CHECK(joint[2].real() == doctest::Approx(inv_sqrt2));
  CHECK(std::abs(joint[3]) == 0.0);
}

TEST_CASE("partial_trace_pol: pinned values and round trip") {
  // product state: recover the path factor exactly
  for (int it = 0; it < 100; ++it) {
    const Vec2 path = random_unit_vec<2>();
    const Vec2 pol = random_unit_vec<2>();
    const Mat2 recovered = partial_trace_pol(tensor(outer(path, path), outer(pol, pol)));
    CHECK(max_abs_diff(recovered, outer(path, path)) < 1e-12);
  }

  const Mat2 half = cx{0.5, 0.0} * Mat2::identity();
  CHECK(max_abs_diff(partial_trace_pol(cx{0.25, 0.0} * Mat4::identity()), half) < 1e-15);

  // maximally entangled (|A,a> + |B,b>)/sqrt(2) reduces to I/2
  Vec4 bell;
  bell[0] = cx{1.0 / std::sqrt(2.0), 0.0};
  bell[3] = cx{1.0 / std::sqrt(2.0), 0.0};
  CHECK(max_abs_diff(partial_trace_pol(outer(bell, bell)), half) < 1e-12);
}

TEST_CASE("trace_norm properties") {
  for (int it = 0; it < 500; ++it) {
    const Mat2 h = random_hermitian<2>();
    CHECK(trace_norm(h) >= std::abs(trace(h).real()) - 1e-12);

    const Mat2 u = random_unitary<2>();
    const Mat2 rotated = u * h * adjoint(u);
    CHECK(trace_norm(rotated) == doctest::Approx(trace_norm(h)).epsilon(1e-10));

    const Mat4 h4 = random_hermitian<4>();
    CHECK(trace_norm(h4) >= std::abs(trace(h4).real()) - 1e-12);
    const Mat4 u4 = random_unitary<4>();
    CHECK(trace_norm(u4 * h4 * adjoint(u4)) == doctest::Approx(trace_norm(h4)).epsilon(1e-10));
  }
}
