#include "mzi/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzi {

namespace {

constexpr double kPi = std::numbers::pi;
const cx kI{0.0, 1.0};

constexpr double kDegenerateE = 1e-12;

Mat4 path_kron_identity(const Mat2& p) {
  return tensor(p, Mat2::identity());
}

} // namespace

DetectorModel build_detector(double beta, const Vec2& pointer_in) {
  if (std::abs(norm(pointer_in) - 1.0) > 1e-12) {
    throw std::invalid_argument("build_detector: pointer state is not normalized");
  }
  DetectorModel det;
  det.beta = beta;
  det.pointer_in = pointer_in;
  det.pointer_a = Vec2{{pointer_in[0], std::polar(1.0, 2.0 * beta) * pointer_in[1]}};
  det.pointer_b = pointer_in;
  // sqrt(1 - |<a|b>|^2) evaluated through the Gram determinant
  // |a0 b1 - a1 b0|, which is the same quantity for unit vectors but free of
  // the cancellation that would otherwise blow 1e-16 dust up to 1e-8 near
  // coincident pointers.
  const cx det_ab = det.pointer_a[0] * det.pointer_b[1] - det.pointer_a[1] * det.pointer_b[0];
  det.efficiency = std::min(1.0, std::abs(det_ab));
  return det;
}

DetectorModel detector_from_efficiency(double e) {
  if (e < -1e-12 || e > 1.0 + 1e-12) {
    throw std::invalid_argument("detector_from_efficiency: E must lie in [0, 1]");
  }
  const double clamped = std::min(1.0, std::max(0.0, e));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return build_detector(std::asin(clamped), Vec2{{cx{inv_sqrt2, 0.0}, cx{inv_sqrt2, 0.0}}});
}

Vec4 apply(const OpticalElement& el, const Vec4& psi) { return el.u * psi; }

OpticalElement input_splitter(double alpha, int b_ww) {
  const double ang = kPi / 4 + b_ww * alpha / 2;
  Mat2 r;
  r(0, 0) = std::cos(ang);
  r(0, 1) = -std::sin(ang);
  r(1, 0) = std::sin(ang);
  r(1, 1) = std::cos(ang);
  return OpticalElement{ElementKind::input_splitter, path_kron_identity(r)};
}

OpticalElement phase_delay(double phase) {
  Mat2 p;
  p(0, 0) = cx{1.0, 0.0};
  p(1, 1) = std::polar(1.0, phase);
  return OpticalElement{ElementKind::phase_delay, path_kron_identity(p)};
}

OpticalElement faraday_element(double beta) {
  // acts on polarization in arm A only
  Mat2 f;
  f(0, 0) = cx{1.0, 0.0};
  f(1, 1) = std::polar(1.0, 2.0 * beta);
  Mat4 u = tensor(Mat2{{cx{1.0, 0.0}, cx{}, cx{}, cx{}}}, f) +
           tensor(Mat2{{cx{}, cx{}, cx{}, cx{1.0, 0.0}}}, Mat2::identity());
  return OpticalElement{ElementKind::faraday, u};
}

OpticalElement output_splitter() {
  // |A> -> (|+> + |->)/sqrt(2),  |B> -> (|+> - |->)/(sqrt(2) i)
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Mat2 b;
  b(0, 0) = cx{inv_sqrt2, 0.0};
  b(0, 1) = -kI * inv_sqrt2;
  b(1, 0) = cx{inv_sqrt2, 0.0};
  b(1, 1) = kI * inv_sqrt2;
  return OpticalElement{ElementKind::output_splitter, path_kron_identity(b)};
}

OpticalElement polarizing_splitter(const PointerBasis& basis) {
  Mat2 w;
  w(0, 0) = std::conj(basis.a_prime[0]);
  w(0, 1) = std::conj(basis.a_prime[1]);
  w(1, 0) = std::conj(basis.b_prime[0]);
  w(1, 1) = std::conj(basis.b_prime[1]);
  return OpticalElement{ElementKind::polarizing_splitter,
                        tensor(Mat2::identity(), w)};
}

PointerBasis optimal_pointer_basis(const DetectorModel& det) {
  const Vec2& a = det.pointer_a;
  const Vec2& b = det.pointer_b;
  const cx g = dot(a, b);
  const double e = det.efficiency;

  if (e >= 1.0 - kDegenerateE) {
    // orthogonal pointers discriminate themselves
    return PointerBasis{a, b};
  }
  if (e <= kDegenerateE) {
    // coincident pointers: basis at 45 degrees to the common state
    const Vec2 perp{{-std::conj(b[1]), std::conj(b[0])}};
    return PointerBasis{
        normalized(Vec2{{b[0] + kI * perp[0], b[1] + kI * perp[1]}}),
        normalized(Vec2{{b[0] - kI * perp[0], b[1] - kI * perp[1]}})};
  }

  // Phase-align |b> against |a>, then split the pair symmetrically.
  const cx align = std::polar(1.0, -std::arg(g));
  const Vec2 bt = align * b;
  const Vec2 e1 = normalized(a + bt);
  const Vec2 e2 = normalized(a - bt);
  const cx inv_sqrt2{1.0 / std::sqrt(2.0), 0.0};
  return PointerBasis{inv_sqrt2 * (e1 + e2), inv_sqrt2 * (e1 - e2)};
}

Vec4 evolve(const PathState& in, const DetectorModel& det, double phase_knob) {
  Vec4 psi = tensor(as_vec(in), det.pointer_in);
  psi = apply(faraday_element(det.beta), psi);
  psi = apply(phase_delay(phase_knob), psi);
  psi = apply(output_splitter(), psi);
  return psi;
}

double port_plus_probability(const Vec4& out) {
  return std::norm(out[0]) + std::norm(out[1]);
}

int port_bit(int outcome) { return (outcome == kOutAPlus || outcome == kOutBPlus) ? +1 : -1; }

int pol_bit(int outcome) { return (outcome == kOutAPlus || outcome == kOutAMinus) ? +1 : -1; }

std::array<double, 4> measurement_distribution(const Vec4& out, const PointerBasis& basis) {
  const Vec4 split = apply(polarizing_splitter(basis), out);
  // split index = 2*port + pol, pol 0 = a'
  return {std::norm(split[0]), std::norm(split[2]), std::norm(split[1]), std::norm(split[3])};
}

double working_phase(const DetectorModel& det) {
  return kPi - std::arg(dot(det.pointer_a, det.pointer_b));
}

std::array<double, 4> outcome_distribution(const PathState& in, const DetectorModel& det) {
  const Vec4 out = evolve(in, det, working_phase(det));
  return measurement_distribution(out, optimal_pointer_basis(det));
}

KrausSet extract_kraus(const DetectorModel& det) {
  const double e = det.efficiency;
  const double sp = std::sqrt(1.0 + e);
  const double sm = std::sqrt(1.0 - e);
  const double inv = 1.0 / (2.0 * std::sqrt(2.0));

  KrausSet ks;
  for (int outcome = 0; outcome < 4; ++outcome) {
    const double s = static_cast<double>(port_bit(outcome));
    const double ca = pol_bit(outcome) > 0 ? sp : sm; // weight on <A|
    const double cb = pol_bit(outcome) > 0 ? sm : sp; // weight on <B|
    Mat2& k = ks.k[outcome];
    // (1/2)|s>( ca <A| + i s cb <B| ) with |s> = (1, i s)/sqrt(2)
    k(0, 0) = inv * ca;
    k(0, 1) = inv * kI * s * cb;
    k(1, 0) = inv * kI * s * ca;
    k(1, 1) = -inv * cb;
  }
  return ks;
}

std::array<double, 4> kraus_probabilities(const KrausSet& ks, const PathState& in) {
  std::array<double, 4> probs{};
  const Vec2 psi = as_vec(in);
  for (int outcome = 0; outcome < 4; ++outcome) {
    const Vec2 mapped = ks.k[outcome] * psi;
    probs[outcome] = std::norm(mapped[0]) + std::norm(mapped[1]);
  }
  return probs;
}

} // namespace mzi
