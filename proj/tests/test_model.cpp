#include <cmath>
#include <vector>

#include "doctest.h"
#include "equicycle/error.hpp"
#include "equicycle/model.hpp"
#include "support.hpp"

using namespace equicycle;
using testing::Draws;

namespace {

// Cartesian polynomials as printed in the source, kept as an independent
// check on the implemented field.
Vec2 printed_cartesian(const Params& q, double x, double y) {
  const double p1 = q.p1, p2 = q.p2, s1 = q.s1, s2 = q.s2;
  auto m = [&](int i, int j) { return std::pow(x, i) * std::pow(y, j); };
  const double P =
      p1 * m(9, 0) - m(11, 0) + s1 * m(11, 0) - p2 * m(8, 1) - s2 * m(10, 1) +
      4 * p1 * m(7, 2) + 55 * m(9, 2) + 5 * s1 * m(9, 2) - 4 * p2 * m(6, 3) -
      5 * s2 * m(8, 3) + 6 * p1 * m(5, 4) - 330 * m(7, 4) + 10 * s1 * m(7, 4) -
      6 * p2 * m(4, 5) - 10 * s2 * m(6, 5) + 4 * p1 * m(3, 6) + 462 * m(5, 6) +
      10 * s1 * m(5, 6) - 4 * p2 * m(2, 7) - 10 * s2 * m(4, 7) + p1 * m(1, 8) -
      165 * m(3, 8) + 5 * s1 * m(3, 8) - p2 * m(0, 9) - 5 * s2 * m(2, 9) +
      11 * m(1, 10) + s1 * m(1, 10) - s2 * m(0, 11);
  const double Q =
      p2 * m(9, 0) + s2 * m(11, 0) + p1 * m(8, 1) + 11 * m(10, 1) +
      s1 * m(10, 1) + 4 * p2 * m(7, 2) + 5 * s2 * m(9, 2) + 4 * p1 * m(6, 3) -
      165 * m(8, 3) + 5 * s1 * m(8, 3) + 6 * p2 * m(5, 4) + 10 * s2 * m(7, 4) +
      6 * p1 * m(4, 5) + 462 * m(6, 5) + 10 * s1 * m(6, 5) + 4 * p2 * m(3, 6) +
      10 * s2 * m(5, 6) + 4 * p1 * m(2, 7) - 330 * m(4, 7) + 10 * s1 * m(4, 7) +
      p2 * m(1, 8) + 5 * s2 * m(3, 8) + p1 * m(0, 9) + 55 * m(2, 9) +
      5 * s1 * m(2, 9) + s2 * m(1, 10) - m(0, 11) + s1 * m(0, 11);
  return {P, Q};
}

}  // namespace

TEST_CASE("complex field at fixed points") {
  CHECK(eval_complex_field({1, 2, 3, 4}, 1.0) == Complex(3.0, 6.0));
  CHECK(eval_complex_field({1.3, -2, 0.7, 4}, 0.0) == Complex(0.0, 0.0));
  // -3 - i from a separate complex-arithmetic evaluation
  const Complex v = eval_complex_field({0, 1, 0, 2}, Complex(0.0, 1.0));
  CHECK(v.real() == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("cartesian form matches complex form") {
  const Params p{1, -1, -0.5, 1.2};
  const Complex f = eval_complex_field(p, Complex(1.0, 1.0));
  const Vec2 g = eval_cartesian_field(p, {1.0, 1.0});
  // 9.6 + 54.4 i computed independently
  CHECK(f.real() == doctest::Approx(9.6).epsilon(1e-13));
  CHECK(f.imag() == doctest::Approx(54.4).epsilon(1e-13));
  CHECK(g[0] == doctest::Approx(f.real()).epsilon(1e-13));
  CHECK(g[1] == doctest::Approx(f.imag()).epsilon(1e-13));
  CHECK(eval_cartesian_field(p, {0.0, 0.0}) == Vec2{0.0, 0.0});
}

TEST_CASE("printed cartesian polynomials agree with the field") {
  Draws d(11);
  for (int i = 0; i < 200; ++i) {
    const Params p = d.admissible();
    const Complex z = d.point(1.8);
    const Vec2 want = printed_cartesian(p, z.real(), z.imag());
    const Vec2 got = eval_cartesian_field(p, PlanePoint::from(z));
    const double scale = 1.0 + std::hypot(want[0], want[1]);
    CHECK(std::abs(got[0] - want[0]) < 1e-11 * scale);
    CHECK(std::abs(got[1] - want[1]) < 1e-11 * scale);
  }
}

TEST_CASE("raw polar field is r^4 times the rescaled field") {
  Draws d(12);
  for (int i = 0; i < 200; ++i) {
    const Params p = d.admissible();
    const PolarPoint pt(d.uniform(0.0, 3.0), d.uniform(0.0, kTwoPi));
    const Vec2 raw = eval_polar_field_raw(p, pt);
    const Vec2 res = eval_polar_field(p, pt);
    const double r4 = std::pow(pt.r(), 4);
    for (int k = 0; k < 2; ++k) {
      CHECK(std::abs(raw[k] - r4 * res[k]) <= 1e-12 * std::abs(raw[k]) + 1e-300);
    }
  }
  CHECK(eval_polar_field_raw({1, -1, -0.5, 1.2}, PolarPoint(0.0, 1.0)) == Vec2{0.0, 0.0});
}

TEST_CASE("polar field follows from the cartesian field by the chain rule") {
  Draws d(13);
  for (int i = 0; i < 100; ++i) {
    const Params p = d.admissible();
    const Complex z = d.point(1.5);
    if (std::abs(z) < 1e-3) continue;
    const Vec2 f = eval_cartesian_field(p, PlanePoint::from(z));
    const double x = z.real(), y = z.imag();
    const double rho2 = x * x + y * y;
    // r = x^2 + y^2, theta = atan2(y, x)
    const double rdot = 2.0 * (x * f[0] + y * f[1]);
    const double thdot = (x * f[1] - y * f[0]) / rho2;
    const Vec2 polar = eval_polar_field_raw(p, to_polar(PlanePoint::from(z)));
    CHECK(testing::rel_err(polar[0], rdot) < 1e-10);
    CHECK(testing::rel_err(polar[1], thdot) < 1e-10);
  }
}

TEST_CASE("rescaled polar field at special points") {
  const Params p{0.4, -1.7, 0.3, 1.5};
  CHECK(eval_polar_field(p, PolarPoint(0.0, 0.7)) == Vec2{0.0, p.p2});
  // On the curve where dtheta/ds vanishes
  const Params h{0.0, -1.0, 0.0, 1.2};
  const Vec2 v = eval_polar_field(h, PolarPoint(1.0 / 1.2, 0.0));
  CHECK(std::abs(v[1]) < 1e-15);
}

TEST_CASE("equivariance under the twelve rotations") {
  Draws d(14);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Params p = d.admissible();
    const Complex z = d.point(2.0);
    const Complex fz = eval_complex_field(p, z);
    for (int k = 0; k < 12; ++k) {
      const Complex lhs = eval_complex_field(p, rotate(z, k));
      const double res = std::abs(lhs - rotate(fz, k)) / (1.0 + std::abs(fz));
      worst = std::max(worst, res);
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("rotation action") {
  const Complex z(0.3, -1.1);
  CHECK(rotate(z, 0) == z);
  CHECK(std::abs(rotate(Complex(1.0, 0.0), 6) - Complex(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(rotate(Complex(1.0, 0.0), 3) - Complex(0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(rotate(z, 12), Error);
  CHECK_THROWS_AS(rotate(z, -1), Error);
  const PolarPoint pp = rotate(PolarPoint(2.0, 0.1), 1);
  CHECK(pp.r() == 2.0);
  CHECK(pp.theta() == doctest::Approx(0.1 + kSectorAngle).epsilon(1e-15));
}

TEST_CASE("divergence vanishes exactly in the Hamiltonian case") {
  Draws d(15);
  for (int i = 0; i < 100; ++i) {
    const Params p{0.0, d.signed_range(0.3, 2.0), 0.0, d.signed_range(1.05, 3.0)};
    const Complex z = d.point(1.5);
    const Vec2 f = eval_cartesian_field(p, PlanePoint::from(z));
    CHECK(std::abs(cartesian_divergence(p, PlanePoint::from(z))) <
          1e-10 * (1.0 + std::hypot(f[0], f[1])));
  }
  // Nonzero p1 or s1: 10 p1 |z|^8 + 12 s1 |z|^10 does not vanish at |z| = 1.
  CHECK(std::abs(cartesian_divergence({0.5, -1, 0, 1.2}, {1.0, 0.0})) > 1.0);
  CHECK(std::abs(cartesian_divergence({0.0, -1, -0.5, 1.2}, {0.6, 0.8})) > 1.0);
}

TEST_CASE("divergence matches finite differences") {
  Draws d(16);
  for (int i = 0; i < 50; ++i) {
    const Params p = d.admissible();
    const Complex z = d.point(1.2);
    const double h = 1e-6;
    const double x = z.real(), y = z.imag();
    const double dPdx = (eval_cartesian_field(p, {x + h, y})[0] -
                         eval_cartesian_field(p, {x - h, y})[0]) / (2 * h);
    const double dQdy = (eval_cartesian_field(p, {x, y + h})[1] -
                         eval_cartesian_field(p, {x, y - h})[1]) / (2 * h);
    CHECK(cartesian_divergence(p, {x, y}) ==
          doctest::Approx(dPdx + dQdy).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("Hamiltonian criterion is exact") {
  CHECK(is_hamiltonian({0, 1, 0, 2}));
  CHECK_FALSE(is_hamiltonian({1e-300, 1, 0, 2}));
  CHECK_FALSE(is_hamiltonian({0, -1, -0.5, 1.2}));
}

TEST_CASE("polar conversion uses r = |z|^2") {
  const PolarPoint a = to_polar({1.0, 0.0});
  CHECK(a.r() == 1.0);
  CHECK(a.theta() == 0.0);
  const PolarPoint b = to_polar({1.0, 1.0});
  CHECK(b.r() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(b.theta() == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK(to_polar({0.0, -1.0}).theta() == doctest::Approx(1.5 * std::numbers::pi));

  Draws d(17);
  for (int i = 0; i < 1000; ++i) {
    const PlanePoint pt = PlanePoint::from(d.point(5.0));
    const PlanePoint back = to_plane(to_polar(pt));
    CHECK(distance(pt, back) < 1e-14 * (1.0 + std::hypot(pt.x, pt.y)));
  }
}

TEST_CASE("admissibility") {
  CHECK(is_admissible({3.5, -1, -0.5, 1.2}));
  CHECK(is_admissible({3.5, 1, -0.5, -1.2}));
  CHECK_FALSE(is_admissible({3.5, 0, -0.5, 1.2}));
  CHECK_FALSE(is_admissible({3.5, -1, -0.5, 1.0}));
  CHECK_FALSE(is_admissible({NAN, -1, -0.5, 1.2}));
  try {
    require_admissible({0, -1, 0, 0.5});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Inadmissible);
    CHECK(std::string(e.what()).find("s2") != std::string::npos);
  }
}

TEST_CASE("angle normalization") {
  CHECK(normalize_angle(-0.1) == doctest::Approx(kTwoPi - 0.1));
  CHECK(normalize_angle(kTwoPi) == 0.0);
  CHECK(PolarPoint(1.0, 7.0).theta() == doctest::Approx(7.0 - kTwoPi));
}
