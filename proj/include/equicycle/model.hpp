#pragma once

// Vector field  dz/dt = p z^5 zbar^4 + s z^6 zbar^5 - zbar^11  with
// p = p1 + i p2 and s = s1 + i s2, in its complex, cartesian and polar forms.
//
// Coordinate convention: the polar radius r is |z|^2, not |z|.  A polar point
// (r, theta) sits at z = sqrt(r) * exp(i theta) in the plane.

#include <array>
#include <complex>
#include <numbers>

namespace equicycle {

using Complex = std::complex<double>;
using Vec2 = std::array<double, 2>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr int kSymmetryOrder = 12;
/// Angular width of one fundamental sector of the Z12 action.
inline constexpr double kSectorAngle = kTwoPi / kSymmetryOrder;

struct Params {
  double p1 = 0.0;
  double p2 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;

  Complex p() const { return {p1, p2}; }
  Complex s() const { return {s1, s2}; }
  bool finite() const;
};

/// True when |s2| > 1 and p2 != 0, the standing hypotheses of the analysis.
bool is_admissible(const Params& params) noexcept;

/// Throws Error(Inadmissible) naming the first violated precondition.
void require_admissible(const Params& params);

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  Complex z() const { return {x, y}; }
  static PlanePoint from(Complex z) { return {z.real(), z.imag()}; }
};

double distance(PlanePoint a, PlanePoint b);

/// Point of the (r, theta) chart.  theta is kept in [0, 2 pi).
class PolarPoint {
 public:
  PolarPoint() = default;
  PolarPoint(double r, double theta);

  double r() const { return r_; }
  double theta() const { return theta_; }

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

double normalize_angle(double theta);

PolarPoint to_polar(PlanePoint pt);
PlanePoint to_plane(PolarPoint pt);

Complex eval_complex_field(const Params& params, Complex z);

/// (P, Q) with dx/dt = P and dy/dt = Q.
Vec2 eval_cartesian_field(const Params& params, PlanePoint pt);

/// (dr/dt, dtheta/dt) in the original time.
Vec2 eval_polar_field_raw(const Params& params, PolarPoint pt);

/// Polar field after dividing out the factor r^4 (dt/ds = r^4):
///   r'     = 2 r p1 + 2 r^2 (s1 - cos 12 theta)
///   theta' = p2 + r (s2 + sin 12 theta)
Vec2 eval_polar_field(const Params& params, PolarPoint pt);

/// Same as eval_polar_field but takes the angle unnormalized.
Vec2 eval_polar_field(const Params& params, double r, double theta);

/// Divergence of the cartesian field (analytic).
double cartesian_divergence(const Params& params, PlanePoint pt);

bool is_hamiltonian(const Params& params) noexcept;

/// Action of the generator power k (0 <= k < 12): multiplication by
/// exp(2 pi i k / 12).
Complex rotate(Complex z, int k);
PlanePoint rotate(PlanePoint pt, int k);
PolarPoint rotate(PolarPoint pt, int k);

}  // namespace equicycle
