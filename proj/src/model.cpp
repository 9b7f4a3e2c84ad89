#include "equicycle/model.hpp"

#include <cmath>
#include <sstream>

#include "equicycle/error.hpp"

namespace equicycle {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::UnresolvedClassification: return "UnresolvedClassification";
    case ErrorCode::DegenerateInfinity: return "DegenerateInfinity";
    case ErrorCode::OnCriticalSet: return "OnCriticalSet";
    case ErrorCode::AtInfinity: return "AtInfinity";
    case ErrorCode::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::OpenCurve: return "OpenCurve";
  }
  return "Unknown";
}

bool Params::finite() const {
  return std::isfinite(p1) && std::isfinite(p2) && std::isfinite(s1) &&
         std::isfinite(s2);
}

bool is_admissible(const Params& params) noexcept {
  return params.finite() && std::abs(params.s2) > 1.0 && params.p2 != 0.0;
}

void require_admissible(const Params& params) {
  if (!params.finite()) {
    throw Error(ErrorCode::Inadmissible, "parameters must be finite");
  }
  if (!(std::abs(params.s2) > 1.0)) {
    std::ostringstream os;
    os << "inadmissible parameters: |s2| <= 1 (s2 = " << params.s2
       << "); infinity carries equilibria";
    throw Error(ErrorCode::Inadmissible, os.str());
  }
  if (params.p2 == 0.0) {
    throw Error(ErrorCode::Inadmissible,
                "inadmissible parameters: p2 = 0 (origin is not monodromic)");
  }
}

double distance(PlanePoint a, PlanePoint b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod of a tiny negative number can round back up to 2 pi
  if (t >= kTwoPi) t = 0.0;
  return t;
}

PolarPoint::PolarPoint(double r, double theta)
    : r_(r), theta_(normalize_angle(theta)) {
  if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(theta)) {
    throw Error(ErrorCode::InvalidArgument,
                "polar point needs finite r >= 0 and finite theta");
  }
}

PolarPoint to_polar(PlanePoint pt) {
  return {pt.x * pt.x + pt.y * pt.y, std::atan2(pt.y, pt.x)};
}

PlanePoint to_plane(PolarPoint pt) {
  const double rho = std::sqrt(pt.r());
  return {rho * std::cos(pt.theta()), rho * std::sin(pt.theta())};
}

Complex eval_complex_field(const Params& params, Complex z) {
  // z^5 zbar^4 = |z|^8 z and z^6 zbar^5 = |z|^10 z
  const double m = std::norm(z);
  const double m4 = (m * m) * (m * m);
  const Complex zb = std::conj(z);
  Complex zb11 = zb;
  for (int i = 1; i < 11; ++i) zb11 *= zb;
  return params.p() * m4 * z + params.s() * (m4 * m) * z - zb11;
}

namespace {

// Real and imaginary parts of (x - i y)^11 from the binomial expansion.
Vec2 conj_power11(double x, double y) {
  constexpr int n = 11;
  double re = 0.0;
  double im = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    // term C(n,k) x^(n-k) (-i y)^k ; (-i)^k cycles 1, -i, -1, i
    const double mag = binom * std::pow(x, n - k) * std::pow(y, k);
    switch (k % 4) {
      case 0: re += mag; break;
      case 1: im -= mag; break;
      case 2: re -= mag; break;
      case 3: im += mag; break;
    }
    binom = binom * (n - k) / (k + 1);
  }
  return {re, im};
}

}  // namespace

Vec2 eval_cartesian_field(const Params& params, PlanePoint pt) {
  const double x = pt.x;
  const double y = pt.y;
  const double rho2 = x * x + y * y;
  const double rho8 = (rho2 * rho2) * (rho2 * rho2);
  const double rho10 = rho8 * rho2;
  const Vec2 w = conj_power11(x, y);
  const double P = rho8 * (params.p1 * x - params.p2 * y) +
                   rho10 * (params.s1 * x - params.s2 * y) - w[0];
  const double Q = rho8 * (params.p2 * x + params.p1 * y) +
                   rho10 * (params.s2 * x + params.s1 * y) - w[1];
  return {P, Q};
}

Vec2 eval_polar_field(const Params& params, double r, double theta) {
  const double phase = kSymmetryOrder * theta;
  const double dr = 2.0 * r * params.p1 +
                    2.0 * r * r * (params.s1 - std::cos(phase));
  const double dtheta = params.p2 + r * (params.s2 + std::sin(phase));
  return {dr, dtheta};
}

Vec2 eval_polar_field(const Params& params, PolarPoint pt) {
  return eval_polar_field(params, pt.r(), pt.theta());
}

Vec2 eval_polar_field_raw(const Params& params, PolarPoint pt) {
  const double r2 = pt.r() * pt.r();
  const double r4 = r2 * r2;
  const Vec2 f = eval_polar_field(params, pt);
  return {r4 * f[0], r4 * f[1]};
}

double cartesian_divergence(const Params& params, PlanePoint pt) {
  // 2 Re d/dz of the complex field; zbar^11 does not depend on z.
  const double rho2 = pt.x * pt.x + pt.y * pt.y;
  const double rho8 = (rho2 * rho2) * (rho2 * rho2);
  return 10.0 * params.p1 * rho8 + 12.0 * params.s1 * rho8 * rho2;
}

bool is_hamiltonian(const Params& params) noexcept {
  return params.p1 == 0.0 && params.s1 == 0.0;
}

namespace {

void check_rotation_index(int k) {
  if (k < 0 || k >= kSymmetryOrder) {
    throw Error(ErrorCode::InvalidArgument,
                "rotation index must satisfy 0 <= k < 12");
  }
}

}  // namespace

Complex rotate(Complex z, int k) {
  check_rotation_index(k);
  return z * std::polar(1.0, kSectorAngle * k);
}

PlanePoint rotate(PlanePoint pt, int k) {
  return PlanePoint::from(rotate(pt.z(), k));
}

PolarPoint rotate(PolarPoint pt, int k) {
  check_rotation_index(k);
  return {pt.r(), pt.theta() + kSectorAngle * k};
}

}  // namespace equicycle
