#include "equicycle/abel.hpp"

#include <algorithm>
#include <cmath>

#include "equicycle/error.hpp"

namespace equicycle {

AbelCoeffs::AbelCoeffs(const Params& params) : params_(params) {
  require_admissible(params);
  c_ = 2.0 * params.p1 / params.p2;
}

double AbelCoeffs::c(double theta) const {
  return params_.s2 + std::sin(kSymmetryOrder * theta);
}

double AbelCoeffs::A(double theta) const {
  const double phase = kSymmetryOrder * theta;
  const double c = params_.s2 + std::sin(phase);
  const double d = params_.s1 - std::cos(phase);
  return 2.0 * c / params_.p2 * (params_.p1 * c - params_.p2 * d);
}

double AbelCoeffs::B(double theta) const {
  const double phase = kSymmetryOrder * theta;
  const double c = params_.s2 + std::sin(phase);
  const double d = params_.s1 - std::cos(phase);
  const double dc = kSymmetryOrder * std::cos(phase);
  return 2.0 * d - 4.0 * params_.p1 * c / params_.p2 - dc;
}

double AbelCoeffs::rhs(double theta, double x) const {
  return ((A(theta) * x + B(theta)) * x + c_) * x;
}

double AbelCoeffs::linearization(double theta, double x) const {
  return (3.0 * A(theta) * x + 2.0 * B(theta)) * x + c_;
}

AbelCoeffs derive_coeffs(const Params& params) { return AbelCoeffs(params); }

double cherkas_forward(const Params& params, double r, double theta) {
  const double denom =
      params.p2 + r * (params.s2 + std::sin(kSymmetryOrder * theta));
  if (std::abs(denom) < 1e-12) {
    throw Error(ErrorCode::OnCriticalSet,
                "point lies on the curve where dtheta/dt vanishes");
  }
  return r / denom;
}

double cherkas_inverse(const Params& params, double x, double theta) {
  const double denom =
      1.0 - x * (params.s2 + std::sin(kSymmetryOrder * theta));
  if (std::abs(denom) < 1e-12) {
    throw Error(ErrorCode::AtInfinity, "x is the image of infinity");
  }
  return params.p2 * x / denom;
}

namespace {

void require_s2_outside_unit(const Params& params) {
  if (!(params.s2 * params.s2 > 1.0)) {
    throw Error(ErrorCode::Inadmissible,
                "sign regions need s2^2 > 1");
  }
}

// Roots in q of (p2 s1 - q s2)^2 = q^2 + k^2 p2^2, i.e. the q-interval on
// which  (p2 s1 - q s2) + q sin + k p2 cos  changes sign.
SignRegion sign_interval(const Params& params, double k, double scale) {
  require_s2_outside_unit(params);
  const double s1 = params.s1;
  const double s2 = params.s2;
  const double p2 = params.p2;
  const double denom = s2 * s2 - 1.0;
  const double root = std::abs(p2) * std::sqrt(s1 * s1 + k * k * denom);
  SignRegion out;
  out.sigma_minus = scale * (p2 * s1 * s2 - root) / denom;
  out.sigma_plus = scale * (p2 * s1 * s2 + root) / denom;
  out.p1_inside = out.sigma_minus < params.p1 && params.p1 < out.sigma_plus;
  return out;
}

}  // namespace

SignRegion sigma_A(const Params& params) {
  return sign_interval(params, 1.0, 1.0);
}

SignRegion sigma_B(const Params& params) {
  return sign_interval(params, 1.0, 0.5);
}

SignRegion sigma_B_derived(const Params& params) {
  return sign_interval(params, 7.0, 0.5);
}

TheoremConditions theorem_conditions(const Params& params) {
  if (!params.finite() || !(params.s2 > 1.0) || params.p2 == 0.0) {
    throw Error(ErrorCode::Inadmissible,
                "theorem conditions need s2 > 1 and p2 != 0");
  }
  const SignRegion a = sigma_A(params);
  const SignRegion b = sigma_B(params);
  return {!a.p1_inside, !b.p1_inside};
}

bool SignProfile::changes_sign() const {
  const double tol = 1e-12 * std::max({std::abs(min), std::abs(max), 1e-300});
  return min < -tol && max > tol;
}

namespace {

// Golden-section search for the minimum of f on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b) {
  constexpr double g = 0.6180339887498949;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 80 && b - a > 1e-15; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

SignProfile sample_profile(const std::function<double(double)>& f,
                           int samples) {
  if (samples < 8) {
    throw Error(ErrorCode::InvalidArgument, "need at least 8 samples");
  }
  const double step = kSectorAngle / samples;
  int imin = 0;
  int imax = 0;
  double vmin = f(0.0);
  double vmax = vmin;
  for (int i = 1; i < samples; ++i) {
    const double v = f(i * step);
    if (v < vmin) { vmin = v; imin = i; }
    if (v > vmax) { vmax = v; imax = i; }
  }
  SignProfile out;
  out.min = std::min(vmin, golden_min(f, (imin - 1) * step, (imin + 1) * step));
  auto neg = [&f](double t) { return -f(t); };
  out.max = std::max(vmax, -golden_min(neg, (imax - 1) * step, (imax + 1) * step));
  return out;
}

SignProfile coefficient_profile(const AbelCoeffs& coeffs, AbelTerm term,
                                int samples) {
  if (term == AbelTerm::A) {
    return sample_profile([&coeffs](double t) { return coeffs.A(t); }, samples);
  }
  return sample_profile([&coeffs](double t) { return coeffs.B(t); }, samples);
}

bool llibre_bound_check(const AbelCoeffs& coeffs,
                        std::span<const PeriodicSolution> nontrivial) {
  const bool a_changes = coefficient_profile(coeffs, AbelTerm::A).changes_sign();
  const bool b_changes = coefficient_profile(coeffs, AbelTerm::B).changes_sign();
  if (a_changes && b_changes) {
    throw Error(ErrorCode::PreconditionNotMet,
                "both A and B change sign; the three-solution bound does not apply");
  }
  // x = 0 and x = 1/c(theta)
  int count = 2;
  for (const auto& sol : nontrivial) {
    count += std::abs(sol.multiplier - 1.0) <= 1e-6 ? 2 : 1;
  }
  return count <= 3;
}

}  // namespace equicycle
