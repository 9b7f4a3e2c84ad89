#pragma once

// Reduction of the polar system to the Abel equation
//
//   dx/dtheta = A(theta) x^3 + B(theta) x^2 + C(theta) x
//
// through the Cherkas change of variables x = r / (p2 + r (s2 + sin 12 theta)),
// i.e. x = r / (dtheta/ds).  Carrying the substitution through gives, with
// c = s2 + sin 12 theta and d = s1 - cos 12 theta,
//
//   A = (2 c / p2) (p1 c - p2 d)
//   B = 2 d - 4 p1 c / p2 - 12 cos 12 theta
//   C = 2 p1 / p2
//
// The last term of B is -dc/dtheta; x = 0 and x = 1/c(theta) (the image of
// infinity) are always solutions.

#include <functional>
#include <span>

#include "equicycle/model.hpp"

namespace equicycle {

/// A 2 pi-periodic solution of the Abel equation, identified by its value on
/// the section theta = 0 and its return-map multiplier.
struct PeriodicSolution {
  double x0 = 0.0;
  double multiplier = 1.0;
};

class AbelCoeffs {
 public:
  /// Requires admissible parameters.
  explicit AbelCoeffs(const Params& params);

  const Params& params() const { return params_; }

  double A(double theta) const;
  double B(double theta) const;
  double C(double theta) const { return (void)theta, c_; }
  double C() const { return c_; }

  /// s2 + sin 12 theta; 1/c(theta) is the image of infinity.
  double c(double theta) const;
  double infinity_image(double theta) const { return 1.0 / c(theta); }

  /// Right-hand side of the Abel equation.
  double rhs(double theta, double x) const;
  /// d(rhs)/dx = 3 A x^2 + 2 B x + C.
  double linearization(double theta, double x) const;

 private:
  Params params_;
  double c_ = 0.0;
};

AbelCoeffs derive_coeffs(const Params& params);

/// x = r / (p2 + r (s2 + sin 12 theta)).  Throws OnCriticalSet when the
/// denominator (dtheta/ds) vanishes.
double cherkas_forward(const Params& params, double r, double theta);

/// r = p2 x / (1 - x (s2 + sin 12 theta)).  Throws AtInfinity when
/// x = 1/c(theta).
double cherkas_inverse(const Params& params, double x, double theta);

struct SignRegion {
  double sigma_minus = 0.0;
  double sigma_plus = 0.0;
  bool p1_inside = false;
};

/// Interval of p1 on which A(theta) changes sign.  Requires s2^2 > 1.
SignRegion sigma_A(const Params& params);

/// Half of sigma_A: the interval excluded by condition (ii).
SignRegion sigma_B(const Params& params);

/// Interval of p1 on which the derived B(theta) changes sign.  Differs from
/// sigma_B because of the -dc/dtheta term.
SignRegion sigma_B_derived(const Params& params);

struct TheoremConditions {
  bool cond_i = false;
  bool cond_ii = false;

  bool any() const { return cond_i || cond_ii; }
};

/// cond_i: p1 outside (sigma_A-, sigma_A+); cond_ii: p1 outside half of it.
/// Requires s2 > 1 and p2 != 0.
TheoremConditions theorem_conditions(const Params& params);

/// Extremes of a pi/6-periodic function from dense sampling, refined by
/// golden-section search around the extreme samples.
struct SignProfile {
  double min = 0.0;
  double max = 0.0;

  /// Strict sign change, ignoring values within round-off of zero.
  bool changes_sign() const;
};

inline constexpr int kDefaultSignSamples = 4096;

SignProfile sample_profile(const std::function<double(double)>& f,
                           int samples = kDefaultSignSamples);

enum class AbelTerm { A, B };
SignProfile coefficient_profile(const AbelCoeffs& coeffs, AbelTerm term,
                                int samples = kDefaultSignSamples);

/// Applies the three-solution bound for Abel equations with A or B of
/// constant sign.  `nontrivial` lists periodic solutions other than x = 0 and
/// the image of infinity, both of which are counted here; a solution with
/// multiplier within 1e-6 of 1 counts twice.  Throws PreconditionNotMet when
/// both A and B change sign.
bool llibre_bound_check(const AbelCoeffs& coeffs,
                        std::span<const PeriodicSolution> nontrivial);

}  // namespace equicycle
