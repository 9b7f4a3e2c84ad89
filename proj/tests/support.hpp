#pragma once

#include <cmath>
#include <optional>
#include <random>

#include "equicycle/abel.hpp"
#include "equicycle/integrator.hpp"
#include "equicycle/model.hpp"

namespace testing {

// Parameters of the worked example; only p1 varies between scenarios.
inline equicycle::Params example(double p1) { return {p1, -1.0, -0.5, 1.2}; }

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

class Draws {
 public:
  explicit Draws(unsigned long long seed) : rng_(seed) {}

  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng_);
  }
  double signed_range(double a, double b) {
    const double v = uniform(a, b);
    return uniform(0.0, 1.0) < 0.5 ? -v : v;
  }
  equicycle::Complex point(double radius) {
    return std::polar(std::sqrt(uniform(0.0, 1.0)) * radius,
                      uniform(0.0, equicycle::kTwoPi));
  }

  /// Admissible parameters: p2 != 0 and |s2| > 1, either sign.
  equicycle::Params admissible() {
    return {uniform(-3.0, 3.0), signed_range(0.3, 2.5), uniform(-1.5, 1.5),
            signed_range(1.05, 3.0)};
  }

  /// Admissible with s2 > 1 (where the theorem conditions are defined).
  equicycle::Params admissible_positive_s2() {
    equicycle::Params p = admissible();
    p.s2 = std::abs(p.s2);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

/// Integrates the polar system with theta as time, dr/dtheta = r' / theta',
/// and separately the Abel equation from the transformed start value, then
/// returns the largest gap between the transformed polar solution and the
/// Abel solution over 721 angles.  Empty when either integration fails.
inline std::optional<double> conjugacy_deviation(const equicycle::Params& p,
                                                 double r0) {
  using namespace equicycle;
  StepControl ctl;
  ctl.rel_tol = 1e-12;
  ctl.abs_tol = 1e-14;
  auto keep = [](double, const State<1>& y) {
    return std::isfinite(y[0]) && std::abs(y[0]) < 1e6;
  };
  auto polar_rhs = [&p](double theta, const State<1>& y) -> State<1> {
    const Vec2 f = eval_polar_field(p, y[0], theta);
    return {f[0] / f[1]};
  };
  const AbelCoeffs coeffs(p);
  auto abel_rhs = [&coeffs](double theta, const State<1>& y) -> State<1> {
    return {coeffs.rhs(theta, y[0])};
  };
  const auto polar = integrate_dopri5<1>(polar_rhs, 0.0, kTwoPi, {r0}, ctl, keep, true);
  const auto abel = integrate_dopri5<1>(abel_rhs, 0.0, kTwoPi,
                                        {cherkas_forward(p, r0, 0.0)}, ctl, keep, true);
  if (!polar.completed() || !abel.completed()) return std::nullopt;
  double worst = 0.0;
  for (int i = 0; i <= 720; ++i) {
    const double theta = kTwoPi * i / 720;
    const double r = i == 720 ? polar.y[0] : polar.dense(theta)[0];
    const double x = i == 720 ? abel.y[0] : abel.dense(theta)[0];
    if (!(r > 0.0)) return std::nullopt;
    worst = std::max(worst, std::abs(cherkas_forward(p, r, theta) - x));
  }
  return worst;
}

/// Start radius strictly inside the curve where dtheta/ds vanishes.
inline double inner_start(const equicycle::Params& p, double fraction) {
  return fraction * std::abs(p.p2) / (std::abs(p.s2) + 1.0);
}

}  // namespace testing
