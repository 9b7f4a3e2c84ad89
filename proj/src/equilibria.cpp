#include "equicycle/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "equicycle/error.hpp"

namespace equicycle {

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::Origin: return "Origin";
    case Branch::Plus: return "Plus";
    case Branch::Minus: return "Minus";
  }
  return "?";
}

const char* to_string(EquilibriumKind k) noexcept {
  switch (k) {
    case EquilibriumKind::Focus: return "Focus";
    case EquilibriumKind::Center: return "Center";
    case EquilibriumKind::Node: return "Node";
    case EquilibriumKind::Saddle: return "Saddle";
    case EquilibriumKind::SaddleNode: return "SaddleNode";
  }
  return "?";
}

const char* to_string(Stability s) noexcept {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::Neutral: return "Neutral";
    case Stability::Mixed: return "Mixed";
  }
  return "?";
}

const char* to_string(OriginKind k) noexcept {
  switch (k) {
    case OriginKind::StableFocus: return "StableFocus";
    case OriginKind::UnstableFocus: return "UnstableFocus";
    case OriginKind::Center: return "Center";
  }
  return "?";
}

const char* to_string(InfinityKind k) noexcept {
  switch (k) {
    case InfinityKind::Attractor: return "Attractor";
    case InfinityKind::Repellor: return "Repellor";
    case InfinityKind::HasEquilibria: return "HasEquilibria";
    case InfinityKind::Degenerate: return "Degenerate";
  }
  return "?";
}

std::array<Complex, 2> eigenvalues(const Mat2& m) {
  const double half_tr = 0.5 * (m[0][0] + m[1][1]);
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = half_tr * half_tr - det;
  if (disc < 0.0) {
    const double im = std::sqrt(-disc);
    return {Complex{half_tr, im}, Complex{half_tr, -im}};
  }
  // avoid cancellation in the smaller root
  const double big = half_tr + std::copysign(std::sqrt(disc), half_tr);
  const double small = big != 0.0 ? det / big : 0.0;
  return {Complex{big, 0.0}, Complex{small, 0.0}};
}

double quadratic_form(const Params& p) {
  const double w = p.p1 * p.s2 - p.p2 * p.s1;
  return p.p1 * p.p1 + p.p2 * p.p2 - w * w;
}

double quadratic_form_expanded(const Params& p) {
  return (1.0 - p.s2 * p.s2) * p.p1 * p.p1 + (1.0 - p.s1 * p.s1) * p.p2 * p.p2 +
         2.0 * p.s1 * p.s2 * p.p1 * p.p2;
}

bool on_fold(const Params& params) {
  const double scale = params.p1 * params.p1 + params.p2 * params.p2;
  return std::abs(quadratic_form(params)) < 1e-9 * scale;
}

std::vector<FundamentalEquilibrium> fundamental_equilibria(const Params& params) {
  require_admissible(params);
  const double q = quadratic_form(params);
  const bool fold = on_fold(params);
  if (!fold && q < 0.0) return {};
  // Inside the fold band the Plus root is exact when q >= 0 and the
  // double-root estimate otherwise.
  const double u = std::sqrt(std::max(q, 0.0));

  const double p1 = params.p1;
  // t = tan(6 theta) solves a t^2 + 2 p1 t + b = 0, tau = 1/t solves
  // b tau^2 + 2 p1 tau + a = 0.
  const double a = p1 * params.s2 - params.p2 - params.p2 * params.s1;
  const double b = p1 * params.s2 + params.p2 - params.p2 * params.s1;

  auto half_phase = [&](double sign) -> double {
    const double num_t = -p1 - sign * u;
    const double num_tau = -p1 + sign * u;
    if (a != 0.0 && std::abs(num_t) <= std::abs(a)) {
      return std::atan(num_t / a);
    }
    if (b != 0.0) {
      const double tau = num_tau / b;
      if (tau == 0.0) return -0.5 * std::numbers::pi;
      return std::atan(1.0 / tau);
    }
    if (a != 0.0) return std::atan(num_t / a);
    throw Error(ErrorCode::DegenerateDenominator,
                "both tangent and cotangent charts degenerate");
  };

  std::vector<FundamentalEquilibrium> out;
  const int nroots = fold ? 1 : 2;
  for (int i = 0; i < nroots; ++i) {
    const double sign = i == 0 ? 1.0 : -1.0;
    const double theta = half_phase(sign) / 6.0;
    const double r =
        -params.p2 / (params.s2 + std::sin(kSymmetryOrder * theta));
    if (!(r > 0.0) || !std::isfinite(r)) continue;
    out.push_back({PolarPoint(r, theta), i == 0 ? Branch::Plus : Branch::Minus});
  }
  return out;
}

Mat2 jacobian(const Params& params, PolarPoint pt) {
  const double r = pt.r();
  const double phase = kSymmetryOrder * pt.theta();
  const double s = std::sin(phase);
  const double c = std::cos(phase);
  return {{{2.0 * params.p1 + 4.0 * r * (params.s1 - c), 24.0 * r * r * s},
           {params.s2 + s, 12.0 * r * c}}};
}

LyapunovConstants origin_stability(const Params& params) {
  if (params.p2 == 0.0) {
    throw Error(ErrorCode::Inadmissible,
                "origin stability needs p2 != 0");
  }
  LyapunovConstants out;
  out.v1 = std::expm1(4.0 * std::numbers::pi * params.p1 / params.p2);
  out.v2 = 4.0 * std::numbers::pi * params.s1;
  const double deciding = params.p1 != 0.0 ? params.p1 : params.s1;
  if (deciding > 0.0) {
    out.kind = OriginKind::UnstableFocus;
  } else if (deciding < 0.0) {
    out.kind = OriginKind::StableFocus;
  } else {
    out.kind = OriginKind::Center;
  }
  return out;
}

namespace {
Equilibrium classify_nonzero(const Params& params, PolarPoint pt, Branch branch,
                             bool fold);
}  // namespace

Equilibrium classify_equilibrium(const Params& params, PolarPoint pt,
                                 Branch branch) {
  Equilibrium eq;
  eq.polar = pt;
  eq.plane = to_plane(pt);

  if (pt.r() == 0.0) {
    // The linear part vanishes at the origin; r dtheta/dt = p2 |z|^10 keeps it
    // monodromic, so it is a focus or a center.
    const LyapunovConstants lc = origin_stability(params);
    eq.branch = Branch::Origin;
    eq.eigenvalues = {Complex{}, Complex{}};
    eq.index = 1;
    switch (lc.kind) {
      case OriginKind::Center:
        eq.kind = EquilibriumKind::Center;
        eq.stability = Stability::Neutral;
        break;
      case OriginKind::StableFocus:
        eq.kind = EquilibriumKind::Focus;
        eq.stability = Stability::Stable;
        break;
      case OriginKind::UnstableFocus:
        eq.kind = EquilibriumKind::Focus;
        eq.stability = Stability::Unstable;
        break;
    }
    return eq;
  }

  const Vec2 f = eval_polar_field(params, pt);
  if (std::max(std::abs(f[0]), std::abs(f[1])) >= 1e-8) {
    throw Error(ErrorCode::InvalidArgument,
                "point is not an equilibrium (residual >= 1e-8)");
  }
  return classify_nonzero(params, pt, branch, false);
}

namespace {

Equilibrium classify_nonzero(const Params& params, PolarPoint pt, Branch branch,
                             bool fold) {
  Equilibrium eq;
  eq.polar = pt;
  eq.plane = to_plane(pt);
  eq.branch = branch;
  eq.eigenvalues = eigenvalues(jacobian(params, pt));
  const Complex l1 = eq.eigenvalues[0];
  const Complex l2 = eq.eigenvalues[1];
  const double scale = std::max({std::abs(l1), std::abs(l2), 1.0});
  const double tol_zero = 1e-6 * scale;
  const bool zero1 = std::abs(l1) < tol_zero;
  const bool zero2 = std::abs(l2) < tol_zero;

  if (zero1 && zero2) {
    throw Error(ErrorCode::UnresolvedClassification,
                "both eigenvalues vanish");
  }
  if (fold || zero1 || zero2) {
    eq.kind = EquilibriumKind::SaddleNode;
    eq.index = 0;
    eq.stability = Stability::Mixed;
    return eq;
  }
  if (l1.imag() != 0.0) {
    eq.index = 1;
    if (std::abs(l1.real()) < tol_zero) {
      eq.kind = EquilibriumKind::Center;
      eq.stability = Stability::Neutral;
    } else {
      eq.kind = EquilibriumKind::Focus;
      eq.stability = l1.real() < 0.0 ? Stability::Stable : Stability::Unstable;
    }
    return eq;
  }
  if ((l1.real() > 0.0) != (l2.real() > 0.0)) {
    eq.kind = EquilibriumKind::Saddle;
    eq.index = -1;
    eq.stability = Stability::Mixed;
  } else {
    eq.kind = EquilibriumKind::Node;
    eq.index = 1;
    eq.stability = l1.real() < 0.0 ? Stability::Stable : Stability::Unstable;
  }
  return eq;
}

}  // namespace

std::vector<Equilibrium> all_equilibria(const Params& params) {
  std::vector<Equilibrium> out;
  const auto fundamentals = fundamental_equilibria(params);
  const bool fold = on_fold(params);
  out.reserve(1 + kSymmetryOrder * fundamentals.size());
  out.push_back(classify_equilibrium(params, PolarPoint{}, Branch::Origin));
  for (const auto& fe : fundamentals) {
    for (int k = 0; k < kSymmetryOrder; ++k) {
      // Inside the fold band the point is only a double-root estimate, so the
      // residual precondition is waived and the kind is fixed to SaddleNode.
      out.push_back(fold ? classify_nonzero(params, rotate(fe.polar, k),
                                            fe.branch, true)
                         : classify_equilibrium(params, rotate(fe.polar, k),
                                                fe.branch));
    }
  }
  return out;
}

double infinity_integral(const Params& params) {
  if (!(std::abs(params.s2) > 1.0)) {
    throw Error(ErrorCode::Inadmissible, "infinity integral needs |s2| > 1");
  }
  return -std::copysign(1.0, params.s2) * 4.0 * std::numbers::pi * params.s1 /
         std::sqrt(params.s2 * params.s2 - 1.0);
}

InfinityKind infinity_analysis(const Params& params) {
  if (!(std::abs(params.s2) > 1.0)) return InfinityKind::HasEquilibria;
  if (params.s1 == 0.0) {
    throw Error(ErrorCode::DegenerateInfinity,
                "s1 = 0: the stability integral at infinity vanishes");
  }
  // Along the circle at infinity dtheta/dt has the sign of s2, so the
  // integral is traversed backwards in time when s2 < -1; in forward time
  // 1/r decays exactly when s1 > 0.
  return params.s1 > 0.0 ? InfinityKind::Attractor : InfinityKind::Repellor;
}

std::vector<PolarPoint> numeric_equilibria(const Params& params, int grid_n) {
  if (grid_n < 24) {
    throw Error(ErrorCode::InvalidArgument, "grid_n must be at least 24");
  }
  require_admissible(params);
  const double r_max = 2.0 * std::abs(params.p2) / (std::abs(params.s2) - 1.0);

  std::vector<PolarPoint> found;
  std::vector<PlanePoint> found_plane;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      double r = r_max * (i + 1) / grid_n;
      double theta = kTwoPi * j / grid_n;
      bool ok = false;
      // Converging starts finish in well under 60 steps, even linearly at a
      // double root; the cap bounds the cost of starts that wander.
      for (int it = 0; it < 60; ++it) {
        const Vec2 f = eval_polar_field(params, r, theta);
        const Mat2 J = jacobian(params, PolarPoint(r, theta));
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0 || !std::isfinite(det)) break;
        double dr = (J[1][1] * f[0] - J[0][1] * f[1]) / det;
        double dt = (J[0][0] * f[1] - J[1][0] * f[0]) / det;
        // keep r positive
        double lambda = 1.0;
        while (r - lambda * dr <= 0.0 && lambda > 1e-6) lambda *= 0.5;
        r -= lambda * dr;
        theta -= lambda * dt;
        if (r <= 0.0 || r > 10.0 * r_max || !std::isfinite(theta)) break;
        // Quadratic convergence makes steps this small the last useful ones.
        if (std::abs(lambda * dr) < 1e-13 * (1.0 + r) &&
            std::abs(lambda * dt) < 1e-13) {
          break;
        }
      }
      if (r > 0.0 && r <= 10.0 * r_max && std::isfinite(theta)) {
        const Vec2 f = eval_polar_field(params, r, theta);
        ok = std::max(std::abs(f[0]), std::abs(f[1])) < 1e-10;
      }
      if (!ok) continue;
      const PolarPoint pt(r, theta);
      const PlanePoint pp = to_plane(pt);
      const bool dup = std::any_of(
          found_plane.begin(), found_plane.end(),
          [&pp](const PlanePoint& q) { return distance(pp, q) < 1e-6; });
      if (!dup) {
        found.push_back(pt);
        found_plane.push_back(pp);
      }
    }
  }
  return found;
}

bool exclusion_check(const Params& params) {
  if (!(std::abs(params.s2) > 1.0)) {
    throw Error(ErrorCode::Inadmissible, "exclusion check needs |s2| > 1");
  }
  constexpr double tol = 1e-9;
  bool on_zero = false;
  bool on_half = false;
  for (const auto& eq : all_equilibria(params)) {
    if (eq.branch == Branch::Origin) continue;
    const double m = std::fmod(eq.polar.theta(), kSectorAngle);
    if (m < tol || kSectorAngle - m < tol) on_zero = true;
    if (std::abs(m - 0.5 * kSectorAngle) < tol) on_half = true;
  }
  return !(on_zero && on_half);
}

RegionClass classify_region(const Params& params) {
  RegionClass out;
  out.q_value = quadratic_form(params);
  switch (fundamental_equilibria(params).size()) {
    case 0: out.count = PointCount::One; break;
    case 1: out.count = PointCount::Thirteen; break;
    default: out.count = PointCount::TwentyFive; break;
  }
  out.origin_kind = origin_stability(params).kind;
  try {
    out.infinity = infinity_analysis(params);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateInfinity) throw;
    out.infinity = InfinityKind::Degenerate;
  }
  return out;
}

}  // namespace equicycle
