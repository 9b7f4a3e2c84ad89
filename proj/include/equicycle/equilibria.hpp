#pragma once

#include <array>
#include <complex>
#include <vector>

#include "equicycle/model.hpp"

namespace equicycle {

enum class Branch { Origin, Plus, Minus };
enum class EquilibriumKind { Focus, Center, Node, Saddle, SaddleNode };
enum class Stability { Stable, Unstable, Neutral, Mixed };

const char* to_string(Branch b) noexcept;
const char* to_string(EquilibriumKind k) noexcept;
const char* to_string(Stability s) noexcept;

struct Equilibrium {
  PolarPoint polar;
  PlanePoint plane;
  std::array<Complex, 2> eigenvalues{};
  EquilibriumKind kind = EquilibriumKind::Focus;
  Stability stability = Stability::Mixed;
  int index = 1;
  Branch branch = Branch::Origin;
};

/// 2x2 matrix, row major.
using Mat2 = std::array<std::array<double, 2>, 2>;

std::array<Complex, 2> eigenvalues(const Mat2& m);

/// p1^2 + p2^2 - (p1 s2 - p2 s1)^2.
double quadratic_form(const Params& params);
/// (1 - s2^2) p1^2 + (1 - s1^2) p2^2 + 2 s1 s2 p1 p2.
double quadratic_form_expanded(const Params& params);

/// True when |Q| < 1e-9 (p1^2 + p2^2).
bool on_fold(const Params& params);

struct FundamentalEquilibrium {
  PolarPoint polar;
  Branch branch;
};

/// Equilibria with r > 0 in the sector -pi/12 <= theta < pi/12 (theta stored
/// normalized to [0, 2 pi)).  Empty, one double root, or a Plus/Minus pair.
std::vector<FundamentalEquilibrium> fundamental_equilibria(const Params& params);

/// Jacobian of the rescaled polar field with respect to (r, theta).
Mat2 jacobian(const Params& params, PolarPoint pt);

/// Classifies an equilibrium from the numerical eigenvalues of the polar
/// Jacobian.  The origin (r == 0) is delegated to origin_stability.
Equilibrium classify_equilibrium(const Params& params, PolarPoint pt,
                                 Branch branch = Branch::Plus);

/// Origin plus the twelve rotated copies of every fundamental equilibrium.
std::vector<Equilibrium> all_equilibria(const Params& params);

enum class OriginKind { StableFocus, UnstableFocus, Center };
const char* to_string(OriginKind k) noexcept;

struct LyapunovConstants {
  double v1 = 0.0;
  double v2 = 0.0;
  OriginKind kind = OriginKind::Center;
};

/// V1 = exp(4 pi p1 / p2) - 1 and V2 = 4 pi s1.  Stability in forward time
/// follows the sign of p1, or of s1 when p1 == 0.
LyapunovConstants origin_stability(const Params& params);

enum class InfinityKind { Attractor, Repellor, HasEquilibria, Degenerate };
const char* to_string(InfinityKind k) noexcept;

/// Growth exponent of 1/r along the circle at infinity over one turn,
/// -sgn(s2) 4 pi s1 / sqrt(s2^2 - 1).  Requires |s2| > 1.
double infinity_integral(const Params& params);

/// HasEquilibria when |s2| <= 1; otherwise attracting iff s1 > 0.  Throws
/// DegenerateInfinity for s1 == 0, |s2| > 1.
InfinityKind infinity_analysis(const Params& params);

/// Newton iterations on the rescaled polar field from a grid_n x grid_n grid
/// over (0, r_max] x [0, 2 pi), r_max = 2 |p2| / (|s2| - 1).
std::vector<PolarPoint> numeric_equilibria(const Params& params, int grid_n);

/// True unless equilibria exist both on theta = 0 and on theta = pi/12
/// (modulo the sector angle).
bool exclusion_check(const Params& params);

enum class PointCount { One = 1, Thirteen = 13, TwentyFive = 25 };

struct RegionClass {
  PointCount count = PointCount::One;
  double q_value = 0.0;
  OriginKind origin_kind = OriginKind::Center;
  InfinityKind infinity = InfinityKind::HasEquilibria;
};

RegionClass classify_region(const Params& params);

}  // namespace equicycle
