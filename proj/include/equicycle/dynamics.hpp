#pragma once

// Return map of the Abel equation on the section theta = 0, its fixed points
// and their images in the plane.

#include <span>
#include <vector>

#include "equicycle/abel.hpp"
#include "equicycle/equilibria.hpp"
#include "equicycle/integrator.hpp"
#include "equicycle/model.hpp"

namespace equicycle {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 1'000'000;
  double initial_step = 1e-4;

  /// Throws InvalidArgument unless tolerances are positive and
  /// max_steps >= 1000.
  void validate() const;
  StepControl step_control() const;
};

inline constexpr double kBlowUpBound = 1e6;
inline constexpr int kDefaultTrajectorySamples = 720;

struct AbelTrajectory {
  std::vector<double> theta;
  std::vector<double> x;
};

/// Solution on [0, 2 pi] sampled at `samples` + 1 equally spaced angles
/// (both ends included).  Throws BlowUp if |x| exceeds 1e6 or the step size
/// collapses before theta = 2 pi.
AbelTrajectory integrate_abel(const AbelCoeffs& coeffs, double x0,
                              const IntegratorConfig& cfg,
                              int samples = kDefaultTrajectorySamples);

struct ReturnMapSample {
  double x0 = 0.0;
  double x_end = 0.0;
  double dPi = 1.0;
};

/// Pi(x0) and Pi'(x0) from the variational equation
/// dv/dtheta = (3 A x^2 + 2 B x + C) v, v(0) = 1.
ReturnMapSample return_map(const AbelCoeffs& coeffs, double x0,
                           const IntegratorConfig& cfg);

struct FixedPointScan {
  int samples_per_band = 512;
  /// Distance (in the band parameter) kept from x = 0 and x = 1/s2.
  double delta = 1e-6;
  /// Looser relative tolerance used while scanning for sign changes.
  double coarse_rel_tol = 1e-7;
};

/// Isolated fixed points of the return map away from x = 0 and x = 1/s2.
/// The section line is split by those two solutions into three bands, each
/// scanned for sign changes of Pi(x) - x, refined by safeguarded Newton.
std::vector<PeriodicSolution> find_fixed_points(const AbelCoeffs& coeffs,
                                                const IntegratorConfig& cfg,
                                                const FixedPointScan& scan = {});

inline constexpr double kHyperbolicityThreshold = 1e-6;
inline constexpr int kCycleSamples = 1440;

struct CycleResult {
  double abel_fixed_point = 0.0;
  double multiplier = 1.0;
  bool stable = false;
  bool hyperbolic = false;
  /// true when theta increases along the orbit in forward time
  bool counterclockwise = true;
  std::vector<PlanePoint> plane_samples;
  int enclosed_count = 0;
  int enclosed_index_sum = 0;
};

/// Fixed points of the return map whose orbits stay at r > 0, mapped back
/// to the plane.
std::vector<CycleResult> find_limit_cycles(const Params& params,
                                           const IntegratorConfig& cfg);

/// As above, with the equilibria supplied by the caller.
std::vector<CycleResult> find_limit_cycles(const Params& params,
                                           const IntegratorConfig& cfg,
                                           std::span<const Equilibrium> eqs);

struct PlaneTrajectory {
  std::vector<double> t;
  std::vector<PlanePoint> points;
  bool escaped = false;
};

/// 10 x the largest equilibrium radius, but at least 10 x sqrt of the
/// largest radius of the curve where dtheta/dt = 0.
double default_escape_radius(const Params& params);

/// Integrates the cartesian field in the original time over [0, t_span]
/// (t_span may be negative).  Throws BlowUp when |z| exceeds escape_radius.
PlaneTrajectory integrate_plane(const Params& params, PlanePoint start,
                                double t_span, const IntegratorConfig& cfg,
                                double escape_radius);
PlaneTrajectory integrate_plane(const Params& params, PlanePoint start,
                                double t_span, const IntegratorConfig& cfg);

/// Original: the cartesian field as given.  Rescaled: the field divided by
/// |z|^8, which has the same orbits away from the origin, is bounded near it,
/// and avoids both finite-time blow-up and the stiffness of large |z|.
enum class TimeScale { Original, Rescaled };

/// As integrate_plane, but stops quietly at the escape radius (flagging
/// `escaped`) and returns what was computed.  Other failures still throw.
PlaneTrajectory trace_plane(const Params& params, PlanePoint start,
                            double t_span, const IntegratorConfig& cfg,
                            double escape_radius,
                            TimeScale scale = TimeScale::Original);

/// Follows the cartesian flow from `start` until the polar angle has turned
/// by a full 2 pi (either direction) and returns the point reached.
PlanePoint plane_first_return(const Params& params, PlanePoint start,
                              const IntegratorConfig& cfg);

/// Winding number of the closed polygon around p (the closing edge from the
/// last vertex to the first is implied).
int winding_number(std::span<const PlanePoint> polygon, PlanePoint p);

struct Enclosure {
  int count = 0;
  int index_sum = 0;
};

/// Throws OpenCurve unless the first and last samples agree within 1e-6.
Enclosure enclosed_equilibria(std::span<const PlanePoint> cycle_samples,
                              std::span<const Equilibrium> eqs);

struct SeparatrixSeed {
  PlanePoint start;
  /// Eigenvalue of the direction; its sign picks the time direction.
  double eigenvalue = 0.0;
};

/// Starting points offset along the real polar-Jacobian eigenvectors of a
/// non-origin equilibrium, both signs, mapped to the plane.
std::vector<SeparatrixSeed> separatrix_seeds(const Params& params,
                                             const Equilibrium& eq,
                                             double offset = 1e-5);

}  // namespace equicycle
