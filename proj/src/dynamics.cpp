#include "equicycle/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "equicycle/error.hpp"

namespace equicycle {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(initial_step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "integrator tolerances and initial step must be positive");
  }
  if (max_steps < 1000) {
    throw Error(ErrorCode::InvalidArgument, "max_steps must be at least 1000");
  }
}

StepControl IntegratorConfig::step_control() const {
  validate();
  StepControl ctl;
  ctl.rel_tol = rel_tol;
  ctl.abs_tol = abs_tol;
  ctl.max_steps = max_steps;
  ctl.initial_step = initial_step;
  return ctl;
}

namespace {

const char* describe(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::Completed: return "completed";
    case IntegrationStatus::Stopped: return "|x| exceeded the blow-up bound";
    case IntegrationStatus::StepLimit: return "step limit reached";
    case IntegrationStatus::StepUnderflow: return "step size underflow";
    case IntegrationStatus::NonFinite: return "non-finite state";
  }
  return "?";
}

// (x, w) with w = ln v, v the variational solution.  v never changes sign
// for a scalar linear equation, and the log form keeps relative accuracy
// when v becomes tiny.
IntegrationResult<2> integrate_abel_variational(const AbelCoeffs& coeffs,
                                                double x0,
                                                const IntegratorConfig& cfg,
                                                bool dense) {
  if (!std::isfinite(x0)) {
    throw Error(ErrorCode::InvalidArgument, "initial value must be finite");
  }
  const StepControl ctl = cfg.step_control();
  auto rhs = [&coeffs](double theta, const State<2>& y) -> State<2> {
    const double x = y[0];
    return {coeffs.rhs(theta, x), coeffs.linearization(theta, x)};
  };
  auto guard = [](double, const State<2>& y) {
    return std::abs(y[0]) <= kBlowUpBound;
  };
  auto res = integrate_dopri5<2>(rhs, 0.0, kTwoPi, State<2>{x0, 0.0}, ctl,
                                 guard, dense);
  if (!res.completed()) {
    std::ostringstream os;
    os << "Abel solution from x0 = " << x0 << " did not reach theta = 2 pi ("
       << describe(res.status) << " at theta = " << res.t << ")";
    throw Error(ErrorCode::BlowUp, os.str());
  }
  return res;
}

}  // namespace

AbelTrajectory integrate_abel(const AbelCoeffs& coeffs, double x0,
                              const IntegratorConfig& cfg, int samples) {
  if (samples < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  }
  const auto res = integrate_abel_variational(coeffs, x0, cfg, true);
  AbelTrajectory out;
  out.theta.reserve(samples + 1);
  out.x.reserve(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    const double theta = kTwoPi * i / samples;
    out.theta.push_back(theta);
    out.x.push_back(i == samples ? res.y[0] : res.dense(theta)[0]);
  }
  return out;
}

ReturnMapSample return_map(const AbelCoeffs& coeffs, double x0,
                           const IntegratorConfig& cfg) {
  const auto res = integrate_abel_variational(coeffs, x0, cfg, false);
  return {x0, res.y[0], std::exp(res.y[1])};
}

namespace {

// Parametrization of one band of the section line by sigma in (0, 1).
struct Band {
  enum class Shape { Bounded, Above, Below } shape;
  double a;  // lower end (Bounded, Above) or upper end (Below)
  double b;  // upper end (Bounded) or length scale
  double x(double sigma) const {
    switch (shape) {
      case Shape::Bounded: return a + (b - a) * sigma;
      case Shape::Above: return a + b * sigma / (1.0 - sigma);
      case Shape::Below: return a - b * sigma / (1.0 - sigma);
    }
    return a;
  }
};

std::optional<ReturnMapSample> try_return_map(const AbelCoeffs& coeffs,
                                              double x,
                                              const IntegratorConfig& cfg) {
  try {
    return return_map(coeffs, x, cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BlowUp) throw;
    return std::nullopt;
  }
}

// Safeguarded Newton on g(x) = Pi(x) - x inside a sign-changing bracket.
std::optional<PeriodicSolution> refine(const AbelCoeffs& coeffs, double lo,
                                       double glo, double hi,
                                       const IntegratorConfig& cfg) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const auto s = try_return_map(coeffs, x, cfg);
    if (!s) return std::nullopt;
    const double g = s->x_end - x;
    const double scale = std::max(1.0, std::abs(x));
    if (std::abs(g) < 1e-12 * scale || std::abs(hi - lo) < 4e-16 * scale) {
      return PeriodicSolution{x, s->dPi};
    }
    if ((g < 0.0) == (glo < 0.0)) {
      lo = x;
      glo = g;
    } else {
      hi = x;
    }
    const double dg = s->dPi - 1.0;
    double next = dg != 0.0 ? x - g / dg : 0.5 * (lo + hi);
    const double left = std::min(lo, hi);
    const double right = std::max(lo, hi);
    if (!(next > left && next < right)) next = 0.5 * (lo + hi);
    x = next;
  }
  return std::nullopt;
}

}  // namespace

std::vector<PeriodicSolution> find_fixed_points(const AbelCoeffs& coeffs,
                                                const IntegratorConfig& cfg,
                                                const FixedPointScan& scan) {
  cfg.validate();
  if (scan.samples_per_band < 4 || !(scan.delta > 0.0 && scan.delta < 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "bad fixed-point scan settings");
  }
  // On theta = 0 the image of infinity is x = 1/s2.
  const double x_inf = 1.0 / coeffs.params().s2;
  const double lo = std::min(0.0, x_inf);
  const double hi = std::max(0.0, x_inf);
  const double length = std::abs(x_inf);
  const Band bands[] = {
      {Band::Shape::Below, lo, length},
      {Band::Shape::Bounded, lo, hi},
      {Band::Shape::Above, hi, length},
  };

  // Only the sign of Pi(x) - x matters during the scan; brackets are refined
  // at the caller's tolerances.
  IntegratorConfig coarse = cfg;
  coarse.rel_tol = std::max(cfg.rel_tol, scan.coarse_rel_tol);
  coarse.abs_tol = std::max(cfg.abs_tol, scan.coarse_rel_tol * 1e-2);

  std::vector<PeriodicSolution> out;
  const int n = scan.samples_per_band;
  for (const Band& band : bands) {
    std::optional<std::pair<double, double>> prev;  // (x, g)
    for (int i = 0; i < n; ++i) {
      const double sigma = scan.delta + (1.0 - 2.0 * scan.delta) * i / (n - 1);
      const double x = band.x(sigma);
      const auto s = try_return_map(coeffs, x, coarse);
      if (!s) {
        prev.reset();
        continue;
      }
      const double g = s->x_end - x;
      if (prev && g != 0.0 && (g < 0.0) != (prev->second < 0.0)) {
        if (auto fp = refine(coeffs, prev->first, prev->second, x, cfg)) {
          out.push_back(*fp);
        }
      } else if (g == 0.0) {
        if (auto fp = refine(coeffs, x, g, x, cfg)) out.push_back(*fp);
      }
      prev = {x, g};
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PeriodicSolution& a, const PeriodicSolution& b) {
              return a.x0 < b.x0;
            });
  return out;
}

std::vector<CycleResult> find_limit_cycles(const Params& params,
                                           const IntegratorConfig& cfg) {
  const auto eqs = all_equilibria(params);
  return find_limit_cycles(params, cfg, eqs);
}

std::vector<CycleResult> find_limit_cycles(const Params& params,
                                           const IntegratorConfig& cfg,
                                           std::span<const Equilibrium> eqs) {
  const AbelCoeffs coeffs(params);
  std::vector<CycleResult> out;
  for (const auto& fp : find_fixed_points(coeffs, cfg)) {
    const AbelTrajectory traj = integrate_abel(coeffs, fp.x0, cfg, kCycleSamples);
    CycleResult cyc;
    cyc.abel_fixed_point = fp.x0;
    cyc.multiplier = fp.multiplier;
    cyc.plane_samples.reserve(traj.x.size());
    bool physical = true;
    for (std::size_t i = 0; i < traj.x.size(); ++i) {
      const double r = cherkas_inverse(params, traj.x[i], traj.theta[i]);
      if (!(r > 0.0)) {
        physical = false;
        break;
      }
      cyc.plane_samples.push_back(to_plane(PolarPoint(r, traj.theta[i])));
    }
    if (!physical) continue;
    // The last sample is theta = 2 pi, i.e. the start again.
    cyc.plane_samples.back() = cyc.plane_samples.front();

    // dtheta/ds = p2 + r c = p2 / (1 - c x) along the orbit.
    const double dtheta = params.p2 / (1.0 - coeffs.c(0.0) * fp.x0);
    cyc.counterclockwise = dtheta > 0.0;
    cyc.stable = (fp.multiplier < 1.0) == cyc.counterclockwise;
    cyc.hyperbolic = std::abs(fp.multiplier - 1.0) > kHyperbolicityThreshold;

    const Enclosure enc = enclosed_equilibria(cyc.plane_samples, eqs);
    cyc.enclosed_count = enc.count;
    cyc.enclosed_index_sum = enc.index_sum;
    out.push_back(std::move(cyc));
  }
  return out;
}

double default_escape_radius(const Params& params) {
  double rmax = 0.0;
  if (is_admissible(params)) {
    for (const auto& fe : fundamental_equilibria(params)) {
      rmax = std::max(rmax, std::sqrt(fe.polar.r()));
    }
    rmax = std::max(rmax, std::sqrt(std::abs(params.p2) /
                                    (std::abs(params.s2) - 1.0)));
  }
  return 10.0 * std::max(rmax, 1.0);
}

PlaneTrajectory integrate_plane(const Params& params, PlanePoint start,
                                double t_span, const IntegratorConfig& cfg) {
  return integrate_plane(params, start, t_span, cfg,
                         default_escape_radius(params));
}

PlaneTrajectory integrate_plane(const Params& params, PlanePoint start,
                                double t_span, const IntegratorConfig& cfg,
                                double escape_radius) {
  PlaneTrajectory out = trace_plane(params, start, t_span, cfg, escape_radius);
  if (out.escaped) {
    std::ostringstream os;
    os << "plane trajectory escaped beyond radius " << escape_radius
       << " at t = " << out.t.back();
    throw Error(ErrorCode::BlowUp, os.str());
  }
  return out;
}

PlaneTrajectory trace_plane(const Params& params, PlanePoint start,
                            double t_span, const IntegratorConfig& cfg,
                            double escape_radius, TimeScale scale) {
  if (!std::isfinite(start.x) || !std::isfinite(start.y)) {
    throw Error(ErrorCode::InvalidArgument, "start point must be finite");
  }
  const StepControl ctl = cfg.step_control();
  const bool rescaled = scale == TimeScale::Rescaled;
  auto rhs = [&params, rescaled](double, const State<2>& y) -> State<2> {
    const Vec2 f = eval_cartesian_field(params, {y[0], y[1]});
    if (!rescaled) return f;
    const double rho2 = y[0] * y[0] + y[1] * y[1];
    if (rho2 == 0.0) return {0.0, 0.0};
    const double r4 = (rho2 * rho2) * (rho2 * rho2);
    return {f[0] / r4, f[1] / r4};
  };
  PlaneTrajectory out;
  out.t.push_back(0.0);
  out.points.push_back(start);
  auto observer = [&](double t, const State<2>& y) {
    out.t.push_back(t);
    out.points.push_back({y[0], y[1]});
    return std::hypot(y[0], y[1]) <= escape_radius;
  };
  const auto res = integrate_dopri5<2>(rhs, 0.0, t_span,
                                       State<2>{start.x, start.y}, ctl, observer);
  if (res.status == IntegrationStatus::Stopped) {
    out.escaped = true;
  } else if (!res.completed()) {
    std::ostringstream os;
    os << "plane trajectory stopped at t = " << res.t << ": "
       << describe(res.status);
    throw Error(ErrorCode::BlowUp, os.str());
  }
  return out;
}

PlanePoint plane_first_return(const Params& params, PlanePoint start,
                              const IntegratorConfig& cfg) {
  const StepControl ctl = cfg.step_control();
  // Integrate the polar angle alongside so the full turn is a plain level
  // crossing: dphi/dt = (x Q - y P) / (x^2 + y^2).
  auto rhs = [&params](double, const State<3>& y) -> State<3> {
    const Vec2 f = eval_cartesian_field(params, {y[0], y[1]});
    const double rho2 = y[0] * y[0] + y[1] * y[1];
    return {f[0], f[1], (y[0] * f[1] - y[1] * f[0]) / rho2};
  };
  const double rho2 = start.x * start.x + start.y * start.y;
  if (rho2 == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "origin has no return");
  }
  const Vec2 f0 = eval_cartesian_field(params, start);
  const double sense = start.x * f0[1] - start.y * f0[0] >= 0.0 ? 1.0 : -1.0;
  // Time for one turn is unknown; integrate in chunks until the angle
  // passes 2 pi.
  double t0 = 0.0;
  State<3> y{start.x, start.y, 0.0};
  double chunk = 1.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    auto crossed = [&](double, const State<3>& s) {
      return sense * s[2] < kTwoPi;
    };
    const auto res = integrate_dopri5<3>(rhs, t0, t0 + chunk, y, ctl, crossed, true);
    if (res.status == IntegrationStatus::Stopped) {
      // bisect the angle level on the dense output of this chunk
      double a = res.dense.t_begin();
      double b = res.t;
      for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
        const double m = 0.5 * (a + b);
        if (sense * res.dense(m)[2] < kTwoPi) a = m; else b = m;
      }
      const State<3> s = res.dense(0.5 * (a + b));
      return {s[0], s[1]};
    }
    if (!res.completed()) {
      throw Error(ErrorCode::BlowUp,
                  std::string("plane return integration failed: ") +
                      describe(res.status));
    }
    t0 = res.t;
    y = res.y;
    chunk *= 2.0;
  }
  throw Error(ErrorCode::BlowUp, "no full turn of the polar angle");
}

int winding_number(std::span<const PlanePoint> polygon, PlanePoint p) {
  // Sunday's crossing rule with signed edges.
  int wn = 0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint a = polygon[i];
    const PlanePoint b = polygon[(i + 1) % n];
    const double cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && cross > 0.0) ++wn;
    } else {
      if (b.y <= p.y && cross < 0.0) --wn;
    }
  }
  return wn;
}

Enclosure enclosed_equilibria(std::span<const PlanePoint> cycle_samples,
                              std::span<const Equilibrium> eqs) {
  if (cycle_samples.size() < 3 ||
      distance(cycle_samples.front(), cycle_samples.back()) > 1e-6) {
    throw Error(ErrorCode::OpenCurve, "cycle samples do not close");
  }
  Enclosure out;
  for (const auto& eq : eqs) {
    if (winding_number(cycle_samples, eq.plane) != 0) {
      ++out.count;
      out.index_sum += eq.index;
    }
  }
  return out;
}

std::vector<SeparatrixSeed> separatrix_seeds(const Params& params,
                                             const Equilibrium& eq,
                                             double offset) {
  std::vector<SeparatrixSeed> out;
  if (eq.polar.r() == 0.0) return out;
  const Mat2 J = jacobian(params, eq.polar);
  const double r = eq.polar.r();
  const double theta = eq.polar.theta();
  const double rho = std::sqrt(r);
  for (const Complex& lambda : eq.eigenvalues) {
    if (lambda.imag() != 0.0) continue;
    const double l = lambda.real();
    // (J - l I) v = 0; take the better-conditioned row.
    double dr, dth;
    if (std::abs(J[0][1]) + std::abs(l - J[0][0]) >=
        std::abs(J[1][0]) + std::abs(l - J[1][1])) {
      dr = J[0][1];
      dth = l - J[0][0];
    } else {
      dr = l - J[1][1];
      dth = J[1][0];
    }
    // d(sqrt(r) e^{i theta}) = (dr / (2 sqrt r) + i sqrt(r) dtheta) e^{i theta}
    const Complex dz = Complex{dr / (2.0 * rho), rho * dth} *
                       std::polar(1.0, theta);
    const double norm = std::abs(dz);
    if (norm == 0.0) continue;
    const Complex step = dz / norm * offset;
    out.push_back({PlanePoint::from(eq.plane.z() + step), l});
    out.push_back({PlanePoint::from(eq.plane.z() - step), l});
  }
  return out;
}

}  // namespace equicycle
