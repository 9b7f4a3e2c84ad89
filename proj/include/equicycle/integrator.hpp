#pragma once

// Dormand-Prince 5(4) with PI step-size control and the standard
// fourth-order continuous extension.  Fixed-size states only; all the systems
// integrated here are two- or three-dimensional.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace equicycle {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 1'000'000;
  double initial_step = 1e-4;
  double max_step = 0.0;  // 0: no limit beyond the span
};

enum class IntegrationStatus { Completed, Stopped, StepLimit, StepUnderflow, NonFinite };

/// Piecewise quartic interpolant over the accepted steps.
template <std::size_t N>
class DenseSolution {
 public:
  struct Segment {
    double t0;
    double h;
    std::array<State<N>, 5> c;
  };

  bool empty() const { return segments_.empty(); }
  double t_begin() const { return segments_.front().t0; }
  double t_end() const { return segments_.back().t0 + segments_.back().h; }
  std::size_t size() const { return segments_.size(); }

  void push(Segment s) { segments_.push_back(std::move(s)); }

  State<N> operator()(double t) const {
    // segments are ordered in the integration direction
    const bool forward = segments_.front().h > 0.0;
    auto it = std::lower_bound(
        segments_.begin(), segments_.end(), t,
        [forward](const Segment& s, double value) {
          const double end = s.t0 + s.h;
          return forward ? end < value : end > value;
        });
    if (it == segments_.end()) --it;
    const double a = (t - it->t0) / it->h;
    const double b = 1.0 - a;
    State<N> y{};
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = it->c[0][i] +
             a * (it->c[1][i] +
                  b * (it->c[2][i] + a * (it->c[3][i] + b * it->c[4][i])));
    }
    return y;
  }

 private:
  std::vector<Segment> segments_;
};

template <std::size_t N>
struct IntegrationResult {
  IntegrationStatus status = IntegrationStatus::Completed;
  double t = 0.0;
  State<N> y{};
  long accepted = 0;
  long rejected = 0;
  DenseSolution<N> dense;

  bool completed() const { return status == IntegrationStatus::Completed; }
};

namespace detail {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                        c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                        a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                        a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                        e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                        e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1.  `observer(t, y)` is called after
/// every accepted step and stops the integration by returning false.
template <std::size_t N, class Rhs, class Observer>
IntegrationResult<N> integrate_dopri5(Rhs&& rhs, double t0, double t1,
                                      State<N> y0, const StepControl& ctl,
                                      Observer&& observer,
                                      bool keep_dense = false) {
  using namespace detail;
  constexpr double safe = 0.9;
  constexpr double beta = 0.04;
  constexpr double expo1 = 0.2 - beta * 0.75;
  constexpr double facc1 = 1.0 / 0.2;   // largest shrink
  constexpr double facc2 = 1.0 / 10.0;  // largest growth

  IntegrationResult<N> out;
  out.t = t0;
  out.y = y0;

  const double dir = t1 >= t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  if (span == 0.0) return out;
  const double hmax = ctl.max_step > 0.0 ? std::min(ctl.max_step, span) : span;

  double t = t0;
  State<N> y = y0;
  State<N> k1 = rhs(t, y);
  double h = dir * std::min(std::abs(ctl.initial_step), hmax);
  double facold = 1e-4;
  bool last_rejected = false;

  auto axpy = [](const State<N>& base, double h, auto... terms) {
    State<N> r = base;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      ((acc += terms.first * (*terms.second)[i]), ...);
      r[i] += h * acc;
    }
    return r;
  };
  auto term = [](double c, const State<N>& k) { return std::pair{c, &k}; };

  long steps = 0;
  while (true) {
    if (steps++ >= ctl.max_steps) {
      out.status = IntegrationStatus::StepLimit;
      break;
    }
    bool final_step = false;
    if (dir * (t + h - t1) >= 0.0) {
      h = t1 - t;
      final_step = true;
    }
    // Relative to t only: fast polynomial fields legitimately need steps far
    // below 1e-15 when started near t = 0.
    if (std::abs(h) <= 16.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(t), 1e-280)) {
      out.status = IntegrationStatus::StepUnderflow;
      break;
    }

    const State<N> y2 = axpy(y, h, term(a21, k1));
    const State<N> k2 = rhs(t + c2 * h, y2);
    const State<N> y3 = axpy(y, h, term(a31, k1), term(a32, k2));
    const State<N> k3 = rhs(t + c3 * h, y3);
    const State<N> y4 = axpy(y, h, term(a41, k1), term(a42, k2), term(a43, k3));
    const State<N> k4 = rhs(t + c4 * h, y4);
    const State<N> y5 = axpy(y, h, term(a51, k1), term(a52, k2), term(a53, k3),
                             term(a54, k4));
    const State<N> k5 = rhs(t + c5 * h, y5);
    const State<N> y6 = axpy(y, h, term(a61, k1), term(a62, k2), term(a63, k3),
                             term(a64, k4), term(a65, k5));
    const State<N> k6 = rhs(t + h, y6);
    const State<N> ynew = axpy(y, h, term(a71, k1), term(a73, k3),
                               term(a74, k4), term(a75, k5), term(a76, k6));
    const State<N> k7 = rhs(t + h, ynew);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sk =
          ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / sk) * (ei / sk);
      finite = finite && std::isfinite(ynew[i]) && std::isfinite(ei);
    }
    err = std::sqrt(err / N);
    if (!finite) {
      // treat overflow as a failed step and retry smaller
      h *= 0.1;
      last_rejected = true;
      ++out.rejected;
      if (std::abs(h) < 1e-300) {
        out.status = IntegrationStatus::NonFinite;
        break;
      }
      continue;
    }

    const double fac11 = std::pow(err, expo1);
    if (err <= 1.0) {
      double fac = fac11 / std::pow(facold, beta);
      fac = std::clamp(fac / safe, facc2, facc1);
      double hnew = h / fac;
      facold = std::max(err, 1e-4);
      ++out.accepted;

      if (keep_dense) {
        typename DenseSolution<N>::Segment seg;
        seg.t0 = t;
        seg.h = h;
        for (std::size_t i = 0; i < N; ++i) {
          const double ydiff = ynew[i] - y[i];
          const double bspl = h * k1[i] - ydiff;
          seg.c[0][i] = y[i];
          seg.c[1][i] = ydiff;
          seg.c[2][i] = bspl;
          seg.c[3][i] = ydiff - h * k7[i] - bspl;
          seg.c[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                             d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        out.dense.push(std::move(seg));
      }

      t = final_step ? t1 : t + h;
      y = ynew;
      k1 = k7;
      out.t = t;
      out.y = y;

      if (!observer(t, y)) {
        out.status = IntegrationStatus::Stopped;
        break;
      }
      if (final_step) {
        out.status = IntegrationStatus::Completed;
        break;
      }
      if (std::abs(hnew) > hmax) hnew = dir * hmax;
      if (last_rejected) hnew = dir * std::min(std::abs(hnew), std::abs(h));
      last_rejected = false;
      h = hnew;
    } else {
      h = h / std::min(facc1, fac11 / safe);
      last_rejected = true;
      ++out.rejected;
    }
  }
  return out;
}

template <std::size_t N, class Rhs>
IntegrationResult<N> integrate_dopri5(Rhs&& rhs, double t0, double t1,
                                      State<N> y0, const StepControl& ctl,
                                      bool keep_dense = false) {
  return integrate_dopri5<N>(std::forward<Rhs>(rhs), t0, t1, y0, ctl,
                             [](double, const State<N>&) { return true; },
                             keep_dense);
}

}  // namespace equicycle
