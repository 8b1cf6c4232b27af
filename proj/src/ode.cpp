#include "sirsv/ode.hpp"

#include <algorithm>
#include <cmath>

#include "sirsv/errors.hpp"

namespace sirsv {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights (error estimator).
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

void ode_advance(const OdeRhs& f, double t0, double t1, Eigen::VectorXd& y,
                 const OdeOptions& opt) {
  if (t1 == t0) return;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const auto n = y.size();

  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  Eigen::VectorXd y_tmp(n), y_new(n), err(n);

  // Initial step from the ratio of state and derivative scales.
  f(y, k1);
  double h;
  {
    const double d0 = y.norm();
    const double d1 = k1.norm();
    h = (d1 > 1e-12) ? 0.01 * std::max(d0, 1e-6) / d1 : 1e-6;
    h = dir * std::min(h, std::abs(t1 - t0));
  }

  double t = t0;
  for (long step = 0; step < opt.max_steps; ++step) {
    if ((t - t1) * dir >= 0.0) return;
    if ((t + h - t1) * dir > 0.0) h = t1 - t;

    f(y, k1);
    y_tmp = y + h * (a21 * k1);
    f(y_tmp, k2);
    y_tmp = y + h * (a31 * k1 + a32 * k2);
    f(y_tmp, k3);
    y_tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(y_tmp, k4);
    y_tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(y_tmp, k5);
    y_tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(y_tmp, k6);
    y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(y_new, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm_sq = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double q = err[i] / sc;
      err_norm_sq += q * q;
    }
    const double err_norm = std::sqrt(err_norm_sq / static_cast<double>(n));

    if (!std::isfinite(err_norm)) {
      h *= 0.5;
      if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
        throw NumericalError("ode_advance: vector field produced non-finite values at t = " +
                             std::to_string(t));
      continue;
    }

    if (err_norm <= 1.0) {
      t += h;
      y = y_new;
      if (opt.post_step) (void)opt.post_step(y);
      const double grow = err_norm == 0.0 ? 5.0 : 0.9 * std::pow(err_norm, -0.2);
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 0.9);
      if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
        throw NumericalError("ode_advance: step-size underflow at t = " + std::to_string(t));
    }
  }
  throw NumericalError("ode_advance: step budget exhausted");
}

}  // namespace sirsv
