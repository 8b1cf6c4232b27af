#ifndef SIRSV_ODE_HPP
#define SIRSV_ODE_HPP

#include <Eigen/Dense>
#include <functional>

namespace sirsv {

// Autonomous vector field y' = f(y).
using OdeRhs = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct OdeOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  long max_steps = 10000000;
  // Applied to the state after every accepted step; returns true if it
  // modified the state (e.g. clamping of tiny negatives).
  std::function<bool(Eigen::VectorXd&)> post_step;
};

// Advances y from t0 to t1 (either direction) with the Dormand-Prince
// embedded 5(4) pair and standard PI-free step control. Throws
// NumericalError on step-size underflow or step-count exhaustion.
void ode_advance(const OdeRhs& f, double t0, double t1, Eigen::VectorXd& y,
                 const OdeOptions& opt);

}  // namespace sirsv

#endif
