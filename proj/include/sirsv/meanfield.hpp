#ifndef SIRSV_MEANFIELD_HPP
#define SIRSV_MEANFIELD_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "sirsv/graph.hpp"
#include "sirsv/ode.hpp"
#include "sirsv/params.hpp"
#include "sirsv/partition.hpp"

namespace sirsv {

// Per-node state probabilities. The full system packs y = [S, I, R] (3N),
// the reduced system y = [I, R] (2N) with S = 1 - I - R, the quotient system
// y = [Sbar, Ibar, Rbar] (3n cells).
struct MeanFieldState {
  Eigen::VectorXd S, I, R;
};

Eigen::VectorXd pack_full(const MeanFieldState& s);
MeanFieldState unpack_full(const Eigen::VectorXd& y);

// Right-hand sides.
void rhs_full(const WeightedNeighbors& adj, const EpidemicParams& p, const Eigen::VectorXd& y,
              Eigen::VectorXd& dy);
void rhs_reduced_ir(const WeightedNeighbors& adj, const EpidemicParams& p,
                    const Eigen::VectorXd& y, Eigen::VectorXd& dy);
void rhs_quotient(const QuotientMatrix& q, const EpidemicParams& p, const Eigen::VectorXd& y,
                  Eigen::VectorXd& dy);
// Single-cell regular-graph specialization in the (I, R) plane.
void rhs_regular2d(int d_g, const EpidemicParams& p, const Eigen::VectorXd& y,
                   Eigen::VectorXd& dy);

OdeRhs make_full_rhs(WeightedNeighbors adj, EpidemicParams p);
OdeRhs make_reduced_rhs(WeightedNeighbors adj, EpidemicParams p);
OdeRhs make_quotient_rhs(QuotientMatrix q, EpidemicParams p);
OdeRhs make_regular2d_rhs(int d_g, EpidemicParams p);

// Which invariant region the packed state must respect.
enum class StateLayout { Full3N, ReducedIR, Quotient3Cells, Regular2d };

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  long clamped_negatives = 0;     // tiny negatives (>= -1e-12) snapped to 0
  std::string region_violation;   // empty if the trajectory stayed in region
};

// Adaptive integration hitting every grid time exactly. y0 must lie in the
// region belonging to `layout` (slack 1e-9); leaving the region by more than
// 1e-7 along the way is recorded in region_violation, not thrown.
Trajectory integrate(const OdeRhs& rhs, StateLayout layout, const Eigen::VectorXd& y0,
                     const std::vector<double>& t_grid, double tol = 1e-9);

struct SteadyResult {
  Eigen::VectorXd y;
  double t_end = 0.0;
  double rhs_inf_norm = 0.0;
  bool converged = false;  // ||rhs||_inf dropped below the threshold before t_max
};

// Long-horizon run with convergence detection: stops when ||rhs||_inf <
// rhs_threshold at a checkpoint, else at t_max.
SteadyResult integrate_to_steady(const OdeRhs& rhs, StateLayout layout,
                                 const Eigen::VectorXd& y0, double t_max, double tol = 1e-9,
                                 double check_dt = 1.0, double rhs_threshold = 1e-10);

struct ThresholdReport {
  double tau = 0.0;      // beta/delta
  double tau_c = 0.0;    // (gamma+sigma)/(gamma*lambda1)
  double rho = 0.0;      // beta*gamma/(delta*(gamma+sigma))
  double lambda1 = 0.0;
  bool endemic = false;  // tau > tau_c, equivalently rho > 1/lambda1
};

ThresholdReport threshold_report(const EpidemicParams& p, double lambda1);

struct EquilibriumPoint {
  enum class Kind { DFE, Endemic };
  Kind kind = Kind::DFE;
  Eigen::VectorXd S, I, R;  // per node, or per cell for the quotient route
  double residual = 0.0;    // max-norm of the vector field at the point
  long iterations = 0;
};

EquilibriumPoint disease_free_equilibrium(const EpidemicParams& p, int n);

// Damped fixed-point iteration on the endemic closed-form map for I*.
// Below threshold the request fails: the unique equilibrium there is the DFE.
EquilibriumPoint endemic_equilibrium(const WeightedNeighbors& adj, const EpidemicParams& p,
                                     double tol = 1e-12);
EquilibriumPoint endemic_equilibrium(const Graph& g, const EpidemicParams& p,
                                     double tol = 1e-12);
EquilibriumPoint endemic_equilibrium(const QuotientMatrix& q, const EpidemicParams& p,
                                     double tol = 1e-12);

// Volterra-type Lyapunov function for the regular-graph (I, R) system:
// V = c (I - I* - I* ln(I/I*)) + (R - R*)^2 / 2 with c = (delta-sigma)/(beta d_G).
double lyapunov_v(double i, double r, double i_star, double r_star, const EpidemicParams& p,
                  int d_g);
// dV/dt along the flow, via the chain rule on the actual vector field.
double lyapunov_v_dot(double i, double r, double i_star, double r_star,
                      const EpidemicParams& p, int d_g);
// The closed form -(delta-sigma)(I-I*)^2 - (gamma+sigma)(R-R*)^2.
double lyapunov_v_dot_closed_form(double i, double r, double i_star, double r_star,
                                  const EpidemicParams& p);

struct ConditionAReport {
  bool holds = false;
  double lhs = 0.0;  // lambda1
  double rhs = 0.0;  // (1/beta) min_i{delta I*_i / S*_i^2} min_i{S*_i/(1-S*_i)}
  bool condition_b_applies = false;  // delta == sigma
};

// Sufficient global-stability condition a); requires an endemic equilibrium.
ConditionAReport check_global_condition_a(const EquilibriumPoint& eq, const EpidemicParams& p,
                                          double lambda1);

}  // namespace sirsv

#endif
