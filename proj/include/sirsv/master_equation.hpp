#ifndef SIRSV_MASTER_EQUATION_HPP
#define SIRSV_MASTER_EQUATION_HPP

#include <Eigen/Dense>
#include <vector>

#include "sirsv/generator.hpp"

namespace sirsv {

// Probability-vector evolution of dv/dt = Q^T v by uniformization: the
// Poisson-weighted power series of P = I + Q/Lambda, truncated at tail mass
// tail_tol per step and renormalized. Unconditionally positive and
// probability-conserving.
class MasterEquationSolver {
public:
  explicit MasterEquationSolver(const GeneratorMatrix& q, double tail_tol = 1e-12);

  // Advances a probability vector in place by dt >= 0.
  void advance(Eigen::VectorXd& v, double dt) const;

  double uniformization_rate() const { return lambda_; }

private:
  void apply_pt(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;

  double lambda_;
  double tail_tol_;
  // CSR of P^T (off-diagonal part) plus its diagonal.
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> probs_;
  std::vector<double> diag_;
};

// Validates v0 (non-negative up to -1e-12, total mass 1 within 1e-9) and
// returns the solution at every grid time. The grid must be non-decreasing
// and start at t >= 0.
std::vector<Eigen::VectorXd> solve_master_equation(const GeneratorMatrix& q,
                                                   const Eigen::VectorXd& v0,
                                                   const std::vector<double>& t_grid,
                                                   double tail_tol = 1e-12);

Eigen::VectorXd delta_mass(const GeneratorMatrix& q, std::uint64_t state_index);

// P(X_i = I) for every node, summing state probabilities over configurations
// with node i infected.
Eigen::VectorXd marginal_infection_probabilities(const Eigen::VectorXd& v, int n_nodes);

// P(at least one infected node) = 1 - mass of the final class Y0.
double prob_not_in_final_set(const Eigen::VectorXd& v, int n_nodes);

// P(not in the all-susceptible state Y_0).
double prob_not_absorbed(const Eigen::VectorXd& v);

}  // namespace sirsv

#endif
