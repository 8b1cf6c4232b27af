#ifndef SIRSV_BOUNDS_HPP
#define SIRSV_BOUNDS_HPP

#include <Eigen/Dense>

#include "sirsv/graph.hpp"
#include "sirsv/params.hpp"

namespace sirsv {

// Upper bound on P(at least one node infected at time t):
// sqrt(N * I0) * exp((beta*lambda1 - delta) * t).
double bound_not_in_final_set(double t, int n_nodes, int infected_at_0, double beta,
                              double delta, double lambda1);

// Upper bound (log N + 1) / (delta - beta*lambda1) on the mean hitting time
// of the final set, valid in the fast-extinction regime beta/delta <
// 1/lambda1; outside it the call fails.
double bound_mean_extinction_time(int n_nodes, double beta, double delta, double lambda1);

// Block matrix [[beta*A - delta*I, 0], [delta*I, -gamma*I]] that dominates
// the joint (I, R) marginal dynamics, with the ingredients of the
// no-absorption bound: its top eigenvalue max{beta*lambda1 - delta, -gamma}
// and the condition constant C = ||M||_2 ||M^{-1}||_2 of its eigenbasis.
struct BlockMatrixAbar {
  Eigen::MatrixXd matrix;        // 2N x 2N
  Eigen::VectorXd eigenvalues;   // all real; beta*A - delta*I spectrum plus -gamma
  double top_eigenvalue = 0.0;
  double condition_constant = 0.0;
};

// Fails when -gamma sits within `margin` of the spectrum of beta*A - delta*I
// (the eigenbasis construction degenerates there).
BlockMatrixAbar block_matrix_abar(const Graph& g, const EpidemicParams& p,
                                  double margin = 1e-8);

// Upper bound C * sqrt(N * #initially-not-S) * exp(top * t) on the
// probability that the sigma = 0 chain has not been absorbed in the all-S
// state by time t.
double bound_no_absorption(double t, const Graph& g, const EpidemicParams& p,
                           int initial_ir_count, double margin = 1e-8);

}  // namespace sirsv

#endif
