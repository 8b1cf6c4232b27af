#include "sirsv/bounds.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace sirsv {

double bound_not_in_final_set(double t, int n_nodes, int infected_at_0, double beta,
                              double delta, double lambda1) {
  if (t < 0.0) throw ConfigError("bound_not_in_final_set: t must be >= 0");
  return std::sqrt(double(n_nodes) * infected_at_0) * std::exp((beta * lambda1 - delta) * t);
}

double bound_mean_extinction_time(int n_nodes, double beta, double delta, double lambda1) {
  if (lambda1 > 0.0 && !(beta / delta < 1.0 / lambda1))
    throw ConfigError("bound_mean_extinction_time: beta/delta >= 1/lambda1, above the "
                      "fast-extinction threshold");
  if (!(delta - beta * lambda1 > 0.0))
    throw ConfigError("bound_mean_extinction_time: requires delta > beta*lambda1");
  return (std::log(double(n_nodes)) + 1.0) / (delta - beta * lambda1);
}

BlockMatrixAbar block_matrix_abar(const Graph& g, const EpidemicParams& p, double margin) {
  const int n = g.node_count();
  const Eigen::MatrixXd a = g.dense_adjacency();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p.beta * a -
                                                     p.delta * Eigen::MatrixXd::Identity(n, n));
  if (eig.info() != Eigen::Success)
    throw NumericalError("block_matrix_abar: eigendecomposition failed");
  const Eigen::VectorXd mu = eig.eigenvalues();
  const Eigen::MatrixXd x = eig.eigenvectors();

  for (int i = 0; i < n; ++i)
    if (std::abs(mu[i] + p.gamma) < margin)
      throw NumericalError("block_matrix_abar: -gamma lies within margin of the spectrum of "
                           "beta*A - delta*I; Abar not diagonalizable under this test");

  BlockMatrixAbar r;
  r.matrix = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  r.matrix.topLeftCorner(n, n) = p.beta * a - p.delta * Eigen::MatrixXd::Identity(n, n);
  r.matrix.bottomLeftCorner(n, n) = p.delta * Eigen::MatrixXd::Identity(n, n);
  r.matrix.bottomRightCorner(n, n) = -p.gamma * Eigen::MatrixXd::Identity(n, n);

  r.eigenvalues.resize(2 * n);
  r.eigenvalues.head(n) = mu;
  r.eigenvalues.tail(n).setConstant(-p.gamma);
  // mu.maxCoeff() is beta*lambda1(A) - delta.
  r.top_eigenvalue = std::max(mu.maxCoeff(), -p.gamma);

  // Eigenbasis: [x_j; delta/(mu_j + gamma) x_j] for each eigenpair of the top
  // block, and [0; e_i] for the -gamma eigenvalue; columns normalized.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    m.col(j).head(n) = x.col(j);
    m.col(j).tail(n) = (p.delta / (mu[j] + p.gamma)) * x.col(j);
    m.col(j).normalize();
  }
  m.bottomRightCorner(n, n).setIdentity();

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > 0.0))
    throw NumericalError("block_matrix_abar: eigenbasis is numerically singular");
  r.condition_constant = svd.singularValues().maxCoeff() / smin;
  return r;
}

double bound_no_absorption(double t, const Graph& g, const EpidemicParams& p,
                           int initial_ir_count, double margin) {
  if (t < 0.0) throw ConfigError("bound_no_absorption: t must be >= 0");
  if (p.sigma != 0.0)
    throw ConfigError("bound_no_absorption: defined for the sigma = 0 model only");
  const BlockMatrixAbar abar = block_matrix_abar(g, p, margin);
  return abar.condition_constant *
         std::sqrt(double(g.node_count()) * initial_ir_count) *
         std::exp(abar.top_eigenvalue * t);
}

}  // namespace sirsv
