#include "sirsv/spectral.hpp"

#include <cmath>
#include <sstream>

#include "sirsv/errors.hpp"

namespace sirsv {

SpectralResult power_iteration(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& matvec,
                               int dimension, double tol, long max_iter) {
  if (!(tol > 0.0)) throw ConfigError("spectral_radius: tol must be > 0");
  const int n = dimension;

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  Eigen::VectorXd av(n);

  // Shift by the max row sum: A·1 gives the row sums of a non-negative matrix.
  matvec(Eigen::VectorXd::Ones(n), av);
  const double shift = std::max(av.maxCoeff(), 1.0);

  double lambda = 0.0;
  double residual = 0.0;
  for (long it = 1; it <= max_iter; ++it) {
    matvec(v, av);
    lambda = v.dot(av);  // Rayleigh quotient on A; v has unit norm
    residual = (av - lambda * v).lpNorm<Eigen::Infinity>();
    if (residual <= tol) {
      SpectralResult r;
      r.lambda1 = lambda;
      r.eigenvector = v;
      r.iterations = it;
      r.residual = residual;
      return r;
    }
    av += shift * v;
    const double norm = av.norm();
    if (!(norm > 0.0))
      throw NumericalError("power iteration collapsed to the zero vector");
    v = av / norm;
  }
  std::ostringstream msg;
  msg << "power iteration did not reach residual " << tol << " within " << max_iter
      << " iterations (last residual " << residual << ")";
  throw NumericalError(msg.str());
}

namespace {

void rows_matvec(const WeightedNeighbors& rows, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (auto [j, w] : rows[i]) acc += w * x[j];
    y[i] = acc;
  }
}

}  // namespace

SpectralResult spectral_radius(const WeightedNeighbors& rows, double tol) {
  return power_iteration(
      [&rows](const Eigen::VectorXd& x, Eigen::VectorXd& y) { rows_matvec(rows, x, y); },
      static_cast<int>(rows.size()), tol);
}

SpectralResult spectral_radius(const Graph& g, double tol) {
  return spectral_radius(g.weighted_view(), tol);
}

SpectralResult spectral_radius(const WeightedAdjacency& w, double tol) {
  return spectral_radius(w.weighted_view(), tol);
}

SpectralResult spectral_radius(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw ConfigError("spectral_radius: matrix must be square");
  if ((m.array() < 0.0).any()) throw ConfigError("spectral_radius: matrix must be non-negative");
  return power_iteration(
      [&m](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = m * x; },
      static_cast<int>(m.rows()), tol);
}

}  // namespace sirsv
