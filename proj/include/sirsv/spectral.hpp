#ifndef SIRSV_SPECTRAL_HPP
#define SIRSV_SPECTRAL_HPP

#include <Eigen/Dense>
#include <functional>

#include "sirsv/graph.hpp"

namespace sirsv {

struct SpectralResult {
  double lambda1 = 0.0;          // Perron root
  Eigen::VectorXd eigenvector;   // strictly positive, unit 2-norm
  long iterations = 0;
  double residual = 0.0;         // max-norm of A v - lambda1 v
};

inline constexpr double kSpectralTolDefault = 1e-10;
inline constexpr long kSpectralMaxIter = 100000;

// Power iteration for the Perron root of a non-negative irreducible matrix,
// given as a matvec. Internally iterates on A + sI (s = max row sum) so that
// bipartite/periodic structures cannot stall the iteration; the reported
// residual is measured on A itself.
SpectralResult power_iteration(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& matvec,
                               int dimension, double tol = kSpectralTolDefault,
                               long max_iter = kSpectralMaxIter);

SpectralResult spectral_radius(const WeightedNeighbors& rows, double tol = kSpectralTolDefault);
SpectralResult spectral_radius(const Graph& g, double tol = kSpectralTolDefault);
SpectralResult spectral_radius(const WeightedAdjacency& w, double tol = kSpectralTolDefault);
SpectralResult spectral_radius(const Eigen::MatrixXd& m, double tol = kSpectralTolDefault);

}  // namespace sirsv

#endif
