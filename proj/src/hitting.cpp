#include "sirsv/hitting.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>

namespace sirsv {

Eigen::VectorXd expected_hitting_times_final_set(const GeneratorMatrix& q) {
  const std::uint64_t n_states = q.n_states;
  const int n = q.n_nodes;

  // Transient class: every state with at least one infected node.
  std::vector<std::int64_t> transient_index(n_states, -1);
  std::vector<std::uint64_t> transient_states;
  {
    std::vector<std::uint8_t> digits(n, 0);
    for (std::uint64_t z = 0; z < n_states; ++z) {
      bool has_infected = false;
      for (int i = 0; i < n; ++i)
        if (digits[i] == 1) {
          has_infected = true;
          break;
        }
      if (has_infected) {
        transient_index[z] = static_cast<std::int64_t>(transient_states.size());
        transient_states.push_back(z);
      }
      for (int i = 0; i < n; ++i) {
        if (++digits[i] < 3) break;
        digits[i] = 0;
      }
    }
  }
  const auto dim = static_cast<Eigen::Index>(transient_states.size());

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(transient_states.size() * (2 * n + 1));
  for (Eigen::Index tz = 0; tz < dim; ++tz) {
    const std::uint64_t z = transient_states[tz];
    triplets.emplace_back(tz, tz, -q.diag[z]);
    for (std::uint64_t e = q.row_offsets[z]; e < q.row_offsets[z + 1]; ++e) {
      const std::int64_t tj = transient_index[q.cols[e]];
      if (tj >= 0) triplets.emplace_back(tz, static_cast<Eigen::Index>(tj), -q.rates[e]);
    }
  }
  Eigen::SparseMatrix<double> a(dim, dim);  // -Q restricted to the transient class
  a.setFromTriplets(triplets.begin(), triplets.end());

  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(dim);
  Eigen::VectorXd h_t(dim);
  if (dim <= 2000) {
    // Small systems: direct factorization. Above that the lattice-like
    // sparsity pattern makes LU fill-in explode, while the diagonally
    // dominant M-matrix structure lets BiCGSTAB converge in a few dozen
    // iterations.
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
    if (lu.info() != Eigen::Success)
      throw NumericalError("hitting times: restricted generator is singular");
    h_t = lu.solve(rhs);
  } else {
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> solver;
    solver.setTolerance(1e-14);
    solver.setMaxIterations(50000);
    solver.compute(a);
    h_t = solver.solve(rhs);
    if (solver.info() != Eigen::Success)
      throw NumericalError("hitting times: iterative solve did not converge (residual estimate " +
                           std::to_string(solver.error()) + ")");
  }
  const double residual = (a * h_t - rhs).lpNorm<Eigen::Infinity>();
  if (!(residual <= 1e-8 * std::max(1.0, h_t.maxCoeff())))
    throw NumericalError("hitting times: residual " + std::to_string(residual) + " too large");

  Eigen::VectorXd h = Eigen::VectorXd::Zero(n_states);
  for (Eigen::Index tz = 0; tz < dim; ++tz) h[transient_states[tz]] = h_t[tz];
  return h;
}

double expected_hitting_time_final_set(const GeneratorMatrix& q,
                                       const NetworkConfiguration& start) {
  if (infected_count(start.states) == 0)
    throw ConfigError("expected_hitting_time_final_set: start has no infected node");
  return expected_hitting_times_final_set(q)[start.index];
}

}  // namespace sirsv
