#include "sirsv/master_equation.hpp"

#include <algorithm>
#include <cmath>

namespace sirsv {

MasterEquationSolver::MasterEquationSolver(const GeneratorMatrix& q, double tail_tol)
    : lambda_(q.max_exit_rate()), tail_tol_(tail_tol) {
  const std::uint64_t n = q.n_states;
  diag_.assign(n, 1.0);
  offsets_.assign(n + 1, 0);
  if (lambda_ == 0.0) return;  // every state absorbing; evolution is the identity

  for (std::uint64_t z = 0; z < n; ++z) diag_[z] = 1.0 + q.diag[z] / lambda_;

  // Transpose the off-diagonal CSR by counting sort: row j of P^T gathers
  // q_{z j}/Lambda over all sources z.
  for (std::uint32_t c : q.cols) ++offsets_[c + 1];
  for (std::uint64_t j = 0; j < n; ++j) offsets_[j + 1] += offsets_[j];
  cols_.resize(q.cols.size());
  probs_.resize(q.rates.size());
  std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::uint64_t z = 0; z < n; ++z) {
    for (std::uint64_t e = q.row_offsets[z]; e < q.row_offsets[z + 1]; ++e) {
      const std::uint64_t slot = cursor[q.cols[e]]++;
      cols_[slot] = static_cast<std::uint32_t>(z);
      probs_[slot] = q.rates[e] / lambda_;
    }
  }
}

void MasterEquationSolver::apply_pt(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  const std::uint64_t n = diag_.size();
  for (std::uint64_t j = 0; j < n; ++j) {
    double acc = diag_[j] * x[j];
    for (std::uint64_t e = offsets_[j]; e < offsets_[j + 1]; ++e)
      acc += probs_[e] * x[cols_[e]];
    y[j] = acc;
  }
}

void MasterEquationSolver::advance(Eigen::VectorXd& v, double dt) const {
  if (dt < 0.0) throw ConfigError("master equation: negative time step");
  if (dt == 0.0 || lambda_ == 0.0) return;

  // Bound the Poisson mean per substep so the weight recurrence stays well
  // inside double range.
  const double total_mean = lambda_ * dt;
  const int n_sub = static_cast<int>(std::ceil(total_mean / 500.0));
  const double mean = total_mean / n_sub;

  // Poisson(mean) weights, computed outward from the mode; terms below
  // 1e-18 of the mode are dropped, which leaves a truncation tail far below
  // tail_tol_. Renormalizing by the realized weight sum keeps total mass 1.
  const int mode = static_cast<int>(std::floor(mean));
  const double w_mode =
      std::exp(-mean + (mode > 0 ? mode * std::log(mean) : 0.0) - std::lgamma(mode + 1.0));
  std::vector<double> up{w_mode};
  for (int k = mode;; ++k) {
    const double w = up.back() * (mean / (k + 1));
    up.push_back(w);
    if (w < w_mode * 1e-18) break;
    if (up.size() > 10000000) throw NumericalError("uniformization truncation failed");
  }
  std::vector<double> down;
  for (int k = mode; k > 0; --k) {
    const double w = (down.empty() ? w_mode : down.back()) * (k / mean);
    down.push_back(w);
    if (w < w_mode * 1e-18) break;
  }
  const int k_max = mode + static_cast<int>(up.size()) - 1;
  std::vector<double> weights(k_max + 1, 0.0);
  for (int i = 0; i < static_cast<int>(up.size()); ++i) weights[mode + i] = up[i];
  for (int i = 0; i < static_cast<int>(down.size()); ++i) weights[mode - 1 - i] = down[i];
  double weight_sum = 0.0;
  for (double w : weights) weight_sum += w;

  Eigen::VectorXd term(v.size());
  Eigen::VectorXd next(v.size());
  Eigen::VectorXd acc(v.size());
  for (int sub = 0; sub < n_sub; ++sub) {
    term = v;
    acc = weights[0] * term;
    for (int k = 1; k <= k_max; ++k) {
      apply_pt(term, next);
      term.swap(next);
      if (weights[k] != 0.0) acc += weights[k] * term;
    }
    v = acc / weight_sum;
  }
}

std::vector<Eigen::VectorXd> solve_master_equation(const GeneratorMatrix& q,
                                                   const Eigen::VectorXd& v0,
                                                   const std::vector<double>& t_grid,
                                                   double tail_tol) {
  if (static_cast<std::uint64_t>(v0.size()) != q.n_states)
    throw ConfigError("master equation: initial vector has wrong dimension");
  Eigen::VectorXd v = v0;
  for (std::uint64_t z = 0; z < q.n_states; ++z) {
    if (v[z] < 0.0) {
      if (v[z] < -1e-12) throw ConfigError("master equation: negative initial probability");
      v[z] = 0.0;
    }
  }
  if (std::abs(v.sum() - 1.0) > 1e-9)
    throw ConfigError("master equation: initial probabilities must sum to 1");
  if (!t_grid.empty() && t_grid.front() < 0.0)
    throw ConfigError("master equation: time grid must start at t >= 0");

  MasterEquationSolver solver(q, tail_tol);
  std::vector<Eigen::VectorXd> out;
  out.reserve(t_grid.size());
  double t_cur = 0.0;
  for (double t : t_grid) {
    if (t < t_cur) throw ConfigError("master equation: time grid must be non-decreasing");
    solver.advance(v, t - t_cur);
    t_cur = t;
    out.push_back(v);
  }
  return out;
}

Eigen::VectorXd delta_mass(const GeneratorMatrix& q, std::uint64_t state_index) {
  if (state_index >= q.n_states) throw ConfigError("delta_mass: state index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(q.n_states);
  v[state_index] = 1.0;
  return v;
}

Eigen::VectorXd marginal_infection_probabilities(const Eigen::VectorXd& v, int n_nodes) {
  const std::uint64_t n_states = pow3(n_nodes);
  if (static_cast<std::uint64_t>(v.size()) != n_states)
    throw ConfigError("marginals: vector dimension does not match N");
  Eigen::VectorXd marg = Eigen::VectorXd::Zero(n_nodes);
  std::vector<std::uint8_t> digits(n_nodes, 0);
  for (std::uint64_t z = 0; z < n_states; ++z) {
    const double p = v[z];
    if (p != 0.0)
      for (int i = 0; i < n_nodes; ++i)
        if (digits[i] == 1) marg[i] += p;
    for (int i = 0; i < n_nodes; ++i) {
      if (++digits[i] < 3) break;
      digits[i] = 0;
    }
  }
  return marg;
}

double prob_not_in_final_set(const Eigen::VectorXd& v, int n_nodes) {
  // Final class Y0: every digit in {0, 2}; enumerate its 2^N states.
  double final_mass = 0.0;
  std::vector<std::uint64_t> two_place(n_nodes);
  for (int i = 0; i < n_nodes; ++i) two_place[i] = 2 * pow3(i);
  const std::uint64_t masks = 1ULL << n_nodes;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    std::uint64_t idx = 0;
    for (int i = 0; i < n_nodes; ++i)
      if (mask & (1ULL << i)) idx += two_place[i];
    final_mass += v[idx];
  }
  return 1.0 - final_mass;
}

double prob_not_absorbed(const Eigen::VectorXd& v) { return 1.0 - v[0]; }

}  // namespace sirsv
