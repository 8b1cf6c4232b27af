#include "sirsv/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sirsv/spectral.hpp"

namespace sirsv {

namespace {

void infection_pressure(const WeightedNeighbors& adj, double beta, const Eigen::VectorXd& infected,
                        Eigen::VectorXd& out) {
  const int n = static_cast<int>(adj.size());
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (auto [j, w] : adj[i]) acc += w * infected[j];
    out[i] = beta * acc;
  }
}

}  // namespace

Eigen::VectorXd pack_full(const MeanFieldState& s) {
  const auto n = s.S.size();
  Eigen::VectorXd y(3 * n);
  y.segment(0, n) = s.S;
  y.segment(n, n) = s.I;
  y.segment(2 * n, n) = s.R;
  return y;
}

MeanFieldState unpack_full(const Eigen::VectorXd& y) {
  const auto n = y.size() / 3;
  return MeanFieldState{y.segment(0, n), y.segment(n, n), y.segment(2 * n, n)};
}

void rhs_full(const WeightedNeighbors& adj, const EpidemicParams& p, const Eigen::VectorXd& y,
              Eigen::VectorXd& dy) {
  const auto n = static_cast<Eigen::Index>(adj.size());
  const auto s = y.segment(0, n);
  const auto i = y.segment(n, n);
  const auto r = y.segment(2 * n, n);
  dy.resize(3 * n);
  Eigen::VectorXd pr(n);
  infection_pressure(adj, p.beta, Eigen::VectorXd(i), pr);
  dy.segment(0, n) = -s.cwiseProduct(pr) + p.gamma * r - p.sigma * s;
  dy.segment(n, n) = s.cwiseProduct(pr) - p.delta * i;
  dy.segment(2 * n, n) = p.delta * i - p.gamma * r + p.sigma * s;
}

void rhs_reduced_ir(const WeightedNeighbors& adj, const EpidemicParams& p,
                    const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
  const auto n = static_cast<Eigen::Index>(adj.size());
  const auto i = y.segment(0, n);
  const auto r = y.segment(n, n);
  dy.resize(2 * n);
  Eigen::VectorXd pr(n);
  infection_pressure(adj, p.beta, Eigen::VectorXd(i), pr);
  dy.segment(0, n) =
      (Eigen::VectorXd::Ones(n) - i - r).cwiseProduct(pr) - p.delta * i;
  dy.segment(n, n) = (p.delta - p.sigma) * i - (p.gamma + p.sigma) * r +
                     Eigen::VectorXd::Constant(n, p.sigma);
}

void rhs_quotient(const QuotientMatrix& q, const EpidemicParams& p, const Eigen::VectorXd& y,
                  Eigen::VectorXd& dy) {
  const auto n = q.matrix.rows();
  const auto s = y.segment(0, n);
  const auto i = y.segment(n, n);
  const auto r = y.segment(2 * n, n);
  dy.resize(3 * n);
  const Eigen::VectorXd pr = q.matrix * i;
  dy.segment(0, n) = -s.cwiseProduct(pr) + p.gamma * r - p.sigma * s;
  dy.segment(n, n) = s.cwiseProduct(pr) - p.delta * i;
  dy.segment(2 * n, n) = p.delta * i - p.gamma * r + p.sigma * s;
}

void rhs_regular2d(int d_g, const EpidemicParams& p, const Eigen::VectorXd& y,
                   Eigen::VectorXd& dy) {
  dy.resize(2);
  const double i = y[0], r = y[1];
  const double pr = p.beta * d_g * i;
  dy[0] = (1.0 - i - r) * pr - p.delta * i;
  dy[1] = (p.delta - p.sigma) * i - (p.gamma + p.sigma) * r + p.sigma;
}

OdeRhs make_full_rhs(WeightedNeighbors adj, EpidemicParams p) {
  return [adj = std::move(adj), p](const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    rhs_full(adj, p, y, dy);
  };
}

OdeRhs make_reduced_rhs(WeightedNeighbors adj, EpidemicParams p) {
  return [adj = std::move(adj), p](const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    rhs_reduced_ir(adj, p, y, dy);
  };
}

OdeRhs make_quotient_rhs(QuotientMatrix q, EpidemicParams p) {
  return [q = std::move(q), p](const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    rhs_quotient(q, p, y, dy);
  };
}

OdeRhs make_regular2d_rhs(int d_g, EpidemicParams p) {
  return [d_g, p](const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    rhs_regular2d(d_g, p, y, dy);
  };
}

namespace {

// Region membership with slack; returns an empty string or a description.
std::string region_violation_of(StateLayout layout, const Eigen::VectorXd& y, double slack) {
  const bool triple = (layout == StateLayout::Full3N || layout == StateLayout::Quotient3Cells);
  if (triple) {
    const auto n = y.size() / 3;
    for (Eigen::Index i = 0; i < 3 * n; ++i)
      if (y[i] < -slack) return "component " + std::to_string(i) + " negative: " + std::to_string(y[i]);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sum = y[i] + y[n + i] + y[2 * n + i];
      if (std::abs(sum - 1.0) > slack)
        return "S+I+R at index " + std::to_string(i) + " drifted to " + std::to_string(sum);
    }
  } else {
    const auto n = y.size() / 2;
    for (Eigen::Index i = 0; i < 2 * n; ++i)
      if (y[i] < -slack) return "component " + std::to_string(i) + " negative: " + std::to_string(y[i]);
    for (Eigen::Index i = 0; i < n; ++i)
      if (y[i] + y[n + i] > 1.0 + slack)
        return "I+R at index " + std::to_string(i) + " exceeds 1: " + std::to_string(y[i] + y[n + i]);
  }
  return {};
}

void check_initial_region(StateLayout layout, const Eigen::VectorXd& y0) {
  const std::string v = region_violation_of(layout, y0, 1e-9);
  if (!v.empty()) throw ConfigError("initial state outside the invariant region: " + v);
}

OdeOptions options_with_clamp(double tol, long* clamp_counter) {
  OdeOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  opt.post_step = [clamp_counter](Eigen::VectorXd& y) {
    bool changed = false;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] < 0.0 && y[i] >= -1e-12) {
        y[i] = 0.0;
        changed = true;
        ++(*clamp_counter);
      }
    }
    return changed;
  };
  return opt;
}

}  // namespace

Trajectory integrate(const OdeRhs& rhs, StateLayout layout, const Eigen::VectorXd& y0,
                     const std::vector<double>& t_grid, double tol) {
  if (t_grid.empty()) throw ConfigError("integrate: empty time grid");
  if (!(tol > 0.0)) throw ConfigError("integrate: tol must be > 0");
  check_initial_region(layout, y0);

  Trajectory traj;
  OdeOptions opt = options_with_clamp(tol, &traj.clamped_negatives);

  Eigen::VectorXd y = y0;
  traj.times = t_grid;
  traj.states.reserve(t_grid.size());
  traj.states.push_back(y);
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (t_grid[k] < t_grid[k - 1]) throw ConfigError("integrate: grid must be non-decreasing");
    ode_advance(rhs, t_grid[k - 1], t_grid[k], y, opt);
    traj.states.push_back(y);
    if (traj.region_violation.empty()) {
      const std::string v = region_violation_of(layout, y, 1e-7);
      if (!v.empty())
        traj.region_violation = "t = " + std::to_string(t_grid[k]) + ": " + v;
    }
  }
  return traj;
}

SteadyResult integrate_to_steady(const OdeRhs& rhs, StateLayout layout,
                                 const Eigen::VectorXd& y0, double t_max, double tol,
                                 double check_dt, double rhs_threshold) {
  if (!(t_max > 0.0)) throw ConfigError("integrate_to_steady: t_max must be > 0");
  check_initial_region(layout, y0);
  long clamped = 0;
  OdeOptions opt = options_with_clamp(tol, &clamped);

  SteadyResult res;
  res.y = y0;
  Eigen::VectorXd dy(y0.size());
  double t = 0.0;
  while (t < t_max) {
    const double t_next = std::min(t + check_dt, t_max);
    ode_advance(rhs, t, t_next, res.y, opt);
    t = t_next;
    rhs(res.y, dy);
    res.rhs_inf_norm = dy.lpNorm<Eigen::Infinity>();
    if (res.rhs_inf_norm < rhs_threshold) {
      res.converged = true;
      break;
    }
  }
  res.t_end = t;
  return res;
}

ThresholdReport threshold_report(const EpidemicParams& p, double lambda1) {
  p.validate();
  if (!(lambda1 > 0.0)) throw ConfigError("threshold_report: lambda1 must be > 0");
  ThresholdReport r;
  r.lambda1 = lambda1;
  r.tau = p.tau();
  r.tau_c = (p.gamma + p.sigma) / (p.gamma * lambda1);
  r.rho = p.beta * p.gamma / (p.delta * (p.gamma + p.sigma));
  r.endemic = r.tau > r.tau_c;
  return r;
}

EquilibriumPoint disease_free_equilibrium(const EpidemicParams& p, int n) {
  p.validate();
  EquilibriumPoint eq;
  eq.kind = EquilibriumPoint::Kind::DFE;
  const double r0 = p.sigma / (p.gamma + p.sigma);
  eq.S = Eigen::VectorXd::Constant(n, 1.0 - r0);
  eq.I = Eigen::VectorXd::Zero(n);
  eq.R = Eigen::VectorXd::Constant(n, r0);
  eq.residual = 0.0;
  return eq;
}

namespace {

// Shared damped fixed-point solver over a generic beta-folded infection
// coupling (the full weighted adjacency or the quotient matrix). The map is
//   I_i <- (gamma/delta) pr_i / (pr_i (1 + gamma/delta) + gamma + sigma)
// with pr = coupling * I, the closed-form rearrangement of the endemic
// equilibrium equations.
EquilibriumPoint endemic_fixed_point(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& coupling, int dim,
    const EpidemicParams& p, double tol) {
  p.validate();
  if (!(tol > 0.0)) throw ConfigError("endemic_equilibrium: tol must be > 0");

  const SpectralResult sr = power_iteration(coupling, dim);
  const double persistence = p.gamma * sr.lambda1 / ((p.gamma + p.sigma) * p.delta);
  if (!(persistence > 1.0))
    throw ConfigError(
        "endemic_equilibrium: below threshold; the unique equilibrium is the DFE");

  const double ratio = 1.0 + p.gamma / p.delta;
  const double guess = std::min(p.gamma / (p.gamma + p.sigma), 0.5) * 0.1;
  Eigen::VectorXd i_cur = Eigen::VectorXd::Constant(dim, guess);
  Eigen::VectorXd pr(dim), i_map(dim);

  auto assemble = [&](const Eigen::VectorXd& i_vec, EquilibriumPoint& eq) {
    eq.I = i_vec;
    coupling(i_vec, pr);
    eq.S.resize(dim);
    for (int k = 0; k < dim; ++k) eq.S[k] = p.gamma / (pr[k] * ratio + p.gamma + p.sigma);
    eq.R = Eigen::VectorXd::Ones(dim) - eq.I - eq.S;
    const Eigen::VectorXd d_s = -eq.S.cwiseProduct(pr) + p.gamma * eq.R - p.sigma * eq.S;
    const Eigen::VectorXd d_i = eq.S.cwiseProduct(pr) - p.delta * eq.I;
    const Eigen::VectorXd d_r = p.delta * eq.I - p.gamma * eq.R + p.sigma * eq.S;
    eq.residual = std::max({d_s.lpNorm<Eigen::Infinity>(), d_i.lpNorm<Eigen::Infinity>(),
                            d_r.lpNorm<Eigen::Infinity>()});
  };

  EquilibriumPoint eq;
  eq.kind = EquilibriumPoint::Kind::Endemic;
  double omega = 0.5;
  double prev_update = std::numeric_limits<double>::infinity();
  const long cap = 500000;
  for (long it = 1; it <= cap; ++it) {
    coupling(i_cur, pr);
    for (int k = 0; k < dim; ++k)
      i_map[k] = (p.gamma / p.delta) * pr[k] / (pr[k] * ratio + p.gamma + p.sigma);
    const double update = (i_map - i_cur).lpNorm<Eigen::Infinity>();
    if (update < tol) {
      assemble(i_map, eq);
      if (eq.residual <= 10.0 * tol) {
        eq.iterations = it;
        return eq;
      }
    }
    if (update > prev_update) omega = std::max(omega / 2.0, 1e-3);
    i_cur += omega * (i_map - i_cur);
    prev_update = update;
  }
  assemble(i_cur, eq);
  throw NumericalError("endemic_equilibrium: fixed-point iteration did not reach residual " +
                       std::to_string(10.0 * tol) + " (last residual " +
                       std::to_string(eq.residual) + ")");
}

}  // namespace

EquilibriumPoint endemic_equilibrium(const WeightedNeighbors& adj, const EpidemicParams& p,
                                     double tol) {
  return endemic_fixed_point(
      [&adj, &p](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        infection_pressure(adj, p.beta, x, y);
      },
      static_cast<int>(adj.size()), p, tol);
}

EquilibriumPoint endemic_equilibrium(const Graph& g, const EpidemicParams& p, double tol) {
  return endemic_equilibrium(g.weighted_view(), p, tol);
}

EquilibriumPoint endemic_equilibrium(const QuotientMatrix& q, const EpidemicParams& p,
                                     double tol) {
  return endemic_fixed_point(
      [&q](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = q.matrix * x; },
      static_cast<int>(q.matrix.rows()), p, tol);
}

double lyapunov_v(double i, double r, double i_star, double r_star, const EpidemicParams& p,
                  int d_g) {
  if (!(p.delta > p.sigma))
    throw ConfigError("lyapunov_v: requires delta > sigma (c > 0)");
  if (!(i > 0.0)) throw ConfigError("lyapunov_v: I must be > 0");
  if (!(i_star > 0.0)) throw ConfigError("lyapunov_v: I* must be > 0");
  const double c = (p.delta - p.sigma) / (p.beta * d_g);
  const double u = i - i_star - i_star * std::log(i / i_star);
  const double z = 0.5 * (r - r_star) * (r - r_star);
  return c * u + z;
}

double lyapunov_v_dot(double i, double r, double i_star, double r_star,
                      const EpidemicParams& p, int d_g) {
  if (!(i > 0.0)) throw ConfigError("lyapunov_v_dot: I must be > 0");
  const double c = (p.delta - p.sigma) / (p.beta * d_g);
  Eigen::VectorXd y(2), dy(2);
  y << i, r;
  rhs_regular2d(d_g, p, y, dy);
  return c * (1.0 - i_star / i) * dy[0] + (r - r_star) * dy[1];
}

double lyapunov_v_dot_closed_form(double i, double r, double i_star, double r_star,
                                  const EpidemicParams& p) {
  return -(p.delta - p.sigma) * (i - i_star) * (i - i_star) -
         (p.gamma + p.sigma) * (r - r_star) * (r - r_star);
}

ConditionAReport check_global_condition_a(const EquilibriumPoint& eq, const EpidemicParams& p,
                                          double lambda1) {
  if (eq.kind != EquilibriumPoint::Kind::Endemic)
    throw ConfigError("check_global_condition_a: needs the endemic equilibrium");
  ConditionAReport rep;
  rep.condition_b_applies = (p.delta == p.sigma);
  rep.lhs = lambda1;
  double min_ratio = std::numeric_limits<double>::infinity();
  double min_s = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < eq.I.size(); ++k) {
    min_ratio = std::min(min_ratio, p.delta * eq.I[k] / (eq.S[k] * eq.S[k]));
    min_s = std::min(min_s, eq.S[k] / (1.0 - eq.S[k]));
  }
  rep.rhs = (1.0 / p.beta) * min_ratio * min_s;
  rep.holds = (p.delta > p.sigma) && (rep.lhs < rep.rhs);
  return rep;
}

}  // namespace sirsv
