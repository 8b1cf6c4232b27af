#include <doctest.h>

#include <cmath>
#include <limits>

#include "sirsv/meanfield.hpp"
#include "sirsv/rng.hpp"
#include "sirsv/spectral.hpp"
#include "support.hpp"

using namespace sirsv;
using sirsv::testing::path_graph;
using sirsv::testing::star_graph;

namespace {

Graph two_k5_matching() {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) {
      edges.emplace_back(u, v);
      edges.emplace_back(5 + u, 5 + v);
    }
  for (int u = 0; u < 5; ++u) edges.emplace_back(u, 5 + u);
  return Graph::from_edges(10, edges);
}

Eigen::VectorXd dfe_state(const EpidemicParams& p, int n) {
  const auto eq = disease_free_equilibrium(p, n);
  return pack_full(MeanFieldState{eq.S, eq.I, eq.R});
}

Eigen::VectorXd random_gamma_tilde_state(Xoshiro256pp& rng, int n) {
  Eigen::VectorXd y(3 * n);
  for (int k = 0; k < n; ++k) {
    double s = rng.next_double(), i = rng.next_double(), r = rng.next_double();
    const double total = s + i + r + 1e-9;
    y[k] = s / total;
    y[n + k] = i / total;
    y[2 * n + k] = r / total;
    y[k] += 1.0 - y[k] - y[n + k] - y[2 * n + k];  // close the simplex exactly
  }
  return y;
}

}  // namespace

TEST_CASE("rhs_full: the DFE has zero derivative") {
  const Graph g = path_graph(3);
  EpidemicParams p{0.25, 0.4, 0.2, 0.45, 1.0};
  Eigen::VectorXd dy;
  rhs_full(g.weighted_view(), p, dfe_state(p, 3), dy);
  CHECK(dy.lpNorm<Eigen::Infinity>() <= 1e-15);
}

TEST_CASE("rhs_full: single node with S = 1 flows into R at rate sigma") {
  WeightedNeighbors adj(1);
  EpidemicParams p{0.25, 0.4, 0.2, 0.45, 1.0};
  Eigen::VectorXd y(3), dy;
  y << 1.0, 0.0, 0.0;
  rhs_full(adj, p, y, dy);
  CHECK(dy[0] == doctest::Approx(-0.45).epsilon(1e-15));
  CHECK(dy[1] == 0.0);
  CHECK(dy[2] == doctest::Approx(0.45).epsilon(1e-15));
}

TEST_CASE("rhs_full: componentwise conservation dS + dI + dR = 0") {
  const Graph g = two_k5_matching();
  EpidemicParams p{0.7, 0.4, 0.2, 0.3, 1.0};
  Xoshiro256pp rng(404);
  Eigen::VectorXd dy;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd y = random_gamma_tilde_state(rng, 10);
    rhs_full(g.weighted_view(), p, y, dy);
    for (int k = 0; k < 10; ++k)
      CHECK(std::abs(dy[k] + dy[10 + k] + dy[20 + k]) <= 1e-14);
  }
}

TEST_CASE("rhs_full matches the finite difference of the integrated flow") {
  const Graph g = path_graph(3);
  EpidemicParams p{0.5, 0.4, 0.2, 0.3, 1.0};
  Xoshiro256pp rng(11);
  const Eigen::VectorXd y0 = random_gamma_tilde_state(rng, 3);

  Eigen::VectorXd dy;
  rhs_full(g.weighted_view(), p, y0, dy);

  OdeOptions opt;
  opt.abs_tol = opt.rel_tol = 1e-14;
  const double h = 1e-6;
  const OdeRhs rhs = make_full_rhs(g.weighted_view(), p);
  Eigen::VectorXd y_plus = y0, y_minus = y0;
  ode_advance(rhs, 0.0, h, y_plus, opt);
  ode_advance(rhs, 0.0, -h, y_minus, opt);
  const Eigen::VectorXd fd = (y_plus - y_minus) / (2.0 * h);
  CHECK((fd - dy).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("rhs_reduced_ir: disease-free states are stationary") {
  const Graph g = path_graph(3);
  Eigen::VectorXd dy;
  SUBCASE("DFE with vaccination") {
    EpidemicParams p{0.25, 0.4, 0.2, 0.45, 1.0};
    Eigen::VectorXd y(6);
    const double r0 = p.sigma / (p.gamma + p.sigma);
    y << 0, 0, 0, r0, r0, r0;
    rhs_reduced_ir(g.weighted_view(), p, y, dy);
    CHECK(dy.lpNorm<Eigen::Infinity>() <= 1e-15);
  }
  SUBCASE("sigma = 0 has the origin as DFE") {
    EpidemicParams p{0.25, 0.4, 0.2, 0.0, 1.0};
    Eigen::VectorXd y = Eigen::VectorXd::Zero(6);
    rhs_reduced_ir(g.weighted_view(), p, y, dy);
    CHECK(dy.lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("rhs_reduced_ir is the full system restricted to S = 1 - I - R") {
  const Graph g = two_k5_matching();
  EpidemicParams p{0.7, 0.4, 0.2, 0.3, 1.0};
  Xoshiro256pp rng(12);
  Eigen::VectorXd dy_full, dy_red;
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::VectorXd y = random_gamma_tilde_state(rng, 10);
    rhs_full(g.weighted_view(), p, y, dy_full);
    Eigen::VectorXd y_ir(20);
    y_ir.head(10) = y.segment(10, 10);
    y_ir.tail(10) = y.segment(20, 10);
    rhs_reduced_ir(g.weighted_view(), p, y_ir, dy_red);
    CHECK((dy_red.head(10) - dy_full.segment(10, 10)).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK((dy_red.tail(10) - dy_full.segment(20, 10)).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("full and reduced trajectories follow the same path") {
  const Graph g = path_graph(4);
  EpidemicParams p{0.8, 0.4, 0.2, 0.25, 1.0};
  Xoshiro256pp rng(21);
  const Eigen::VectorXd y_full0 = random_gamma_tilde_state(rng, 4);
  Eigen::VectorXd y_red0(8);
  y_red0.head(4) = y_full0.segment(4, 4);
  y_red0.tail(4) = y_full0.segment(8, 4);

  std::vector<double> grid;
  for (int k = 0; k <= 80; ++k) grid.push_back(0.25 * k);
  const auto tf =
      integrate(make_full_rhs(g.weighted_view(), p), StateLayout::Full3N, y_full0, grid);
  const auto tr =
      integrate(make_reduced_rhs(g.weighted_view(), p), StateLayout::ReducedIR, y_red0, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK((tf.states[k].segment(4, 4) - tr.states[k].head(4)).lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK((tf.states[k].segment(8, 4) - tr.states[k].tail(4)).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("rhs_quotient with one cell reduces to the regular 2d system") {
  const Graph g = Graph::circulant(50, 10);
  const auto part = coarsest_equitable_partition(g);
  EpidemicParams p{1.0, 0.4, 0.2, 0.45, 1.0};
  const auto q = quotient_matrix(part, p.beta, p.epsilon);
  Xoshiro256pp rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const double i = 0.6 * rng.next_double();
    const double r = (1.0 - i) * rng.next_double();
    Eigen::VectorXd y3(3), dy3, y2(2), dy2;
    y3 << 1.0 - i - r, i, r;
    y2 << i, r;
    rhs_quotient(q, p, y3, dy3);
    rhs_regular2d(10, p, y2, dy2);
    CHECK(dy3[1] == doctest::Approx(dy2[0]).epsilon(1e-13));
    CHECK(dy3[2] == doctest::Approx(dy2[1]).epsilon(1e-13));
    CHECK(std::abs(dy3.sum()) <= 1e-14);
  }
}

TEST_CASE("integrate: DFE start stays constant") {
  const Graph g = path_graph(4);
  EpidemicParams p{0.25, 0.4, 0.2, 0.45, 1.0};
  const Eigen::VectorXd y0 = dfe_state(p, 4);
  const auto traj = integrate(make_full_rhs(g.weighted_view(), p), StateLayout::Full3N, y0,
                              {0.0, 1.0, 5.0, 25.0});
  for (const auto& y : traj.states) CHECK((y - y0).lpNorm<Eigen::Infinity>() <= 1e-9);
  CHECK(traj.region_violation.empty());
}

TEST_CASE("integrate: input validation") {
  const Graph g = path_graph(3);
  EpidemicParams p{0.25, 0.4, 0.2, 0.45, 1.0};
  const auto rhs = make_full_rhs(g.weighted_view(), p);
  CHECK_THROWS_AS(integrate(rhs, StateLayout::Full3N, dfe_state(p, 3), {}), ConfigError);
  CHECK_THROWS_AS(integrate(rhs, StateLayout::Full3N, dfe_state(p, 3), {0.0, 1.0}, -1.0),
                  ConfigError);
  Eigen::VectorXd bad = dfe_state(p, 3);
  bad[0] = -0.5;
  CHECK_THROWS_WITH_AS(integrate(rhs, StateLayout::Full3N, bad, {0.0, 1.0}),
                       doctest::Contains("invariant region"), ConfigError);
  CHECK_THROWS_AS(integrate(rhs, StateLayout::Full3N, dfe_state(p, 3), {1.0, 0.5}), ConfigError);
}

TEST_CASE("trajectories started in the simplex stay there") {
  const Graph g = two_k5_matching();
  EpidemicParams p{0.9, 0.4, 0.2, 0.3, 1.0};
  Xoshiro256pp rng(14);
  std::vector<double> grid;
  for (int k = 0; k <= 60; ++k) grid.push_back(k * 0.5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto traj = integrate(make_full_rhs(g.weighted_view(), p), StateLayout::Full3N,
                                random_gamma_tilde_state(rng, 10), grid);
    CHECK(traj.region_violation.empty());
    for (const auto& y : traj.states) {
      CHECK(y.minCoeff() >= -1e-7);
      for (int k = 0; k < 10; ++k)
        CHECK(std::abs(y[k] + y[10 + k] + y[20 + k] - 1.0) <= 1e-7);
    }
  }
}

TEST_CASE("threshold report") {
  SUBCASE("sigma = 0 collapses tau_c to 1/lambda1") {
    EpidemicParams p{0.25, 0.4, 0.2, 0.0, 1.0};
    const auto th = threshold_report(p, 49.0);
    CHECK(th.tau_c == doctest::Approx(1.0 / 49.0).epsilon(1e-12));
    CHECK(th.rho == doctest::Approx(th.tau).epsilon(1e-12));
  }
  SUBCASE("endemic regime on the complete graph") {
    EpidemicParams p{0.25, 0.4, 0.2, 0.45, 1.0};
    const auto th = threshold_report(p, 49.0);
    CHECK(th.tau == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(th.tau_c == doctest::Approx((0.65 / 0.2) / 49.0).epsilon(1e-12));
    CHECK(th.endemic);
    // regime = endemic iff rho > 1/lambda1, the equivalent form.
    CHECK(th.rho > 1.0 / th.lambda1);
  }
  SUBCASE("extinction regime on the 10-regular graph") {
    EpidemicParams p{0.1, 0.4, 0.2, 0.45, 1.0};
    const auto th = threshold_report(p, 10.0);
    CHECK(th.tau == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(th.tau_c == doctest::Approx(0.325).epsilon(1e-12));
    CHECK(!th.endemic);
    CHECK(th.rho < 1.0 / th.lambda1);
  }
  SUBCASE("validation") {
    EpidemicParams p{0.25, 0.4, 0.2, 0.45, 1.0};
    CHECK_THROWS_AS(threshold_report(p, 0.0), ConfigError);
  }
}

TEST_CASE("endemic equilibrium on the 10-regular graph: closed form") {
  const Graph g = Graph::circulant(50, 10);
  EpidemicParams p{1.0, 0.4, 0.2, 0.45, 1.0};
  const auto eq = endemic_equilibrium(g, p);
  CHECK(eq.kind == EquilibriumPoint::Kind::Endemic);
  for (int k = 0; k < 50; ++k) {
    CHECK(std::abs(eq.S[k] - 0.04) <= 1e-9);  // delta / (beta d_G)
    CHECK(std::abs(eq.I[k] - 0.29) <= 1e-9);  // (gamma - S*(gamma+sigma)) / (gamma+delta)
    CHECK(std::abs(eq.R[k] - 0.67) <= 1e-9);
  }
  CHECK(eq.residual <= 1e-11);
}

TEST_CASE("endemic equilibrium with sigma = 0 satisfies R* = (delta/gamma) I*") {
  const Graph g = star_graph(4);  // lambda1 = 2
  EpidemicParams p{1.2, 0.4, 0.2, 0.0, 1.0};
  const auto eq = endemic_equilibrium(g, p);
  for (int k = 0; k < 5; ++k)
    CHECK(std::abs(eq.R[k] - (p.delta / p.gamma) * eq.I[k]) <= 1e-9);
}

TEST_CASE("endemic equilibrium below threshold is refused") {
  const Graph g = Graph::circulant(50, 10);
  EpidemicParams p{0.1, 0.4, 0.2, 0.45, 1.0};
  CHECK_THROWS_WITH_AS(endemic_equilibrium(g, p), doctest::Contains("below threshold"),
                       ConfigError);
}

TEST_CASE("full-system and quotient equilibria agree on a partitioned graph") {
  const Graph g = two_k5_matching();
  const auto part = verify_equitable(g, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  EpidemicParams p{0.9, 0.4, 0.2, 0.1, 0.6};
  const auto w = apply_epsilon_weights(g, part, p.epsilon);
  const auto eq_full = endemic_equilibrium(w.weighted_view(), p);
  const auto eq_quot = endemic_equilibrium(quotient_matrix(part, p.beta, p.epsilon), p);
  for (int v = 0; v < 10; ++v) {
    const int h = part.cell_of[v];
    CHECK(std::abs(eq_full.I[v] - eq_quot.I[h]) <= 1e-7);
    CHECK(std::abs(eq_full.S[v] - eq_quot.S[h]) <= 1e-7);
    CHECK(std::abs(eq_full.R[v] - eq_quot.R[h]) <= 1e-7);
  }
}

TEST_CASE("mean steady-state infection rises in gamma and falls in sigma") {
  const Graph g = Graph::complete(50);
  EpidemicParams p{0.25, 0.9, 0.2, 0.0, 1.0};
  auto i_star = [&](double gamma, double sigma) {
    EpidemicParams q = p;
    q.gamma = gamma;
    q.sigma = sigma;
    const double lambda1 = 49.0;
    if (!threshold_report(q, lambda1).endemic) return 0.0;
    return endemic_equilibrium(g, q).I.mean();
  };
  const std::vector<double> gammas{0.05, 0.1, 0.2, 0.5, 1.0};
  const std::vector<double> sigmas{0.0, 0.1, 0.4, 0.8};
  for (double sigma : sigmas) {
    double prev = -1.0;
    for (double gamma : gammas) {
      const double v = i_star(gamma, sigma);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
  for (double gamma : gammas) {
    double prev = 2.0;
    for (double sigma : sigmas) {
      const double v = i_star(gamma, sigma);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
  // Strict movement somewhere in the endemic interior.
  CHECK(i_star(0.5, 0.1) > i_star(0.1, 0.1));
  CHECK(i_star(0.5, 0.8) < i_star(0.5, 0.0));
}

TEST_CASE("invariant set: cell-equal starts keep cells in lockstep") {
  const Graph g = two_k5_matching();
  const auto part = verify_equitable(g, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  EpidemicParams p{0.9, 0.4, 0.2, 0.3, 0.6};
  const auto w = apply_epsilon_weights(g, part, p.epsilon);

  Eigen::VectorXd y0(30);
  const double i_cells[2] = {0.3, 0.05};
  const double r_cells[2] = {0.1, 0.2};
  for (int v = 0; v < 10; ++v) {
    const int h = part.cell_of[v];
    y0[v] = 1.0 - i_cells[h] - r_cells[h];
    y0[10 + v] = i_cells[h];
    y0[20 + v] = r_cells[h];
  }
  std::vector<double> grid;
  for (int k = 0; k <= 100; ++k) grid.push_back(0.3 * k);
  const auto traj = integrate(make_full_rhs(w.weighted_view(), p), StateLayout::Full3N, y0, grid);
  for (const auto& y : traj.states) {
    for (int h = 0; h < 2; ++h) {
      for (int block = 0; block < 3; ++block) {
        double lo = 2.0, hi = -2.0;
        for (int v : part.cells[h]) {
          lo = std::min(lo, y[10 * block + v]);
          hi = std::max(hi, y[10 * block + v]);
        }
        CHECK(hi - lo <= 1e-9);
      }
    }
  }
}

TEST_CASE("full and quotient trajectories coincide on a two-cell partition") {
  const Graph g = two_k5_matching();
  const auto part = verify_equitable(g, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  EpidemicParams p{0.9, 0.4, 0.2, 0.3, 0.6};
  const auto w = apply_epsilon_weights(g, part, p.epsilon);
  const auto quot = quotient_matrix(part, p.beta, p.epsilon);

  const double i_cells[2] = {0.3, 0.05};
  const double r_cells[2] = {0.1, 0.2};
  Eigen::VectorXd y_full(30);
  for (int v = 0; v < 10; ++v) {
    const int h = part.cell_of[v];
    y_full[v] = 1.0 - i_cells[h] - r_cells[h];
    y_full[10 + v] = i_cells[h];
    y_full[20 + v] = r_cells[h];
  }
  Eigen::VectorXd y_quot(6);
  for (int h = 0; h < 2; ++h) {
    y_quot[h] = 1.0 - i_cells[h] - r_cells[h];
    y_quot[2 + h] = i_cells[h];
    y_quot[4 + h] = r_cells[h];
  }

  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(0.25 * k);
  const auto tf = integrate(make_full_rhs(w.weighted_view(), p), StateLayout::Full3N, y_full, grid);
  const auto tq = integrate(make_quotient_rhs(quot, p), StateLayout::Quotient3Cells, y_quot, grid);
  double max_dev = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (int v = 0; v < 10; ++v) {
      const int h = part.cell_of[v];
      max_dev = std::max(max_dev, std::abs(tf.states[k][v] - tq.states[k][h]));
      max_dev = std::max(max_dev, std::abs(tf.states[k][10 + v] - tq.states[k][2 + h]));
      max_dev = std::max(max_dev, std::abs(tf.states[k][20 + v] - tq.states[k][4 + h]));
    }
  }
  CHECK(max_dev <= 1e-7);
}

TEST_CASE("below threshold the trajectory approaches the DFE") {
  const Graph g = Graph::circulant(50, 10);
  EpidemicParams p{0.1, 0.4, 0.2, 0.45, 1.0};
  Eigen::VectorXd y0(150);
  for (int k = 0; k < 50; ++k) {
    y0[k] = 1.0;
    y0[50 + k] = 0.0;
    y0[100 + k] = 0.0;
  }
  y0[0] = 0.0;
  y0[50] = 1.0;  // node 1 infected
  const auto steady = integrate_to_steady(make_full_rhs(g.weighted_view(), p),
                                          StateLayout::Full3N, y0, 500.0);
  CHECK(steady.converged);
  CHECK(steady.y.segment(50, 50).maxCoeff() <= 1e-6);
  const auto dfe = disease_free_equilibrium(p, 50);
  CHECK((steady.y.segment(100, 50) - dfe.R).lpNorm<Eigen::Infinity>() <= 1e-5);

  // The distance to the DFE becomes monotone decreasing and ends below 1e-6.
  const Eigen::VectorXd target = pack_full(MeanFieldState{dfe.S, dfe.I, dfe.R});
  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(k * 1.0);
  const auto traj = integrate(make_full_rhs(g.weighted_view(), p), StateLayout::Full3N, y0, grid);
  std::vector<double> dist;
  for (const auto& y : traj.states) dist.push_back((y - target).lpNorm<Eigen::Infinity>());
  for (std::size_t k = grid.size() / 2; k + 1 < grid.size(); ++k)
    CHECK(dist[k + 1] <= dist[k] + 1e-12);
  CHECK(dist.back() <= 1e-6);
}

TEST_CASE("above threshold the trajectory converges to the endemic point") {
  const Graph g = Graph::circulant(50, 10);
  EpidemicParams p{1.0, 0.4, 0.2, 0.45, 1.0};
  Eigen::VectorXd y0(150);
  for (int k = 0; k < 50; ++k) {
    y0[k] = 1.0;
    y0[50 + k] = 0.0;
    y0[100 + k] = 0.0;
  }
  y0[0] = 0.0;
  y0[50] = 1.0;
  const auto steady = integrate_to_steady(make_full_rhs(g.weighted_view(), p),
                                          StateLayout::Full3N, y0, 500.0);
  const auto eq = endemic_equilibrium(g, p);
  const Eigen::VectorXd target = pack_full(MeanFieldState{eq.S, eq.I, eq.R});
  CHECK((steady.y - target).lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("Lyapunov function: value, identity, finite differences, monotonicity") {
  const int d_g = 10;
  EpidemicParams p{0.25, 0.4, 0.2, 0.3, 1.0};  // delta > sigma
  const Graph g = Graph::circulant(50, d_g);
  const auto eq = endemic_equilibrium(g, p);
  const double i_star = eq.I[0], r_star = eq.R[0];

  SUBCASE("zero exactly at the equilibrium, positive elsewhere") {
    CHECK(lyapunov_v(i_star, r_star, i_star, r_star, p, d_g) == 0.0);
    CHECK(lyapunov_v(i_star * 0.5, r_star, i_star, r_star, p, d_g) > 0.0);
    CHECK(lyapunov_v(i_star, r_star + 0.1, i_star, r_star, p, d_g) > 0.0);
  }

  SUBCASE("chain rule equals the closed form") {
    Xoshiro256pp rng(15);
    for (int trial = 0; trial < 50; ++trial) {
      const double i = 0.01 + 0.8 * rng.next_double();
      const double r = (1.0 - i) * rng.next_double();
      const double chain = lyapunov_v_dot(i, r, i_star, r_star, p, d_g);
      const double closed = lyapunov_v_dot_closed_form(i, r, i_star, r_star, p);
      CHECK(chain == doctest::Approx(closed).epsilon(1e-11));
    }
  }

  SUBCASE("finite differences of V along the flow match the closed form") {
    const OdeRhs rhs = make_regular2d_rhs(d_g, p);
    OdeOptions opt;
    opt.abs_tol = opt.rel_tol = 1e-14;
    const double h = 1e-6;
    for (const auto& [i0, r0] : std::vector<std::pair<double, double>>{
             {0.02, 0.0}, {0.5, 0.2}, {0.15, 0.6}}) {
      Eigen::VectorXd y_plus(2), y_minus(2);
      y_plus << i0, r0;
      y_minus << i0, r0;
      ode_advance(rhs, 0.0, h, y_plus, opt);
      ode_advance(rhs, 0.0, -h, y_minus, opt);
      const double fd = (lyapunov_v(y_plus[0], y_plus[1], i_star, r_star, p, d_g) -
                         lyapunov_v(y_minus[0], y_minus[1], i_star, r_star, p, d_g)) /
                        (2.0 * h);
      CHECK(std::abs(fd - lyapunov_v_dot_closed_form(i0, r0, i_star, r_star, p)) <= 1e-6);
    }
  }

  SUBCASE("V is non-increasing along the reduced trajectory") {
    Eigen::VectorXd y0(2);
    y0 << 0.02, 0.0;
    std::vector<double> grid;
    for (int k = 0; k <= 400; ++k) grid.push_back(0.25 * k);
    const auto traj = integrate(make_regular2d_rhs(d_g, p), StateLayout::Regular2d, y0, grid);
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& y : traj.states) {
      const double v = lyapunov_v(y[0], y[1], i_star, r_star, p, d_g);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
    CHECK(prev <= 1e-10);  // ends at the equilibrium
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(lyapunov_v(0.0, 0.1, i_star, r_star, p, d_g), ConfigError);
    CHECK_THROWS_AS(lyapunov_v(-0.1, 0.1, i_star, r_star, p, d_g), ConfigError);
    EpidemicParams bad = p;
    bad.sigma = 0.5;  // delta < sigma: c would be negative
    CHECK_THROWS_AS(lyapunov_v(0.1, 0.1, i_star, r_star, bad, d_g), ConfigError);
  }
}

TEST_CASE("global-stability condition a) is never satisfied on regular graphs") {
  for (int d_g : {4, 10}) {
    const Graph g = Graph::circulant(50, d_g);
    const double lambda1 = spectral_radius(g).lambda1;
    for (double beta : {0.3, 0.5, 1.0}) {
      for (double sigma : {0.0, 0.1, 0.2}) {
        EpidemicParams p{beta, 0.4, 0.2, sigma, 1.0};
        REQUIRE(threshold_report(p, lambda1).endemic);
        const auto eq = endemic_equilibrium(g, p);
        const auto rep = check_global_condition_a(eq, p, lambda1);
        CAPTURE(d_g);
        CAPTURE(beta);
        CAPTURE(sigma);
        CHECK(!rep.holds);
        CHECK(rep.lhs > rep.rhs);
        CHECK(!rep.condition_b_applies);
      }
    }
  }
}

TEST_CASE("condition b) applies exactly when delta equals sigma") {
  const Graph g = Graph::complete(50);
  EpidemicParams p{0.25, 0.4, 0.2, 0.4, 1.0};
  const auto eq = endemic_equilibrium(g, p);
  const auto rep = check_global_condition_a(eq, p, 49.0);
  CHECK(rep.condition_b_applies);
  CHECK(!rep.holds);
}

TEST_CASE("condition a) fails on the complete graph at the vaccination benchmark") {
  const Graph g = Graph::complete(50);
  EpidemicParams p{0.25, 0.4, 0.2, 0.45, 1.0};
  const auto eq = endemic_equilibrium(g, p);
  const auto rep = check_global_condition_a(eq, p, 49.0);
  CHECK(!rep.holds);
  CHECK(rep.lhs == doctest::Approx(49.0));
  CHECK(rep.rhs > 0.0);
  CHECK_THROWS_AS(check_global_condition_a(disease_free_equilibrium(p, 50), p, 49.0),
                  ConfigError);
}
