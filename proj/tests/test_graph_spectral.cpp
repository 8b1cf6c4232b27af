#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cstdio>
#include <fstream>

#include "sirsv/partition.hpp"
#include "sirsv/rng.hpp"
#include "sirsv/spectral.hpp"
#include "support.hpp"

using namespace sirsv;
using sirsv::testing::path_graph;
using sirsv::testing::star_graph;

namespace {

// Independent oracle: dense symmetric eigensolve.
double dense_lambda1(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.dense_adjacency());
  return eig.eigenvalues().maxCoeff();
}

Graph random_connected_graph(Xoshiro256pp& rng, int n, double p_edge) {
  for (;;) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < p_edge) edges.emplace_back(u, v);
    try {
      return Graph::from_edges(n, edges);
    } catch (const ConfigError&) {
      // disconnected draw; try again
    }
  }
}

}  // namespace

TEST_CASE("complete graph: degrees and spectral radius") {
  const Graph g = Graph::complete(50);
  for (int v = 0; v < 50; ++v) CHECK(g.degree(v) == 49);
  const auto sr = spectral_radius(g);
  CHECK(sr.lambda1 == doctest::Approx(49.0).epsilon(1e-10));
  CHECK(sr.residual <= kSpectralTolDefault);
  CHECK(sr.eigenvector.minCoeff() > 0.0);
}

TEST_CASE("circulant regular graph") {
  const Graph g = Graph::circulant(50, 10);
  for (int v = 0; v < 50; ++v) CHECK(g.degree(v) == 10);
  CHECK(spectral_radius(g).lambda1 == doctest::Approx(10.0).epsilon(1e-10));

  SUBCASE("odd degree needs even node count") {
    CHECK_THROWS_AS(Graph::circulant(49, 5), ConfigError);
    const Graph h = Graph::circulant(10, 5);
    for (int v = 0; v < 10; ++v) CHECK(h.degree(v) == 5);
  }
}

TEST_CASE("disconnected and malformed graphs are rejected") {
  CHECK_THROWS_WITH_AS(
      (void)Graph::from_edges(3, {{0, 1}}),
      doctest::Contains("disconnected"), ConfigError);
  CHECK_THROWS_WITH_AS(
      (void)Graph::from_edges(3, {{0, 1}}),
      doctest::Contains("3"), ConfigError);  // the isolated node is named
  CHECK_THROWS_AS((void)Graph::from_edges(2, {{0, 0}}), ConfigError);  // self-loop
  CHECK_THROWS_AS((void)Graph::from_edges(2, {}), ConfigError);
}

TEST_CASE("path on 3 nodes has lambda1 = sqrt(2)") {
  const Graph g = path_graph(3);
  const auto sr = spectral_radius(g);
  CHECK(sr.lambda1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(sr.lambda1 == doctest::Approx(dense_lambda1(g)).epsilon(1e-9));
}

TEST_CASE("power iteration matches the dense eigensolver on the small family") {
  for (const auto& [name, g] : sirsv::testing::small_test_graphs()) {
    CAPTURE(name);
    const auto sr = spectral_radius(g);
    CHECK(sr.lambda1 == doctest::Approx(dense_lambda1(g)).epsilon(1e-8));
  }
}

TEST_CASE("Rayleigh bounds: average degree <= lambda1 <= max degree") {
  Xoshiro256pp rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_connected_graph(rng, 3 + static_cast<int>(rng.next_u64() % 8), 0.5);
    double total = 0.0;
    int dmax = 0;
    for (int v = 0; v < g.node_count(); ++v) {
      total += g.degree(v);
      dmax = std::max(dmax, g.degree(v));
    }
    const double lambda1 = spectral_radius(g).lambda1;
    CHECK(lambda1 >= total / g.node_count() - 1e-9);
    CHECK(lambda1 <= dmax + 1e-9);
  }
}

TEST_CASE("scaling the matrix scales lambda1 linearly") {
  const Graph g = star_graph(4);
  WeightedNeighbors rows = g.weighted_view();
  const double base = spectral_radius(rows).lambda1;
  for (double c : {0.25, 3.0, 17.5}) {
    WeightedNeighbors scaled = rows;
    for (auto& row : scaled)
      for (auto& [j, w] : row) w *= c;
    CHECK(spectral_radius(scaled).lambda1 == doctest::Approx(c * base).epsilon(1e-9));
  }
}

TEST_CASE("spectral_radius rejects bad tolerances") {
  CHECK_THROWS_AS(spectral_radius(path_graph(3), 0.0), ConfigError);
  CHECK_THROWS_AS(spectral_radius(path_graph(3), -1.0), ConfigError);
}

TEST_CASE("epsilon weighting") {
  SUBCASE("epsilon = 1 reproduces the plain adjacency") {
    const Graph g = Graph::complete(4);
    const auto p = coarsest_equitable_partition(g);
    const WeightedAdjacency w = apply_epsilon_weights(g, p, 1.0);
    CHECK(w.dense() == g.dense_adjacency());
  }
  SUBCASE("single cell leaves every edge intra-cell") {
    const Graph g = sirsv::testing::cycle_graph(5);
    const auto p = verify_equitable(g, {{0, 1, 2, 3, 4}});
    for (double eps : {0.25, 2.0})
      CHECK(apply_epsilon_weights(g, p, eps).dense() == g.dense_adjacency());
  }
  SUBCASE("two-cell split of K4") {
    const Graph g = Graph::complete(4);
    const auto p = verify_equitable(g, {{0, 1}, {2, 3}});
    const WeightedAdjacency w = apply_epsilon_weights(g, p, 0.5);
    const Eigen::MatrixXd m = w.dense();
    CHECK(m(0, 1) == 1.0);
    CHECK(m(2, 3) == 1.0);
    CHECK(m(0, 2) == 0.5);
    CHECK(m(0, 3) == 0.5);
    CHECK(m(1, 2) == 0.5);
    CHECK(m(1, 3) == 0.5);
    CHECK(m(0, 0) == 0.0);
  }
  SUBCASE("epsilon > 1 is accepted") {
    const Graph g = Graph::complete(4);
    const auto p = verify_equitable(g, {{0, 1}, {2, 3}});
    const WeightedAdjacency w = apply_epsilon_weights(g, p, 1.5);
    CHECK(w.dense()(0, 2) == 1.5);
  }
}

TEST_CASE("edge-list file parsing") {
  const std::string path = "test_edges.txt";
  {
    std::ofstream out(path);
    out << "# a path on three nodes\n";
    out << "1 2\n";
    out << "2 3  # trailing comment\n";
    out << "\n";
  }
  const Graph g = Graph::from_edge_list_file(path);
  CHECK(g.node_count() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(!g.has_edge(0, 2));
  std::remove(path.c_str());
}
