#include <doctest.h>

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

// Two K5 communities joined by a perfect matching; equitable with
// d = [[4, 1], [1, 4]].
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

}  // namespace

TEST_CASE("verify_equitable on regular graphs with one cell") {
  const Graph k50 = Graph::complete(50);
  std::vector<int> all(50);
  for (int v = 0; v < 50; ++v) all[v] = v;
  const auto p = verify_equitable(k50, {all});
  CHECK(p.cell_count() == 1);
  CHECK(p.degree_matrix(0, 0) == 49);

  const Graph reg = Graph::circulant(50, 10);
  const auto p10 = verify_equitable(reg, {all});
  CHECK(p10.degree_matrix(0, 0) == 10);
}

TEST_CASE("verify_equitable on the star K_{1,3}") {
  const Graph g = star_graph(3);
  const auto p = verify_equitable(g, {{0}, {1, 2, 3}});
  CHECK(p.cell_count() == 2);
  // Cells are ordered by smallest node: {center}, {leaves}.
  CHECK(p.degree_matrix(0, 0) == 0);
  CHECK(p.degree_matrix(0, 1) == 3);
  CHECK(p.degree_matrix(1, 0) == 1);
  CHECK(p.degree_matrix(1, 1) == 0);
  CHECK(p.cell_sizes == std::vector<int>{1, 3});
}

TEST_CASE("verify_equitable reports a witness for non-equitable input") {
  const Graph g = path_graph(4);
  // Cell {1,2} (0-based {0,1}): node 1 has 0 neighbors in cell 2, node 2 has 1.
  CHECK_THROWS_WITH_AS(verify_equitable(g, {{0, 1}, {2, 3}}),
                       doctest::Contains("not equitable"), ConfigError);
  try {
    verify_equitable(g, {{0, 1}, {2, 3}});
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("cell 1") != std::string::npos);
    CHECK(msg.find("cell 2") != std::string::npos);
    CHECK(msg.find("node 1") != std::string::npos);
    CHECK(msg.find("node 2") != std::string::npos);
  }
}

TEST_CASE("verify_equitable input validation") {
  const Graph g = path_graph(3);
  CHECK_THROWS_AS(verify_equitable(g, {{0, 1}}), ConfigError);          // node 3 uncovered
  CHECK_THROWS_AS(verify_equitable(g, {{0, 1, 2}, {1}}), ConfigError);  // duplicate
  CHECK_THROWS_AS(verify_equitable(g, {{0, 1, 2, 3}}), ConfigError);    // out of range
}

TEST_CASE("coarsest partition: regular graphs collapse to a single cell") {
  for (const Graph& g : {Graph::complete(7), Graph::circulant(12, 4), Graph::circulant(10, 5)}) {
    const auto p = coarsest_equitable_partition(g);
    CHECK(p.cell_count() == 1);
  }
}

TEST_CASE("coarsest partition: star and path split as expected") {
  const auto p_star = coarsest_equitable_partition(star_graph(3));
  CHECK(p_star.cell_count() == 2);
  CHECK(p_star.cells[0] == std::vector<int>{0});

  // Path 1-2-3: endpoints {1,3} vs middle {2}; the endpoint cell comes first
  // (smallest node id).
  const auto p_path = coarsest_equitable_partition(path_graph(3));
  CHECK(p_path.cell_count() == 2);
  CHECK(p_path.cells[0] == std::vector<int>{0, 2});
  CHECK(p_path.cells[1] == std::vector<int>{1});
  CHECK(p_path.degree_matrix(0, 0) == 0);
  CHECK(p_path.degree_matrix(0, 1) == 1);
  CHECK(p_path.degree_matrix(1, 0) == 2);
}

TEST_CASE("coarsest partition of path3 matches exhaustive search") {
  // All 5 partitions of 3 nodes, coarsest equitable by hand: {{1,3},{2}}.
  const Graph g = path_graph(3);
  const std::vector<std::vector<std::vector<int>>> candidates = {
      {{0, 1, 2}}, {{0, 1}, {2}}, {{0, 2}, {1}}, {{1, 2}, {0}}, {{0}, {1}, {2}}};
  std::vector<std::vector<std::vector<int>>> equitable;
  for (const auto& cells : candidates) {
    try {
      verify_equitable(g, cells);
      equitable.push_back(cells);
    } catch (const ConfigError&) {
    }
  }
  // The two-cell {0,2},{1} partition is the unique coarsest equitable one
  // (the trivial one-cell partition fails since the path is not regular).
  REQUIRE(!equitable.empty());
  std::size_t coarsest_size = 99;
  for (const auto& cells : equitable) coarsest_size = std::min(coarsest_size, cells.size());
  CHECK(coarsest_size == 2);
  CHECK(coarsest_equitable_partition(g).cell_count() == 2);
}

TEST_CASE("coarsest output always verifies; refinement is idempotent") {
  Xoshiro256pp rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 7);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < 0.45) edges.emplace_back(u, v);
    Graph g = [&]() -> Graph {
      try {
        return Graph::from_edges(n, edges);
      } catch (const ConfigError&) {
        return Graph::complete(n);
      }
    }();
    const auto p = coarsest_equitable_partition(g);
    CHECK_NOTHROW(verify_equitable(g, p.cells));
    const auto again = refine_partition(g, p.cells);
    CHECK(again.cells == p.cells);
  }
}

TEST_CASE("splitting a cell and refining yields a partition at least as fine") {
  const Graph g = two_k5_matching();
  const auto p = coarsest_equitable_partition(g);
  // Split the first cell into {first node} and {rest}, then refine.
  std::vector<std::vector<int>> split;
  split.push_back({p.cells[0].front()});
  split.push_back(std::vector<int>(p.cells[0].begin() + 1, p.cells[0].end()));
  for (int h = 1; h < p.cell_count(); ++h) split.push_back(p.cells[h]);
  const auto refined = refine_partition(g, split);
  CHECK(refined.cell_count() >= p.cell_count());
  // Every refined cell sits inside one original cell.
  for (const auto& cell : refined.cells) {
    const int h = p.cell_of[cell.front()];
    for (int v : cell) CHECK(p.cell_of[v] == h);
  }
}

TEST_CASE("quotient matrix entries") {
  SUBCASE("single cell, d_G = 10, beta = 1") {
    const Graph g = Graph::circulant(50, 10);
    const auto p = coarsest_equitable_partition(g);
    const auto q = quotient_matrix(p, 1.0, 0.5);
    REQUIRE(q.matrix.rows() == 1);
    CHECK(q.matrix(0, 0) == doctest::Approx(10.0));
  }
  SUBCASE("star partition, beta = 1, epsilon = 0.5") {
    const auto p = coarsest_equitable_partition(star_graph(3));
    const auto q = quotient_matrix(p, 1.0, 0.5);
    CHECK(q.matrix(0, 0) == 0.0);
    CHECK(q.matrix(0, 1) == doctest::Approx(1.5));
    CHECK(q.matrix(1, 0) == doctest::Approx(0.5));
    CHECK(q.matrix(1, 1) == 0.0);
  }
  SUBCASE("epsilon -> 0 decouples the communities") {
    const auto p = verify_equitable(two_k5_matching(), {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
    const auto q = quotient_matrix(p, 2.0, 1e-12);
    CHECK(q.matrix(0, 0) == doctest::Approx(8.0));  // beta * internal degree 4
    CHECK(q.matrix(0, 1) == doctest::Approx(2e-12));
  }
}

TEST_CASE("quotient spectral radius equals the weighted-adjacency spectral radius") {
  const double beta = 0.7;
  const Graph star = star_graph(3);
  const Graph k5s = two_k5_matching();
  const std::pair<const Graph*, EquitablePartition> cases[] = {
      {&star, coarsest_equitable_partition(star)},
      {&k5s, verify_equitable(k5s, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}})}};
  for (double eps : {0.3, 0.5, 1.0, 1.4}) {
    for (const auto& [gp, p] : cases) {
      const Graph& g = *gp;
      const auto q = quotient_matrix(p, beta, eps);
      const WeightedAdjacency w = apply_epsilon_weights(g, p, eps);
      WeightedNeighbors scaled = w.weighted_view();
      for (auto& row : scaled)
        for (auto& [j, wt] : row) wt *= beta;
      const double rho_quot = spectral_radius(q.matrix).lambda1;
      const double rho_full = spectral_radius(scaled).lambda1;
      CHECK(rho_quot == doctest::Approx(rho_full).epsilon(1e-9));
    }
  }
  // A hand value: each node of the matched K5 pair carries weighted row sum
  // beta * (4 + eps), which is the Perron root of a regular weighted graph.
  const auto p2 = verify_equitable(k5s, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  const auto q2 = quotient_matrix(p2, beta, 0.3);
  CHECK(spectral_radius(q2.matrix).lambda1 == doctest::Approx(beta * 4.3).epsilon(1e-9));
}

TEST_CASE("edge-count symmetry d_ij k_i = d_ji k_j") {
  for (const Graph& g : {star_graph(4), two_k5_matching(), path_graph(5)}) {
    const auto p = coarsest_equitable_partition(g);
    for (int i = 0; i < p.cell_count(); ++i)
      for (int j = 0; j < p.cell_count(); ++j)
        CHECK(p.degree_matrix(i, j) * p.cell_sizes[i] == p.degree_matrix(j, i) * p.cell_sizes[j]);
  }
}

TEST_CASE("partition file loading") {
  const std::string path = "test_partition.txt";
  {
    std::ofstream out(path);
    out << "# star partition\n";
    out << "1\n";
    out << "2 3 4\n";
  }
  const auto cells = load_partition_file(path, 4);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0] == std::vector<int>{0});
  CHECK(cells[1] == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(load_partition_file(path, 3), ConfigError);  // id 4 out of range
  std::remove(path.c_str());
}
