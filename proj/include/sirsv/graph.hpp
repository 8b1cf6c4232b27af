#ifndef SIRSV_GRAPH_HPP
#define SIRSV_GRAPH_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "sirsv/errors.hpp"

namespace sirsv {

// Per-node list of (neighbor, weight) pairs. The low-level algorithms
// (power iteration, CTMC generator, Gillespie) all run on this view, so a
// plain graph and an epsilon-weighted one go through the same code.
using WeightedNeighbors = std::vector<std::vector<std::pair<int, double>>>;

// Undirected simple connected graph. Node ids are 0-based internally;
// file formats and diagnostics use 1-based ids.
class Graph {
public:
  static Graph complete(int n);
  // Circulant graph on n nodes with the given even-or-odd degree; offsets
  // 1..d/2 plus n/2 when d is odd (requires even n in that case).
  static Graph circulant(int n, int degree);
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges_0based);
  static Graph from_adjacency(const Eigen::MatrixXd& a);
  // Edge-list file: one "u v" pair per line, 1-based ids, '#' comments.
  static Graph from_edge_list_file(const std::string& path);

  int node_count() const { return n_; }
  int degree(int v) const { return static_cast<int>(neighbors_[v].size()); }
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
  int edge_count() const;

  // Unit-weight view shared with the weighted case.
  WeightedNeighbors weighted_view() const;
  // Dense 0/1 adjacency; guarded to n <= 512 (all experiments use n = 50).
  Eigen::MatrixXd dense_adjacency() const;

private:
  Graph(int n, std::vector<std::vector<int>> neighbors);
  void validate_connected() const;

  int n_;
  std::vector<std::vector<int>> neighbors_;  // sorted per node
};

// Adjacency with intra-cell edges at weight 1 and inter-cell edges at
// weight epsilon; produced by apply_epsilon_weights (partition.hpp).
class WeightedAdjacency {
public:
  WeightedAdjacency(int n, double epsilon, WeightedNeighbors rows)
      : n_(n), epsilon_(epsilon), rows_(std::move(rows)) {}

  int node_count() const { return n_; }
  double epsilon() const { return epsilon_; }
  const WeightedNeighbors& weighted_view() const { return rows_; }
  Eigen::MatrixXd dense() const;

private:
  int n_;
  double epsilon_;
  WeightedNeighbors rows_;
};

}  // namespace sirsv

#endif
