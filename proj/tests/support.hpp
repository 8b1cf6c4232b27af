#ifndef SIRSV_TESTS_SUPPORT_HPP
#define SIRSV_TESTS_SUPPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "sirsv/graph.hpp"

namespace sirsv::testing {

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, edges);
}

inline Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

struct NamedGraph {
  std::string name;
  Graph graph;
};

// The canonical small-graph family used by the exact-model checks.
inline std::vector<NamedGraph> small_test_graphs() {
  std::vector<NamedGraph> graphs;
  graphs.push_back({"edge2", path_graph(2)});
  graphs.push_back({"path3", path_graph(3)});
  graphs.push_back({"triangle3", Graph::complete(3)});
  graphs.push_back({"path4", path_graph(4)});
  graphs.push_back({"star4", star_graph(3)});
  graphs.push_back({"cycle4", cycle_graph(4)});
  graphs.push_back({"complete4", Graph::complete(4)});
  graphs.push_back({"path5", path_graph(5)});
  graphs.push_back({"cycle5", cycle_graph(5)});
  graphs.push_back({"star5", star_graph(4)});
  graphs.push_back({"complete5", Graph::complete(5)});
  return graphs;
}

// Disconnected two-node adjacency, for the analytic order-statistics checks
// that deliberately bypass the connected-graph front door.
inline WeightedNeighbors no_edge_adjacency(int n) { return WeightedNeighbors(n); }

}  // namespace sirsv::testing

#endif
