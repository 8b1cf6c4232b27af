#include "sirsv/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace sirsv {

Graph::Graph(int n, std::vector<std::vector<int>> neighbors)
    : n_(n), neighbors_(std::move(neighbors)) {
  if (n_ < 2) throw ConfigError("Graph: need at least 2 nodes");
  for (auto& nbrs : neighbors_) std::sort(nbrs.begin(), nbrs.end());
  validate_connected();
}

void Graph::validate_connected() const {
  std::vector<char> seen(n_, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : neighbors_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  if (reached == n_) return;
  std::ostringstream msg;
  msg << "graph is disconnected; nodes {";
  bool first = true;
  for (int v = 0; v < n_; ++v) {
    if (!seen[v]) {
      msg << (first ? "" : ", ") << (v + 1);
      first = false;
    }
  }
  msg << "} are not reachable from node 1";
  throw ConfigError(msg.str());
}

Graph Graph::complete(int n) {
  std::vector<std::vector<int>> nbrs(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (v != u) nbrs[u].push_back(v);
  return Graph(n, std::move(nbrs));
}

Graph Graph::circulant(int n, int degree) {
  if (degree < 1 || degree >= n)
    throw ConfigError("circulant: degree must be in [1, n-1]");
  if (degree % 2 == 1 && n % 2 == 1)
    throw ConfigError("circulant: odd degree requires an even node count");
  std::vector<std::pair<int, int>> edges;
  for (int off = 1; off <= degree / 2; ++off)
    for (int u = 0; u < n; ++u) edges.emplace_back(u, (u + off) % n);
  if (degree % 2 == 1)
    for (int u = 0; u < n / 2; ++u) edges.emplace_back(u, u + n / 2);
  return from_edges(n, edges);
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::set<int>> nbrs(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ConfigError("edge endpoint out of range");
    if (u == v)
      throw ConfigError("self-loop at node " + std::to_string(u + 1) + " rejected");
    nbrs[u].insert(v);
    nbrs[v].insert(u);
  }
  std::vector<std::vector<int>> lists(n);
  for (int v = 0; v < n; ++v) lists[v].assign(nbrs[v].begin(), nbrs[v].end());
  return Graph(n, std::move(lists));
}

Graph Graph::from_adjacency(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw ConfigError("adjacency matrix must be square");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    if (a(i, i) != 0.0)
      throw ConfigError("self-loop at node " + std::to_string(i + 1) + " rejected");
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) != a(j, i)) throw ConfigError("adjacency matrix must be symmetric");
      if (a(i, j) != 0.0 && a(i, j) != 1.0)
        throw ConfigError("adjacency entries must be 0 or 1");
      if (a(i, j) == 1.0) edges.emplace_back(i, j);
    }
  }
  return from_edges(n, edges);
}

Graph Graph::from_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge-list file: " + path);
  std::vector<std::pair<int, int>> edges;
  int max_id = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v))
      throw ConfigError("edge-list line " + std::to_string(line_no) + ": expected two node ids");
    if (u < 1 || v < 1)
      throw ConfigError("edge-list line " + std::to_string(line_no) + ": ids are 1-based");
    edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  return from_edges(max_id, edges);
}

bool Graph::has_edge(int u, int v) const {
  const auto& nbrs = neighbors_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

int Graph::edge_count() const {
  int twice = 0;
  for (const auto& nbrs : neighbors_) twice += static_cast<int>(nbrs.size());
  return twice / 2;
}

WeightedNeighbors Graph::weighted_view() const {
  WeightedNeighbors rows(n_);
  for (int v = 0; v < n_; ++v) {
    rows[v].reserve(neighbors_[v].size());
    for (int w : neighbors_[v]) rows[v].emplace_back(w, 1.0);
  }
  return rows;
}

Eigen::MatrixXd Graph::dense_adjacency() const {
  if (n_ > 512)
    throw ConfigError("dense adjacency limited to n <= 512; use the neighbor-list view");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int v = 0; v < n_; ++v)
    for (int w : neighbors_[v]) a(v, w) = 1.0;
  return a;
}

Eigen::MatrixXd WeightedAdjacency::dense() const {
  if (n_ > 512)
    throw ConfigError("dense adjacency limited to n <= 512; use the neighbor-list view");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int v = 0; v < n_; ++v)
    for (auto [w, weight] : rows_[v]) a(v, w) = weight;
  return a;
}

}  // namespace sirsv
