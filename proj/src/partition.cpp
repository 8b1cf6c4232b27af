#include "sirsv/partition.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace sirsv {

namespace {

// Canonical cell order: by smallest contained node id, nodes sorted in-cell.
std::vector<std::vector<int>> normalize_cells(std::vector<std::vector<int>> cells) {
  for (auto& cell : cells) std::sort(cell.begin(), cell.end());
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return cells;
}

std::vector<int> cell_index_of(const std::vector<std::vector<int>>& cells, int n) {
  std::vector<int> cell_of(n, -1);
  for (int h = 0; h < static_cast<int>(cells.size()); ++h) {
    for (int v : cells[h]) {
      if (v < 0 || v >= n)
        throw ConfigError("partition cell contains node id out of range: " + std::to_string(v + 1));
      if (cell_of[v] != -1)
        throw ConfigError("node " + std::to_string(v + 1) + " appears in two cells");
      cell_of[v] = h;
    }
  }
  for (int v = 0; v < n; ++v)
    if (cell_of[v] == -1)
      throw ConfigError("node " + std::to_string(v + 1) + " is not covered by any cell");
  return cell_of;
}

}  // namespace

EquitablePartition verify_equitable(const Graph& g, const std::vector<std::vector<int>>& raw_cells) {
  const int n = g.node_count();
  auto cells = normalize_cells(raw_cells);
  for (const auto& cell : cells)
    if (cell.empty()) throw ConfigError("partition contains an empty cell");
  auto cell_of = cell_index_of(cells, n);
  const int k = static_cast<int>(cells.size());

  Eigen::MatrixXi d = Eigen::MatrixXi::Zero(k, k);
  std::vector<int> counts(k);
  for (int h = 0; h < k; ++h) {
    std::vector<int> reference;
    for (int v : cells[h]) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int w : g.neighbors(v)) ++counts[cell_of[w]];
      if (reference.empty()) {
        reference = counts;
        for (int m = 0; m < k; ++m) d(h, m) = counts[m];
      } else {
        for (int m = 0; m < k; ++m) {
          if (counts[m] != reference[m]) {
            std::ostringstream msg;
            msg << "partition is not equitable: in cell " << (h + 1) << ", node "
                << (cells[h].front() + 1) << " has " << reference[m] << " neighbor(s) in cell "
                << (m + 1) << " but node " << (v + 1) << " has " << counts[m];
            throw ConfigError(msg.str());
          }
        }
      }
    }
  }

  EquitablePartition p;
  p.cells = std::move(cells);
  p.cell_of = std::move(cell_of);
  p.cell_sizes.reserve(k);
  for (const auto& cell : p.cells) p.cell_sizes.push_back(static_cast<int>(cell.size()));
  p.degree_matrix = std::move(d);
  return p;
}

EquitablePartition refine_partition(const Graph& g, const std::vector<std::vector<int>>& start) {
  const int n = g.node_count();
  auto cells = normalize_cells(start);
  auto cell_of = cell_index_of(cells, n);

  // Split every cell by the vector of per-cell neighbor counts until stable.
  for (;;) {
    const int k = static_cast<int>(cells.size());
    std::vector<std::vector<int>> next;
    bool changed = false;
    for (const auto& cell : cells) {
      std::map<std::vector<int>, std::vector<int>> groups;
      for (int v : cell) {
        std::vector<int> sig(k, 0);
        for (int w : g.neighbors(v)) ++sig[cell_of[w]];
        groups[sig].push_back(v);
      }
      if (groups.size() > 1) changed = true;
      for (auto& [sig, members] : groups) next.push_back(std::move(members));
    }
    cells = normalize_cells(std::move(next));
    cell_of = cell_index_of(cells, n);
    if (!changed) break;
  }
  return verify_equitable(g, cells);
}

EquitablePartition coarsest_equitable_partition(const Graph& g) {
  std::vector<int> all(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) all[v] = v;
  return refine_partition(g, {all});
}

QuotientMatrix quotient_matrix(const EquitablePartition& p, double beta, double epsilon) {
  if (!(beta > 0.0)) throw ConfigError("quotient_matrix: beta must be > 0");
  if (!(epsilon > 0.0)) throw ConfigError("quotient_matrix: epsilon must be > 0");
  const int k = p.cell_count();
  Eigen::MatrixXd q(k, k);
  for (int h = 0; h < k; ++h)
    for (int m = 0; m < k; ++m)
      q(h, m) = (h == m ? beta : epsilon * beta) * p.degree_matrix(h, m);
  return QuotientMatrix{std::move(q)};
}

WeightedAdjacency apply_epsilon_weights(const Graph& g, const EquitablePartition& p,
                                        double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("apply_epsilon_weights: epsilon must be > 0");
  if (static_cast<int>(p.cell_of.size()) != g.node_count())
    throw ConfigError("apply_epsilon_weights: partition covers " +
                      std::to_string(p.cell_of.size()) + " nodes but graph has " +
                      std::to_string(g.node_count()));
  WeightedNeighbors rows(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) {
    rows[v].reserve(g.neighbors(v).size());
    for (int w : g.neighbors(v))
      rows[v].emplace_back(w, p.cell_of[v] == p.cell_of[w] ? 1.0 : epsilon);
  }
  return WeightedAdjacency(g.node_count(), epsilon, std::move(rows));
}

std::vector<std::vector<int>> load_partition_file(const std::string& path, int node_count) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open partition file: " + path);
  std::vector<std::vector<int>> cells;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<int> cell;
    long long id;
    while (ls >> id) {
      if (id < 1 || id > node_count)
        throw ConfigError("partition file line " + std::to_string(line_no) +
                          ": node id " + std::to_string(id) + " out of range");
      cell.push_back(static_cast<int>(id - 1));
    }
    if (!cell.empty()) cells.push_back(std::move(cell));
  }
  if (cells.empty()) throw ConfigError("partition file has no cells: " + path);
  return cells;
}

}  // namespace sirsv
