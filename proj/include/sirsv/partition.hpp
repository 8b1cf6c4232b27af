#ifndef SIRSV_PARTITION_HPP
#define SIRSV_PARTITION_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sirsv/graph.hpp"

namespace sirsv {

// Node partition where every node of cell V_h has exactly degree_matrix(h, m)
// neighbors inside cell V_m. Cells are ordered by their smallest node id.
struct EquitablePartition {
  std::vector<std::vector<int>> cells;  // sorted node lists
  std::vector<int> cell_of;             // node -> cell index
  std::vector<int> cell_sizes;
  Eigen::MatrixXi degree_matrix;        // d_hm

  int cell_count() const { return static_cast<int>(cells.size()); }
  int internal_degree(int h) const { return degree_matrix(h, h); }
};

// Infection-coupling matrix of the reduced per-cell system: beta * d_h on the
// diagonal and epsilon * beta * d_hm off it.
struct QuotientMatrix {
  Eigen::MatrixXd matrix;
};

// Checks the defining property cell by cell and fills in the degree matrix.
// A non-equitable input fails with a witness: two nodes of the same cell with
// different neighbor counts into some target cell.
EquitablePartition verify_equitable(const Graph& g, const std::vector<std::vector<int>>& cells);

// Coarsest equitable refinement of the given starting partition, computed by
// iterating the per-cell neighbor-count signature to a fixpoint.
EquitablePartition refine_partition(const Graph& g, const std::vector<std::vector<int>>& cells);

// Fixpoint of signature refinement from the one-cell partition.
EquitablePartition coarsest_equitable_partition(const Graph& g);

QuotientMatrix quotient_matrix(const EquitablePartition& p, double beta, double epsilon);

// Reweights the adjacency: weight 1 on intra-cell edges, epsilon on
// inter-cell edges.
WeightedAdjacency apply_epsilon_weights(const Graph& g, const EquitablePartition& p,
                                        double epsilon);

// Partition file: one line per cell, 1-based node ids, '#' comments.
std::vector<std::vector<int>> load_partition_file(const std::string& path, int node_count);

}  // namespace sirsv

#endif
