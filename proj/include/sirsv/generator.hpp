#ifndef SIRSV_GENERATOR_HPP
#define SIRSV_GENERATOR_HPP

#include <cstdint>
#include <vector>

#include "sirsv/graph.hpp"
#include "sirsv/params.hpp"
#include "sirsv/ternary.hpp"

namespace sirsv {

inline constexpr int kExactStateCap = 12;  // 3^12 ~ 531k states

// Infinitesimal generator of the 3^N-state chain in CSR form, one row per
// source state. Row z holds the off-diagonal rates q_{z j}; diag[z] is the
// negative row sum. The probability vector evolves by the transpose action,
// dv/dt = Q^T v.
struct GeneratorMatrix {
  int n_nodes = 0;
  std::uint64_t n_states = 0;
  std::vector<std::uint64_t> row_offsets;
  std::vector<std::uint32_t> cols;
  std::vector<double> rates;
  std::vector<double> diag;

  double max_exit_rate() const;
};

std::uint64_t generator_memory_estimate_bytes(int n_nodes);

// Builds the generator from the five-case rate table: infection of a
// susceptible node at beta times its (weighted) number of infected
// neighbors, recovery at delta, loss of immunity at gamma, vaccination at
// sigma. Refuses n_nodes > cap and points the caller at the Monte Carlo
// simulator instead.
GeneratorMatrix build_generator(const WeightedNeighbors& adjacency, const EpidemicParams& p,
                                int cap = kExactStateCap);
GeneratorMatrix build_generator(const Graph& g, const EpidemicParams& p,
                                int cap = kExactStateCap);

}  // namespace sirsv

#endif
