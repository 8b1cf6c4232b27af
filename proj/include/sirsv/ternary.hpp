#ifndef SIRSV_TERNARY_HPP
#define SIRSV_TERNARY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sirsv/errors.hpp"

namespace sirsv {

enum class NodeState : std::uint8_t { S = 0, I = 1, R = 2 };

// A full network configuration: per-node states plus the ternary index
// k = sum_i X_i 3^(i-1), node i being digit i-1.
struct NetworkConfiguration {
  std::vector<NodeState> states;
  std::uint64_t index = 0;
};

inline std::uint64_t pow3(int n) {
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

inline std::uint64_t encode(const std::vector<NodeState>& states) {
  std::uint64_t k = 0;
  std::uint64_t place = 1;
  for (NodeState x : states) {
    k += static_cast<std::uint64_t>(x) * place;
    place *= 3;
  }
  return k;
}

inline std::vector<NodeState> decode(std::uint64_t index, int n_nodes) {
  if (index >= pow3(n_nodes))
    throw ConfigError("state index " + std::to_string(index) + " out of range for N = " +
                      std::to_string(n_nodes));
  std::vector<NodeState> states(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    states[i] = static_cast<NodeState>(index % 3);
    index /= 3;
  }
  return states;
}

inline NetworkConfiguration make_configuration(std::vector<NodeState> states) {
  NetworkConfiguration c;
  c.index = encode(states);
  c.states = std::move(states);
  return c;
}

inline NetworkConfiguration all_susceptible(int n_nodes) {
  return make_configuration(std::vector<NodeState>(n_nodes, NodeState::S));
}

inline NetworkConfiguration single_infected(int n_nodes, int infected_node) {
  std::vector<NodeState> states(n_nodes, NodeState::S);
  if (infected_node < 0 || infected_node >= n_nodes)
    throw ConfigError("initial infected node out of range");
  states[infected_node] = NodeState::I;
  return make_configuration(std::move(states));
}

inline int infected_count(const std::vector<NodeState>& states) {
  int c = 0;
  for (NodeState x : states) c += (x == NodeState::I);
  return c;
}

}  // namespace sirsv

#endif
