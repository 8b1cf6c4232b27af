#include "sirsv/generator.hpp"

#include <algorithm>
#include <iostream>

namespace sirsv {

double GeneratorMatrix::max_exit_rate() const {
  double m = 0.0;
  for (double d : diag) m = std::max(m, -d);
  return m;
}

std::uint64_t generator_memory_estimate_bytes(int n_nodes) {
  const std::uint64_t states = pow3(n_nodes);
  const std::uint64_t nnz = states * (2ULL * n_nodes);  // upper bound
  return states * (8 + 8) + nnz * (4 + 8);
}

GeneratorMatrix build_generator(const WeightedNeighbors& adjacency, const EpidemicParams& p,
                                int cap) {
  p.validate();
  const int n = static_cast<int>(adjacency.size());
  if (n < 1) throw ConfigError("build_generator: empty adjacency");
  if (n > cap)
    throw ConfigError("build_generator: N = " + std::to_string(n) + " exceeds the exact cap of " +
                      std::to_string(cap) + " (3^N states); use the Monte Carlo simulator instead");
  if (n > 20) throw ConfigError("build_generator: 3^N does not fit 32-bit state indices");

  for (const auto& row : adjacency)
    for (auto [j, w] : row) {
      if (j < 0 || j >= n) throw ConfigError("build_generator: neighbor index out of range");
      if (!(w >= 0.0)) throw ConfigError("build_generator: adjacency weights must be >= 0");
    }

  const std::uint64_t n_states = pow3(n);
  if (n >= 9)
    std::clog << "[exact] allocating generator for N = " << n << ": "
              << (generator_memory_estimate_bytes(n) >> 20) << " MiB upper bound, "
              << n_states << " states\n";

  std::vector<std::uint64_t> place(n);
  for (int i = 0; i < n; ++i) place[i] = pow3(i);

  GeneratorMatrix q;
  q.n_nodes = n;
  q.n_states = n_states;
  q.row_offsets.reserve(n_states + 1);
  q.row_offsets.push_back(0);
  q.diag.assign(n_states, 0.0);
  q.cols.reserve(n_states * n);
  q.rates.reserve(n_states * n);

  // Ternary odometer over states; digits[i] is the state of node i.
  std::vector<std::uint8_t> digits(n, 0);
  for (std::uint64_t z = 0; z < n_states; ++z) {
    double exit_rate = 0.0;
    for (int m = 0; m < n; ++m) {
      switch (digits[m]) {
        case 0: {  // S: infection by infected neighbors, or vaccination
          double pressure = 0.0;
          for (auto [j, w] : adjacency[m])
            if (digits[j] == 1) pressure += w;
          if (pressure > 0.0) {
            const double rate = p.beta * pressure;
            q.cols.push_back(static_cast<std::uint32_t>(z + place[m]));
            q.rates.push_back(rate);
            exit_rate += rate;
          }
          if (p.sigma > 0.0) {
            q.cols.push_back(static_cast<std::uint32_t>(z + 2 * place[m]));
            q.rates.push_back(p.sigma);
            exit_rate += p.sigma;
          }
          break;
        }
        case 1:  // I -> R
          q.cols.push_back(static_cast<std::uint32_t>(z + place[m]));
          q.rates.push_back(p.delta);
          exit_rate += p.delta;
          break;
        default:  // R -> S
          q.cols.push_back(static_cast<std::uint32_t>(z - 2 * place[m]));
          q.rates.push_back(p.gamma);
          exit_rate += p.gamma;
          break;
      }
    }
    q.diag[z] = -exit_rate;
    q.row_offsets.push_back(q.cols.size());

    for (int i = 0; i < n; ++i) {
      if (++digits[i] < 3) break;
      digits[i] = 0;
    }
  }
  return q;
}

GeneratorMatrix build_generator(const Graph& g, const EpidemicParams& p, int cap) {
  return build_generator(g.weighted_view(), p, cap);
}

}  // namespace sirsv
