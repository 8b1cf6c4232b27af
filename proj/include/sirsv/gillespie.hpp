#ifndef SIRSV_GILLESPIE_HPP
#define SIRSV_GILLESPIE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sirsv/graph.hpp"
#include "sirsv/params.hpp"
#include "sirsv/rng.hpp"
#include "sirsv/ternary.hpp"

namespace sirsv {

enum class Transition : std::uint8_t { StoI, ItoR, RtoS, StoR };

struct Event {
  double time;
  int node;
  Transition kind;
};

struct SimulationPath {
  std::uint64_t seed = 0;
  std::vector<Event> events;
  std::optional<double> hitting_time_final_set;  // first time with no infected node
  std::optional<double> hitting_time_all_s;      // reachable as a trap only when sigma = 0
};

struct PrevalenceCurve {
  std::vector<double> times;
  std::vector<double> mean;       // mean fraction infected
  std::vector<double> std_error;  // sample std / sqrt(paths)
  long paths = 0;
};

struct ExtinctionStats {
  long n_paths = 0;
  long n_extinct = 0;
  double t_max = 0.0;
  double fraction_censored = 0.0;
  // Statistics over extinct paths only; empty when every path was censored,
  // in which case the mean is reported as "> t_max".
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> ci95_low;
  std::optional<double> ci95_high;
};

namespace detail {

// Direct (total-rate) Gillespie step loop. Per event: wait ~ Exp(total rate),
// node chosen proportionally to its rate, S-nodes then split between
// infection (beta * infected-neighbor weight) and vaccination (sigma).
// Neighbor infection pressures are updated incrementally in O(degree).
// Observer: on_event(t, node, from, to) after the state change is applied.
template <typename Observer>
void run_gillespie(const WeightedNeighbors& adj, const EpidemicParams& p,
                   const std::vector<NodeState>& x0, Xoshiro256pp& rng, double t_max,
                   Observer&& on_event) {
  const int n = static_cast<int>(adj.size());
  std::vector<NodeState> x = x0;
  std::vector<double> pressure(n, 0.0);  // sum of weights of infected neighbors
  for (int j = 0; j < n; ++j)
    if (x[j] == NodeState::I)
      for (auto [i, w] : adj[j]) pressure[i] += w;

  std::vector<double> rate(n);
  double t = 0.0;
  for (;;) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      switch (x[i]) {
        case NodeState::S: rate[i] = p.sigma + p.beta * pressure[i]; break;
        case NodeState::I: rate[i] = p.delta; break;
        default: rate[i] = p.gamma; break;
      }
      total += rate[i];
    }
    if (total <= 0.0) return;  // all-S with sigma = 0: frozen

    t += rng.next_exponential(total);
    if (t > t_max) return;

    double u = rng.next_double() * total;
    int node = -1;
    int last_active = -1;
    for (int i = 0; i < n; ++i) {
      if (rate[i] > 0.0) last_active = i;
      if (u < rate[i]) {
        node = i;
        break;
      }
      u -= rate[i];
    }
    // Rounding in the cumulative scan can walk u past the end; fall back to
    // the last node with positive rate rather than an inactive one.
    if (node < 0) node = last_active;

    NodeState from = x[node];
    NodeState to;
    switch (from) {
      case NodeState::S: {
        const double infect = p.beta * pressure[node];
        to = (rng.next_double() * rate[node] < infect) ? NodeState::I : NodeState::R;
        break;
      }
      case NodeState::I: to = NodeState::R; break;
      default: to = NodeState::S; break;
    }
    x[node] = to;
    if (to == NodeState::I) {
      for (auto [i, w] : adj[node]) pressure[i] += w;
    } else if (from == NodeState::I) {
      for (auto [i, w] : adj[node]) pressure[i] -= w;
    }
    on_event(t, node, from, to);
  }
}

}  // namespace detail

// One statistically exact sample path, recording the full event list and the
// hitting times. `seed` fully determines the path; derive per-path seeds with
// derive_stream_seed(base_seed, path_index).
SimulationPath simulate_path(const WeightedNeighbors& adj, const EpidemicParams& p,
                             const NetworkConfiguration& x0, std::uint64_t seed, double t_max);
SimulationPath simulate_path(const Graph& g, const EpidemicParams& p,
                             const NetworkConfiguration& x0, std::uint64_t seed, double t_max);

// Mean fraction of infected nodes on the grid over `paths` independent
// sample paths (piecewise-constant interpolation of each path). Grid times
// must lie in [0, t_max]. Deterministic given base_seed.
PrevalenceCurve estimate_prevalence(const WeightedNeighbors& adj, const EpidemicParams& p,
                                    const NetworkConfiguration& x0, long paths,
                                    const std::vector<double>& t_grid, std::uint64_t base_seed,
                                    double t_max);
PrevalenceCurve estimate_prevalence(const Graph& g, const EpidemicParams& p,
                                    const NetworkConfiguration& x0, long paths,
                                    const std::vector<double>& t_grid, std::uint64_t base_seed);

// Prevalence and final-set hitting times collected in one sweep, without
// materializing event lists.
struct EnsembleResult {
  PrevalenceCurve prevalence;
  ExtinctionStats extinction;
};
EnsembleResult simulate_ensemble(const WeightedNeighbors& adj, const EpidemicParams& p,
                                 const NetworkConfiguration& x0, long paths,
                                 const std::vector<double>& t_grid, std::uint64_t base_seed,
                                 double t_max);

ExtinctionStats empirical_extinction_stats(const std::vector<std::optional<double>>& hitting_times,
                                           double t_max);
ExtinctionStats empirical_extinction_stats(const std::vector<SimulationPath>& paths,
                                           double t_max);

}  // namespace sirsv

#endif
