#include "sirsv/gillespie.hpp"

#include <algorithm>
#include <cmath>

#include "sirsv/util.hpp"

namespace sirsv {

namespace {

void check_initial(const WeightedNeighbors& adj, const NetworkConfiguration& x0) {
  if (x0.states.size() != adj.size())
    throw ConfigError("simulate: initial configuration size does not match graph");
}

}  // namespace

SimulationPath simulate_path(const WeightedNeighbors& adj, const EpidemicParams& p,
                             const NetworkConfiguration& x0, std::uint64_t seed, double t_max) {
  p.validate();
  check_initial(adj, x0);
  if (!(t_max > 0.0)) throw ConfigError("simulate: t_max must be > 0");

  SimulationPath path;
  path.seed = seed;
  int infected = infected_count(x0.states);
  int non_susceptible = 0;
  for (NodeState s : x0.states) non_susceptible += (s != NodeState::S);

  if (infected == 0) path.hitting_time_final_set = 0.0;
  if (non_susceptible == 0) path.hitting_time_all_s = 0.0;

  Xoshiro256pp rng(seed);
  detail::run_gillespie(adj, p, x0.states, rng, t_max,
                        [&](double t, int node, NodeState from, NodeState to) {
                          Transition kind;
                          if (from == NodeState::S) {
                            ++non_susceptible;
                            if (to == NodeState::I) {
                              kind = Transition::StoI;
                              ++infected;
                            } else {
                              kind = Transition::StoR;
                            }
                          } else if (from == NodeState::I) {
                            kind = Transition::ItoR;
                            if (--infected == 0 && !path.hitting_time_final_set)
                              path.hitting_time_final_set = t;
                          } else {
                            kind = Transition::RtoS;
                            if (--non_susceptible == 0 && !path.hitting_time_all_s)
                              path.hitting_time_all_s = t;
                          }
                          path.events.push_back(Event{t, node, kind});
                        });
  return path;
}

SimulationPath simulate_path(const Graph& g, const EpidemicParams& p,
                             const NetworkConfiguration& x0, std::uint64_t seed, double t_max) {
  return simulate_path(g.weighted_view(), p, x0, seed, t_max);
}

EnsembleResult simulate_ensemble(const WeightedNeighbors& adj, const EpidemicParams& p,
                                 const NetworkConfiguration& x0, long paths,
                                 const std::vector<double>& t_grid, std::uint64_t base_seed,
                                 double t_max) {
  p.validate();
  check_initial(adj, x0);
  if (paths < 1) throw ConfigError("simulate: need at least one path");
  if (!(t_max > 0.0)) throw ConfigError("simulate: t_max must be > 0");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0 || t_grid[i] > t_max)
      throw ConfigError("simulate: grid times must lie in [0, t_max]");
    if (i > 0 && t_grid[i] < t_grid[i - 1])
      throw ConfigError("simulate: grid times must be non-decreasing");
  }

  const int n = static_cast<int>(adj.size());
  const std::size_t grid_size = t_grid.size();
  const std::size_t block_size = 1024;
  const std::size_t n_blocks = (static_cast<std::size_t>(paths) + block_size - 1) / block_size;

  struct BlockAccum {
    std::vector<double> sum;
    std::vector<double> sum_sq;
    std::vector<std::optional<double>> hits;
  };
  std::vector<BlockAccum> blocks(n_blocks);

  const int infected0 = infected_count(x0.states);

  parallel_blocks(static_cast<std::size_t>(paths), block_size,
                  [&](std::size_t block, std::size_t begin, std::size_t end) {
                    BlockAccum acc;
                    acc.sum.assign(grid_size, 0.0);
                    acc.sum_sq.assign(grid_size, 0.0);
                    acc.hits.reserve(end - begin);
                    std::vector<double> curve(grid_size);
                    for (std::size_t path = begin; path < end; ++path) {
                      Xoshiro256pp rng(derive_stream_seed(base_seed, path));
                      int infected = infected0;
                      std::optional<double> hit;
                      if (infected == 0) hit = 0.0;
                      std::size_t g = 0;
                      auto flush_until = [&](double t) {
                        const double frac = static_cast<double>(infected) / n;
                        while (g < grid_size && t_grid[g] < t) curve[g++] = frac;
                      };
                      detail::run_gillespie(
                          adj, p, x0.states, rng, t_max,
                          [&](double t, int /*node*/, NodeState from, NodeState to) {
                            flush_until(t);
                            if (to == NodeState::I) ++infected;
                            if (from == NodeState::I) {
                              --infected;
                              if (infected == 0 && !hit) hit = t;
                            }
                          });
                      flush_until(t_max + 1.0);  // freeze the tail of the grid
                      for (std::size_t k = 0; k < grid_size; ++k) {
                        acc.sum[k] += curve[k];
                        acc.sum_sq[k] += curve[k] * curve[k];
                      }
                      acc.hits.push_back(hit);
                    }
                    blocks[block] = std::move(acc);
                  });

  PrevalenceCurve curve;
  curve.times = t_grid;
  curve.paths = paths;
  curve.mean.assign(grid_size, 0.0);
  curve.std_error.assign(grid_size, 0.0);
  std::vector<std::optional<double>> hits;
  hits.reserve(paths);
  std::vector<double> sum(grid_size, 0.0), sum_sq(grid_size, 0.0);
  for (const auto& b : blocks) {
    for (std::size_t k = 0; k < grid_size; ++k) {
      sum[k] += b.sum[k];
      sum_sq[k] += b.sum_sq[k];
    }
    hits.insert(hits.end(), b.hits.begin(), b.hits.end());
  }
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double mean = sum[k] / paths;
    curve.mean[k] = mean;
    if (paths > 1) {
      const double var = std::max(0.0, (sum_sq[k] - paths * mean * mean) / (paths - 1));
      curve.std_error[k] = std::sqrt(var / paths);
    }
  }

  EnsembleResult result;
  result.prevalence = std::move(curve);
  result.extinction = empirical_extinction_stats(hits, t_max);
  return result;
}

PrevalenceCurve estimate_prevalence(const WeightedNeighbors& adj, const EpidemicParams& p,
                                    const NetworkConfiguration& x0, long paths,
                                    const std::vector<double>& t_grid, std::uint64_t base_seed,
                                    double t_max) {
  return simulate_ensemble(adj, p, x0, paths, t_grid, base_seed, t_max).prevalence;
}

PrevalenceCurve estimate_prevalence(const Graph& g, const EpidemicParams& p,
                                    const NetworkConfiguration& x0, long paths,
                                    const std::vector<double>& t_grid, std::uint64_t base_seed) {
  const double t_max = t_grid.empty() ? 1.0 : t_grid.back();
  return estimate_prevalence(g.weighted_view(), p, x0, paths, t_grid, base_seed,
                             std::max(t_max, 1e-300));
}

ExtinctionStats empirical_extinction_stats(const std::vector<std::optional<double>>& hitting_times,
                                           double t_max) {
  if (hitting_times.empty())
    throw ConfigError("empirical_extinction_stats: need at least one path");
  ExtinctionStats stats;
  stats.n_paths = static_cast<long>(hitting_times.size());
  stats.t_max = t_max;

  std::vector<double> extinct;
  extinct.reserve(hitting_times.size());
  for (const auto& h : hitting_times)
    if (h) extinct.push_back(*h);
  stats.n_extinct = static_cast<long>(extinct.size());
  stats.fraction_censored =
      static_cast<double>(stats.n_paths - stats.n_extinct) / stats.n_paths;
  if (extinct.empty()) return stats;  // mean reported as "> t_max" by callers

  std::sort(extinct.begin(), extinct.end());
  double sum = 0.0, sum_sq = 0.0;
  for (double x : extinct) {
    sum += x;
    sum_sq += x * x;
  }
  const auto n = static_cast<double>(extinct.size());
  const double mean = sum / n;
  const double sd =
      extinct.size() > 1 ? std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1))) : 0.0;
  const double half = 1.96 * sd / std::sqrt(n);
  stats.mean = mean;
  stats.median = extinct.size() % 2 == 1
                     ? extinct[extinct.size() / 2]
                     : 0.5 * (extinct[extinct.size() / 2 - 1] + extinct[extinct.size() / 2]);
  stats.ci95_low = mean - half;
  stats.ci95_high = mean + half;
  return stats;
}

ExtinctionStats empirical_extinction_stats(const std::vector<SimulationPath>& paths,
                                           double t_max) {
  std::vector<std::optional<double>> hits;
  hits.reserve(paths.size());
  for (const auto& p : paths) hits.push_back(p.hitting_time_final_set);
  return empirical_extinction_stats(hits, t_max);
}

}  // namespace sirsv
