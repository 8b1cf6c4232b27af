#ifndef SIRSV_EXPERIMENTS_HPP
#define SIRSV_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sirsv/generator.hpp"
#include "sirsv/graph.hpp"
#include "sirsv/params.hpp"

namespace sirsv {

struct GraphSpec {
  std::string kind;  // "complete" | "circulant_regular" | "edge_list"
  int nodes = 0;
  int degree = 0;                             // circulant_regular
  std::string path;                           // edge_list file (optional)
  std::vector<std::pair<int, int>> edges;     // inline edge list, 1-based
};

Graph build_graph(const GraphSpec& spec);

// Initial condition. "one_infected" puts node `node` (1-based) in state I and
// the rest in S; "states" gives an explicit S/I/R letter string; "explicit"
// gives per-node probability triples (mean-field only); "cell_equal" gives
// per-cell I and R values (quotient runs and cell-equal full runs).
struct InitialSpec {
  std::string kind = "one_infected";
  int node = 1;
  std::string states;
  std::vector<double> s, i, r;
  std::vector<double> cell_i, cell_r;
};

struct SweepAxis {
  std::string name;  // one of beta, delta, gamma, sigma, epsilon
  std::vector<double> values;
};

struct ExperimentConfig {
  int schema_version = 1;
  std::string method;  // "exact" | "simulate" | "meanfield" | "quotient"
  GraphSpec graph;
  EpidemicParams params;
  InitialSpec initial;
  double t_max = 10.0;
  int grid_points = 201;
  long paths = 1000;
  std::uint64_t base_seed = 1;
  std::vector<SweepAxis> sweep;
  std::string out_dir = ".";
  std::string partition_file;  // optional; quotient runs fall back to the coarsest partition
  int exact_cap = kExactStateCap;
  std::string label;  // optional output-file prefix
};

ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig load_config_file(const std::string& path);
std::string config_hash(const ExperimentConfig& config);

struct RunManifest {
  std::string config_hash;
  std::string artifact_version;
  std::uint64_t base_seed = 0;
  double wall_clock_seconds = 0.0;
  std::map<std::string, std::string> output_checksums;  // filename -> fnv1a64
};

// Validates the config, dispatches every sweep cell to the owning solver,
// writes one CSV per cell plus manifest.json (written last), and returns the
// manifest. Randomized outputs carry the seed in the filename.
RunManifest run(const ExperimentConfig& config);

void write_manifest(const RunManifest& manifest, const std::string& path);

// Named figure-reproduction recipes with the parameter sets pinned from the
// experiment descriptions; figures() lists the known names.
std::vector<std::string> known_figures();
std::vector<ExperimentConfig> figure_recipe(const std::string& figure);

struct ReproduceOverrides {
  std::optional<long> paths;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_max;
};

RunManifest reproduce(const std::string& figure, const std::string& out_dir,
                      const ReproduceOverrides& overrides = {});

}  // namespace sirsv

#endif
