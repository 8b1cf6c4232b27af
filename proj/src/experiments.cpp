#include "sirsv/experiments.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sirsv/bounds.hpp"
#include "sirsv/gillespie.hpp"
#include "sirsv/hitting.hpp"
#include "sirsv/master_equation.hpp"
#include "sirsv/meanfield.hpp"
#include "sirsv/partition.hpp"
#include "sirsv/spectral.hpp"
#include "sirsv/util.hpp"
#include "sirsv/version.hpp"

namespace sirsv {

namespace {

using nlohmann::json;

constexpr const char* kKnownAxes[] = {"beta", "delta", "gamma", "sigma", "epsilon"};

std::string fmt(double x, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

std::string fmt_u64(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%" PRIu64, x);
  return buf;
}

// ---------------------------------------------------------------- config io

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
  }
}

GraphSpec parse_graph_spec(const json& j) {
  if (!j.is_object()) throw ConfigError("config: \"graph\" must be an object");
  expect_keys(j, {"kind", "nodes", "degree", "path", "edges"}, "graph");
  GraphSpec g;
  g.kind = j.value("kind", "");
  g.nodes = j.value("nodes", 0);
  g.degree = j.value("degree", 0);
  g.path = j.value("path", "");
  if (j.contains("edges"))
    for (const auto& e : j.at("edges"))
      g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return g;
}

InitialSpec parse_initial(const json& j) {
  if (!j.is_object()) throw ConfigError("config: \"initial\" must be an object");
  expect_keys(j, {"kind", "node", "states", "s", "i", "r", "cell_i", "cell_r"}, "initial");
  InitialSpec init;
  init.kind = j.value("kind", "one_infected");
  init.node = j.value("node", 1);
  init.states = j.value("states", "");
  init.s = j.value("s", std::vector<double>{});
  init.i = j.value("i", std::vector<double>{});
  init.r = j.value("r", std::vector<double>{});
  init.cell_i = j.value("cell_i", std::vector<double>{});
  init.cell_r = j.value("cell_r", std::vector<double>{});
  return init;
}

json graph_to_json(const GraphSpec& g) {
  json j;
  j["kind"] = g.kind;
  if (g.nodes) j["nodes"] = g.nodes;
  if (g.degree) j["degree"] = g.degree;
  if (!g.path.empty()) j["path"] = g.path;
  if (!g.edges.empty()) {
    json edges = json::array();
    for (auto [u, v] : g.edges) edges.push_back({u, v});
    j["edges"] = edges;
  }
  return j;
}

json initial_to_json(const InitialSpec& init) {
  json j;
  j["kind"] = init.kind;
  if (init.kind == "one_infected") j["node"] = init.node;
  if (!init.states.empty()) j["states"] = init.states;
  if (!init.s.empty()) j["s"] = init.s;
  if (!init.i.empty()) j["i"] = init.i;
  if (!init.r.empty()) j["r"] = init.r;
  if (!init.cell_i.empty()) j["cell_i"] = init.cell_i;
  if (!init.cell_r.empty()) j["cell_r"] = init.cell_r;
  return j;
}

}  // namespace

Graph build_graph(const GraphSpec& spec) {
  if (spec.kind == "complete") {
    return Graph::complete(spec.nodes);
  } else if (spec.kind == "circulant_regular") {
    return Graph::circulant(spec.nodes, spec.degree);
  } else if (spec.kind == "edge_list") {
    if (!spec.path.empty()) return Graph::from_edge_list_file(spec.path);
    if (spec.nodes <= 0) throw ConfigError("edge_list graph: \"nodes\" required with inline edges");
    std::vector<std::pair<int, int>> edges0;
    edges0.reserve(spec.edges.size());
    for (auto [u, v] : spec.edges) {
      if (u < 1 || v < 1 || u > spec.nodes || v > spec.nodes)
        throw ConfigError("edge_list graph: node ids are 1-based in [1, nodes]");
      edges0.emplace_back(u - 1, v - 1);
    }
    return Graph::from_edges(spec.nodes, edges0);
  }
  throw ConfigError("unknown graph kind \"" + spec.kind +
                    "\" (expected complete | circulant_regular | edge_list)");
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  expect_keys(j,
              {"schema_version", "method", "graph", "params", "initial", "t_max", "grid_points",
               "paths", "base_seed", "sweep", "out_dir", "partition_file", "exact_cap", "label"},
              "top level");
  ExperimentConfig c;
  c.schema_version = j.value("schema_version", 1);
  if (c.schema_version != 1)
    throw ConfigError("config: unsupported schema_version " + std::to_string(c.schema_version));
  c.method = j.value("method", "");
  if (!j.contains("graph")) throw ConfigError("config: missing \"graph\"");
  c.graph = parse_graph_spec(j.at("graph"));
  if (j.contains("params")) {
    const json& p = j.at("params");
    expect_keys(p, {"beta", "delta", "gamma", "sigma", "epsilon"}, "params");
    c.params.beta = p.value("beta", 0.0);
    c.params.delta = p.value("delta", 0.0);
    c.params.gamma = p.value("gamma", 0.0);
    c.params.sigma = p.value("sigma", 0.0);
    c.params.epsilon = p.value("epsilon", 1.0);
  }
  if (j.contains("initial")) c.initial = parse_initial(j.at("initial"));
  c.t_max = j.value("t_max", 10.0);
  c.grid_points = j.value("grid_points", 201);
  c.paths = j.value("paths", 1000L);
  c.base_seed = j.value("base_seed", std::uint64_t{1});
  if (j.contains("sweep")) {
    for (const auto& axis : j.at("sweep")) {
      expect_keys(axis, {"name", "values"}, "sweep axis");
      SweepAxis a;
      a.name = axis.at("name").get<std::string>();
      a.values = axis.at("values").get<std::vector<double>>();
      c.sweep.push_back(std::move(a));
    }
  }
  c.out_dir = j.value("out_dir", ".");
  c.partition_file = j.value("partition_file", "");
  c.exact_cap = j.value("exact_cap", kExactStateCap);
  c.label = j.value("label", "");
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["method"] = c.method;
  j["graph"] = graph_to_json(c.graph);
  j["params"] = {{"beta", c.params.beta},
                 {"delta", c.params.delta},
                 {"gamma", c.params.gamma},
                 {"sigma", c.params.sigma},
                 {"epsilon", c.params.epsilon}};
  j["initial"] = initial_to_json(c.initial);
  j["t_max"] = c.t_max;
  j["grid_points"] = c.grid_points;
  j["paths"] = c.paths;
  j["base_seed"] = c.base_seed;
  if (!c.sweep.empty()) {
    json axes = json::array();
    for (const auto& a : c.sweep) axes.push_back({{"name", a.name}, {"values", a.values}});
    j["sweep"] = axes;
  }
  j["out_dir"] = c.out_dir;
  if (!c.partition_file.empty()) j["partition_file"] = c.partition_file;
  j["exact_cap"] = c.exact_cap;
  if (!c.label.empty()) j["label"] = c.label;
  return j.dump(2);
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_hash(const ExperimentConfig& config) {
  return fnv1a64_hex(serialize_config(config));
}

namespace {

// ------------------------------------------------------------- validation

void validate_config(const ExperimentConfig& c) {
  static const char* methods[] = {"exact", "simulate", "meanfield", "quotient", "equilibrium"};
  bool ok = false;
  for (const char* m : methods) ok = ok || c.method == m;
  if (!ok)
    throw ConfigError("config: unknown method \"" + c.method +
                      "\" (expected exact | simulate | meanfield | quotient | equilibrium)");
  c.params.validate();
  if (!(c.t_max > 0.0)) throw ConfigError("config: t_max must be > 0");
  if (c.grid_points < 1) throw ConfigError("config: grid_points must be >= 1");
  if (c.paths < 1) throw ConfigError("config: paths must be >= 1");
  for (std::size_t a = 0; a < c.sweep.size(); ++a) {
    bool known = false;
    for (const char* n : kKnownAxes) known = known || c.sweep[a].name == n;
    if (!known) throw ConfigError("config: sweep axis \"" + c.sweep[a].name +
                                  "\" is not an epidemic parameter");
    if (c.sweep[a].values.empty())
      throw ConfigError("config: sweep axis \"" + c.sweep[a].name + "\" has no values");
    for (std::size_t b = 0; b < a; ++b)
      if (c.sweep[a].name == c.sweep[b].name)
        throw ConfigError("config: duplicate sweep axis \"" + c.sweep[a].name + "\"");
  }
}

// ------------------------------------------------- initial-state resolvers

NetworkConfiguration resolve_network_initial(const InitialSpec& init, int n) {
  if (init.kind == "one_infected") {
    if (init.node < 1 || init.node > n)
      throw ConfigError("initial: node " + std::to_string(init.node) + " out of range");
    return single_infected(n, init.node - 1);
  }
  if (init.kind == "all_susceptible") return all_susceptible(n);
  if (init.kind == "states") {
    if (static_cast<int>(init.states.size()) != n)
      throw ConfigError("initial: states string must have length N");
    std::vector<NodeState> states(n);
    for (int k = 0; k < n; ++k) {
      switch (init.states[k]) {
        case 'S': states[k] = NodeState::S; break;
        case 'I': states[k] = NodeState::I; break;
        case 'R': states[k] = NodeState::R; break;
        default: throw ConfigError("initial: states string may contain only S, I, R");
      }
    }
    return make_configuration(std::move(states));
  }
  throw ConfigError("initial: kind \"" + init.kind + "\" not usable for a stochastic/exact run");
}

Eigen::VectorXd resolve_meanfield_initial(const InitialSpec& init, int n,
                                          const EquitablePartition* partition) {
  Eigen::VectorXd y(3 * n);
  auto set_node = [&](int k, double s, double i, double r) {
    y[k] = s;
    y[n + k] = i;
    y[2 * n + k] = r;
  };
  if (init.kind == "one_infected") {
    if (init.node < 1 || init.node > n)
      throw ConfigError("initial: node " + std::to_string(init.node) + " out of range");
    for (int k = 0; k < n; ++k) set_node(k, 1.0, 0.0, 0.0);
    set_node(init.node - 1, 0.0, 1.0, 0.0);
    return y;
  }
  if (init.kind == "explicit") {
    if (static_cast<int>(init.s.size()) != n || static_cast<int>(init.i.size()) != n ||
        static_cast<int>(init.r.size()) != n)
      throw ConfigError("initial: explicit arrays must each have length N");
    for (int k = 0; k < n; ++k) set_node(k, init.s[k], init.i[k], init.r[k]);
    return y;
  }
  if (init.kind == "cell_equal") {
    if (!partition) throw ConfigError("initial: cell_equal requires a partition");
    const int cells = partition->cell_count();
    if (static_cast<int>(init.cell_i.size()) != cells ||
        static_cast<int>(init.cell_r.size()) != cells)
      throw ConfigError("initial: cell_i/cell_r must have one value per cell (" +
                        std::to_string(cells) + ")");
    for (int k = 0; k < n; ++k) {
      const int h = partition->cell_of[k];
      set_node(k, 1.0 - init.cell_i[h] - init.cell_r[h], init.cell_i[h], init.cell_r[h]);
    }
    return y;
  }
  throw ConfigError("initial: kind \"" + init.kind + "\" not usable for a mean-field run");
}

// ----------------------------------------------------------- file helpers

class CsvFile {
public:
  CsvFile(const std::filesystem::path& path) : path_(path.string()), out_(path) {
    if (!out_) throw ConfigError("cannot open output file: " + path_);
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k)
      out_ << (k ? "," : "") << fields[k];
    out_ << "\n";
  }
  void comment(const std::string& line) { out_ << "# " << line << "\n"; }
  const std::string& path() const { return path_; }

private:
  std::string path_;
  std::ofstream out_;
};

struct SweepCell {
  EpidemicParams params;
  std::string suffix;  // "_sigma0.45_gamma0.2" style, empty without sweep
};

std::vector<SweepCell> expand_sweep(const ExperimentConfig& c) {
  std::vector<SweepCell> cells{{c.params, ""}};
  for (const auto& axis : c.sweep) {
    std::vector<SweepCell> next;
    next.reserve(cells.size() * axis.values.size());
    for (const auto& cell : cells) {
      for (double v : axis.values) {
        SweepCell sc = cell;
        EpidemicParams& p = sc.params;
        if (axis.name == "beta") p.beta = v;
        else if (axis.name == "delta") p.delta = v;
        else if (axis.name == "gamma") p.gamma = v;
        else if (axis.name == "sigma") p.sigma = v;
        else p.epsilon = v;
        sc.suffix += "_" + axis.name + fmt(v, "%.6g");
        next.push_back(std::move(sc));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

}  // namespace

// ------------------------------------------------------------------- run()

RunManifest run(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  validate_config(config);

  const Graph graph = build_graph(config.graph);
  const int n = graph.node_count();

  // Optional community structure: partition from file, or the coarsest
  // equitable partition for quotient runs.
  std::optional<EquitablePartition> partition;
  if (!config.partition_file.empty())
    partition = verify_equitable(graph, load_partition_file(config.partition_file, n));
  else if (config.method == "quotient" || config.initial.kind == "cell_equal")
    partition = coarsest_equitable_partition(graph);

  // Epsilon-weighted adjacency when a partition is in play, unit otherwise.
  auto adjacency_for = [&](const EpidemicParams& p) -> WeightedNeighbors {
    if (partition && p.epsilon != 1.0)
      return apply_epsilon_weights(graph, *partition, p.epsilon).weighted_view();
    return graph.weighted_view();
  };

  if (config.method == "exact" && n > config.exact_cap)
    throw ConfigError("config: N = " + std::to_string(n) + " over the exact-method cap " +
                      std::to_string(config.exact_cap) + "; use method \"simulate\"");

  std::filesystem::create_directories(config.out_dir);
  const std::filesystem::path out_dir(config.out_dir);
  const std::vector<double> t_grid = linspace(0.0, config.t_max, config.grid_points);
  const std::string prefix = config.label.empty() ? config.method : config.label;

  RunManifest manifest;
  manifest.config_hash = config_hash(config);
  manifest.artifact_version = kArtifactVersion;
  manifest.base_seed = config.base_seed;
  std::vector<std::string> written;

  if (config.method == "equilibrium") {
    // One combined, plot-ready CSV across all sweep cells.
    CsvFile csv(out_dir / (prefix + ".csv"));
    csv.row({"beta", "delta", "gamma", "sigma", "epsilon", "lambda1", "tau", "tau_c", "rho",
             "kind", "i_star_mean", "residual", "iterations"});
    for (const SweepCell& cell : expand_sweep(config)) {
      const EpidemicParams& p = cell.params;
      const auto adj = adjacency_for(p);
      const double lambda1 = spectral_radius(adj).lambda1;
      const ThresholdReport th = threshold_report(p, lambda1);
      std::vector<std::string> row{fmt(p.beta), fmt(p.delta), fmt(p.gamma),  fmt(p.sigma),
                                   fmt(p.epsilon), fmt(lambda1), fmt(th.tau), fmt(th.tau_c),
                                   fmt(th.rho)};
      if (th.endemic) {
        const EquilibriumPoint eq = endemic_equilibrium(adj, p);
        row.insert(row.end(), {"endemic", fmt(eq.I.mean()), fmt(eq.residual),
                               std::to_string(eq.iterations)});
      } else {
        row.insert(row.end(), {"dfe", "0", "0", "0"});
      }
      csv.row(row);
    }
    written.push_back(csv.path());
    for (const auto& path : written)
      manifest.output_checksums[std::filesystem::path(path).filename().string()] =
          file_checksum(path);
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(manifest, (out_dir / (prefix + "_manifest.json")).string());
    return manifest;
  }

  for (const SweepCell& cell : expand_sweep(config)) {
    const EpidemicParams& p = cell.params;

    if (config.method == "simulate") {
      const auto x0 = resolve_network_initial(config.initial, n);
      const auto result = simulate_ensemble(adjacency_for(p), p, x0, config.paths, t_grid,
                                            config.base_seed, config.t_max);
      CsvFile csv(out_dir / ("simulate_seed" + fmt_u64(config.base_seed) +
                             (config.label.empty() ? "" : "_" + config.label) + cell.suffix +
                             ".csv"));
      csv.row({"t", "mean_prevalence", "stderr", "n_paths"});
      for (std::size_t k = 0; k < t_grid.size(); ++k)
        csv.row({fmt(result.prevalence.times[k]), fmt(result.prevalence.mean[k]),
                 fmt(result.prevalence.std_error[k]), std::to_string(result.prevalence.paths)});
      const auto& ext = result.extinction;
      csv.comment("n_extinct=" + std::to_string(ext.n_extinct));
      csv.comment("fraction_censored=" + fmt(ext.fraction_censored));
      csv.comment("mean_extinction_time=" + (ext.mean ? fmt(*ext.mean) : "> " + fmt(ext.t_max)));
      if (ext.median) csv.comment("median_extinction_time=" + fmt(*ext.median));
      if (ext.ci95_low) csv.comment("ci95_low=" + fmt(*ext.ci95_low));
      if (ext.ci95_high) csv.comment("ci95_high=" + fmt(*ext.ci95_high));
      written.push_back(csv.path());

    } else if (config.method == "exact") {
      const auto x0 = resolve_network_initial(config.initial, n);
      const auto q = build_generator(adjacency_for(p), p, config.exact_cap);
      const auto states = solve_master_equation(q, delta_mass(q, x0.index), t_grid);
      CsvFile csv(out_dir / (prefix + cell.suffix + ".csv"));
      std::vector<std::string> header{"t", "P_not_final", "P_not_absorbed"};
      for (int i = 1; i <= n; ++i) header.push_back("I_marginal_" + std::to_string(i));
      csv.row(header);
      for (std::size_t k = 0; k < t_grid.size(); ++k) {
        std::vector<std::string> row{fmt(t_grid[k]), fmt(prob_not_in_final_set(states[k], n)),
                                     fmt(prob_not_absorbed(states[k]))};
        const Eigen::VectorXd marg = marginal_infection_probabilities(states[k], n);
        for (int i = 0; i < n; ++i) row.push_back(fmt(marg[i]));
        csv.row(row);
      }
      written.push_back(csv.path());

      if (infected_count(x0.states) > 0) {
        CsvFile rep(out_dir / (prefix + cell.suffix + "_hitting.txt"));
        rep.row({"expected_hitting_time_final_set=" +
                 fmt(expected_hitting_time_final_set(q, x0))});
        const double lambda1 = spectral_radius(adjacency_for(p)).lambda1;
        rep.row({"lambda1=" + fmt(lambda1)});
        const int i0 = infected_count(x0.states);
        rep.row({"bound_not_in_final_set_at_tmax=" +
                 fmt(bound_not_in_final_set(config.t_max, n, i0, p.beta, p.delta, lambda1))});
        if (p.beta / p.delta < 1.0 / lambda1)
          rep.row({"bound_mean_extinction_time=" +
                   fmt(bound_mean_extinction_time(n, p.beta, p.delta, lambda1))});
        if (p.sigma == 0.0 && (!partition || p.epsilon == 1.0)) {
          try {
            const auto abar = block_matrix_abar(graph, p);
            int ir0 = 0;
            for (NodeState s : x0.states) ir0 += (s != NodeState::S);
            rep.row({"abar_top_eigenvalue=" + fmt(abar.top_eigenvalue)});
            rep.row({"abar_condition_constant=" + fmt(abar.condition_constant)});
            rep.row({"bound_no_absorption_at_tmax=" +
                     fmt(bound_no_absorption(config.t_max, graph, p, ir0))});
          } catch (const NumericalError& e) {
            rep.row({std::string("bound_no_absorption_error=") + e.what()});
          }
        }
        written.push_back(rep.path());
      }

    } else if (config.method == "meanfield") {
      const auto adj = adjacency_for(p);
      const Eigen::VectorXd y0 =
          resolve_meanfield_initial(config.initial, n, partition ? &*partition : nullptr);
      const Trajectory traj =
          integrate(make_full_rhs(adj, p), StateLayout::Full3N, y0, t_grid);
      CsvFile csv(out_dir / (prefix + cell.suffix + ".csv"));
      std::vector<std::string> header{"t"};
      for (const char* c3 : {"S", "I", "R"})
        for (int i = 1; i <= n; ++i) header.push_back(std::string(c3) + "_" + std::to_string(i));
      csv.row(header);
      for (std::size_t k = 0; k < t_grid.size(); ++k) {
        std::vector<std::string> row{fmt(t_grid[k])};
        for (Eigen::Index j = 0; j < traj.states[k].size(); ++j) row.push_back(fmt(traj.states[k][j]));
        csv.row(row);
      }
      if (!traj.region_violation.empty())
        csv.comment("region_violation=" + traj.region_violation);
      written.push_back(csv.path());

    } else if (config.method == "quotient") {
      const QuotientMatrix q = quotient_matrix(*partition, p.beta, p.epsilon);
      const int cells_n = partition->cell_count();
      if (config.initial.kind != "cell_equal")
        throw ConfigError("quotient runs need initial.kind = cell_equal");
      if (static_cast<int>(config.initial.cell_i.size()) != cells_n ||
          static_cast<int>(config.initial.cell_r.size()) != cells_n)
        throw ConfigError("initial: cell_i/cell_r must have one value per cell (" +
                          std::to_string(cells_n) + ")");
      Eigen::VectorXd y0(3 * cells_n);
      for (int h = 0; h < cells_n; ++h) {
        y0[h] = 1.0 - config.initial.cell_i[h] - config.initial.cell_r[h];
        y0[cells_n + h] = config.initial.cell_i[h];
        y0[2 * cells_n + h] = config.initial.cell_r[h];
      }
      const Trajectory traj =
          integrate(make_quotient_rhs(q, p), StateLayout::Quotient3Cells, y0, t_grid);
      CsvFile csv(out_dir / (prefix + cell.suffix + ".csv"));
      std::vector<std::string> header{"t"};
      for (const char* c3 : {"Sbar", "Ibar", "Rbar"})
        for (int h = 1; h <= cells_n; ++h)
          header.push_back(std::string(c3) + "_" + std::to_string(h));
      csv.row(header);
      for (std::size_t k = 0; k < t_grid.size(); ++k) {
        std::vector<std::string> row{fmt(t_grid[k])};
        for (Eigen::Index j = 0; j < traj.states[k].size(); ++j) row.push_back(fmt(traj.states[k][j]));
        csv.row(row);
      }
      written.push_back(csv.path());

    }
  }

  for (const auto& path : written)
    manifest.output_checksums[std::filesystem::path(path).filename().string()] =
        file_checksum(path);
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  write_manifest(manifest, (out_dir / (prefix + "_manifest.json")).string());
  return manifest;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  json j;
  j["schema_version"] = 1;
  j["artifact_version"] = manifest.artifact_version;
  j["config_hash"] = manifest.config_hash;
  j["base_seed"] = manifest.base_seed;
  j["wall_clock_seconds"] = manifest.wall_clock_seconds;
  j["outputs"] = manifest.output_checksums;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write manifest: " + path);
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------- figures

namespace {

ExperimentConfig base_fig_config() {
  ExperimentConfig c;
  c.initial.kind = "one_infected";
  c.initial.node = 1;
  c.base_seed = 20200617;
  return c;
}

GraphSpec complete50() {
  GraphSpec g;
  g.kind = "complete";
  g.nodes = 50;
  return g;
}

GraphSpec regular50_10() {
  GraphSpec g;
  g.kind = "circulant_regular";
  g.nodes = 50;
  g.degree = 10;
  return g;
}

// Mean-field + Monte Carlo pair for the prevalence-comparison panels.
std::vector<ExperimentConfig> comparison_panel(const std::string& name, const GraphSpec& graph,
                                               const EpidemicParams& p, double t_max,
                                               long paths) {
  ExperimentConfig mc = base_fig_config();
  mc.method = "simulate";
  mc.graph = graph;
  mc.params = p;
  mc.t_max = t_max;
  mc.grid_points = 1 + static_cast<int>(t_max * 10);
  mc.paths = paths;
  mc.label = name + "_mc";

  ExperimentConfig mf = mc;
  mf.method = "meanfield";
  mf.paths = 1;
  mf.label = name + "_meanfield";
  return {mc, mf};
}

}  // namespace

std::vector<std::string> known_figures() {
  return {"fig1a", "fig1b", "fig2", "fig3", "fig4a", "fig4b",
          "fig4c", "fig5a", "fig5b", "fig5c", "figEqPart"};
}

std::vector<ExperimentConfig> figure_recipe(const std::string& figure) {
  EpidemicParams p;

  if (figure == "fig1a" || figure == "fig1b") {
    // Complete graph, prevalence vs time for a gamma sweep; 10^3 paths.
    ExperimentConfig c = base_fig_config();
    c.method = "simulate";
    c.graph = complete50();
    p.beta = 0.25;
    p.delta = 0.4;
    p.gamma = 0.2;  // replaced by the sweep
    p.sigma = figure == "fig1b" ? 0.45 : 0.0;
    c.params = p;
    c.t_max = 60.0;
    c.grid_points = 301;
    c.paths = 1000;
    c.sweep = {{"gamma", logspace(0.01, 1.0, 20)}};
    c.label = figure;
    return {c};
  }

  if (figure == "fig2") {
    // Complete graph, prevalence vs time for a sigma sweep; 10^3 paths.
    ExperimentConfig c = base_fig_config();
    c.method = "simulate";
    c.graph = complete50();
    p.beta = 0.25;
    p.delta = 0.4;
    p.gamma = 0.2;
    p.sigma = 0.0;  // replaced by the sweep
    c.params = p;
    c.t_max = 60.0;
    c.grid_points = 301;
    c.paths = 1000;
    c.sweep = {{"sigma", {0.0, 0.45, 0.9, 1.8, 3.6, 7.2}}};
    c.label = figure;
    return {c};
  }

  if (figure == "fig3") {
    // Steady-state mean infected fraction over a (gamma, sigma) grid.
    ExperimentConfig c = base_fig_config();
    c.method = "equilibrium";
    c.graph = complete50();
    p.beta = 0.25;
    p.delta = 0.9;
    p.gamma = 0.2;
    p.sigma = 0.0;
    c.params = p;
    c.sweep = {{"sigma", {0.0, 0.1, 0.2, 0.4, 0.8}}, {"gamma", logspace(0.05, 1.0, 20)}};
    c.label = figure;
    return {c};
  }

  if (figure == "fig4a") {
    p = {0.1, 0.9, 0.1, 0.4, 1.0};
    return comparison_panel(figure, complete50(), p, 60.0, 20000);
  }
  if (figure == "fig4b") {
    p = {1.0, 0.45, 0.2, 0.4, 1.0};
    return comparison_panel(figure, complete50(), p, 25.0, 20000);
  }
  if (figure == "fig4c") {
    // Long window: the stochastic prevalence fades out past t ~ 70 while the
    // mean-field curve levels off at its endemic value.
    p = {1.0, 0.45, 0.06, 0.4, 1.0};
    return comparison_panel(figure, complete50(), p, 80.0, 20000);
  }
  if (figure == "fig5a") {
    p = {0.1, 0.4, 0.2, 0.45, 1.0};
    return comparison_panel(figure, regular50_10(), p, 60.0, 20000);
  }
  if (figure == "fig5b") {
    p = {1.0, 0.4, 0.2, 0.45, 1.0};
    return comparison_panel(figure, regular50_10(), p, 25.0, 20000);
  }
  if (figure == "fig5c") {
    p = {1.0, 0.4, 0.06, 0.45, 1.0};
    return comparison_panel(figure, regular50_10(), p, 15.0, 20000);
  }

  if (figure == "figEqPart") {
    // Full system with heterogeneous initial conditions vs the reduced
    // single-cell system started at the node averages.
    ExperimentConfig full = base_fig_config();
    full.method = "meanfield";
    full.graph = regular50_10();
    full.params = {0.25, 0.4, 0.2, 0.3, 1.0};
    full.t_max = 60.0;
    full.grid_points = 601;
    full.initial.kind = "explicit";
    const int n = 50;
    full.initial.s.resize(n);
    full.initial.i.resize(n);
    full.initial.r.resize(n);
    for (int k = 0; k < n; ++k) {
      full.initial.i[k] = (k + 1) / (2.0 * n);
      full.initial.r[k] = (n - k - 1) / (4.0 * n);
      full.initial.s[k] = 1.0 - full.initial.i[k] - full.initial.r[k];
    }
    full.label = "figEqPart_full";

    ExperimentConfig quot = full;
    quot.method = "quotient";
    quot.initial = InitialSpec{};
    quot.initial.kind = "cell_equal";
    double i_mean = 0.0, r_mean = 0.0;
    for (int k = 0; k < n; ++k) {
      i_mean += full.initial.i[k] / n;
      r_mean += full.initial.r[k] / n;
    }
    quot.initial.cell_i = {i_mean};
    quot.initial.cell_r = {r_mean};
    quot.label = "figEqPart_quotient";
    return {full, quot};
  }

  throw ConfigError("unknown figure \"" + figure + "\"");
}

RunManifest reproduce(const std::string& figure, const std::string& out_dir,
                      const ReproduceOverrides& overrides) {
  const auto t_start = std::chrono::steady_clock::now();
  std::vector<ExperimentConfig> configs = figure_recipe(figure);

  RunManifest bundle;
  bundle.artifact_version = kArtifactVersion;
  std::string hash_input = "figure:" + figure;
  for (auto& c : configs) {
    c.out_dir = out_dir;
    if (overrides.paths && c.method == "simulate") c.paths = *overrides.paths;
    if (overrides.seed) c.base_seed = *overrides.seed;
    if (overrides.t_max) {
      c.t_max = *overrides.t_max;
      c.grid_points = 1 + static_cast<int>(*overrides.t_max * 10);
    }
    hash_input += "\n" + serialize_config(c);
    bundle.base_seed = c.base_seed;
    const RunManifest part = run(c);
    for (const auto& [file, checksum] : part.output_checksums)
      bundle.output_checksums[file] = checksum;
  }
  bundle.config_hash = fnv1a64_hex(hash_input);
  bundle.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  write_manifest(bundle, (std::filesystem::path(out_dir) / (figure + "_manifest.json")).string());
  return bundle;
}

}  // namespace sirsv
