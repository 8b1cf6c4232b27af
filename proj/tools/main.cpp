// Command-line front end: graph/partition inspection, exact master-equation
// runs, Monte Carlo simulation, mean-field analysis, and figure recipes.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>

#include "sirsv/bounds.hpp"
#include "sirsv/experiments.hpp"
#include "sirsv/gillespie.hpp"
#include "sirsv/hitting.hpp"
#include "sirsv/master_equation.hpp"
#include "sirsv/meanfield.hpp"
#include "sirsv/partition.hpp"
#include "sirsv/spectral.hpp"
#include "sirsv/version.hpp"

namespace {

struct GraphOptions {
  std::string kind = "complete";
  int nodes = 0;
  int degree = 0;
  std::string edge_file;

  sirsv::GraphSpec spec() const {
    sirsv::GraphSpec s;
    s.kind = kind;
    s.nodes = nodes;
    s.degree = degree;
    s.path = edge_file;
    return s;
  }
};

void add_graph_options(CLI::App* cmd, GraphOptions& g) {
  cmd->add_option("--kind", g.kind, "complete | circulant_regular | edge_list")
      ->default_val("complete");
  cmd->add_option("--nodes", g.nodes, "node count");
  cmd->add_option("--degree", g.degree, "degree for circulant_regular");
  cmd->add_option("--edge-file", g.edge_file, "edge-list file (one 'u v' per line, 1-based)");
}

void add_param_options(CLI::App* cmd, sirsv::EpidemicParams& p) {
  cmd->add_option("--beta", p.beta, "per-edge infection rate")->required();
  cmd->add_option("--delta", p.delta, "recovery rate")->required();
  cmd->add_option("--gamma", p.gamma, "immunity-loss rate")->required();
  cmd->add_option("--sigma", p.sigma, "vaccination rate")->default_val(0.0);
  cmd->add_option("--epsilon", p.epsilon, "inter-community weight")->default_val(1.0);
}

void print_threshold(const sirsv::ThresholdReport& th) {
  std::printf("lambda1=%.12g\n", th.lambda1);
  std::printf("tau=%.12g\n", th.tau);
  std::printf("tau_c=%.12g\n", th.tau_c);
  std::printf("rho=%.12g\n", th.rho);
  std::printf("regime=%s\n", th.endemic ? "endemic" : "extinction");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network SIRS-with-vaccination toolkit"};
  app.set_version_flag("--version", sirsv::kArtifactVersion);
  app.require_subcommand(1);

  // ---------------------------------------------------------------- graph
  auto* graph_cmd = app.add_subcommand("graph", "build, validate and analyze a graph");
  GraphOptions graph_opts;
  double spectral_tol = sirsv::kSpectralTolDefault;
  add_graph_options(graph_cmd, graph_opts);
  graph_cmd->add_option("--tol", spectral_tol, "power-iteration residual tolerance");

  // ------------------------------------------------------------ partition
  auto* part_cmd = app.add_subcommand("partition", "equitable partitions and quotients");
  GraphOptions part_graph;
  std::string partition_file;
  double part_beta = 1.0, part_epsilon = 1.0;
  add_graph_options(part_cmd, part_graph);
  part_cmd->add_option("--partition-file", partition_file,
                       "verify this partition instead of detecting the coarsest one");
  part_cmd->add_option("--beta", part_beta, "beta for the quotient matrix")->default_val(1.0);
  part_cmd->add_option("--epsilon", part_epsilon, "inter-cell weight")->default_val(1.0);

  // ---------------------------------------------------------------- exact
  auto* exact_cmd = app.add_subcommand("exact", "master equation, hitting times, bounds");
  GraphOptions exact_graph;
  sirsv::EpidemicParams exact_params;
  double exact_tmax = 10.0;
  int exact_grid = 201;
  int exact_infected = 1;
  std::string exact_out = "out";
  add_graph_options(exact_cmd, exact_graph);
  add_param_options(exact_cmd, exact_params);
  exact_cmd->add_option("--tmax", exact_tmax, "time horizon")->default_val(10.0);
  exact_cmd->add_option("--grid", exact_grid, "grid points")->default_val(201);
  exact_cmd->add_option("--initial-infected", exact_infected, "1-based infected node at t=0");
  exact_cmd->add_option("--out", exact_out, "output directory");

  // ------------------------------------------------------------- simulate
  auto* sim_cmd = app.add_subcommand("simulate", "event-driven Monte Carlo");
  GraphOptions sim_graph;
  sirsv::EpidemicParams sim_params;
  double sim_tmax = 10.0;
  int sim_grid = 201;
  int sim_infected = 1;
  long sim_paths = 1000;
  std::uint64_t sim_seed = 1;
  std::string sim_out = "out";
  add_graph_options(sim_cmd, sim_graph);
  add_param_options(sim_cmd, sim_params);
  sim_cmd->add_option("--tmax", sim_tmax)->default_val(10.0);
  sim_cmd->add_option("--grid", sim_grid)->default_val(201);
  sim_cmd->add_option("--initial-infected", sim_infected, "1-based infected node at t=0");
  sim_cmd->add_option("--paths", sim_paths, "number of sample paths")->default_val(1000);
  sim_cmd->add_option("--seed", sim_seed, "base seed")->default_val(1);
  sim_cmd->add_option("--out", sim_out, "output directory");

  // ------------------------------------------------------------ meanfield
  auto* mf_cmd = app.add_subcommand("meanfield", "mean-field analysis");
  mf_cmd->require_subcommand(1);
  GraphOptions mf_graph;
  sirsv::EpidemicParams mf_params;

  auto* mf_threshold = mf_cmd->add_subcommand("threshold", "thresholds and regime");
  add_graph_options(mf_threshold, mf_graph);
  add_param_options(mf_threshold, mf_params);

  auto* mf_equilibrium = mf_cmd->add_subcommand("equilibrium", "endemic equilibrium report");
  add_graph_options(mf_equilibrium, mf_graph);
  add_param_options(mf_equilibrium, mf_params);
  double eq_tol = 1e-12;
  mf_equilibrium->add_option("--tol", eq_tol, "fixed-point tolerance")->default_val(1e-12);

  auto* mf_integrate = mf_cmd->add_subcommand("integrate", "integrate the full system");
  add_graph_options(mf_integrate, mf_graph);
  add_param_options(mf_integrate, mf_params);
  double mf_tmax = 10.0;
  int mf_grid = 201;
  int mf_infected = 1;
  std::string mf_out = "out";
  mf_integrate->add_option("--tmax", mf_tmax)->default_val(10.0);
  mf_integrate->add_option("--grid", mf_grid)->default_val(201);
  mf_integrate->add_option("--initial-infected", mf_infected, "1-based infected node at t=0");
  mf_integrate->add_option("--out", mf_out, "output directory");

  auto* mf_lyapunov = mf_cmd->add_subcommand(
      "lyapunov", "Lyapunov diagnostics along the regular-graph trajectory");
  add_graph_options(mf_lyapunov, mf_graph);
  add_param_options(mf_lyapunov, mf_params);
  double ly_i0 = 0.02, ly_r0 = 0.0, ly_tmax = 50.0;
  int ly_grid = 201;
  mf_lyapunov->add_option("--i0", ly_i0, "initial infected fraction")->default_val(0.02);
  mf_lyapunov->add_option("--r0", ly_r0, "initial recovered fraction")->default_val(0.0);
  mf_lyapunov->add_option("--tmax", ly_tmax)->default_val(50.0);
  mf_lyapunov->add_option("--grid", ly_grid)->default_val(201);

  // ------------------------------------------------------------ reproduce
  auto* repro_cmd = app.add_subcommand("reproduce", "emit a figure's plot-ready CSVs");
  std::string figure;
  std::string repro_out = "out";
  std::optional<long> repro_paths;
  std::optional<std::uint64_t> repro_seed;
  std::optional<double> repro_tmax;
  repro_cmd->add_option("figure", figure, "one of: fig1a fig1b fig2 fig3 fig4a fig4b fig4c fig5a fig5b fig5c figEqPart")
      ->required();
  repro_cmd->add_option("--out", repro_out, "output directory");
  repro_cmd->add_option("--paths", repro_paths, "override the recipe's path count");
  repro_cmd->add_option("--seed", repro_seed, "override the base seed");
  repro_cmd->add_option("--tmax", repro_tmax, "override the time window");

  // ------------------------------------------------------------------ run
  auto* run_cmd = app.add_subcommand("run", "run an experiment config file");
  std::string config_path;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::string> run_out;
  std::optional<long> run_paths;
  std::optional<double> run_tmax;
  run_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  run_cmd->add_option("--seed", run_seed, "override base_seed");
  run_cmd->add_option("--out", run_out, "override out_dir");
  run_cmd->add_option("--paths", run_paths, "override paths");
  run_cmd->add_option("--tmax", run_tmax, "override t_max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*graph_cmd) {
      const sirsv::Graph g = sirsv::build_graph(graph_opts.spec());
      const auto sr = sirsv::spectral_radius(g, spectral_tol);
      std::printf("nodes=%d\n", g.node_count());
      std::printf("edges=%d\n", g.edge_count());
      int dmin = g.node_count(), dmax = 0;
      for (int v = 0; v < g.node_count(); ++v) {
        dmin = std::min(dmin, g.degree(v));
        dmax = std::max(dmax, g.degree(v));
      }
      std::printf("degree_min=%d\ndegree_max=%d\n", dmin, dmax);
      std::printf("connected=true\n");
      std::printf("lambda1=%.12g\n", sr.lambda1);
      std::printf("power_iterations=%ld\n", sr.iterations);
      std::printf("residual=%.3g\n", sr.residual);
    } else if (*part_cmd) {
      const sirsv::Graph g = sirsv::build_graph(part_graph.spec());
      sirsv::EquitablePartition p =
          partition_file.empty()
              ? sirsv::coarsest_equitable_partition(g)
              : sirsv::verify_equitable(
                    g, sirsv::load_partition_file(partition_file, g.node_count()));
      std::printf("cells=%d\n", p.cell_count());
      for (int h = 0; h < p.cell_count(); ++h) {
        std::printf("cell_%d=", h + 1);
        for (std::size_t k = 0; k < p.cells[h].size(); ++k)
          std::printf("%s%d", k ? " " : "", p.cells[h][k] + 1);
        std::printf("\n");
      }
      std::printf("degree_matrix=\n");
      for (int h = 0; h < p.cell_count(); ++h) {
        for (int m = 0; m < p.cell_count(); ++m)
          std::printf("%s%d", m ? " " : "", p.degree_matrix(h, m));
        std::printf("\n");
      }
      const sirsv::QuotientMatrix q = sirsv::quotient_matrix(p, part_beta, part_epsilon);
      std::printf("quotient_matrix (beta=%g, epsilon=%g)=\n", part_beta, part_epsilon);
      for (int h = 0; h < p.cell_count(); ++h) {
        for (int m = 0; m < p.cell_count(); ++m)
          std::printf("%s%.12g", m ? " " : "", q.matrix(h, m));
        std::printf("\n");
      }
      std::printf("quotient_lambda1=%.12g\n", sirsv::spectral_radius(q.matrix).lambda1);
    } else if (*exact_cmd) {
      sirsv::ExperimentConfig c;
      c.method = "exact";
      c.graph = exact_graph.spec();
      c.params = exact_params;
      c.t_max = exact_tmax;
      c.grid_points = exact_grid;
      c.initial.kind = "one_infected";
      c.initial.node = exact_infected;
      c.out_dir = exact_out;
      const auto manifest = sirsv::run(c);
      for (const auto& [file, checksum] : manifest.output_checksums)
        std::printf("wrote %s (fnv1a64 %s)\n", file.c_str(), checksum.c_str());
    } else if (*sim_cmd) {
      sirsv::ExperimentConfig c;
      c.method = "simulate";
      c.graph = sim_graph.spec();
      c.params = sim_params;
      c.t_max = sim_tmax;
      c.grid_points = sim_grid;
      c.paths = sim_paths;
      c.base_seed = sim_seed;
      c.initial.kind = "one_infected";
      c.initial.node = sim_infected;
      c.out_dir = sim_out;
      const auto manifest = sirsv::run(c);
      for (const auto& [file, checksum] : manifest.output_checksums)
        std::printf("wrote %s (fnv1a64 %s)\n", file.c_str(), checksum.c_str());
    } else if (*mf_cmd) {
      const sirsv::Graph g = sirsv::build_graph(mf_graph.spec());
      const double lambda1 = sirsv::spectral_radius(g).lambda1;
      if (*mf_threshold) {
        print_threshold(sirsv::threshold_report(mf_params, lambda1));
        if (mf_params.beta / mf_params.delta < 1.0 / lambda1)
          std::printf("bound_mean_extinction_time=%.12g\n",
                      sirsv::bound_mean_extinction_time(g.node_count(), mf_params.beta,
                                                        mf_params.delta, lambda1));
      } else if (*mf_equilibrium) {
        print_threshold(sirsv::threshold_report(mf_params, lambda1));
        const auto eq = sirsv::endemic_equilibrium(g, mf_params, eq_tol);
        std::printf("kind=endemic\n");
        std::printf("iterations=%ld\n", eq.iterations);
        std::printf("residual=%.3g\n", eq.residual);
        std::printf("i_star_mean=%.12g\n", eq.I.mean());
        std::printf("s_star_1=%.12g\ni_star_1=%.12g\nr_star_1=%.12g\n", eq.S[0], eq.I[0],
                    eq.R[0]);
      } else if (*mf_integrate) {
        sirsv::ExperimentConfig c;
        c.method = "meanfield";
        c.graph = mf_graph.spec();
        c.params = mf_params;
        c.t_max = mf_tmax;
        c.grid_points = mf_grid;
        c.initial.kind = "one_infected";
        c.initial.node = mf_infected;
        c.out_dir = mf_out;
        const auto manifest = sirsv::run(c);
        for (const auto& [file, checksum] : manifest.output_checksums)
          std::printf("wrote %s (fnv1a64 %s)\n", file.c_str(), checksum.c_str());
      } else if (*mf_lyapunov) {
        int d_g = g.degree(0);
        for (int v = 1; v < g.node_count(); ++v)
          if (g.degree(v) != d_g)
            throw sirsv::ConfigError("lyapunov diagnostics need a regular graph");
        const auto eq = sirsv::endemic_equilibrium(g, mf_params);
        Eigen::VectorXd y0(2);
        y0 << ly_i0, ly_r0;
        std::vector<double> grid;
        for (int k = 0; k < ly_grid; ++k)
          grid.push_back(ly_tmax * k / double(ly_grid - 1));
        const auto traj = sirsv::integrate(sirsv::make_regular2d_rhs(d_g, mf_params),
                                           sirsv::StateLayout::Regular2d, y0, grid);
        std::printf("t,I,R,V,dVdt\n");
        for (std::size_t k = 0; k < grid.size(); ++k) {
          const double i = traj.states[k][0], r = traj.states[k][1];
          std::printf("%.12g,%.12g,%.12g,%.12g,%.12g\n", grid[k], i, r,
                      sirsv::lyapunov_v(i, r, eq.I[0], eq.R[0], mf_params, d_g),
                      sirsv::lyapunov_v_dot(i, r, eq.I[0], eq.R[0], mf_params, d_g));
        }
      }
    } else if (*repro_cmd) {
      sirsv::ReproduceOverrides overrides;
      overrides.paths = repro_paths;
      overrides.seed = repro_seed;
      overrides.t_max = repro_tmax;
      const auto manifest = sirsv::reproduce(figure, repro_out, overrides);
      for (const auto& [file, checksum] : manifest.output_checksums)
        std::printf("wrote %s (fnv1a64 %s)\n", file.c_str(), checksum.c_str());
      std::printf("manifest=%s/%s_manifest.json\n", repro_out.c_str(), figure.c_str());
    } else if (*run_cmd) {
      sirsv::ExperimentConfig c = sirsv::load_config_file(config_path);
      if (run_seed) c.base_seed = *run_seed;
      if (run_out) c.out_dir = *run_out;
      if (run_paths) c.paths = *run_paths;
      if (run_tmax) c.t_max = *run_tmax;
      const auto manifest = sirsv::run(c);
      for (const auto& [file, checksum] : manifest.output_checksums)
        std::printf("wrote %s (fnv1a64 %s)\n", file.c_str(), checksum.c_str());
    }
  } catch (const sirsv::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const sirsv::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
