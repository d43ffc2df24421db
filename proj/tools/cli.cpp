#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphot/advection.hpp"
#include "graphot/baselines.hpp"
#include "graphot/error.hpp"
#include "graphot/flow_solver.hpp"
#include "graphot/generators.hpp"
#include "graphot/harness.hpp"
#include "graphot/io.hpp"
#include "graphot/log.hpp"
#include "graphot/parallel.hpp"
#include "graphot/pruning.hpp"

namespace graphot::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  int precision = 6;
  int jobs = 1;
};

struct SolverFlags {
  std::string method = "ipm";
  double tol = 1e-6;
  int max_iter = 50000;

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.method = parse_solver_method(method);
    cfg.tol_feasibility = tol;
    cfg.tol_objective = tol;
    cfg.max_iterations = max_iter;
    return cfg;
  }
};

struct Inputs {
  std::string graph, p0, p1;
};

void add_solver_flags(CLI::App* app, SolverFlags& s) {
  app->add_option("--method", s.method, "Solver: ipm or admm")->capture_default_str();
  app->add_option("--tol", s.tol, "Feasibility and objective tolerance")->capture_default_str();
  app->add_option("--max-iter", s.max_iter, "Iteration budget")->capture_default_str();
}

void add_pair_inputs(CLI::App* app, Inputs& in) {
  app->add_option("--graph", in.graph, "Graph file")->required();
  app->add_option("--p0", in.p0, "Source distribution file")->required();
  app->add_option("--p1", in.p1, "Target distribution file")->required();
}

struct Loaded {
  Graph graph;
  VertexDistribution p0, p1;
};

Loaded load_pair(const Inputs& in) {
  Graph g = load_graph(in.graph);
  auto p0 = load_distribution(in.p0, g);
  auto p1 = load_distribution(in.p1, g);
  return {std::move(g), std::move(p0), std::move(p1)};
}

// "m d" then m lines of d coordinates.
std::vector<std::vector<double>> load_points(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x;
    while (ls >> x) values.push_back(x);
    if (!ls.eof()) throw FormatError("points: expected numbers", 0);
  }
  if (values.size() < 2) throw FormatError("points: missing \"m d\" header", 0);
  const double mf = values[0], df = values[1];
  if (mf < 1 || df < 1 || mf != static_cast<int>(mf) || df != static_cast<int>(df))
    throw FormatError("points: header must be two positive integers", 1);
  const auto m = static_cast<std::size_t>(mf), d = static_cast<std::size_t>(df);
  if (values.size() != 2 + m * d)
    throw FormatError("points: expected " + std::to_string(m * d) + " coordinates, got " +
                          std::to_string(values.size() - 2),
                      0);
  std::vector<std::vector<double>> points(m, std::vector<double>(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) points[i][j] = values[2 + i * d + j];
  return points;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text_file(path, text);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic optimal transport on graphs", "graphot"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  common.jobs = default_jobs();
  app.add_option("--precision", common.precision, "Decimals in printed numbers")
      ->capture_default_str()
      ->check(CLI::Range(0, 17));
  app.add_option("--jobs", common.jobs, "Worker threads (default: GRAPHOT_JOBS, else all cores)")
      ->check(CLI::PositiveNumber);
  app.fallthrough();

  // distance
  auto* distance_cmd = app.add_subcommand("distance", "Discrete dynamic transport distance");
  Inputs dist_in;
  SolverFlags dist_solver;
  int dist_k = 0, dist_prune = -1;
  bool symmetrize = false;
  std::string dist_out;
  add_pair_inputs(distance_cmd, dist_in);
  distance_cmd->add_option("--k", dist_k, "Time steps")->required()->check(CLI::PositiveNumber);
  add_solver_flags(distance_cmd, dist_solver);
  distance_cmd->add_flag("--symmetrize", symmetrize, "Average the two directions");
  distance_cmd->add_option("--prune", dist_prune, "Solve on the W1-pruned graph with this hop radius")
      ->check(CLI::NonNegativeNumber);
  distance_cmd->add_option("--out", dist_out, "Export the optimal path into this directory");

  // interpolate
  auto* interp_cmd = app.add_subcommand("interpolate", "Trivial and optimal interpolation paths");
  Inputs interp_in;
  SolverFlags interp_solver;
  int interp_k = 0;
  std::string interp_out;
  add_pair_inputs(interp_cmd, interp_in);
  interp_cmd->add_option("--k", interp_k, "Time steps")->required()->check(CLI::PositiveNumber);
  add_solver_flags(interp_cmd, interp_solver);
  interp_cmd->add_option("--out", interp_out, "Output directory")->required();

  // w1
  auto* w1_cmd = app.add_subcommand("w1", "Hop-count 1-Wasserstein distance");
  Inputs w1_in;
  std::string w1_out;
  add_pair_inputs(w1_cmd, w1_in);
  w1_cmd->add_option("--out", w1_out, "Write the optimal flow (canonical oriented edges) here");

  // full
  auto* full_cmd = app.add_subcommand("full", "Quadratic transportation distance with hop costs");
  Inputs full_in;
  std::string full_out;
  int full_limit = kDefaultFullTransportLimit;
  add_pair_inputs(full_cmd, full_in);
  full_cmd->add_option("--out", full_out, "Write the optimal plan CSV here");
  full_cmd->add_option("--max-vertices", full_limit, "Size limit")->capture_default_str();

  // prune
  auto* prune_cmd = app.add_subcommand("prune", "Subgraph around the W1 flow");
  Inputs prune_in;
  int prune_radius = 1;
  std::string prune_out;
  add_pair_inputs(prune_cmd, prune_in);
  prune_cmd->add_option("--radius", prune_radius, "Hop radius")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  prune_cmd->add_option("--out", prune_out, "Graph file; the index map goes to <out>.map")->required();

  // advect
  auto* advect_cmd = app.add_subcommand("advect", "Integrate the advection equation");
  std::string adv_graph, adv_p0, adv_flow, adv_out;
  double adv_duration = 1.0;
  int adv_steps = 100;
  advect_cmd->add_option("--graph", adv_graph, "Graph file")->required();
  advect_cmd->add_option("--p0", adv_p0, "Initial distribution file")->required();
  advect_cmd->add_option("--flow", adv_flow, "Rates per oriented edge")->required();
  advect_cmd->add_option("--duration", adv_duration, "Time horizon")->capture_default_str();
  advect_cmd->add_option("--steps", adv_steps, "RK4 steps")->capture_default_str()->check(CLI::PositiveNumber);
  advect_cmd->add_option("--out", adv_out, "Trajectory CSV (default stdout)");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Harness reports");
  std::string exp_name, exp_out, exp_graph, exp_corpus, exp_mode = "clean", exp_distance = "wbar";
  std::uint64_t seed = 1;
  int exp_n = 0, exp_k = 0, exp_spokes = 30, exp_length = 60, exp_per_class = 6, exp_ref = 30;
  double exp_noise = 0.2;
  std::vector<int> exp_ks, exp_ns = {1, 2, 3, 4, 5, 10};
  std::vector<double> exp_eps;
  SolverFlags exp_solver;
  exp_cmd->add_option("name", exp_name, "indicator, entropy, interpolation, fan-line or retrieval")
      ->required()
      ->check(CLI::IsMember({"indicator", "entropy", "interpolation", "fan-line", "retrieval"}));
  exp_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  exp_cmd->add_option("--out", exp_out, "Report CSV, or directory for interpolation");
  exp_cmd->add_option("--graph", exp_graph, "indicator: graph file (default: line of --n vertices)");
  exp_cmd->add_option("--n", exp_n, "Line length (indicator, entropy, interpolation)");
  exp_cmd->add_option("--k", exp_k, "Time steps (fan-line, retrieval, interpolation)");
  exp_cmd->add_option("--ks", exp_ks, "Comma-separated time steps")->delimiter(',');
  exp_cmd->add_option("--epsilons", exp_eps, "entropy: noise levels")->delimiter(',');
  exp_cmd->add_option("--reference-k", exp_ref, "entropy: reference time steps")->capture_default_str();
  exp_cmd->add_option("--spokes", exp_spokes, "fan-line: leaves per end")->capture_default_str();
  exp_cmd->add_option("--length", exp_length, "fan-line: line vertices")->capture_default_str();
  exp_cmd->add_option("--mode", exp_mode, "fan-line: clean, noise or perturb")->capture_default_str();
  exp_cmd->add_option("--noise", exp_noise, "fan-line: noise level")->capture_default_str();
  exp_cmd->add_option("--corpus", exp_corpus, "retrieval: corpus file (default: synthetic)");
  exp_cmd->add_option("--per-class", exp_per_class, "retrieval: synthetic objects per class")
      ->capture_default_str();
  exp_cmd->add_option("--distance", exp_distance, "retrieval: l1, w1 or wbar")->capture_default_str();
  exp_cmd->add_option("--ns", exp_ns, "retrieval: recall cutoffs")->delimiter(',');
  add_solver_flags(exp_cmd, exp_solver);

  // graph-build
  auto* build_cmd = app.add_subcommand("graph-build", "EMST plus kNN graph over a point set");
  std::string build_points, build_out;
  int knn = 2;
  build_cmd->add_option("--points", build_points, "Points file (\"m d\" then m rows)")->required();
  build_cmd->add_option("--knn", knn, "Nearest neighbours per point")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  build_cmd->add_option("--out", build_out, "Graph file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return 1;
  }

  auto warnings = set_warning_handler([&err](std::string_view msg) { err << "warning: " << msg << "\n"; });
  struct Restore {
    WarningHandler h;
    ~Restore() { set_warning_handler(std::move(h)); }
  } restore{std::move(warnings)};

  const int prec = common.precision;
  auto fixed = [prec](double x) { return format_fixed(x, prec); };

  try {
    if (*distance_cmd) {
      auto in = load_pair(dist_in);
      auto cfg = dist_solver.config();
      const Graph* g = &in.graph;
      std::optional<PrunedGraph> pruned;
      VertexDistribution p0 = in.p0, p1 = in.p1;
      if (dist_prune >= 0) {
        pruned = prune_by_w1(in.graph, in.p0, in.p1, dist_prune);
        p0 = pruned->restrict(in.p0);
        p1 = pruned->restrict(in.p1);
        g = &pruned->graph;
      }
      try {
        if (symmetrize) {
          auto r = solve_symmetrized(*g, p0, p1, dist_k, cfg);
          out << "distance " << fixed(r.distance) << "\n";
          out << "forward " << fixed(r.forward.distance) << "\n";
          out << "backward " << fixed(r.backward.distance) << "\n";
          out << "iterations " << r.forward.report.iterations + r.backward.report.iterations << "\n";
          if (!dist_out.empty()) {
            export_path(fs::path(dist_out) / "forward", *g, r.forward);
            export_path(fs::path(dist_out) / "backward", *g, r.backward);
          }
        } else {
          auto path = solve(*g, p0, p1, dist_k, cfg);
          out << "distance " << fixed(path.distance) << "\n";
          out << "objective " << fixed(path.objective) << "\n";
          out << "iterations " << path.report.iterations << "\n";
          if (!dist_out.empty()) export_path(dist_out, *g, path);
        }
        if (pruned && !dist_out.empty())
          write_text_file(fs::path(dist_out) / "index_map.txt", index_map_text(*pruned));
      } catch (const InfeasibleTransport& e) {
        err << "note: " << e.what() << "\n";
        out << "distance inf\n";
      }
      return 0;
    }

    if (*interp_cmd) {
      auto in = load_pair(interp_in);
      HarnessOptions opts;
      opts.solver = interp_solver.config();
      opts.precision = prec;
      auto result = interpolation_experiment(in.graph, in.p0, in.p1, interp_k, opts);
      export_interpolation(interp_out, in.graph, result);
      out << "distance " << fixed(result.path.distance) << "\n";
      out << "iterations " << result.path.report.iterations << "\n";
      return 0;
    }

    if (*w1_cmd) {
      auto in = load_pair(w1_in);
      auto r = w1(in.graph, in.p0, in.p1);
      out << "w1 " << fixed(r.cost) << "\n";
      if (!w1_out.empty()) write_text_file(w1_out, format_values(r.flow));
      return 0;
    }

    if (*full_cmd) {
      auto in = load_pair(full_in);
      auto r = w_full(in.graph, in.p0, in.p1, full_limit);
      out << "distance " << fixed(r.distance) << "\n";
      out << "cost " << fixed(r.cost) << "\n";
      if (!full_out.empty()) write_text_file(full_out, plan_csv(r.plan));
      return 0;
    }

    if (*prune_cmd) {
      auto in = load_pair(prune_in);
      auto pruned = prune_by_w1(in.graph, in.p0, in.p1, prune_radius);
      write_text_file(prune_out, format_graph(pruned.graph));
      write_text_file(prune_out + ".map", index_map_text(pruned));
      out << "vertices " << pruned.graph.num_vertices() << "\n";
      out << "edges " << pruned.graph.num_edges() << "\n";
      return 0;
    }

    if (*advect_cmd) {
      Graph g = load_graph(adv_graph);
      auto p0 = load_distribution(adv_p0, g);
      auto rates = load_flow(adv_flow, g);
      auto traj = advect(g, p0, rates, adv_duration, adv_steps);
      emit(out, adv_out, trajectory_csv(traj, prec));
      return 0;
    }

    if (*exp_cmd) {
      HarnessOptions opts;
      opts.solver = exp_solver.config();
      opts.jobs = common.jobs;
      opts.precision = prec;
      if (exp_name == "indicator") {
        Graph g = exp_graph.empty() ? line_graph(exp_n > 0 ? exp_n : 11) : load_graph(exp_graph);
        if (exp_ks.empty()) exp_ks = {1, 2, 4, 8, 16};
        std::vector<IndicatorPair> pairs;
        for (Vertex w = 1; w < g.num_vertices(); ++w) pairs.push_back({0, w});
        emit(out, exp_out, convergence_indicator_experiment(g, exp_ks, pairs, opts).to_csv());
      } else if (exp_name == "entropy") {
        EntropyOptions eo;
        eo.seed = seed;
        eo.reference_k = exp_ref;
        if (exp_n > 0) eo.n = exp_n;
        if (!exp_ks.empty()) eo.ks = exp_ks;
        if (!exp_eps.empty()) eo.noise = exp_eps;
        emit(out, exp_out, convergence_entropy_experiment(eo, opts).to_csv());
      } else if (exp_name == "interpolation") {
        if (exp_out.empty()) throw ValidationError("interpolation needs --out DIR");
        const int n = exp_n > 0 ? exp_n : 21;
        Graph g = line_graph(n);
        auto result = interpolation_experiment(g, VertexDistribution::point_mass(n, 0),
                                               VertexDistribution::point_mass(n, n - 1),
                                               exp_k > 0 ? exp_k : n - 1, opts);
        export_interpolation(exp_out, g, result);
        out << "distance " << fixed(result.path.distance) << "\n";
      } else if (exp_name == "fan-line") {
        FanLineOptions fo;
        fo.spokes = exp_spokes;
        fo.line_length = exp_length;
        if (exp_k > 0) fo.k = exp_k;
        fo.mode = parse_fan_perturbation(exp_mode);
        fo.seed = seed;
        fo.noise = exp_noise;
        emit(out, exp_out, fan_line_experiment(fo, opts).report.to_csv());
      } else {
        auto corpus = exp_corpus.empty() ? synthetic_corpus(seed, exp_per_class) : load_corpus(exp_corpus);
        auto r = retrieval_experiment(corpus, parse_retrieval_distance(exp_distance), exp_ns,
                                      exp_k > 0 ? exp_k : 10, opts);
        emit(out, exp_out, r.report.to_csv());
      }
      return 0;
    }

    if (*build_cmd) {
      auto g = build_emst_knn_graph(load_points(build_points), knn);
      emit(out, build_out, format_graph(g));
      return 0;
    }
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace graphot::cli
