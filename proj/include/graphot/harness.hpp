#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "graphot/distribution.hpp"
#include "graphot/flow_solver.hpp"
#include "graphot/graph.hpp"
#include "graphot/report.hpp"

namespace graphot {

struct HarnessOptions {
  SolverConfig solver;
  int jobs = 1;
  /// Adds wall-clock columns; reports are then no longer byte-reproducible.
  bool timing = false;
  int precision = 6;
};

/// Adds iid Uniform(0, eps) to every entry, then renormalizes.
VertexDistribution with_uniform_noise(const VertexDistribution& p, double eps, std::mt19937_64& rng);

/// Vertices whose value is within rel_tol (relative, floor 1) of the minimum.
/// Empty when every value is infinite.
std::vector<Vertex> argmin_set(std::span<const double> values, double rel_tol = 1e-6);

// Indicator convergence ------------------------------------------------------

struct IndicatorPair {
  Vertex v;
  Vertex w;
};

/// Columns: digest, v, w, d, k, distance. Unreachable pairs report inf.
ExperimentReport convergence_indicator_experiment(const Graph& g, const std::vector<int>& ks,
                                                  const std::vector<IndicatorPair>& pairs,
                                                  const HarnessOptions& opts = {});

// Entropy convergence --------------------------------------------------------

struct EntropyOptions {
  int n = 30;
  std::vector<int> ks = {2, 4, 6, 8, 10, 15, 20};
  std::vector<double> noise = {0.0, 0.01, 0.05, 0.3};
  int reference_k = 30;
  std::uint64_t seed = 1;
};

/// Noisy indicators of both ends of the n-vertex line. Columns: digest,
/// epsilon, entropy, k, distance, reference, ratio (distance / reference).
ExperimentReport convergence_entropy_experiment(const EntropyOptions& eo, const HarnessOptions& opts = {});

// Interpolation --------------------------------------------------------------

struct InterpolationResult {
  std::vector<std::vector<double>> trivial;
  TransportPath path;
};

InterpolationResult interpolation_experiment(const Graph& g, const VertexDistribution& p0,
                                             const VertexDistribution& p1, int k,
                                             const HarnessOptions& opts = {});
/// trivial.csv (rows "i,v0,...") plus optimal/{meta,q.csv,J.csv}.
void export_interpolation(const std::filesystem::path& dir, const Graph& g, const InterpolationResult& result);
/// sum_v v q(v): position of the mass along a line graph.
double center_of_mass(std::span<const double> q);

// Fan-line -------------------------------------------------------------------

enum class FanPerturbation { Clean, Noise, Perturb };
const char* to_string(FanPerturbation mode);
FanPerturbation parse_fan_perturbation(const std::string& name);

struct FanLineOptions {
  int spokes = 30;
  int line_length = 60;
  int k = 20;
  FanPerturbation mode = FanPerturbation::Clean;
  std::uint64_t seed = 1;
  /// Noise mode: Uniform(0, noise / (2s)) is added to every vertex.
  double noise = 0.2;
};

/// Uniform mass on the 2s leaves, then the perturbation: Noise adds scaled
/// uniform noise everywhere; Perturb doubles the mass of one seeded leaf.
VertexDistribution fan_line_distribution(const Graph& fan, const FanLineOptions& fo);

struct FanLineResult {
  Graph graph;
  VertexDistribution p;
  std::vector<double> l1, w1, wbar;  // f(v) = dist(p, delta_v)
  std::vector<Vertex> argmin_l1, argmin_w1, argmin_wbar;
  ExperimentReport report;
};

FanLineResult fan_line_experiment(const FanLineOptions& fo, const HarnessOptions& opts = {});

// Retrieval ------------------------------------------------------------------

/// Euclidean MST plus edges to each point's `knn` nearest neighbours (ties by
/// lower index). Throws ValidationError on duplicate points.
Graph build_emst_knn_graph(const std::vector<std::vector<double>>& points, int knn);

struct HistogramCorpus {
  std::vector<std::vector<double>> centers;  // m points in R^d
  std::vector<std::string> labels;
  std::vector<VertexDistribution> histograms;  // over the m centers
};

/// Header "m d objects"; m lines of d coordinates; then one line per object
/// "label h_0 ... h_{m-1}" (nonnegative weights, normalized on load).
HistogramCorpus parse_corpus(std::string_view text);
HistogramCorpus load_corpus(const std::filesystem::path& path);
std::string format_corpus(const HistogramCorpus& corpus);

/// Three classes of `per_class` histograms on a 50-center planar point set;
/// every histogram sits on a few centers near its class anchor.
HistogramCorpus synthetic_corpus(std::uint64_t seed, int per_class = 6);

enum class RetrievalDistance { L1, W1, Wbar };
const char* to_string(RetrievalDistance d);
RetrievalDistance parse_retrieval_distance(const std::string& name);

struct RetrievalResult {
  std::vector<int> ns;
  std::vector<double> recall;  // percent, per n
  ExperimentReport report;
};

/// Each object queries all others ranked by distance (ties: lower index).
/// recall@n = |same class in top n| / min(n, class size - 1), in percent,
/// averaged over queries; singleton classes are skipped with a warning.
RetrievalResult retrieval_experiment(const HistogramCorpus& corpus, RetrievalDistance distance,
                                     const std::vector<int>& ns, int k = 10, const HarnessOptions& opts = {});

}  // namespace graphot
