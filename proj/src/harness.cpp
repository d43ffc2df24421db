#include "graphot/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "graphot/baselines.hpp"
#include "graphot/error.hpp"
#include "graphot/generators.hpp"
#include "graphot/io.hpp"
#include "graphot/log.hpp"
#include "graphot/parallel.hpp"

namespace graphot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct TimedDistance {
  double value = 0.0;
  double seconds = 0.0;
};

TimedDistance timed_distance(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1,
                             int k, const SolverConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  double d = distance(g, p0, p1, k, cfg);
  return {d, seconds_since(start)};
}

void add_common_params(ExperimentReport& report, const HarnessOptions& opts) {
  report.add_param("method", to_string(opts.solver.method));
  report.add_param("tol_feasibility", format_exact(opts.solver.tol_feasibility));
}

}  // namespace

VertexDistribution with_uniform_noise(const VertexDistribution& p, double eps, std::mt19937_64& rng) {
  if (!(eps >= 0.0)) throw ValidationError("noise level must be >= 0");
  std::vector<double> w = p.vector();
  for (double& x : w) x += eps * uniform01(rng);
  return VertexDistribution::from_weights(std::move(w));
}

std::vector<Vertex> argmin_set(std::span<const double> values, double rel_tol) {
  double best = kInf;
  for (double x : values) best = std::min(best, x);
  std::vector<Vertex> out;
  if (!std::isfinite(best)) return out;
  const double cut = best + rel_tol * std::max(1.0, std::abs(best));
  for (std::size_t v = 0; v < values.size(); ++v)
    if (values[v] <= cut) out.push_back(static_cast<Vertex>(v));
  return out;
}

ExperimentReport convergence_indicator_experiment(const Graph& g, const std::vector<int>& ks,
                                                  const std::vector<IndicatorPair>& pairs,
                                                  const HarnessOptions& opts) {
  const int n = g.num_vertices();
  for (auto [v, w] : pairs) {
    g.check_vertex(v);
    g.check_vertex(w);
  }
  struct Job {
    IndicatorPair pair;
    int k;
    TimedDistance result;
  };
  std::vector<Job> jobs;
  for (const auto& pair : pairs)
    for (int k : ks) jobs.push_back({pair, k, {}});
  parallel_for(static_cast<int>(jobs.size()), opts.jobs, [&](int j) {
    auto& job = jobs[j];
    job.result = timed_distance(g, VertexDistribution::point_mass(n, job.pair.v),
                                VertexDistribution::point_mass(n, job.pair.w), job.k, opts.solver);
  });

  ExperimentReport report;
  report.id = "indicator";
  add_common_params(report, opts);
  report.columns = {"digest", "v", "w", "d", "k", "distance"};
  if (opts.timing) report.columns.push_back("seconds");
  std::map<Vertex, std::vector<int>> bfs;
  for (const auto& job : jobs) {
    auto [v, w] = job.pair;
    if (!bfs.count(v)) bfs[v] = shortest_path_distances(g, v);
    std::vector<std::string> row = {
        input_digest(g, VertexDistribution::point_mass(n, v), VertexDistribution::point_mass(n, w)),
        std::to_string(v), std::to_string(w), std::to_string(bfs[v][w]), std::to_string(job.k),
        format_fixed(job.result.value, opts.precision)};
    if (opts.timing) row.push_back(format_fixed(job.result.seconds, 3));
    report.add_row(std::move(row));
  }
  return report;
}

ExperimentReport convergence_entropy_experiment(const EntropyOptions& eo, const HarnessOptions& opts) {
  if (eo.n < 2) throw ValidationError("entropy experiment needs n >= 2");
  Graph g = line_graph(eo.n);
  std::mt19937_64 rng(eo.seed);
  struct Level {
    double eps;
    VertexDistribution p0, p1;
  };
  std::vector<Level> levels;
  for (double eps : eo.noise) {
    auto p0 = with_uniform_noise(VertexDistribution::point_mass(eo.n, 0), eps, rng);
    auto p1 = with_uniform_noise(VertexDistribution::point_mass(eo.n, eo.n - 1), eps, rng);
    levels.push_back({eps, std::move(p0), std::move(p1)});
  }
  std::vector<int> ks = eo.ks;
  if (std::find(ks.begin(), ks.end(), eo.reference_k) == ks.end()) ks.push_back(eo.reference_k);
  std::vector<TimedDistance> results(levels.size() * ks.size());
  parallel_for(static_cast<int>(results.size()), opts.jobs, [&](int j) {
    const auto& level = levels[j / ks.size()];
    results[j] = timed_distance(g, level.p0, level.p1, ks[j % ks.size()], opts.solver);
  });

  ExperimentReport report;
  report.id = "entropy";
  add_common_params(report, opts);
  report.add_param("n", std::to_string(eo.n));
  report.add_param("seed", std::to_string(eo.seed));
  report.add_param("reference_k", std::to_string(eo.reference_k));
  report.add_param("noise", "iid Uniform(0,epsilon) added to each vertex then renormalized");
  report.columns = {"digest", "epsilon", "entropy", "k", "distance", "reference", "ratio"};
  if (opts.timing) report.columns.push_back("seconds");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const auto& level = levels[l];
    const double h = 0.5 * (entropy(level.p0) + entropy(level.p1));
    const std::size_t ref_col = std::find(ks.begin(), ks.end(), eo.reference_k) - ks.begin();
    const double ref = results[l * ks.size() + ref_col].value;
    for (std::size_t c = 0; c < ks.size(); ++c) {
      const auto& r = results[l * ks.size() + c];
      double ratio = c == ref_col ? 1.0 : r.value / ref;
      std::vector<std::string> row = {input_digest(g, level.p0, level.p1), format_exact(level.eps),
                                      format_fixed(h, opts.precision), std::to_string(ks[c]),
                                      format_fixed(r.value, opts.precision), format_fixed(ref, opts.precision),
                                      format_fixed(ratio, opts.precision)};
      if (opts.timing) row.push_back(format_fixed(r.seconds, 3));
      report.add_row(std::move(row));
    }
  }
  return report;
}

InterpolationResult interpolation_experiment(const Graph& g, const VertexDistribution& p0,
                                             const VertexDistribution& p1, int k, const HarnessOptions& opts) {
  InterpolationResult out;
  out.trivial = trivial_path(p0, p1, k);
  out.path = solve(g, p0, p1, k, opts.solver);
  return out;
}

void export_interpolation(const std::filesystem::path& dir, const Graph& g, const InterpolationResult& result) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "trivial.csv", densities_csv(result.trivial));
  export_path(dir / "optimal", g, result.path);
}

double center_of_mass(std::span<const double> q) {
  double c = 0.0;
  for (std::size_t v = 0; v < q.size(); ++v) c += static_cast<double>(v) * q[v];
  return c;
}

const char* to_string(FanPerturbation mode) {
  switch (mode) {
    case FanPerturbation::Clean:
      return "clean";
    case FanPerturbation::Noise:
      return "noise";
    case FanPerturbation::Perturb:
      return "perturb";
  }
  return "?";
}

FanPerturbation parse_fan_perturbation(const std::string& name) {
  if (name == "clean") return FanPerturbation::Clean;
  if (name == "noise") return FanPerturbation::Noise;
  if (name == "perturb") return FanPerturbation::Perturb;
  throw ValidationError("unknown fan-line mode '" + name + "' (expected clean, noise or perturb)");
}

VertexDistribution fan_line_distribution(const Graph& fan, const FanLineOptions& fo) {
  const int n = fan.num_vertices(), leaves = 2 * fo.spokes;
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int v = fo.line_length; v < n; ++v) w[v] = 1.0 / leaves;
  std::mt19937_64 rng(fo.seed);
  if (fo.mode == FanPerturbation::Noise) {
    for (double& x : w) x += fo.noise / leaves * uniform01(rng);
  } else if (fo.mode == FanPerturbation::Perturb) {
    w[fo.line_length + uniform_int(rng, leaves)] += 1.0 / leaves;
  }
  return VertexDistribution::from_weights(std::move(w));
}

FanLineResult fan_line_experiment(const FanLineOptions& fo, const HarnessOptions& opts) {
  if (fo.spokes < 1 || fo.line_length < 1) throw ValidationError("fan-line needs s >= 1 and L >= 1");
  Graph fan = fan_line_graph(fo.spokes, fo.line_length);
  auto p = fan_line_distribution(fan, fo);
  const int n = fan.num_vertices();
  FanLineResult out{fan, p, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), {}, {}, {}, {}};
  std::vector<double> seconds(static_cast<std::size_t>(n));
  parallel_for(n, opts.jobs, [&](int v) {
    auto target = VertexDistribution::point_mass(n, v);
    out.l1[v] = lp_norm_distance(p, target);
    out.w1[v] = w1(fan, p, target).cost;
    auto t = timed_distance(fan, p, target, fo.k, opts.solver);
    out.wbar[v] = t.value;
    seconds[v] = t.seconds;
  });
  out.argmin_l1 = argmin_set(out.l1);
  out.argmin_w1 = argmin_set(out.w1);
  out.argmin_wbar = argmin_set(out.wbar);

  auto join = [](const std::vector<Vertex>& vs) {
    std::string s;
    for (Vertex v : vs) s += (s.empty() ? "" : " ") + std::to_string(v);
    return s.empty() ? std::string("none") : s;
  };
  auto& report = out.report;
  report.id = "fan_line";
  add_common_params(report, opts);
  report.add_param("spokes", std::to_string(fo.spokes));
  report.add_param("line_length", std::to_string(fo.line_length));
  report.add_param("k", std::to_string(fo.k));
  report.add_param("mode", to_string(fo.mode));
  report.add_param("seed", std::to_string(fo.seed));
  report.add_param("vertices", std::to_string(n));
  report.add_param("edges", std::to_string(fan.num_edges()));
  report.add_param("digest", input_digest(fan, p, p));
  report.add_param("argmin_l1", join(out.argmin_l1));
  report.add_param("argmin_w1", join(out.argmin_w1));
  report.add_param("argmin_wbar", join(out.argmin_wbar));
  report.columns = {"v", "l1", "w1", "wbar"};
  if (opts.timing) report.columns.push_back("seconds");
  for (int v = 0; v < n; ++v) {
    std::vector<std::string> row = {std::to_string(v), format_fixed(out.l1[v], opts.precision),
                                    format_fixed(out.w1[v], opts.precision),
                                    format_fixed(out.wbar[v], opts.precision)};
    if (opts.timing) row.push_back(format_fixed(seconds[v], 3));
    report.add_row(std::move(row));
  }
  return out;
}

Graph build_emst_knn_graph(const std::vector<std::vector<double>>& points, int knn) {
  const int m = static_cast<int>(points.size());
  if (m < 2) throw ValidationError("need at least two points");
  if (knn < 0) throw ValidationError("knn must be >= 0");
  const std::size_t d = points[0].size();
  for (const auto& p : points)
    if (p.size() != d) throw ShapeError("points have different dimensions");
  auto dist2 = [&](int a, int b) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) s += (points[a][c] - points[b][c]) * (points[a][c] - points[b][c]);
    return s;
  };
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (dist2(a, b) == 0.0)
        throw ValidationError("duplicate points " + std::to_string(a) + " and " + std::to_string(b));

  std::set<std::pair<int, int>> edges;
  auto add = [&](int a, int b) { edges.insert({std::min(a, b), std::max(a, b)}); };

  // Prim; ties go to the lower index.
  std::vector<double> best(static_cast<std::size_t>(m), kInf);
  std::vector<int> from(static_cast<std::size_t>(m), -1);
  std::vector<char> in(static_cast<std::size_t>(m), 0);
  best[0] = 0.0;
  for (int it = 0; it < m; ++it) {
    int v = -1;
    for (int u = 0; u < m; ++u)
      if (!in[u] && (v < 0 || best[u] < best[v])) v = u;
    in[v] = 1;
    if (from[v] >= 0) add(v, from[v]);
    for (int u = 0; u < m; ++u)
      if (!in[u] && dist2(u, v) < best[u]) {
        best[u] = dist2(u, v);
        from[u] = v;
      }
  }

  for (int a = 0; a < m; ++a) {
    std::vector<int> others;
    for (int b = 0; b < m; ++b)
      if (b != a) others.push_back(b);
    const int take = std::min(knn, m - 1);
    std::partial_sort(others.begin(), others.begin() + take, others.end(), [&](int x, int y) {
      double dx = dist2(a, x), dy = dist2(a, y);
      return dx != dy ? dx < dy : x < y;
    });
    for (int j = 0; j < take; ++j) add(a, others[j]);
  }
  std::vector<Edge> list;
  for (auto [a, b] : edges) list.push_back({a, b});
  return Graph(m, std::move(list));
}

HistogramCorpus parse_corpus(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back({line_no, line});
  }
  if (lines.empty()) throw FormatError("empty corpus", 1);
  std::istringstream header(lines[0].second);
  long m = 0, d = 0, objects = 0;
  if (!(header >> m >> d >> objects) || m < 2 || d < 1 || objects < 0)
    throw FormatError("expected header 'm d objects' with m >= 2, d >= 1", lines[0].first);
  if (static_cast<long>(lines.size()) != 1 + m + objects)
    throw FormatError("expected " + std::to_string(m) + " center lines and " + std::to_string(objects) +
                          " object lines",
                      lines.back().first);
  HistogramCorpus corpus;
  for (long i = 0; i < m; ++i) {
    const auto& [no, line] = lines[1 + i];
    std::istringstream in(line);
    std::vector<double> point(static_cast<std::size_t>(d));
    for (double& x : point)
      if (!(in >> x) || !std::isfinite(x)) throw FormatError("bad center coordinate", no);
    std::string extra;
    if (in >> extra) throw FormatError("too many coordinates", no);
    corpus.centers.push_back(std::move(point));
  }
  for (long i = 0; i < objects; ++i) {
    const auto& [no, line] = lines[1 + m + i];
    std::istringstream in(line);
    std::string label;
    in >> label;
    std::vector<double> h(static_cast<std::size_t>(m));
    for (double& x : h)
      if (!(in >> x)) throw FormatError("expected " + std::to_string(m) + " histogram values", no);
    std::string extra;
    if (in >> extra) throw FormatError("too many histogram values", no);
    try {
      corpus.histograms.push_back(VertexDistribution::from_weights(std::move(h)));
    } catch (const ValidationError& e) {
      throw FormatError(e.what(), no);
    }
    corpus.labels.push_back(std::move(label));
  }
  return corpus;
}

HistogramCorpus load_corpus(const std::filesystem::path& path) { return parse_corpus(read_text_file(path)); }

std::string format_corpus(const HistogramCorpus& corpus) {
  std::ostringstream out;
  const std::size_t d = corpus.centers.empty() ? 0 : corpus.centers[0].size();
  out << corpus.centers.size() << ' ' << d << ' ' << corpus.histograms.size() << '\n';
  for (const auto& c : corpus.centers) {
    for (std::size_t j = 0; j < c.size(); ++j) out << (j ? " " : "") << format_exact(c[j]);
    out << '\n';
  }
  for (std::size_t i = 0; i < corpus.histograms.size(); ++i) {
    out << corpus.labels[i];
    for (double x : corpus.histograms[i].values()) out << ' ' << format_exact(x);
    out << '\n';
  }
  return out.str();
}

HistogramCorpus synthetic_corpus(std::uint64_t seed, int per_class) {
  if (per_class < 1) throw ValidationError("per_class must be >= 1");
  constexpr int kCenters = 50, kClasses = 3, kBins = 3;
  std::mt19937_64 rng(seed);
  HistogramCorpus corpus;
  for (int i = 0; i < kCenters; ++i) corpus.centers.push_back({uniform01(rng), uniform01(rng)});
  Graph g = build_emst_knn_graph(corpus.centers, 2);
  DistanceMatrix dist(g);

  // Anchors by farthest-point traversal from center 0.
  std::vector<Vertex> anchors = {0};
  while (static_cast<int>(anchors.size()) < kClasses) {
    Vertex best = 0;
    int best_d = -1;
    for (Vertex v = 0; v < kCenters; ++v) {
      int d = kCenters;
      for (Vertex a : anchors) d = std::min(d, dist(a, v));
      if (d > best_d) {
        best_d = d;
        best = v;
      }
    }
    anchors.push_back(best);
  }

  struct Object {
    std::string label;
    VertexDistribution h;
  };
  std::vector<Object> objects;
  for (int c = 0; c < kClasses; ++c) {
    std::vector<Vertex> near;
    for (Vertex v = 0; v < kCenters; ++v)
      if (dist(anchors[c], v) <= 2) near.push_back(v);
    for (int i = 0; i < per_class; ++i) {
      std::vector<double> w(kCenters, 0.0);
      for (int b = 0; b < kBins; ++b) w[near[uniform_int(rng, static_cast<int>(near.size()))]] += 0.5 + uniform01(rng);
      objects.push_back({"class" + std::to_string(c), VertexDistribution::from_weights(std::move(w))});
    }
  }
  // Shuffle so index tie-breaking carries no class information.
  for (int i = static_cast<int>(objects.size()) - 1; i > 0; --i)
    std::swap(objects[i], objects[uniform_int(rng, i + 1)]);
  for (auto& o : objects) {
    corpus.labels.push_back(std::move(o.label));
    corpus.histograms.push_back(std::move(o.h));
  }
  return corpus;
}

const char* to_string(RetrievalDistance d) {
  switch (d) {
    case RetrievalDistance::L1:
      return "l1";
    case RetrievalDistance::W1:
      return "w1";
    case RetrievalDistance::Wbar:
      return "wbar";
  }
  return "?";
}

RetrievalDistance parse_retrieval_distance(const std::string& name) {
  if (name == "l1") return RetrievalDistance::L1;
  if (name == "w1") return RetrievalDistance::W1;
  if (name == "wbar") return RetrievalDistance::Wbar;
  throw ValidationError("unknown distance '" + name + "' (expected l1, w1 or wbar)");
}

RetrievalResult retrieval_experiment(const HistogramCorpus& corpus, RetrievalDistance distance_kind,
                                     const std::vector<int>& ns, int k, const HarnessOptions& opts) {
  const int count = static_cast<int>(corpus.histograms.size());
  if (corpus.labels.size() != corpus.histograms.size()) throw ShapeError("labels and histograms differ in count");
  for (int n : ns)
    if (n < 1) throw ValidationError("retrieval depth n must be >= 1");
  Graph g = build_emst_knn_graph(corpus.centers, 2);
  for (const auto& h : corpus.histograms) check_on_graph(g, h);

  std::vector<double> dist(static_cast<std::size_t>(count) * count, 0.0);
  parallel_for(count * count, opts.jobs, [&](int idx) {
    int a = idx / count, b = idx % count;
    if (a == b) return;
    const auto &p = corpus.histograms[a], &q = corpus.histograms[b];
    double d = 0.0;
    switch (distance_kind) {
      case RetrievalDistance::L1:
        d = lp_norm_distance(p, q);
        break;
      case RetrievalDistance::W1:
        d = w1(g, p, q).cost;
        break;
      case RetrievalDistance::Wbar:
        d = distance(g, p, q, k, opts.solver);
        break;
    }
    dist[idx] = d;
  });

  std::map<std::string, int> class_size;
  for (const auto& l : corpus.labels) ++class_size[l];
  for (const auto& [label, size] : class_size)
    if (size == 1) warn("retrieval: class '" + label + "' has a single object; its queries are skipped");

  RetrievalResult out;
  out.ns = ns;
  out.recall.assign(ns.size(), 0.0);
  int queries = 0;
  for (int a = 0; a < count; ++a) {
    const int others = class_size[corpus.labels[a]] - 1;
    if (others == 0) continue;
    ++queries;
    std::vector<int> order;
    for (int b = 0; b < count; ++b)
      if (b != a) order.push_back(b);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return dist[static_cast<std::size_t>(a) * count + x] < dist[static_cast<std::size_t>(a) * count + y];
    });
    for (std::size_t t = 0; t < ns.size(); ++t) {
      int hits = 0, depth = std::min<int>(ns[t], static_cast<int>(order.size()));
      for (int r = 0; r < depth; ++r) hits += corpus.labels[order[r]] == corpus.labels[a];
      out.recall[t] += 100.0 * hits / std::min(ns[t], others);
    }
  }
  for (double& r : out.recall) r = queries ? r / queries : 0.0;

  auto& report = out.report;
  report.id = "retrieval";
  add_common_params(report, opts);
  report.add_param("distance", to_string(distance_kind));
  report.add_param("k", std::to_string(k));
  report.add_param("objects", std::to_string(count));
  report.add_param("queries", std::to_string(queries));
  report.add_param("metric", "percent of the query's class (excluding itself) in the first n, denominator min(n, class size - 1)");
  std::uint64_t h = fnv1a(format_corpus(corpus));
  std::ostringstream hex;
  hex << std::hex << h;
  report.add_param("digest", hex.str());
  report.columns = {"n", "recall"};
  for (std::size_t t = 0; t < ns.size(); ++t)
    report.add_row({std::to_string(ns[t]), format_fixed(out.recall[t], opts.precision)});
  return out;
}

}  // namespace graphot
