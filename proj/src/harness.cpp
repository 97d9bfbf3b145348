#include "fsample/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

#include "fsample/error.hpp"
#include "fsample/stats.hpp"

namespace fsample {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Calls fn(i) for i in [0, n) on up to `workers` threads. The first
/// exception by index is rethrown after all threads finish.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double relative_rms(std::span<const double> estimates, double truth) {
  if (!(truth > 0)) throw Error(ErrorCode::invalid_argument, "NMSE needs a positive truth value");
  if (estimates.empty()) throw Error(ErrorCode::invalid_argument, "NMSE needs at least one estimate");
  CompensatedSum sq;
  for (double x : estimates) sq += (x - truth) * (x - truth);
  return std::sqrt(sq.value() / static_cast<double>(estimates.size())) / truth;
}

enum class KeyKind { theta_label, theta_degree, gamma, edge_label, assortativity, clustering };

struct Key {
  KeyKind kind;
  std::string name;
  std::size_t index = 0;  // label id or degree
  double truth = 0.0;
};

std::vector<Key> build_keys(const Graph& graph, const LabelStore& vertex_labels,
                            const LabelStore& edge_labels, const CharacteristicTruth& truth,
                            const Targets& targets, std::vector<std::string>& warnings) {
  std::vector<Key> keys;
  auto add = [&](Key k) {
    if (k.truth > 0) {
      keys.push_back(std::move(k));
    } else {
      warnings.push_back(k.name + ": truth is zero, omitted from error metrics");
    }
  };
  std::vector<double> degree_law;
  for (const auto& name : targets.theta) {
    if (auto id = vertex_labels.find(name)) {
      auto it = truth.theta.find(name);
      const double t = it != truth.theta.end() ? it->second
                                               : exact_vertex_label_density(graph, vertex_labels, *id);
      add({KeyKind::theta_label, "theta:" + name, *id, t});
    } else if (name.rfind("degree=", 0) == 0) {
      std::size_t k = 0;
      try {
        k = std::stoul(name.substr(7));
      } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_argument, "bad degree label '" + name + "'");
      }
      if (degree_law.empty()) degree_law = exact_degree_distribution(graph, targets.degree_mode);
      add({KeyKind::theta_degree, "theta:" + name, k, k < degree_law.size() ? degree_law[k] : 0.0});
    } else {
      throw Error(ErrorCode::invalid_argument, "unknown vertex label '" + name + "'");
    }
  }
  if (targets.ccdf) {
    for (std::size_t l = 0; l < truth.gamma.size(); ++l) {
      if (truth.gamma[l] > 0) keys.push_back({KeyKind::gamma, "gamma:" + std::to_string(l), l, truth.gamma[l]});
    }
  }
  std::vector<std::string> edge_names = targets.edge_labels;
  if (edge_names.size() == 1 && edge_names[0] == "*") {
    edge_names.clear();
    for (LabelId l = 0; l < edge_labels.num_labels(); ++l) edge_names.push_back(edge_labels.name(l));
  }
  for (const auto& name : edge_names) {
    LabelId id = edge_labels.require(name);
    auto it = truth.p_edge.find(name);
    const double t = it != truth.p_edge.end() ? it->second : exact_edge_label_density(graph, edge_labels, id);
    add({KeyKind::edge_label, "p:" + name, id, t});
  }
  if (targets.assortativity) {
    if (!truth.r) throw Error(ErrorCode::undefined_estimate, "assortativity undefined on this graph");
    // r may be negative; bias and NMSE are reported relative to |r|.
    if (*truth.r != 0) {
      keys.push_back({KeyKind::assortativity, "r", 0, *truth.r});
    } else {
      warnings.push_back("r: truth is zero, omitted from error metrics");
    }
  }
  if (targets.clustering) {
    if (!truth.C) throw Error(ErrorCode::undefined_estimate, "clustering undefined on this graph");
    add({KeyKind::clustering, "C", 0, *truth.C});
  }
  return keys;
}

std::vector<double> estimate_keys(const SampleTrace& trace, const Graph& graph,
                                  const LabelStore& vertex_labels, const LabelStore& edge_labels,
                                  const Targets& targets, const std::vector<Key>& keys) {
  std::vector<double> out(keys.size(), kNaN);
  bool want_degree = false, want_group = false, want_edge = false, want_r = false, want_c = false;
  for (const auto& k : keys) {
    want_degree |= k.kind == KeyKind::gamma || k.kind == KeyKind::theta_degree;
    want_group |= k.kind == KeyKind::theta_label;
    want_edge |= k.kind == KeyKind::edge_label;
    want_r |= k.kind == KeyKind::assortativity;
    want_c |= k.kind == KeyKind::clustering;
  }
  if (trace.empty()) return out;
  DegreeEstimate deg;
  DensityEstimate group, edge;
  std::optional<double> r, c;
  if (want_degree) deg = estimate_degree_ccdf(trace, graph, targets.degree_mode);
  if (want_group) group = estimate_group_densities(trace, graph, vertex_labels);
  if (want_edge) {
    try {
      edge = estimate_edge_label_densities(trace, edge_labels);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undefined_estimate) throw;
    }
  }
  if (want_r) {
    try {
      r = estimate_assortativity(trace, graph).r_hat;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undefined_estimate) throw;
    }
  }
  if (want_c) {
    try {
      c = estimate_global_clustering(trace, graph, targets.clustering_normalizer).c_hat;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undefined_estimate) throw;
    }
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& k = keys[i];
    switch (k.kind) {
      case KeyKind::theta_label: out[i] = group.values.at(vertex_labels.name(static_cast<LabelId>(k.index))); break;
      case KeyKind::theta_degree: out[i] = deg.theta_at(k.index); break;
      case KeyKind::gamma: out[i] = deg.gamma(k.index); break;
      case KeyKind::edge_label: {
        auto it = edge.values.find(edge_labels.name(static_cast<LabelId>(k.index)));
        if (it != edge.values.end()) out[i] = it->second;
        break;
      }
      case KeyKind::assortativity: if (r) out[i] = *r; break;
      case KeyKind::clustering: if (c) out[i] = *c; break;
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

double nmse(std::span<const double> estimates, double truth) { return relative_rms(estimates, truth); }
double cnmse(std::span<const double> estimates, double truth) { return relative_rms(estimates, truth); }

double theoretical_nmse_edge(double theta_i, double degree_i, double d, double budget) {
  const double pi = degree_i * theta_i / d;
  if (!(pi > 0)) return kNaN;
  return std::sqrt((1.0 / pi - 1.0) / budget);
}

double theoretical_nmse_vertex(double theta_i, double budget) {
  if (!(theta_i > 0)) return kNaN;
  return std::sqrt((1.0 / theta_i - 1.0) / budget);
}

std::vector<double> theoretical_nmse_edge_curve(std::span<const double> theta, double d,
                                                double budget) {
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out[i] = theoretical_nmse_edge(theta[i], static_cast<double>(i), d, budget);
  }
  return out;
}

std::vector<double> theoretical_nmse_vertex_curve(std::span<const double> theta, double budget) {
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = theoretical_nmse_vertex(theta[i], budget);
  return out;
}

const LabelError* MethodReport::find(const std::string& label) const {
  for (const auto& r : rows) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

const MethodReport& ErrorReport::method(const std::string& name) const {
  for (const auto& m : methods) {
    if (m.method == name) return m;
  }
  throw Error(ErrorCode::invalid_argument, "no method named '" + name + "' in report");
}

ErrorReport run_monte_carlo(const Graph& graph, const LabelStore& vertex_labels,
                            const LabelStore& edge_labels, const CharacteristicTruth& truth,
                            const MonteCarloSpec& spec, std::size_t workers) {
  if (spec.runs < 1) throw Error(ErrorCode::invalid_argument, "runs must be at least 1");
  if (spec.methods.empty()) throw Error(ErrorCode::invalid_argument, "no methods configured");
  for (const auto& m : spec.methods) {
    try {
      check_budget(graph, m.sampler, spec.budget);
    } catch (const Error& e) {
      throw Error(e.code(), m.name + ": " + e.what());
    }
  }

  ErrorReport report;
  report.graph_hash = graph_hash(graph);
  report.runs = spec.runs;
  report.seed = spec.seed;
  report.budget = spec.budget;
  report.burn_in = spec.burn_in;
  const auto keys = build_keys(graph, vertex_labels, edge_labels, truth, spec.targets, report.warnings);

  const std::size_t jobs = spec.methods.size() * spec.runs;
  std::vector<std::vector<double>> results(jobs);
  const RngStream master(spec.seed);
  parallel_for(jobs, workers, [&](std::size_t job) {
    const std::size_t mi = job / spec.runs;
    const std::size_t run = job % spec.runs;
    RngStream rng = master.child(mi).child(run);
    auto trace = run_sampler(graph, spec.methods[mi].sampler, spec.budget, rng);
    if (spec.burn_in > 0) trace = discard_burn_in(trace, spec.burn_in);
    results[job] = estimate_keys(trace, graph, vertex_labels, edge_labels, spec.targets, keys);
  });

  for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
    MethodReport mr;
    mr.method = spec.methods[mi].name;
    mr.raw.assign(results.begin() + static_cast<std::ptrdiff_t>(mi * spec.runs),
                  results.begin() + static_cast<std::ptrdiff_t>((mi + 1) * spec.runs));
    for (std::size_t j = 0; j < keys.size(); ++j) {
      std::vector<double> vals;
      vals.reserve(spec.runs);
      for (const auto& run : mr.raw) {
        if (!std::isnan(run[j])) vals.push_back(run[j]);
      }
      LabelError row;
      row.label = keys[j].name;
      row.truth = keys[j].truth;
      row.ccdf = keys[j].kind == KeyKind::gamma;
      row.runs_used = vals.size();
      if (vals.empty()) {
        row.mean_estimate = row.bias = row.error = kNaN;
        report.warnings.push_back(mr.method + " " + row.label + ": undefined in every run");
      } else {
        CompensatedSum s;
        for (double x : vals) s += x;
        row.mean_estimate = s.value() / static_cast<double>(vals.size());
        row.bias = 1.0 - row.mean_estimate / row.truth;
        row.error = relative_rms(vals, std::abs(row.truth));
        if (vals.size() < spec.runs) {
          report.warnings.push_back(mr.method + " " + row.label + ": undefined in " +
                                    std::to_string(spec.runs - vals.size()) + " runs");
        }
      }
      mr.rows.push_back(row);
    }
    report.methods.push_back(std::move(mr));
  }
  return report;
}

void write_report_csv(std::ostream& out, const ErrorReport& report) {
  out << "# graph_hash=" << report.graph_hash << '\n';
  out << "# runs=" << report.runs << '\n';
  out << "# seed=" << report.seed << '\n';
  out << "# budget=" << format_double(report.budget) << '\n';
  out << "# burn_in=" << report.burn_in << '\n';
  out << "method,label,truth,mean_estimate,bias,nmse,cnmse\n";
  for (const auto& m : report.methods) {
    for (const auto& r : m.rows) {
      out << csv_field(m.method) << ',' << csv_field(r.label) << ',' << format_double(r.truth) << ','
          << format_double(r.mean_estimate) << ',' << format_double(r.bias) << ',';
      if (r.ccdf) {
        out << ',' << format_double(r.error);
      } else {
        out << format_double(r.error) << ',';
      }
      out << '\n';
    }
  }
}

nlohmann::json report_to_json(const ErrorReport& report) {
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
  nlohmann::json j;
  j["graph_hash"] = report.graph_hash;
  j["runs"] = report.runs;
  j["seed"] = report.seed;
  j["budget"] = report.budget;
  j["burn_in"] = report.burn_in;
  j["warnings"] = report.warnings;
  j["methods"] = nlohmann::json::array();
  for (const auto& m : report.methods) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : m.rows) {
      rows.push_back({{"label", r.label},
                      {"truth", num(r.truth)},
                      {"mean_estimate", num(r.mean_estimate)},
                      {"bias", num(r.bias)},
                      {r.ccdf ? "cnmse" : "nmse", num(r.error)},
                      {"runs_used", r.runs_used}});
    }
    j["methods"].push_back({{"method", m.method}, {"rows", rows}});
  }
  return j;
}

ConvergenceResult convergence_diagnostic(const Graph& graph, const SamplerSpec& spec,
                                         double budget, std::size_t runs, std::uint64_t seed,
                                         std::size_t workers) {
  if (!is_connected(graph)) throw Error(ErrorCode::not_stationary, "graph is disconnected");
  if (runs < 2) throw Error(ErrorCode::invalid_argument, "diagnostic needs at least 2 runs");
  check_budget(graph, spec, budget);
  const std::size_t num_edges = graph.num_edges();

  // Fixed-size blocks merged in order keep the sums independent of `workers`.
  constexpr std::size_t kBlock = 512;
  const std::size_t blocks = (runs + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> block_sum(blocks), block_sq(blocks);
  const RngStream master(seed);
  parallel_for(blocks, workers, [&](std::size_t b) {
    std::vector<double> sum(num_edges, 0.0), sq(num_edges, 0.0);
    std::vector<double> per_edge(graph.num_vertices(), 0.0);
    std::vector<VertexId> touched;
    for (std::size_t run = b * kBlock; run < std::min(runs, (b + 1) * kBlock); ++run) {
      RngStream rng = master.child(run);
      auto trace = run_sampler(graph, spec, budget, rng);
      if (trace.empty()) continue;
      touched.clear();
      // Law of the last step given the state before it, as a per-edge
      // probability for every edge leaving each occupied vertex.
      auto give = [&](VertexId v, double p) {
        if (per_edge[v] == 0.0) touched.push_back(v);
        per_edge[v] += p;
      };
      const auto& last = trace.steps.back();
      switch (trace.method) {
        case Method::single_rw:
          give(last.u, 1.0 / graph.degree(last.u));
          break;
        case Method::multiple_rw: {
          std::vector<VertexId> before(trace.dimension, 0);
          for (const auto& s : trace.steps) before[s.walker] = s.u;
          for (VertexId v : before) give(v, 1.0 / (static_cast<double>(trace.dimension) * graph.degree(v)));
          break;
        }
        case Method::frontier: {
          auto pos = final_positions(trace);
          pos[last.walker] = last.u;
          double frontier = 0;
          for (VertexId v : pos) frontier += graph.degree(v);
          for (VertexId v : pos) give(v, 1.0 / frontier);
          break;
        }
        default: {
          sum[last.edge] += 1.0;
          sq[last.edge] += 1.0;
          break;
        }
      }
      for (VertexId v : touched) {
        const double p = per_edge[v];
        for (EdgeId e = graph.first_edge(v); e < graph.first_edge(v) + graph.degree(v); ++e) {
          sum[e] += p;
          sq[e] += p * p;
        }
        per_edge[v] = 0.0;
      }
    }
    block_sum[b] = std::move(sum);
    block_sq[b] = std::move(sq);
  });

  std::vector<double> sum(num_edges, 0.0), sq(num_edges, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t e = 0; e < num_edges; ++e) {
      sum[e] += block_sum[b][e];
      sq[e] += block_sq[b][e];
    }
  }
  ConvergenceResult res;
  res.runs = runs;
  const auto n = static_cast<double>(runs);
  const auto ne = static_cast<double>(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) {
    const double mean = sum[e] / n;
    const double dev = std::abs(1.0 - mean * ne);
    if (res.argmax_edge == kNoEdge || dev > res.max_deviation) {
      res.max_deviation = dev;
      res.argmax_edge = e;
      const double var = std::max(0.0, (sq[e] / n - mean * mean) * n / (n - 1));
      res.ci_half_width = 1.96 * ne * std::sqrt(var / n);
    }
  }
  return res;
}

OccupancyResult kfs_occupancy_study(const Graph& graph, std::span<const VertexId> subset,
                                    std::size_t m, Method method, std::size_t steps,
                                    std::size_t runs, std::uint64_t seed, const StartMode& start) {
  if (!is_connected(graph)) throw Error(ErrorCode::not_stationary, "graph is disconnected");
  if (is_bipartite(graph)) throw Error(ErrorCode::not_stationary, "graph is bipartite");
  if (runs < 1 || steps < 1) throw Error(ErrorCode::invalid_argument, "need runs >= 1 and steps >= 1");
  OccupancyResult res;
  res.exact_fs = exact_kfs_distribution(graph, subset, m);
  std::vector<std::uint8_t> in(graph.num_vertices(), 0);
  double vol_a = 0;
  for (VertexId v : subset) {
    if (!in[v]) vol_a += graph.degree(v);
    in[v] = 1;
  }
  std::size_t size_a = 0;
  for (auto x : in) size_a += x;
  const double p = static_cast<double>(size_a) / static_cast<double>(graph.num_vertices());
  res.binomial = binomial_pmf(m, p);
  res.alpha = multiplerw_walker_ratio(graph, subset);
  res.expected_mean = static_cast<double>(m) * vol_a / static_cast<double>(graph.volume());

  std::vector<std::uint64_t> hist(m + 1, 0);
  std::vector<double> finals;
  const RngStream master(seed);
  CostModel free_starts;
  for (std::size_t run = 0; run < runs; ++run) {
    RngStream rng = master.child(run);
    if (method == Method::frontier) {
      auto trace = frontier_sampling(graph, m, start, static_cast<double>(steps) +
                                                          static_cast<double>(m) * free_starts.start_cost(start.kind),
                                     free_starts, rng);
      auto pos = trace.start_vertices;
      std::size_t k = 0;
      for (VertexId v : pos) k += in[v];
      for (const auto& s : trace.steps) {
        k = k - in[s.u] + in[s.v];
        ++hist[k];
      }
      finals.push_back(static_cast<double>(k));
    } else if (method == Method::multiple_rw) {
      const double per_walker = static_cast<double>(steps) + free_starts.start_cost(start.kind);
      auto trace = multiple_rw(graph, m, start, per_walker * static_cast<double>(m), free_starts, rng);
      std::size_t k = 0;
      for (VertexId v : final_positions(trace)) k += in[v];
      ++hist[k];
      finals.push_back(static_cast<double>(k));
    } else {
      throw Error(ErrorCode::invalid_argument, "occupancy study supports frontier and multiple_rw");
    }
  }
  res.empirical = normalize_counts(hist);
  res.tv_exact = total_variation(res.empirical, res.exact_fs);
  res.tv_binomial = total_variation(res.empirical, res.binomial);
  CompensatedSum s, s2;
  for (double x : finals) {
    s += x;
    s2 += x * x;
  }
  const auto n = static_cast<double>(finals.size());
  if (method == Method::frontier) {
    CompensatedSum weighted;
    for (std::size_t k = 0; k <= m; ++k) weighted += static_cast<double>(k) * res.empirical[k];
    res.mean_occupancy = weighted.value();
  } else {
    res.mean_occupancy = s.value() / n;
  }
  const double var = n > 1 ? std::max(0.0, (s2.value() - s.value() * s.value() / n) / (n - 1)) : 0.0;
  res.mean_standard_error = std::sqrt(var / n);
  res.alpha_hat = res.mean_occupancy / (static_cast<double>(m) * p);
  return res;
}

}  // namespace fsample
