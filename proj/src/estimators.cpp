#include "fsample/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "fsample/error.hpp"
#include "fsample/oracles.hpp"
#include "fsample/stats.hpp"

namespace fsample {

namespace {

void require_samples(const SampleTrace& trace) {
  if (trace.empty()) throw Error(ErrorCode::undefined_estimate, "empty trace");
}

/// Weight of a sample in the ratio estimators: 1/deg(v) for walk and edge
/// samples, 1 for uniform vertex samples.
double sample_weight(const SampleTrace& trace, const Graph& graph, VertexId v) {
  return trace.vertex_only ? 1.0 : 1.0 / graph.degree(v);
}

}  // namespace

DensityEstimate estimate_edge_label_densities(const SampleTrace& trace, const LabelStore& labels) {
  std::vector<std::size_t> hits(labels.num_labels(), 0);
  DensityEstimate out;
  for (const auto& s : trace.steps) {
    if (s.edge == kNoEdge || !labels.edge_labeled(s.edge)) continue;
    auto ls = labels.edge_labels(s.edge);
    if (ls.empty()) continue;
    ++out.usable_samples;
    for (LabelId l : ls) ++hits[l];
  }
  if (out.usable_samples == 0) throw Error(ErrorCode::undefined_estimate, "no labelled edge sampled");
  for (LabelId l = 0; l < labels.num_labels(); ++l) {
    out.values[labels.name(l)] =
        static_cast<double>(hits[l]) / static_cast<double>(out.usable_samples);
  }
  return out;
}

DensityEstimate estimate_edge_label_density(const SampleTrace& trace, const LabelStore& labels,
                                            LabelId l) {
  if (l >= labels.num_labels()) throw Error(ErrorCode::invalid_argument, "unknown label id");
  auto all = estimate_edge_label_densities(trace, labels);
  DensityEstimate out;
  out.usable_samples = all.usable_samples;
  out.values[labels.name(l)] = all.values.at(labels.name(l));
  return out;
}

DensityEstimate estimate_group_densities(const SampleTrace& trace, const Graph& graph,
                                         const LabelStore& labels) {
  require_samples(trace);
  std::vector<CompensatedSum> num(labels.num_labels());
  CompensatedSum s;
  for (const auto& step : trace.steps) {
    const double w = sample_weight(trace, graph, step.v);
    s += w;
    for (LabelId l : labels.vertex_labels(step.v)) num[l] += w;
  }
  DensityEstimate out;
  out.usable_samples = trace.size();
  out.normalizer = s.value() / static_cast<double>(trace.size());
  for (LabelId l = 0; l < labels.num_labels(); ++l) {
    out.values[labels.name(l)] = num[l].value() / s.value();
  }
  return out;
}

DensityEstimate estimate_vertex_label_density(const SampleTrace& trace, const Graph& graph,
                                              const LabelStore& labels, LabelId l) {
  if (l >= labels.num_labels()) throw Error(ErrorCode::invalid_argument, "unknown label id");
  require_samples(trace);
  CompensatedSum num, s;
  for (const auto& step : trace.steps) {
    const double w = sample_weight(trace, graph, step.v);
    s += w;
    if (labels.vertex_has(step.v, l)) num += w;
  }
  DensityEstimate out;
  out.usable_samples = trace.size();
  out.normalizer = s.value() / static_cast<double>(trace.size());
  out.values[labels.name(l)] = num.value() / s.value();
  return out;
}

DensityEstimate vertex_density_from_vertex_samples(const SampleTrace& trace,
                                                   const LabelStore& labels, LabelId l) {
  if (l >= labels.num_labels()) throw Error(ErrorCode::invalid_argument, "unknown label id");
  require_samples(trace);
  std::size_t hits = 0;
  for (const auto& step : trace.steps) hits += labels.vertex_has(step.v, l) ? 1 : 0;
  DensityEstimate out;
  out.usable_samples = trace.size();
  out.normalizer = 1.0;
  out.values[labels.name(l)] = static_cast<double>(hits) / static_cast<double>(trace.size());
  return out;
}

DegreeEstimate estimate_degree_ccdf(const SampleTrace& trace, const Graph& graph, DegreeMode mode) {
  require_samples(trace);
  std::vector<CompensatedSum> mass;
  CompensatedSum s;
  for (const auto& step : trace.steps) {
    const double w = sample_weight(trace, graph, step.v);
    const auto k = degree_of(graph, step.v, mode);
    if (k >= mass.size()) mass.resize(k + 1);
    mass[k] += w;
    s += w;
  }
  DegreeEstimate out;
  out.usable_samples = trace.size();
  out.normalizer = s.value() / static_cast<double>(trace.size());
  out.theta.resize(mass.size());
  out.ccdf.resize(mass.size());
  const double total = s.value();
  for (std::size_t k = 0; k < mass.size(); ++k) out.theta[k] = mass[k].value() / total;
  // Tail sums from the top keep γ̂ non-increasing.
  CompensatedSum tail;
  for (std::size_t l = mass.size(); l-- > 0;) {
    out.ccdf[l] = tail.value() / total;
    tail += mass[l].value();
  }
  return out;
}

std::vector<double> degree_distribution_known_mean(const SampleTrace& trace, const Graph& graph) {
  require_samples(trace);
  std::vector<std::size_t> count;
  for (const auto& step : trace.steps) {
    const auto k = graph.degree(step.v);
    if (k >= count.size()) count.resize(k + 1, 0);
    ++count[k];
  }
  const double d = graph.average_degree();
  const auto b = static_cast<double>(trace.size());
  std::vector<double> theta(count.size(), 0.0);
  for (std::size_t i = 1; i < count.size(); ++i) {
    theta[i] = d / static_cast<double>(i) * static_cast<double>(count[i]) / b;
  }
  return theta;
}

AssortativityEstimate estimate_assortativity(const SampleTrace& trace, const Graph& graph) {
  AssortativityEstimate out;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> counts;
  for (const auto& s : trace.steps) {
    if (s.edge == kNoEdge || !graph.in_original(s.edge)) continue;
    ++counts[{graph.out_degree_directed(s.u), graph.in_degree_directed(s.v)}];
    ++out.usable_samples;
  }
  if (out.usable_samples == 0) throw Error(ErrorCode::undefined_estimate, "no E_d edge sampled");
  const auto b = static_cast<double>(out.usable_samples);
  for (const auto& [ij, c] : counts) {
    const double p = static_cast<double>(c) / b;
    out.joint[ij] = p;
    out.q_out[ij.first] += p;
    out.q_in[ij.second] += p;
    out.w_out = std::max(out.w_out, ij.first);
    out.w_in = std::max(out.w_in, ij.second);
  }
  auto moments = [](const std::map<std::uint32_t, double>& q) {
    CompensatedSum m1, m2;
    for (const auto& [k, p] : q) {
      m1 += k * p;
      m2 += static_cast<double>(k) * k * p;
    }
    return std::pair{m1.value(), m2.value()};
  };
  auto [mo1, mo2] = moments(out.q_out);
  auto [mi1, mi2] = moments(out.q_in);
  const double var_out = mo2 - mo1 * mo1;
  const double var_in = mi2 - mi1 * mi1;
  if (!(var_out > 1e-12 * (1 + mo1 * mo1)) || !(var_in > 1e-12 * (1 + mi1 * mi1))) {
    throw Error(ErrorCode::undefined_estimate, "assortativity undefined: zero degree variance");
  }
  out.sigma_out = std::sqrt(var_out);
  out.sigma_in = std::sqrt(var_in);
  // Σ ij (p̂_ij − q̂_i q̂_j) = Σ ij p̂_ij − (Σ i q̂_i)(Σ j q̂_j).
  CompensatedSum cross;
  for (const auto& [ij, p] : out.joint) cross += static_cast<double>(ij.first) * ij.second * p;
  out.r_hat = (cross.value() - mo1 * mi1) / (out.sigma_out * out.sigma_in);
  return out;
}

ClusteringEstimate estimate_global_clustering(const SampleTrace& trace, const Graph& graph,
                                              ClusteringNormalizer normalizer) {
  require_samples(trace);
  CompensatedSum num, s;
  ClusteringEstimate out;
  for (const auto& step : trace.steps) {
    if (step.edge == kNoEdge) continue;
    const double d = graph.degree(step.v);
    if (d < 2) {
      if (normalizer == ClusteringNormalizer::all_sampled) s += 1.0 / d;
      continue;
    }
    ++out.eligible_samples;
    s += 1.0 / d;
    num += shared_neighbors(graph, step.v, step.u) / (d * (d - 1));
  }
  if (out.eligible_samples == 0) {
    throw Error(ErrorCode::undefined_estimate, "no sampled vertex with degree >= 2");
  }
  out.normalizer = s.value() / static_cast<double>(trace.size());
  out.c_hat = num.value() / s.value();
  return out;
}

nlohmann::json to_json(const DensityEstimate& e) {
  return {{"values", e.values}, {"B_star", e.usable_samples}, {"S", e.normalizer}};
}

nlohmann::json to_json(const DegreeEstimate& e) {
  return {{"theta", e.theta}, {"gamma", e.ccdf}, {"B", e.usable_samples}, {"S", e.normalizer}};
}

nlohmann::json to_json(const AssortativityEstimate& e) {
  nlohmann::json joint = nlohmann::json::array();
  for (const auto& [ij, p] : e.joint) joint.push_back({ij.first, ij.second, p});
  return {{"r", e.r_hat},         {"sigma_out", e.sigma_out}, {"sigma_in", e.sigma_in},
          {"W_out", e.w_out},     {"W_in", e.w_in},           {"B_star", e.usable_samples},
          {"joint", joint}};
}

nlohmann::json to_json(const ClusteringEstimate& e) {
  return {{"C", e.c_hat}, {"S", e.normalizer}, {"eligible_samples", e.eligible_samples}};
}

}  // namespace fsample
