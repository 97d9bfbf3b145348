#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fsample/graph.hpp"
#include "fsample/samplers.hpp"

namespace fsample {

struct DensityEstimate {
  std::map<std::string, double> values;  // label name -> estimate
  std::size_t usable_samples = 0;        // B* for edge labels, B otherwise
  double normalizer = 0.0;               // S = (1/B) Σ 1/deg(v_i), when used
};

/// p̂_l = Σ 1(l ∈ L_e(u_i,v_i)) / B* over sampled edges that carry labels.
/// Throws undefined_estimate when B* = 0.
DensityEstimate estimate_edge_label_density(const SampleTrace& trace, const LabelStore& labels,
                                            LabelId l);
/// The same for every edge label in one pass.
DensityEstimate estimate_edge_label_densities(const SampleTrace& trace, const LabelStore& labels);

/// θ̂_l = (1/(S B)) Σ 1(l ∈ L_v(v_i)) / deg(v_i) over the terminal vertex of
/// each sampled edge. Vertex-only traces fall back to the plain fraction.
DensityEstimate estimate_vertex_label_density(const SampleTrace& trace, const Graph& graph,
                                              const LabelStore& labels, LabelId l);
/// θ̂_l for every vertex label in one pass.
DensityEstimate estimate_group_densities(const SampleTrace& trace, const Graph& graph,
                                         const LabelStore& labels);
/// Plain sample fraction of a vertex-only trace.
DensityEstimate vertex_density_from_vertex_samples(const SampleTrace& trace,
                                                   const LabelStore& labels, LabelId l);

struct DegreeEstimate {
  std::vector<double> theta;  // θ̂_k, k = 0..max observed degree
  std::vector<double> ccdf;   // γ̂_l = Σ_{k>l} θ̂_k
  std::size_t usable_samples = 0;
  double normalizer = 0.0;

  double gamma(std::size_t l) const { return l < ccdf.size() ? ccdf[l] : 0.0; }
  double theta_at(std::size_t k) const { return k < theta.size() ? theta[k] : 0.0; }
};

/// Degree distribution and CCDF in the chosen degree notion. Walk samples are
/// reweighted by 1/deg(v_i) of the symmetric degree.
DegreeEstimate estimate_degree_ccdf(const SampleTrace& trace, const Graph& graph, DegreeMode mode);

/// θ̂_i = (d/i) · (#samples with terminal degree i)/B for uniformly sampled
/// edges when the average degree d is known.
std::vector<double> degree_distribution_known_mean(const SampleTrace& trace, const Graph& graph);

struct AssortativityEstimate {
  double r_hat = 0.0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;  // p̂_ij
  std::map<std::uint32_t, double> q_out;
  std::map<std::uint32_t, double> q_in;
  double sigma_out = 0.0;
  double sigma_in = 0.0;
  std::uint32_t w_out = 0;
  std::uint32_t w_in = 0;
  std::size_t usable_samples = 0;
};

/// r̂ from sampled E_d edges labelled (outdeg_d(u_i), indeg_d(v_i)). Throws
/// undefined_estimate when either σ̂ vanishes or no E_d edge was sampled.
AssortativityEstimate estimate_assortativity(const SampleTrace& trace, const Graph& graph);

enum class ClusteringNormalizer {
  degree_at_least_two,  // S over sampled v_i with deg(v_i) >= 2
  all_sampled,          // S over every sampled v_i
};

struct ClusteringEstimate {
  double c_hat = 0.0;
  double normalizer = 0.0;
  std::size_t eligible_samples = 0;  // sampled v_i with deg >= 2
};

/// Ĉ = Σ f(v_i,u_i)/(deg(v_i)(deg(v_i)−1)) / Σ 1/deg(v_i), f = shared
/// neighbours. Throws undefined_estimate when no sampled v_i has degree >= 2.
ClusteringEstimate estimate_global_clustering(
    const SampleTrace& trace, const Graph& graph,
    ClusteringNormalizer normalizer = ClusteringNormalizer::degree_at_least_two);

nlohmann::json to_json(const DensityEstimate& e);
nlohmann::json to_json(const DegreeEstimate& e);
nlohmann::json to_json(const AssortativityEstimate& e);
nlohmann::json to_json(const ClusteringEstimate& e);

}  // namespace fsample
