#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fsample/graph.hpp"

namespace fsample {

/// Exact values of the characteristics the estimators target.
struct CharacteristicTruth {
  std::map<std::string, double> theta;   // vertex label -> θ_l
  std::map<std::string, double> p_edge;  // edge label -> p_l
  std::vector<double> gamma;             // γ_l for l = 0..max degree
  std::optional<double> r;               // degree assortativity over E_d
  std::optional<double> C;               // global clustering coefficient
};

nlohmann::json to_json(const CharacteristicTruth& truth);
CharacteristicTruth truth_from_json(const nlohmann::json& j);

/// θ_l = |{v : l ∈ L_v(v)}| / |V|.
double exact_vertex_label_density(const Graph& graph, const LabelStore& labels, LabelId l);
/// The same density through the edge sum (1/|V|) Σ_{(u,v)∈E} 1(l ∈ L_v(v))/deg(v).
double vertex_label_density_edge_sum(const Graph& graph, const LabelStore& labels, LabelId l);

/// θ_k for k = 0..max degree (in the given degree notion).
std::vector<double> exact_degree_distribution(const Graph& graph, DegreeMode mode);
/// γ_l = Σ_{k>l} θ_k for l = 0..max degree.
std::vector<double> exact_degree_ccdf(const Graph& graph, DegreeMode mode);

/// Fraction of labelled edges carrying l. Throws undefined_estimate when no
/// edge is labelled.
double exact_edge_label_density(const Graph& graph, const LabelStore& labels, LabelId l);

/// Degree assortativity of G_d: correlation of (outdeg_d(u), indeg_d(v)) over
/// (u,v) ∈ E_d. Throws undefined_estimate when either marginal is constant.
double exact_assortativity(const Graph& graph);

/// Number of triangles through each vertex, by neighbour-list intersection.
std::vector<std::uint64_t> triangle_counts(const Graph& graph);

/// C = (1/|V*|) Σ_v c(v) with c(v) = Δ(v)/C(deg v, 2) and V* = {deg > 1}.
double exact_global_clustering(const Graph& graph);

/// |N(u) ∩ N(v)|.
std::uint32_t shared_neighbors(const Graph& graph, VertexId u, VertexId v);

/// Everything above for the given label stores. Edge densities are skipped
/// when `edge_labels` has no labelled edge; r and C are left empty when
/// undefined.
CharacteristicTruth compute_truth(const Graph& graph, const LabelStore& vertex_labels,
                                  const LabelStore& edge_labels, DegreeMode mode);

/// Occupancy law of a vertex subset under the stationary frontier chain:
/// P[K = k] = C(m,k) p^k (1-p)^(m-k) (k d_A + (m-k) d_B) / (m d).
/// Requires a non-empty proper subset.
std::vector<double> exact_kfs_distribution(const Graph& graph, std::span<const VertexId> subset,
                                           std::size_t m);

/// Binomial(m, p) pmf over {0..m}.
std::vector<double> binomial_pmf(std::size_t m, double p);

/// α_A = d_A / d.
double multiplerw_walker_ratio(const Graph& graph, std::span<const VertexId> subset);

/// 2-colouring test on the symmetric graph.
bool is_bipartite(const Graph& graph);
bool is_connected(const Graph& graph);

}  // namespace fsample
