#include "fsample/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/binomial.hpp>

#include "fsample/error.hpp"

namespace fsample {

nlohmann::json to_json(const CharacteristicTruth& truth) {
  nlohmann::json j;
  j["theta"] = truth.theta;
  j["p_edge"] = truth.p_edge;
  j["gamma"] = truth.gamma;
  j["r"] = truth.r ? nlohmann::json(*truth.r) : nlohmann::json(nullptr);
  j["C"] = truth.C ? nlohmann::json(*truth.C) : nlohmann::json(nullptr);
  return j;
}

CharacteristicTruth truth_from_json(const nlohmann::json& j) {
  CharacteristicTruth t;
  t.theta = j.at("theta").get<std::map<std::string, double>>();
  t.p_edge = j.at("p_edge").get<std::map<std::string, double>>();
  t.gamma = j.at("gamma").get<std::vector<double>>();
  if (!j.at("r").is_null()) t.r = j.at("r").get<double>();
  if (!j.at("C").is_null()) t.C = j.at("C").get<double>();
  return t;
}

double exact_vertex_label_density(const Graph& graph, const LabelStore& labels, LabelId l) {
  if (l >= labels.num_labels()) throw Error(ErrorCode::invalid_argument, "unknown label id");
  std::size_t count = 0;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) count += labels.vertex_has(v, l) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(graph.num_vertices());
}

double vertex_label_density_edge_sum(const Graph& graph, const LabelStore& labels, LabelId l) {
  if (l >= labels.num_labels()) throw Error(ErrorCode::invalid_argument, "unknown label id");
  double sum = 0.0;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    VertexId v = graph.target(e);
    if (labels.vertex_has(v, l)) sum += 1.0 / graph.degree(v);
  }
  return sum / static_cast<double>(graph.num_vertices());
}

std::vector<double> exact_degree_distribution(const Graph& graph, DegreeMode mode) {
  std::vector<double> theta;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    auto k = degree_of(graph, v, mode);
    if (k >= theta.size()) theta.resize(k + 1, 0.0);
    theta[k] += 1.0;
  }
  for (auto& t : theta) t /= static_cast<double>(graph.num_vertices());
  return theta;
}

std::vector<double> exact_degree_ccdf(const Graph& graph, DegreeMode mode) {
  std::vector<std::size_t> hist;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    auto k = degree_of(graph, v, mode);
    if (k >= hist.size()) hist.resize(k + 1, 0);
    ++hist[k];
  }
  // Integer tail counts keep γ exactly non-increasing.
  std::vector<double> gamma(hist.size(), 0.0);
  std::size_t tail = 0;
  for (std::size_t l = hist.size(); l-- > 0;) {
    gamma[l] = static_cast<double>(tail) / static_cast<double>(graph.num_vertices());
    tail += hist[l];
  }
  return gamma;
}

double exact_edge_label_density(const Graph& graph, const LabelStore& labels, LabelId l) {
  std::size_t labelled = 0;
  std::size_t with_l = 0;
  for (const auto& [e, ls] : labels.edge_label_map()) {
    if (e >= graph.num_edges() || ls.empty()) continue;
    ++labelled;
    if (std::binary_search(ls.begin(), ls.end(), l)) ++with_l;
  }
  if (labelled == 0) throw Error(ErrorCode::undefined_estimate, "no labelled edges");
  return static_cast<double>(with_l) / static_cast<double>(labelled);
}

double exact_assortativity(const Graph& graph) {
  double n = 0, si = 0, sj = 0, sii = 0, sjj = 0, sij = 0;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (!graph.in_original(e)) continue;
    auto [u, v] = graph.edge(e);
    const double i = graph.out_degree_directed(u);
    const double j = graph.in_degree_directed(v);
    n += 1;
    si += i;
    sj += j;
    sii += i * i;
    sjj += j * j;
    sij += i * j;
  }
  const double mi = si / n, mj = sj / n;
  const double var_out = sii / n - mi * mi;
  const double var_in = sjj / n - mj * mj;
  if (!(var_out > 1e-12 * (1 + mi * mi)) || !(var_in > 1e-12 * (1 + mj * mj))) {
    throw Error(ErrorCode::undefined_estimate, "assortativity undefined: zero degree variance");
  }
  return (sij / n - mi * mj) / std::sqrt(var_out * var_in);
}

std::uint32_t shared_neighbors(const Graph& graph, VertexId u, VertexId v) {
  auto a = graph.neighbors(u);
  auto b = graph.neighbors(v);
  std::uint32_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::vector<std::uint64_t> triangle_counts(const Graph& graph) {
  std::vector<std::uint64_t> twice(graph.num_vertices(), 0);
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    for (VertexId u : graph.neighbors(v)) twice[v] += shared_neighbors(graph, v, u);
  }
  // Each triangle at v is seen once from each of its two other corners.
  for (auto& t : twice) t /= 2;
  return twice;
}

double exact_global_clustering(const Graph& graph) {
  auto tri = triangle_counts(graph);
  double sum = 0.0;
  std::size_t v_star = 0;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const double d = graph.degree(v);
    if (d < 2) continue;
    ++v_star;
    sum += static_cast<double>(tri[v]) / (d * (d - 1) / 2);
  }
  if (v_star == 0) throw Error(ErrorCode::undefined_estimate, "no vertex with degree > 1");
  return sum / static_cast<double>(v_star);
}

CharacteristicTruth compute_truth(const Graph& graph, const LabelStore& vertex_labels,
                                  const LabelStore& edge_labels, DegreeMode mode) {
  CharacteristicTruth t;
  for (LabelId l = 0; l < vertex_labels.num_labels(); ++l) {
    t.theta[vertex_labels.name(l)] = exact_vertex_label_density(graph, vertex_labels, l);
  }
  if (edge_labels.num_labeled_edges() > 0) {
    for (LabelId l = 0; l < edge_labels.num_labels(); ++l) {
      t.p_edge[edge_labels.name(l)] = exact_edge_label_density(graph, edge_labels, l);
    }
  }
  t.gamma = exact_degree_ccdf(graph, mode);
  try {
    t.r = exact_assortativity(graph);
  } catch (const Error&) {
  }
  try {
    t.C = exact_global_clustering(graph);
  } catch (const Error&) {
  }
  return t;
}

namespace {

struct SubsetDegrees {
  double p, d_a, d_b, d;
};

SubsetDegrees subset_degrees(const Graph& graph, std::span<const VertexId> subset) {
  std::vector<std::uint8_t> in(graph.num_vertices(), 0);
  for (VertexId v : subset) {
    if (v >= graph.num_vertices()) throw Error(ErrorCode::invalid_argument, "subset vertex out of range");
    in[v] = 1;
  }
  std::size_t size_a = 0;
  double vol_a = 0;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    if (!in[v]) continue;
    ++size_a;
    vol_a += graph.degree(v);
  }
  const auto n = static_cast<double>(graph.num_vertices());
  const auto vol = static_cast<double>(graph.volume());
  SubsetDegrees s{};
  s.p = static_cast<double>(size_a) / n;
  s.d = vol / n;
  s.d_a = size_a ? vol_a / static_cast<double>(size_a) : 0.0;
  s.d_b = size_a < graph.num_vertices() ? (vol - vol_a) / (n - static_cast<double>(size_a)) : 0.0;
  if (size_a == 0) throw Error(ErrorCode::invalid_argument, "subset is empty");
  return s;
}

}  // namespace

std::vector<double> binomial_pmf(std::size_t m, double p) {
  std::vector<double> pmf(m + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[m] = 1.0;
    return pmf;
  }
  boost::math::binomial_distribution<double> dist(static_cast<double>(m), p);
  for (std::size_t k = 0; k <= m; ++k) pmf[k] = boost::math::pdf(dist, static_cast<double>(k));
  return pmf;
}

std::vector<double> exact_kfs_distribution(const Graph& graph, std::span<const VertexId> subset,
                                           std::size_t m) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "m must be positive");
  auto s = subset_degrees(graph, subset);
  if (s.p >= 1.0) throw Error(ErrorCode::invalid_argument, "subset must be a proper subset of V");
  auto pmf = binomial_pmf(m, s.p);
  const double md = static_cast<double>(m) * s.d;
  for (std::size_t k = 0; k <= m; ++k) {
    const double kk = static_cast<double>(k);
    pmf[k] *= (kk * s.d_a + (static_cast<double>(m) - kk) * s.d_b) / md;
  }
  return pmf;
}

double multiplerw_walker_ratio(const Graph& graph, std::span<const VertexId> subset) {
  auto s = subset_degrees(graph, subset);
  return s.d_a / s.d;
}

bool is_bipartite(const Graph& graph) {
  std::vector<int> color(graph.num_vertices(), -1);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < graph.num_vertices(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      for (VertexId w : graph.neighbors(v)) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_connected(const Graph& graph) { return connected_components(graph).num_components() == 1; }

}  // namespace fsample
