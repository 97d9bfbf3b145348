#include "fsample/generators.hpp"

#include <algorithm>
#include <string>

#include "fsample/error.hpp"
#include "fsample/rng.hpp"

namespace fsample {

std::vector<DirectedEdge> barabasi_albert_edges(std::size_t n, std::size_t attach,
                                                std::uint64_t seed) {
  if (attach < 1 || n <= attach) {
    throw Error(ErrorCode::invalid_argument,
                "barabasi_albert requires n > attach >= 1 (n=" + std::to_string(n) +
                    ", attach=" + std::to_string(attach) + ")");
  }
  RngStream rng(seed);
  std::vector<DirectedEdge> edges;
  edges.reserve(attach * (attach + 1) / 2 + (n - attach - 1) * attach);
  // Each vertex appears once per incident edge, so a uniform draw from this
  // list is a degree-proportional vertex draw.
  std::vector<VertexId> endpoints;
  endpoints.reserve(2 * edges.capacity());

  const auto clique = static_cast<VertexId>(attach + 1);
  for (VertexId u = 0; u < clique; ++u) {
    for (VertexId v = u + 1; v < clique; ++v) {
      edges.push_back({u, v});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  std::vector<VertexId> targets;
  for (auto v = clique; v < n; ++v) {
    targets.clear();
    while (targets.size() < attach) {
      VertexId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    for (VertexId t : targets) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return edges;
}

Graph undirected_graph(const std::vector<DirectedEdge>& undirected_edges) {
  std::vector<DirectedEdge> both;
  both.reserve(undirected_edges.size() * 2);
  for (auto e : undirected_edges) {
    both.push_back(e);
    both.push_back({e.v, e.u});
  }
  return build_graph(both);
}

Graph generate_barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed) {
  return undirected_graph(barabasi_albert_edges(n, attach, seed));
}

namespace {
VertexId min_degree_vertex(const std::vector<std::uint32_t>& degree, VertexId begin, VertexId end) {
  VertexId best = begin;
  for (VertexId v = begin + 1; v < end; ++v) {
    if (degree[v] < degree[best]) best = v;
  }
  return best;
}
}  // namespace

Graph generate_joined_ba(std::size_t n_each, std::size_t attach_a, std::size_t attach_b,
                         std::uint64_t seed) {
  auto a = barabasi_albert_edges(n_each, attach_a, mix64(seed) ^ 0xa);
  auto b = barabasi_albert_edges(n_each, attach_b, mix64(seed) ^ 0xb);
  const auto offset = static_cast<VertexId>(n_each);
  std::vector<std::uint32_t> degree(2 * n_each, 0);
  std::vector<DirectedEdge> edges = a;
  for (auto e : b) edges.push_back({e.u + offset, e.v + offset});
  for (auto e : edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  VertexId ua = min_degree_vertex(degree, 0, offset);
  VertexId ub = min_degree_vertex(degree, offset, 2 * offset);
  edges.push_back({ua, ub});
  return undirected_graph(edges);
}

}  // namespace fsample
