#pragma once

// Small graphs and brute-force reference computations shared by the tests.
// The references deliberately avoid the library's own algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "fsample/generators.hpp"
#include "fsample/graph.hpp"
#include "fsample/samplers.hpp"

namespace fixtures {

using fsample::DirectedEdge;
using fsample::Graph;
using fsample::VertexId;

/// Triangle 0-1-2 with pendant 3 attached to 2. Degrees (2, 2, 3, 1).
inline Graph triangle_plus_pendant() {
  std::vector<DirectedEdge> e{{0, 1}, {1, 2}, {2, 0}, {2, 3}};
  return fsample::build_graph(e);
}

inline Graph complete(std::uint32_t n) {
  std::vector<DirectedEdge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.push_back({u, v});
  return fsample::undirected_graph(e);
}

inline Graph star(std::uint32_t leaves) {
  std::vector<DirectedEdge> e;
  for (VertexId v = 1; v <= leaves; ++v) e.push_back({0, v});
  return fsample::undirected_graph(e);
}

inline Graph ring(std::uint32_t n) {
  std::vector<DirectedEdge> e;
  for (VertexId v = 0; v < n; ++v) e.push_back({v, (v + 1) % n});
  return fsample::undirected_graph(e);
}

/// Directed graph whose out- and in-degrees vary, so assortativity is defined.
inline Graph directed_mixed() {
  std::vector<DirectedEdge> e{{0, 1}, {1, 0}, {0, 2}, {0, 3}, {2, 3}, {3, 4}, {4, 0}, {4, 2}, {1, 4}};
  return fsample::build_graph(e);
}

/// Dense 0/1 adjacency of the symmetric graph.
inline std::vector<std::vector<int>> adjacency_matrix(const Graph& g) {
  const auto n = g.num_vertices();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (VertexId v = 0; v < n; ++v)
    for (VertexId u : g.neighbors(v)) a[v][u] = 1;
  return a;
}

/// Connected graph with a triangle on {0,1,2} (so never bipartite) plus
/// random extra vertices and edges.
inline Graph random_connected_nonbipartite(std::uint32_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DirectedEdge> e{{0, 1}, {1, 2}, {2, 0}};
  for (VertexId v = 3; v < n; ++v) {
    e.push_back({static_cast<VertexId>(rng() % v), v});
  }
  for (int extra = 0; extra < static_cast<int>(n) / 2; ++extra) {
    VertexId u = rng() % n, v = rng() % n;
    if (u != v) e.push_back({u, v});
  }
  return fsample::build_graph(e);
}

/// Clustering coefficient by checking every neighbour pair in the dense matrix.
inline double brute_clustering(const Graph& g) {
  auto a = adjacency_matrix(g);
  const auto n = g.num_vertices();
  double sum = 0;
  int vstar = 0;
  for (std::size_t v = 0; v < n; ++v) {
    int deg = 0;
    for (std::size_t u = 0; u < n; ++u) deg += a[v][u];
    if (deg < 2) continue;
    ++vstar;
    int closed = 0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) closed += a[v][x] && a[v][y] && a[x][y];
    sum += closed / (deg * (deg - 1) / 2.0);
  }
  return sum / vstar;
}

/// Pearson correlation of (outdeg_d(u), indeg_d(v)) over E_d, two-pass.
inline double brute_assortativity(const Graph& g) {
  std::vector<std::pair<double, double>> pts;
  for (auto [u, v] : g.directed_edges()) {
    int out_u = 0, in_v = 0;
    for (auto [a, b] : g.directed_edges()) {
      out_u += a == u;
      in_v += b == v;
    }
    pts.emplace_back(out_u, in_v);
  }
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Stationary law of the frontier chain written out tuple by tuple:
/// P[L] ∝ Σ deg(v_i), normalised by brute-force summation.
inline std::map<std::vector<VertexId>, double> brute_frontier_law(const Graph& g, std::size_t m) {
  std::map<std::vector<VertexId>, double> law;
  const auto n = g.num_vertices();
  std::vector<VertexId> t(m, 0);
  double total = 0;
  while (true) {
    double w = 0;
    for (auto v : t) w += g.degree(v);
    law[t] = w;
    total += w;
    std::size_t i = m;
    while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
    if (i == 0) break;
  }
  for (auto& [k, p] : law) p /= total;
  return law;
}

/// Edge sequence listing each directed edge of G exactly once.
inline std::vector<fsample::TraceStep> all_edges(const Graph& g) {
  std::vector<fsample::TraceStep> steps;
  for (fsample::EdgeId e = 0; e < g.num_edges(); ++e) {
    steps.push_back({g.source(e), g.target(e), e, 0, 1.0, 0.0});
  }
  return steps;
}

}  // namespace fixtures
