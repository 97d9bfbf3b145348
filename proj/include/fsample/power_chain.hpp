#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fsample/graph.hpp"

namespace fsample {

/// The frontier process written out as a single walker on the Cartesian
/// power G^m. A state is the tuple (v_1..v_m) encoded in base |V| with v_1 as
/// the most significant digit.
struct PowerChain {
  std::size_t m = 0;
  std::size_t num_vertices = 0;
  std::size_t num_states = 0;
  // Row-compressed transition matrix.
  std::vector<std::uint64_t> row_offsets;
  std::vector<std::uint64_t> columns;
  std::vector<double> probabilities;
  std::vector<double> stationary;
  std::size_t iterations = 0;
  double residual = 0.0;

  std::vector<VertexId> decode(std::uint64_t state) const;
  std::uint64_t encode(std::span<const VertexId> tuple) const;
  std::size_t num_transitions() const { return columns.size(); }

  /// Distribution of the number of tuple entries that fall in `subset`
  /// under the stationary vector.
  std::vector<double> subset_count_marginal(std::span<const VertexId> subset) const;
};

struct PowerChainOptions {
  std::size_t max_states = 1'000'000;
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
};

/// Enumerates G^m and solves for its stationary vector by power iteration.
/// Throws capacity when |V|^m exceeds the cap and not_stationary when G is
/// disconnected or bipartite.
PowerChain enumerate_power_chain(const Graph& graph, std::size_t m,
                                 const PowerChainOptions& options = {});

/// Closed-form stationary probability of tuple L:
/// Σ deg(v_i) / (m |V|^(m-1) vol(V)).
double frontier_stationary_probability(const Graph& graph, std::span<const VertexId> tuple);

}  // namespace fsample
