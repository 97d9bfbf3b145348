#include "fsample/power_chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fsample/error.hpp"
#include "fsample/oracles.hpp"

namespace fsample {

std::vector<VertexId> PowerChain::decode(std::uint64_t state) const {
  std::vector<VertexId> tuple(m);
  for (std::size_t i = m; i-- > 0;) {
    tuple[i] = static_cast<VertexId>(state % num_vertices);
    state /= num_vertices;
  }
  return tuple;
}

std::uint64_t PowerChain::encode(std::span<const VertexId> tuple) const {
  std::uint64_t state = 0;
  for (VertexId v : tuple) state = state * num_vertices + v;
  return state;
}

std::vector<double> PowerChain::subset_count_marginal(std::span<const VertexId> subset) const {
  std::vector<std::uint8_t> in(num_vertices, 0);
  for (VertexId v : subset) in.at(v) = 1;
  std::vector<double> marginal(m + 1, 0.0);
  for (std::uint64_t s = 0; s < num_states; ++s) {
    std::size_t k = 0;
    for (VertexId v : decode(s)) k += in[v];
    marginal[k] += stationary[s];
  }
  return marginal;
}

PowerChain enumerate_power_chain(const Graph& graph, std::size_t m, const PowerChainOptions& options) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "m must be positive");
  const std::size_t n = graph.num_vertices();
  double states_d = std::pow(static_cast<double>(n), static_cast<double>(m));
  if (states_d > static_cast<double>(options.max_states)) {
    throw Error(ErrorCode::capacity, "|V|^m = " + std::to_string(states_d) + " exceeds state cap " +
                                         std::to_string(options.max_states));
  }
  if (!is_connected(graph)) throw Error(ErrorCode::not_stationary, "graph is disconnected");
  if (is_bipartite(graph)) throw Error(ErrorCode::not_stationary, "graph is bipartite");

  PowerChain chain;
  chain.m = m;
  chain.num_vertices = n;
  chain.num_states = static_cast<std::size_t>(std::llround(states_d));

  std::vector<std::uint64_t> place(m, 1);  // base-n weight of each tuple slot
  for (std::size_t i = m - 1; i-- > 0;) place[i] = place[i + 1] * n;

  chain.row_offsets.reserve(chain.num_states + 1);
  chain.row_offsets.push_back(0);
  for (std::uint64_t s = 0; s < chain.num_states; ++s) {
    auto tuple = chain.decode(s);
    std::uint64_t frontier = 0;
    for (VertexId v : tuple) frontier += graph.degree(v);
    const double p = 1.0 / static_cast<double>(frontier);
    for (std::size_t i = 0; i < m; ++i) {
      for (VertexId w : graph.neighbors(tuple[i])) {
        chain.columns.push_back(s - tuple[i] * place[i] + w * place[i]);
        chain.probabilities.push_back(p);
      }
    }
    chain.row_offsets.push_back(chain.columns.size());
  }

  // Iterate pi <- (pi + pi P) / 2. The averaged chain has the same fixed
  // point and no eigenvalue on the unit circle other than 1.
  std::vector<double> pi(chain.num_states, 1.0 / static_cast<double>(chain.num_states));
  std::vector<double> next(chain.num_states);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint64_t s = 0; s < chain.num_states; ++s) {
      for (auto k = chain.row_offsets[s]; k < chain.row_offsets[s + 1]; ++k) {
        next[chain.columns[k]] += pi[s] * chain.probabilities[k];
      }
    }
    double residual = 0.0;  // ||pi P - pi||_inf
    for (std::uint64_t s = 0; s < chain.num_states; ++s) {
      residual = std::max(residual, std::abs(next[s] - pi[s]));
      next[s] = 0.5 * (next[s] + pi[s]);
    }
    double total = 0.0;
    for (double x : next) total += x;
    for (auto& x : next) x /= total;
    pi.swap(next);
    chain.iterations = it;
    chain.residual = residual;
    if (residual < options.tolerance) break;
  }
  chain.stationary = std::move(pi);
  return chain;
}

double frontier_stationary_probability(const Graph& graph, std::span<const VertexId> tuple) {
  const auto m = static_cast<double>(tuple.size());
  const auto n = static_cast<double>(graph.num_vertices());
  double deg_sum = 0;
  for (VertexId v : tuple) deg_sum += graph.degree(v);
  return deg_sum / (m * std::pow(n, m - 1) * static_cast<double>(graph.volume()));
}

}  // namespace fsample
